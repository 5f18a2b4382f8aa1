# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
polynomial codes for sliced tensor networks
"""

from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple
from dataclasses import dataclass, field as dc_field
import logging
import enum

import numpy as np

from CodedTN.Classes.network import (
    SlicingPlan,
    TensorNetwork,
    validate,
    fix_labels,
)
from CodedTN.Classes.tensor import Tensor
from CodedTN.constants import (
    MAX_DEGREE,
    SCHEME_REPLICATE,
    SCHEME_TWO_NODE,
    SCHEME_HYPEREDGE,
    SCHEME_PARTIAL_TWO_NODE,
    SCHEME_PARTIAL_ONE_INDEX,
    SCHEME_AUTO,
)
from CodedTN.exceptions import (
    SchemeNotApplicable,
    PlanTooLarge,
    SchemeNotCoded,
    InvalidNetwork,
    IntegerOverflow,
)
from CodedTN.types import Label, ScalarType, SliceValues
from CodedTN.utils.formulas import (
    checked_mul,
    checked_add,
    checked_prod,
    geometric_count,
    geometric_offset,
)

log = logging.getLogger(__name__)


class CodeKind(enum.Enum):
    NAIVE_REPLICATION = SCHEME_REPLICATE
    TWO_NODE = SCHEME_TWO_NODE
    HYPEREDGE = SCHEME_HYPEREDGE
    PARTIAL_TWO_NODE = SCHEME_PARTIAL_TWO_NODE
    PARTIAL_ONE_INDEX = SCHEME_PARTIAL_ONE_INDEX


# the order in which plan_best breaks ties between coded schemes
TIE_ORDER: Tuple[CodeKind, ...] = (
    CodeKind.TWO_NODE,
    CodeKind.HYPEREDGE,
    CodeKind.PARTIAL_TWO_NODE,
    CodeKind.PARTIAL_ONE_INDEX,
)

_TWO_NODE_FAMILY = (CodeKind.TWO_NODE, CodeKind.PARTIAL_TWO_NODE)
_HYPER_FAMILY = (CodeKind.HYPEREDGE, CodeKind.PARTIAL_ONE_INDEX)


@dataclass(frozen=True)
class CodeScheme:
    """
    a code together with the plan it encodes, the plan is kept in coding order
    (partial 2-node coding moves the 2-node indices first and the one-index
    code moves its coded index first), use make_scheme to build one

    Parameters:
    -----------
    kind: CodeKind
        which code
    plan: SlicingPlan
        the sliced indices in coding order
    k: int
        how many of the leading plan indices are coded
    """

    kind: CodeKind
    plan: SlicingPlan
    k: int

    @property
    def is_coded(self) -> bool:
        return self.kind != CodeKind.NAIVE_REPLICATION

    @property
    def family(self) -> Optional[CodeKind]:
        """
        TWO_NODE or HYPEREDGE for the template family of the coded indices, None for replication
        """
        if self.kind in _TWO_NODE_FAMILY:
            return CodeKind.TWO_NODE
        if self.kind in _HYPER_FAMILY:
            return CodeKind.HYPEREDGE
        return None

    @property
    def coded_plan(self) -> SlicingPlan:
        return SlicingPlan(self.plan.indices[: self.k])

    @property
    def uncoded_plan(self) -> SlicingPlan:
        return SlicingPlan(self.plan.indices[self.k :])

    @property
    def coded_labels(self) -> Tuple[Label, ...]:
        return self.coded_plan.labels

    @property
    def uncoded_labels(self) -> Tuple[Label, ...]:
        return self.uncoded_plan.labels

    @property
    def name(self) -> str:
        if self.kind == CodeKind.PARTIAL_TWO_NODE:
            return f"{self.kind.value}({self.k})"
        return self.kind.value

    def groups(self) -> Iterator[SliceValues]:
        """
        every assignment of the uncoded indices, one independent coded sub-problem each
        :return: Iterator[Tuple[int, ...]]
        """
        return self.uncoded_plan.assignments()

    def __str__(self) -> str:
        return f"{self.name} on {self.plan}"


def make_scheme(kind: CodeKind, plan: SlicingPlan, k: Optional[int] = None) -> CodeScheme:
    """
    it checks the structural preconditions of a code and reorders the plan into coding order
    :param kind: the code
    :param plan: the slicing plan in the user's order
    :param k: the number of coded 2-node indices for PARTIAL_TWO_NODE (the maximum when omitted)
    :type kind: CodeKind
    :type plan: SlicingPlan
    :type k: Optional[int]
    :return: CodeScheme
    """
    kind = CodeKind(kind)
    m_values = plan.m_values
    if kind == CodeKind.NAIVE_REPLICATION:
        return CodeScheme(kind, plan, 0)
    if plan.n == 0:
        raise SchemeNotApplicable(f"{kind.value} needs at least one sliced index")
    if kind == CodeKind.TWO_NODE:
        if any(m != 2 for m in m_values):
            raise SchemeNotApplicable(f"the 2-node code needs m_i = 2 for every index, the plan has m = {m_values}")
        return CodeScheme(kind, plan, plan.n)
    if kind == CodeKind.HYPEREDGE:
        return CodeScheme(kind, plan, plan.n)
    if kind == CodeKind.PARTIAL_TWO_NODE:
        two = [idx for idx in plan.indices if idx.m == 2]
        rest = [idx for idx in plan.indices if idx.m != 2]
        k = len(two) if k is None else int(k)
        if not two:
            raise SchemeNotApplicable("partial 2-node coding needs at least one index with m = 2")
        if not 1 <= k <= len(two):
            raise SchemeNotApplicable(f"partial 2-node coding can code 1..{len(two)} indices, not {k}")
        ordered = two[:k] + two[k:] + rest
        return CodeScheme(kind, SlicingPlan(tuple(ordered)), k)
    # PARTIAL_ONE_INDEX codes the first index of minimal m
    first = m_values.index(min(m_values))
    ordered = (plan.indices[first],) + plan.indices[:first] + plan.indices[first + 1 :]
    return CodeScheme(kind, SlicingPlan(ordered), 1)


def template_exponents_2node(L: int, stride: int) -> Tuple[List[int], List[int]]:
    """
    the exponents of the forward template 1 + x + ... + x^(L-1) and of the reversed one,
    both composed at x^stride
    :param L: the dimension of the index
    :param stride: the stride of the index
    :return: Tuple[List[int], List[int]]
    """
    if L < 1 or stride < 1:
        raise ValueError(f"template exponents need L >= 1 and stride >= 1, got L={L}, stride={stride}")
    forward = [checked_mul(j, stride, "template exponent") for j in range(L)]
    return forward, forward[::-1]


def template_exponents_hyper(m: int, L: int, stride: int) -> List[int]:
    """
    the exponents of the template 1 + x + x^(1+m) + x^(1+m+m^2) + ... composed at x^stride,
    the gaps grow geometrically so m copies of different slices never meet
    :param m: how many tensors share the index
    :param L: the dimension of the index
    :param stride: the stride of the index
    :return: List[int]
    """
    if m < 2 or L < 1 or stride < 1:
        raise ValueError(f"template exponents need m >= 2, L >= 1, stride >= 1, got {m}, {L}, {stride}")
    return [checked_mul(stride, (m ** (j - 1) - 1) // (m - 1), "template exponent") for j in range(1, L + 1)]


def strides(plan: SlicingPlan, kind: CodeKind) -> List[int]:
    """
    the stride of every index of a fully coded plan,
    2-node: prod of L_k for k < i, hyperedge: prod of (m_j^L_j - 1)/(m_j - 1) for j < i
    :param plan: the coded indices
    :param kind: TWO_NODE or HYPEREDGE
    :return: List[int]
    """
    kind = CodeKind(kind)
    out: List[int] = []
    acc = 1
    for idx in plan.indices:
        out.append(acc)
        if kind in _TWO_NODE_FAMILY:
            acc = checked_mul(acc, idx.L, "stride")
        elif kind in _HYPER_FAMILY:
            acc = checked_mul(acc, geometric_count(idx.m, idx.L), "stride")
        else:
            raise SchemeNotCoded("strides are only defined for the 2-node and hyperedge codes")
    return out


def scheme_strides(scheme: CodeScheme) -> List[int]:
    if not scheme.is_coded:
        raise SchemeNotCoded("naive replication has no strides")
    return strides(scheme.coded_plan, scheme.family)


def _raw_degree(scheme: CodeScheme) -> int:
    coded = scheme.coded_plan
    if scheme.family == CodeKind.TWO_NODE:
        return checked_mul(2, checked_prod(coded.L_values) - 1, "degree")
    if scheme.family == CodeKind.HYPEREDGE:
        return checked_prod((geometric_count(m, L) for m, L in coded.pairs), "degree") - 1
    return 0


def degree(scheme: CodeScheme) -> int:
    """
    the degree of the worker output polynomial of one group (0 for naive replication)
    :param scheme: CodeScheme
    :return: int
    """
    d = _raw_degree(scheme)
    if d > MAX_DEGREE:
        raise PlanTooLarge(f"the {scheme.name} code of {scheme.plan} has degree {d}, above 2^40")
    return d


def uncoded_groups(scheme: CodeScheme) -> int:
    return checked_prod(scheme.uncoded_plan.L_values, "group count")


def _check_f(f: int) -> int:
    f = int(f)
    if f < 0:
        raise ValueError(f"the failure count must be non-negative, got {f}")
    return f


def f_resilient(scheme: CodeScheme, f: int) -> int:
    """
    how many workers tolerate any f failures: every group gets d + f + 1 workers
    (naive replication: N slices with f + 1 replicas each)
    :param scheme: CodeScheme
    :param f: the failure count
    :return: int
    """
    f = _check_f(f)
    per_group = checked_add(degree(scheme), f + 1, "worker count")
    return checked_mul(uncoded_groups(scheme), per_group, "worker count")


def gain(scheme: CodeScheme, f: int) -> int:
    """
    the workers saved against naive replication, N(f+1) - f_resilient
    :param scheme: CodeScheme
    :param f: the failure count
    :return: int
    """
    f = _check_f(f)
    naive = checked_mul(scheme.plan.N, f + 1, "worker count")
    return naive - f_resilient(scheme, f)


def applicable_schemes(plan: SlicingPlan) -> List[CodeScheme]:
    """
    every scheme plan_best considers, coded ones in tie order and replication last
    (schemes whose degree is too large are left out)
    :param plan: SlicingPlan
    :return: List[CodeScheme]
    """
    out: List[CodeScheme] = []
    if plan.n:
        kinds = list(TIE_ORDER)
        if any(m != 2 for m in plan.m_values):
            kinds.remove(CodeKind.TWO_NODE)
        if all(m != 2 for m in plan.m_values):
            kinds.remove(CodeKind.PARTIAL_TWO_NODE)
        for kind in kinds:
            scheme = make_scheme(kind, plan)
            try:
                too_large = _raw_degree(scheme) > MAX_DEGREE
            except IntegerOverflow:
                too_large = True
            if too_large:
                log.info("skipping %s, its degree is above 2^40", scheme.name)
                continue
            out.append(scheme)
    out.append(make_scheme(CodeKind.NAIVE_REPLICATION, plan))
    return out


def plan_best(plan: SlicingPlan, f: int) -> CodeScheme:
    """
    the applicable scheme with the fewest workers for f failures, replication wins a tie,
    otherwise ties go to 2-node, hyperedge, partial 2-node, partial one index in that order
    :param plan: SlicingPlan
    :param f: the failure count
    :return: CodeScheme
    """
    f = _check_f(f)
    candidates = applicable_schemes(plan)

    def rank(scheme: CodeScheme) -> Tuple[int, int]:
        order = -1 if not scheme.is_coded else TIE_ORDER.index(scheme.kind)
        return f_resilient(scheme, f), order

    best = min(candidates, key=rank)
    log.info("plan_best(%s, f=%d) -> %s with %d workers", plan, f, best.name, f_resilient(best, f))
    return best


def scheme_from_name(name: str, plan: SlicingPlan, f: int = 0, k: Optional[int] = None) -> CodeScheme:
    """
    it maps a scheme selection string ("replicate", "2node", "hyper", "partial2node",
    "partial1" or "auto") to a scheme
    :param name: str
    :param plan: SlicingPlan
    :param f: used by "auto"
    :param k: used by "partial2node"
    :return: CodeScheme
    """
    name = str(name).strip().lower()
    if name == SCHEME_AUTO:
        return plan_best(plan, f)
    try:
        kind = CodeKind(name)
    except ValueError:
        raise SchemeNotApplicable(f"unknown scheme {name!r}")
    return make_scheme(kind, plan, k)


@dataclass(frozen=True)
class DecodeGeometry:
    """
    where the wanted slice products sit in the output polynomial of one group

    Parameters:
    -----------
    degree: int
        the degree of the output polynomial
    by_assignment: Mapping[Tuple[int, ...], int]
        the exponent that holds the product of every coded slice assignment
    """

    degree: int
    by_assignment: Mapping[SliceValues, int] = dc_field(default_factory=dict)

    @property
    def positions(self) -> FrozenSet[int]:
        return frozenset(self.by_assignment.values())

    @property
    def single(self) -> bool:
        return len(self.positions) == 1


def desired_positions(scheme: CodeScheme, strides_override: Optional[Sequence[int]] = None) -> DecodeGeometry:
    """
    2-node family: every coded assignment lands on the exponent prod(L_i) - 1,
    hyperedge family: assignment s lands alone on sum_i stride_i (m_i^s_i - m_i)/(m_i - 1)
    :param scheme: a coded scheme
    :param strides_override: other strides (used by the mutation checks)
    :return: DecodeGeometry
    """
    if not scheme.is_coded:
        raise SchemeNotCoded("naive replication has no polynomial to decode")
    d = degree(scheme)
    coded = scheme.coded_plan
    st = list(strides_override) if strides_override is not None else scheme_strides(scheme)
    positions: Dict[SliceValues, int] = {}
    if scheme.family == CodeKind.TWO_NODE:
        target = checked_prod(coded.L_values) - 1
        for values in coded.assignments():
            positions[values] = target
    else:
        for values in coded.assignments():
            e = 0
            for s, stride, idx in zip(values, st, coded.indices):
                e = checked_add(e, checked_mul(stride, geometric_offset(idx.m, s)), "exponent")
            positions[values] = e
    return DecodeGeometry(d, positions)


def encoding_exponents(
    scheme: CodeScheme, strides_override: Optional[Sequence[int]] = None
) -> List[List[List[int]]]:
    """
    for every coded index, the exponent list of every endpoint in endpoint order
    (2-node: forward then reversed, hyperedge: the same list m times)
    :param scheme: a coded scheme
    :param strides_override: other strides (used by the mutation checks)
    :return: List[List[List[int]]]
    """
    if not scheme.is_coded:
        raise SchemeNotCoded("naive replication has no encoding polynomials")
    st = list(strides_override) if strides_override is not None else scheme_strides(scheme)
    out: List[List[List[int]]] = []
    for idx, stride in zip(scheme.coded_plan.indices, st):
        if scheme.family == CodeKind.TWO_NODE:
            forward, reversed_ = template_exponents_2node(idx.L, stride)
            out.append([forward, reversed_])
        else:
            out.append([template_exponents_hyper(idx.m, idx.L, stride)] * idx.m)
    return out


@dataclass(frozen=True)
class EncodedNetwork:
    """
    the network one worker contracts: same topology as a sliced partition of its group
    """

    network: TensorNetwork
    point: Optional[ScalarType]
    group: SliceValues


def _check_scheme_against(net: TensorNetwork, scheme: CodeScheme) -> None:
    report = validate(net, scheme.plan)
    if not report.ok:
        raise InvalidNetwork("; ".join(str(v) for v in report.violations), report)


def _encode_tensor(t: Tensor, label: Label, powers: List[ScalarType]) -> Tensor:
    # sum_j x^(e_j) * T[label = j]
    pos = t.axis_of(label)
    moved = np.moveaxis(t.data, pos, -1)
    coeffs = np.array(powers, dtype=t.field.dtype)
    data = t.field.dot(moved, coeffs)
    axes = t.axes[:pos] + t.axes[pos + 1 :]
    return Tensor._trusted(axes, data, t.field)


def encode(
    net: TensorNetwork,
    scheme: CodeScheme,
    x: Optional[ScalarType],
    group: Sequence[int] = (),
    checked_plan: bool = True,
) -> EncodedNetwork:
    """
    it builds the network of the worker at evaluation point x: the uncoded indices are
    fixed to the group assignment and every endpoint T of a coded index becomes
    sum_j x^(e_j) T[j], the 2-node endpoint that comes first by tensor id gets the
    forward exponents and the other one the reversed exponents
    :param net: the original network
    :param scheme: the code
    :param x: the evaluation point (ignored by naive replication)
    :param group: the values of the uncoded indices (the full assignment for replication)
    :param checked_plan: validate the plan against the network first
    :type net: TensorNetwork
    :type scheme: CodeScheme
    :type group: Sequence[int]
    :return: EncodedNetwork
    """
    if checked_plan:
        _check_scheme_against(net, scheme)
    group = scheme.uncoded_plan.check_assignment(group)
    fixed = fix_labels(net, dict(zip(scheme.uncoded_labels, group)))
    if not scheme.is_coded:
        return EncodedNetwork(fixed, None, group)

    field = net.field
    x = field.element(x)
    replaced: Dict[str, Tensor] = {}
    exponents = encoding_exponents(scheme)
    for idx, per_endpoint in zip(scheme.coded_plan.indices, exponents):
        ids = sorted(fixed.edge(idx.label).tensor_ids)
        for tid, exps in zip(ids, per_endpoint):
            powers = [field.power(x, e) for e in exps]
            replaced[tid] = _encode_tensor(fixed.tensors[tid], idx.label, powers)
    return EncodedNetwork(fixed.replace(replaced), x, group)


__all__ = [
    "CodeKind",
    "TIE_ORDER",
    "CodeScheme",
    "make_scheme",
    "template_exponents_2node",
    "template_exponents_hyper",
    "strides",
    "scheme_strides",
    "degree",
    "uncoded_groups",
    "f_resilient",
    "gain",
    "applicable_schemes",
    "plan_best",
    "scheme_from_name",
    "DecodeGeometry",
    "desired_positions",
    "encoding_exponents",
    "EncodedNetwork",
    "encode",
]
