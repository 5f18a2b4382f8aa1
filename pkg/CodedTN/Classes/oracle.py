# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
independent ground truth: a brute force evaluator and a formal expander of the codes
"""

from typing import Counter as CounterType, Dict, List, Optional, Sequence, Tuple
from collections import Counter, defaultdict
from dataclasses import dataclass
import itertools
import logging
import math

import numpy as np

from CodedTN.Classes.coding import (
    CodeKind,
    CodeScheme,
    degree,
    desired_positions,
    encoding_exponents,
    make_scheme,
    scheme_strides,
)
from CodedTN.Classes.network import SlicingPlan, TensorNetwork
from CodedTN.Classes.tensor import Tensor
from CodedTN.constants import BRUTE_FORCE_LIMIT, OFFSET_CHUNK, SYMBOLIC_DEGREE_LIMIT
from CodedTN.exceptions import GuardExceeded, SchemeNotCoded
from CodedTN.types import SliceValues
from CodedTN.utils.formulas import geometric_count
from CodedTN.utils.kernels import assignment_offsets

log = logging.getLogger(__name__)

Term = Tuple[str, ...]


def brute_force_reference(net: TensorNetwork, limit: int = BRUTE_FORCE_LIMIT) -> Tensor:
    """
    it evaluates the defining product-sum of the network by walking every joint assignment
    of all its indices, no pairwise contraction and no ordering is involved
    :param net: TensorNetwork
    :param limit: the largest joint assignment space it accepts
    :type net: TensorNetwork
    :type limit: int
    :return: Tensor with the open labels in lexicographic order
    """
    field = net.field
    edges = net.edges
    open_labels = sorted(label for label, e in edges.items() if e.is_open)
    closed_labels = sorted(label for label, e in edges.items() if not e.is_open)
    labels = open_labels + closed_labels
    dims = np.array([edges[label].dim for label in labels], dtype=np.int64)
    open_size = math.prod(edges[label].dim for label in open_labels)
    closed_size = math.prod(edges[label].dim for label in closed_labels)
    space = open_size * closed_size
    if space > limit:
        raise GuardExceeded(f"the joint assignment space has {space} entries, the guard is {limit}")

    position = {label: i for i, label in enumerate(labels)}
    tensors = [net.tensors[tid] for tid in sorted(net.tensors)]
    layouts = []
    for t in tensors:
        strides = np.zeros(len(labels), dtype=np.int64)
        step = 1
        for label, dim in reversed(t.axes):
            strides[position[label]] = step
            step *= dim
        layouts.append((t.flat(), strides))

    def products(start: int, stop: int) -> np.ndarray:
        acc = None
        for flat, strides in layouts:
            vals = flat[assignment_offsets(start, stop, dims, strides)]
            acc = vals if acc is None else field.mul(acc, vals)
        if acc is None:
            return field.ones((stop - start,))
        return acc

    out = field.zeros((open_size,))
    if closed_size <= OFFSET_CHUNK:
        # whole output entries per chunk
        step = (OFFSET_CHUNK // closed_size) * closed_size
        for start in range(0, space, step):
            stop = min(space, start + step)
            block = products(start, stop).reshape(-1, closed_size)
            first = start // closed_size
            out[first : first + block.shape[0]] = field.sum(block, axis=1)
    else:
        # one output entry spans several chunks
        for entry in range(open_size):
            total = field.zeros(())
            base = entry * closed_size
            for start in range(base, base + closed_size, OFFSET_CHUNK):
                stop = min(base + closed_size, start + OFFSET_CHUNK)
                total = field.add(total, field.sum(products(start, stop)))
            out[entry] = np.asarray(total, dtype=field.dtype).reshape(-1)[0]
    axes = tuple((label, edges[label].dim) for label in open_labels)
    return Tensor._trusted(axes, out, field)


@dataclass(frozen=True)
class SymbolicPoly:
    """
    the formal product of the encoding polynomials of a scheme, terms maps an
    exponent to the multiset of slice products found there; a slice product is the
    tuple of symbols "<label><endpoint>[<slice value>]" in endpoint order
    """

    terms: Dict[int, CounterType[Term]]
    scheme: CodeScheme

    @property
    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else 0

    def at(self, exponent: int) -> CounterType[Term]:
        return self.terms.get(exponent, Counter())

    def desired_term(self, values: SliceValues) -> Term:
        """
        the slice product of one coded assignment: every endpoint of index i at value s_i
        """
        term: List[str] = []
        for idx, s in zip(self.scheme.coded_plan.indices, values):
            for e in range(1, idx.m + 1):
                term.append(_symbol(idx.label, e, s))
        return tuple(term)

    def find(self, term: Term) -> List[int]:
        return sorted(e for e, bag in self.terms.items() if term in bag)


def _symbol(label: str, endpoint: int, value: int) -> str:
    return f"{label}{endpoint}[{value}]"


def symbolic_expand(
    scheme: CodeScheme,
    strides_override: Optional[Sequence[int]] = None,
    limit: int = SYMBOLIC_DEGREE_LIMIT,
) -> SymbolicPoly:
    """
    it multiplies the encoding polynomials of every endpoint of every coded index over
    formal symbols, so nothing can cancel numerically
    :param scheme: a coded scheme
    :param strides_override: encode with other strides (mutation checks)
    :param limit: the degree guard
    :return: SymbolicPoly
    """
    if not scheme.is_coded:
        raise SchemeNotCoded("naive replication has no encoding polynomial to expand")
    exponents = encoding_exponents(scheme, strides_override)
    top = sum(max(exps) for per_index in exponents for exps in per_index)
    if max(top, degree(scheme)) > limit:
        raise GuardExceeded(f"the expansion has degree {max(top, degree(scheme))}, the guard is {limit}")

    terms: Dict[int, CounterType[Term]] = {0: Counter({(): 1})}
    for idx, per_endpoint in zip(scheme.coded_plan.indices, exponents):
        for e, exps in enumerate(per_endpoint, start=1):
            nxt: Dict[int, CounterType[Term]] = defaultdict(Counter)
            for base, bag in terms.items():
                for j, ej in enumerate(exps, start=1):
                    sym = _symbol(idx.label, e, j)
                    target = nxt[base + ej]
                    for term, count in bag.items():
                        target[term + (sym,)] += count
            terms = dict(nxt)
    log.debug("expanded %s into %d exponents", scheme, len(terms))
    return SymbolicPoly(terms, scheme)


@dataclass(frozen=True)
class AlignmentResult:
    passed: bool
    exponent: Optional[int] = None
    term: Optional[Term] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_alignment(scheme: CodeScheme, strides_override: Optional[Sequence[int]] = None) -> AlignmentResult:
    """
    2-node family: the target exponent must hold exactly the N diagonal products,
    hyperedge family: every desired product must sit alone at its predicted exponent,
    the prediction always comes from the unmodified decoder geometry
    :param scheme: a coded scheme
    :param strides_override: encode with other strides to see the check fail
    :return: AlignmentResult
    """
    poly = symbolic_expand(scheme, strides_override)
    geometry = desired_positions(scheme)
    desired = {values: poly.desired_term(values) for values in geometry.by_assignment}

    if scheme.family == CodeKind.TWO_NODE:
        target = next(iter(geometry.positions))
        bag = poly.at(target)
        wanted = Counter(desired.values())
        for term, count in sorted(bag.items()):
            if wanted.get(term, 0) != count:
                return AlignmentResult(False, target, term, f"a cross term lands on the target exponent {target}")
        for term in sorted(wanted):
            if bag.get(term, 0) != 1:
                places = poly.find(term)
                where = places[0] if places else None
                return AlignmentResult(False, where, term, f"a desired product is missing from exponent {target}")
        return AlignmentResult(True, target, None, f"{len(wanted)} diagonal products at exponent {target}")

    for values in sorted(desired):
        e = geometry.by_assignment[values]
        term = desired[values]
        bag = poly.at(e)
        if bag.get(term, 0) != 1:
            places = poly.find(term)
            where = places[0] if places else None
            return AlignmentResult(False, where, term, f"the product of {values} is not at exponent {e}")
        for other, count in sorted(bag.items()):
            if other != term:
                return AlignmentResult(False, e, other, f"a cross term collides with the product of {values}")
    return AlignmentResult(True, None, None, f"{len(desired)} desired products are separated")


def mutate_strides(scheme: CodeScheme) -> List[List[int]]:
    """
    every single-parameter mutation (stride_i + 1 and stride_i - 1 while it stays positive)
    :param scheme: a coded scheme
    :return: List[List[int]]
    """
    base = scheme_strides(scheme)
    out: List[List[int]] = []
    for i, s in enumerate(base):
        for delta in (1, -1):
            if s + delta >= 1:
                mutated = list(base)
                mutated[i] = s + delta
                out.append(mutated)
    return out


def alignment_grid(
    two_node_limit: int = 32,
    hyper_limit: int = 256,
    max_n: int = 3,
    ms: Sequence[int] = (2, 3, 4),
) -> List[CodeScheme]:
    """
    the plans of the alignment sweep: 2-node plans with prod(L) <= two_node_limit and
    hyperedge plans with degree <= hyper_limit, n <= max_n and every L_i >= 2
    :param two_node_limit: int
    :param hyper_limit: int
    :param max_n: int
    :param ms: the node counts of the hyperedge plans
    :return: List[CodeScheme]
    """
    out: List[CodeScheme] = []

    def two_node(prefix: Tuple[int, ...], budget: int) -> None:
        if prefix:
            plan = SlicingPlan.from_pairs([(2, L) for L in prefix])
            out.append(make_scheme(CodeKind.TWO_NODE, plan))
        if len(prefix) == max_n:
            return
        for L in range(2, budget + 1):
            if budget // L >= 1:
                two_node(prefix + (L,), budget // L)

    def hyper(prefix: Tuple[Tuple[int, int], ...], product: int) -> None:
        if prefix:
            plan = SlicingPlan.from_pairs(prefix)
            out.append(make_scheme(CodeKind.HYPEREDGE, plan))
        if len(prefix) == max_n:
            return
        for m in ms:
            L = 2
            while product * geometric_count(m, L) - 1 <= hyper_limit:
                hyper(prefix + ((m, L),), product * geometric_count(m, L))
                L += 1

    two_node((), two_node_limit)
    hyper((), 1)
    return out


__all__ = [
    "brute_force_reference",
    "SymbolicPoly",
    "symbolic_expand",
    "AlignmentResult",
    "check_alignment",
    "mutate_strides",
    "alignment_grid",
]
