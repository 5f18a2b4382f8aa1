# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
tensor networks: validation, slicing and full contraction
"""

from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
from dataclasses import dataclass, field as dc_field
import itertools
import logging
import math

import networkx as nx
import numpy as np

from CodedTN.Classes.field import FieldKind, PrimeField
from CodedTN.Classes.tensor import Tensor, contract_tensors, fix_index, outer_product
from CodedTN.exceptions import (
    UnknownIndex,
    SliceValueOutOfRange,
    DimensionMismatch,
    InvalidNetwork,
    InvalidOrder,
    CorruptedNetwork,
    FieldMismatch,
)
from CodedTN.types import Label, SliceValues

log = logging.getLogger(__name__)

# violation kinds reported by validate
DANGLING_AXIS = "dangling axis"
DIMENSION_MISMATCH = "dimension mismatch"
OPEN_EDGE_IN_PLAN = "open edge not sliceable"
ADJACENT_SLICED = "adjacent sliced indices"
UNKNOWN_LABEL = "unknown label"
DUPLICATE_LABEL = "duplicate label"
UNUSED_LABEL = "unused label"


@dataclass(frozen=True)
class Edge:
    """
    an index of the network together with every (tensor id, axis position) that carries it
    """

    label: Label
    dim: int
    endpoints: Tuple[Tuple[str, int], ...]

    @property
    def m(self) -> int:
        return len(self.endpoints)

    @property
    def is_open(self) -> bool:
        return self.m == 1

    @property
    def is_hyperedge(self) -> bool:
        return self.m >= 3

    @property
    def tensor_ids(self) -> Tuple[str, ...]:
        return tuple(tid for tid, _ in self.endpoints)


@dataclass(frozen=True)
class SlicedIndex:
    label: Label
    m: int
    L: int


@dataclass(frozen=True)
class SlicingPlan:
    """
    the ordered list of sliced indices, every index is (label, m_i, L_i)

    Methods:
    -----------
    assignments():
        it yields every slice assignment s_1..s_n (1-based) in lexicographic order
    from_pairs(pairs):
        a plan that only knows (m_i, L_i), for the closed forms
    """

    indices: Tuple[SlicedIndex, ...]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[int, int]], labels: Optional[Sequence[Label]] = None) -> "SlicingPlan":
        pairs = [(int(m), int(L)) for m, L in pairs]
        labels = list(labels) if labels is not None else [f"s{i + 1}" for i in range(len(pairs))]
        if len(labels) != len(pairs):
            raise ValueError("every (m, L) pair needs exactly one label")
        for m, L in pairs:
            if m < 2 or L < 1:
                raise ValueError(f"a sliced index needs m >= 2 and L >= 1, got ({m}, {L})")
        return cls(tuple(SlicedIndex(label, m, L) for label, (m, L) in zip(labels, pairs)))

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def N(self) -> int:
        return math.prod(idx.L for idx in self.indices)

    @property
    def labels(self) -> Tuple[Label, ...]:
        return tuple(idx.label for idx in self.indices)

    @property
    def m_values(self) -> Tuple[int, ...]:
        return tuple(idx.m for idx in self.indices)

    @property
    def L_values(self) -> Tuple[int, ...]:
        return tuple(idx.L for idx in self.indices)

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((idx.m, idx.L) for idx in self.indices)

    def index(self, label: Label) -> SlicedIndex:
        for idx in self.indices:
            if idx.label == label:
                return idx
        raise UnknownIndex(f"the plan does not slice {label!r}")

    def assignments(self) -> Iterator[SliceValues]:
        return itertools.product(*(range(1, idx.L + 1) for idx in self.indices))

    def check_assignment(self, values: Sequence[int]) -> SliceValues:
        values = tuple(int(v) for v in values)
        if len(values) != self.n:
            raise SliceValueOutOfRange(f"the plan slices {self.n} indices but got {len(values)} values")
        for v, idx in zip(values, self.indices):
            if not 1 <= v <= idx.L:
                raise SliceValueOutOfRange(f"the slice value {v} of {idx.label!r} is outside 1..{idx.L}")
        return values

    def __str__(self) -> str:
        return ",".join(f"{idx.label}({idx.m}:{idx.L})" for idx in self.indices)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass
class ValidationReport:
    """
    the result of validate, violations make it fail while warnings do not
    """

    violations: List[Violation] = dc_field(default_factory=list)
    warnings: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str) -> None:
        self.violations.append(Violation(kind, message))

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]

    def lines(self) -> List[str]:
        out = [f"violation: {v}" for v in self.violations]
        out += [f"warning: {w}" for w in self.warnings]
        return out

    def __bool__(self) -> bool:
        return self.ok


class TensorNetwork:
    """
    tensors joined by their shared index labels, the edges are derived from the tensors

    Parameters:
    -----------
    tensors: Mapping[str, Tensor]
        the tensors by id
    field: FieldKind
        the scalar field, all tensors must agree with it
    dims: Mapping[str, int]
        the declared dimension of every label (optional, used to report dangling axes)

    Methods:
    -----------
    edge(label):
        the Edge of a label
    graph():
        a networkx graph of tensor ids joined by closed edges
    sliced(plan, assignment):
        the sliced partition of an assignment
    """

    __slots__ = "tensors", "field", "declared_dims", "_edges", "_issues"

    def __init__(
        self,
        tensors: Mapping[str, Tensor],
        field: Optional[FieldKind] = None,
        dims: Optional[Mapping[Label, int]] = None,
    ) -> None:
        tensors = {str(tid): t for tid, t in tensors.items()}
        if field is None:
            field = next(iter(tensors.values())).field if tensors else PrimeField()
        for tid, t in tensors.items():
            if t.field != field:
                raise FieldMismatch(f"the tensor {tid!r} is over {t.field}, the network is over {field}")
        self.tensors: Dict[str, Tensor] = tensors
        self.field: FieldKind = field
        self.declared_dims: Optional[Dict[Label, int]] = dict(dims) if dims is not None else None
        self._edges, self._issues = self._build_edges()

    @classmethod
    def from_tensors(cls, pairs: Sequence[Tuple[str, Tensor]], field: Optional[FieldKind] = None) -> "TensorNetwork":
        return cls(dict(pairs), field)

    def _build_edges(self) -> Tuple[Dict[Label, Edge], List[Violation]]:
        endpoints: Dict[Label, List[Tuple[str, int]]] = {}
        dims: Dict[Label, int] = {}
        issues: List[Violation] = []
        for tid in sorted(self.tensors):
            for pos, (label, dim) in enumerate(self.tensors[tid].axes):
                endpoints.setdefault(label, []).append((tid, pos))
                if label not in dims:
                    dims[label] = dim
                elif dims[label] != dim:
                    issues.append(
                        Violation(
                            DIMENSION_MISMATCH,
                            f"{label!r} has dimension {dims[label]} and {dim} (tensor {tid!r})",
                        )
                    )
        if self.declared_dims is not None:
            for label in sorted(endpoints):
                if label not in self.declared_dims:
                    issues.append(Violation(DANGLING_AXIS, f"the axis {label!r} has no declared dimension"))
                elif self.declared_dims[label] != dims[label]:
                    issues.append(
                        Violation(
                            DIMENSION_MISMATCH,
                            f"{label!r} is declared with dimension {self.declared_dims[label]} "
                            f"but used with {dims[label]}",
                        )
                    )
            for label in sorted(self.declared_dims):
                if label not in endpoints:
                    issues.append(Violation(UNUSED_LABEL, f"the declared label {label!r} is not used by any tensor"))
        edges = {label: Edge(label, dims[label], tuple(endpoints[label])) for label in sorted(endpoints)}
        return edges, issues

    @property
    def edges(self) -> Dict[Label, Edge]:
        return dict(self._edges)

    @property
    def issues(self) -> List[Violation]:
        return list(self._issues)

    def edge(self, label: Label) -> Edge:
        try:
            return self._edges[label]
        except KeyError:
            raise UnknownIndex(f"the network has no index {label!r}")

    def closed_labels(self) -> List[Label]:
        return [label for label, e in self._edges.items() if not e.is_open]

    def open_labels(self) -> List[Label]:
        return [label for label, e in self._edges.items() if e.is_open]

    def graph(self) -> nx.Graph:
        """
        the tensor ids as nodes, joined when they share a closed edge
        (a hyperedge becomes a clique)
        :return: nx.Graph
        """
        g = nx.Graph()
        g.add_nodes_from(sorted(self.tensors))
        for e in self._edges.values():
            for a, b in itertools.combinations(e.tensor_ids, 2):
                g.add_edge(a, b)
        return g

    def components(self) -> List[List[str]]:
        comps = [sorted(c) for c in nx.connected_components(self.graph())]
        return sorted(comps)

    def is_connected(self) -> bool:
        return len(self.tensors) <= 1 or nx.is_connected(self.graph())

    def replace(self, tensors: Mapping[str, Tensor]) -> "TensorNetwork":
        """
        a network with some tensors swapped (same ids) or with a whole new tensor map
        :param tensors: Mapping[str, Tensor]
        :return: TensorNetwork
        """
        new = dict(self.tensors)
        new.update(tensors)
        return TensorNetwork(new, self.field)

    def sliced(self, plan: "PlanLike", assignment: Sequence[int]) -> "TensorNetwork":
        return slice_network(self, plan, assignment)

    def astype(self, field: FieldKind) -> "TensorNetwork":
        if field == self.field:
            return self
        return TensorNetwork({tid: t.astype(field) for tid, t in self.tensors.items()}, field, self.declared_dims)

    def __len__(self) -> int:
        return len(self.tensors)

    def __repr__(self) -> str:
        return f"TensorNetwork(tensors={sorted(self.tensors)}, field={self.field})"


PlanLike = Union[SlicingPlan, Sequence[Label]]


def validate(net: TensorNetwork, plan: PlanLike = ()) -> ValidationReport:
    """
    it checks a network and a slicing plan, problems are returned as data
    :param net: the network
    :param plan: a SlicingPlan or just the sliced labels
    :type net: TensorNetwork
    :type plan: Union[SlicingPlan, Sequence[str]]
    :return: ValidationReport
    """
    report = ValidationReport()
    for issue in net.issues:
        report.violations.append(issue)

    if isinstance(plan, SlicingPlan):
        labels = list(plan.labels)
        expected = {idx.label: (idx.m, idx.L) for idx in plan.indices}
    else:
        labels = [str(label) for label in plan]
        expected = {}

    seen = set()
    known: List[Label] = []
    for label in labels:
        if label in seen:
            report.add(DUPLICATE_LABEL, f"{label!r} is listed twice in the plan")
            continue
        seen.add(label)
        if label not in net.edges:
            report.add(UNKNOWN_LABEL, f"the plan slices {label!r} which is not an index of the network")
            continue
        e = net.edge(label)
        if e.is_open:
            report.add(OPEN_EDGE_IN_PLAN, f"{label!r} is an open edge")
            continue
        if label in expected and expected[label] != (e.m, e.dim):
            m, L = expected[label]
            report.add(
                DIMENSION_MISMATCH,
                f"the plan says {label!r} is ({m}, {L}) but the network has ({e.m}, {e.dim})",
            )
        known.append(label)

    for a, b in itertools.combinations(known, 2):
        common = set(net.edge(a).tensor_ids) & set(net.edge(b).tensor_ids)
        if common:
            report.add(
                ADJACENT_SLICED,
                f"{a!r} and {b!r} both touch the tensor {sorted(common)[0]!r}",
            )

    if not net.is_connected():
        report.warnings.append(f"the network has {len(net.components())} disconnected components")
    return report


def plan_for(net: TensorNetwork, labels: Sequence[Label]) -> SlicingPlan:
    """
    the SlicingPlan of the given labels with (m_i, L_i) read from the network
    :param net: TensorNetwork
    :param labels: the sliced labels in plan order
    :return: SlicingPlan
    """
    report = validate(net, labels)
    if not report.ok:
        raise InvalidNetwork("; ".join(str(v) for v in report.violations), report)
    return SlicingPlan(tuple(SlicedIndex(label, net.edge(label).m, net.edge(label).dim) for label in labels))


def _ensure_plan(net: TensorNetwork, plan: PlanLike) -> SlicingPlan:
    if isinstance(plan, SlicingPlan):
        report = validate(net, plan)
        if not report.ok:
            raise InvalidNetwork("; ".join(str(v) for v in report.violations), report)
        return plan
    return plan_for(net, plan)


def fix_labels(net: TensorNetwork, values: Mapping[Label, int]) -> TensorNetwork:
    """
    it fixes every endpoint of the given labels to a 1-based value, the edges disappear
    :param net: TensorNetwork
    :param values: label -> slice value
    :return: TensorNetwork
    """
    tensors: Dict[str, Tensor] = {}
    for tid, t in net.tensors.items():
        for label, value in values.items():
            if t.has(label):
                t = fix_index(t, label, value)
        tensors[tid] = t
    dims = None
    if net.declared_dims is not None:
        dims = {k: v for k, v in net.declared_dims.items() if k not in values}
    return TensorNetwork(tensors, net.field, dims)


def slice_network(net: TensorNetwork, plan: PlanLike, assignment: Sequence[int]) -> TensorNetwork:
    """
    the sliced partition of one assignment: every endpoint of every planned index is
    fixed to its value and the planned edges are removed
    :param net: the network
    :param plan: the slicing plan
    :param assignment: s_1..s_n with 1 <= s_i <= L_i
    :type net: TensorNetwork
    :type plan: SlicingPlan
    :type assignment: Sequence[int]
    :return: TensorNetwork
    """
    plan = _ensure_plan(net, plan)
    values = plan.check_assignment(assignment)
    return fix_labels(net, dict(zip(plan.labels, values)))


def _check_order(net: TensorNetwork, order: Sequence[Label]) -> List[Label]:
    order = list(order)
    closed = set(net.closed_labels())
    if len(set(order)) != len(order):
        raise InvalidOrder(f"the order {order} repeats an edge")
    missing = closed - set(order)
    extra = set(order) - closed
    if missing:
        raise InvalidOrder(f"the order omits the closed edges {sorted(missing)}")
    if extra:
        raise InvalidOrder(f"the order lists {sorted(extra)} which are not closed edges")
    return order


def full_contract(net: TensorNetwork, order: Optional[Sequence[Label]] = None) -> Tensor:
    """
    it contracts every closed edge one after the other (all current carriers of an edge
    in one product-sum step), disconnected parts are joined with an outer product and
    the open edges of the result are in lexicographic order
    :param net: the network
    :param order: every closed edge exactly once, greedy_order when omitted
    :type net: TensorNetwork
    :type order: Optional[Sequence[str]]
    :return: Tensor
    """
    order = _check_order(net, greedy_order(net) if order is None else order)
    pool: List[Tensor] = [net.tensors[tid] for tid in sorted(net.tensors)]

    for label in order:
        carriers = [i for i, t in enumerate(pool) if t.has(label)]
        if not carriers:
            raise CorruptedNetwork(f"no tensor carries {label!r} when it is contracted")
        try:
            merged = contract_tensors([pool[i] for i in carriers], [label])
        except DimensionMismatch as e:
            raise CorruptedNetwork(f"inconsistent dimensions while contracting {label!r}: {e.message}")
        log.debug("contracted %r over %d tensors -> %s", label, len(carriers), merged)
        first = carriers[0]
        pool = [t for i, t in enumerate(pool) if i not in carriers[1:]]
        pool[first] = merged

    if not pool:
        return Tensor((), [1], net.field)
    result = pool[0] if len(pool) == 1 else outer_product(pool)
    return result.transpose(sorted(result.labels))


def _simulate_steps(net: TensorNetwork, order: Optional[Sequence[Label]]) -> List[Tuple[Label, int]]:
    dims = {label: e.dim for label, e in net.edges.items()}
    groups: List[frozenset] = [frozenset(t.labels) for _, t in sorted(net.tensors.items())]
    remaining = list(net.closed_labels())
    steps: List[Tuple[Label, int]] = []

    def step_cost(label: Label) -> Tuple[int, List[int]]:
        carriers = [i for i, g in enumerate(groups) if label in g]
        touched = frozenset().union(*(groups[i] for i in carriers))
        return math.prod(dims[l] for l in touched), carriers

    while remaining:
        if order is None:
            label = min(remaining, key=lambda l: (step_cost(l)[0], l))
        else:
            label = order[len(steps)]
        cost, carriers = step_cost(label)
        merged = frozenset().union(*(groups[i] for i in carriers)) - {label}
        groups = [g for i, g in enumerate(groups) if i not in carriers] + [merged]
        remaining.remove(label)
        steps.append((label, cost))
    return steps


def greedy_order(net: TensorNetwork) -> List[Label]:
    """
    a deterministic contraction order: at every step the closed edge whose
    contraction touches the smallest index space goes next, ties by label.
    a step costs the product of the dimensions of every label on the merged tensors,
    the contracted label included, not only the open labels left after the step
    :param net: TensorNetwork
    :return: List[str]
    """
    return [label for label, _ in _simulate_steps(net, None)]


@dataclass(frozen=True)
class ContractionCost:
    steps: Tuple[Tuple[Label, int], ...]

    @property
    def peak(self) -> int:
        return max((c for _, c in self.steps), default=0)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.steps)


def contraction_cost(net: TensorNetwork, order: Optional[Sequence[Label]] = None) -> ContractionCost:
    """
    the number of scalar products of every step of a contraction order
    :param net: TensorNetwork
    :param order: the order, greedy_order when omitted
    :return: ContractionCost
    """
    order = _check_order(net, greedy_order(net) if order is None else order)
    return ContractionCost(tuple(_simulate_steps(net, order)))


def topology_fingerprint(net: TensorNetwork) -> str:
    """
    a canonical string of the labeled multigraph with dimensions, it does not
    depend on tensor ids, tensor order or data
    :param net: TensorNetwork
    :return: str
    """
    nodes = sorted(tuple(sorted(t.axes)) for t in net.tensors.values())
    return "|".join("(" + ",".join(f"{label}:{dim}" for label, dim in axes) + ")" for axes in nodes)


def slice_sum(net: TensorNetwork, plan: PlanLike, order: Optional[Sequence[Label]] = None) -> Tensor:
    """
    the sum of the contractions of all N sliced partitions
    :param net: TensorNetwork
    :param plan: SlicingPlan
    :param order: a contraction order of the partitions (greedy when omitted)
    :return: Tensor
    """
    plan = _ensure_plan(net, plan)
    total: Optional[Tensor] = None
    for values in plan.assignments():
        part = full_contract(slice_network(net, plan, values), order)
        total = part if total is None else total.plus(part)
    return total


def random_order(net: TensorNetwork, rng: np.random.Generator) -> List[Label]:
    labels = net.closed_labels()
    return [labels[i] for i in rng.permutation(len(labels))]


__all__ = [
    "DANGLING_AXIS",
    "DIMENSION_MISMATCH",
    "OPEN_EDGE_IN_PLAN",
    "ADJACENT_SLICED",
    "UNKNOWN_LABEL",
    "DUPLICATE_LABEL",
    "UNUSED_LABEL",
    "Edge",
    "SlicedIndex",
    "SlicingPlan",
    "Violation",
    "ValidationReport",
    "TensorNetwork",
    "validate",
    "plan_for",
    "fix_labels",
    "slice_network",
    "full_contract",
    "greedy_order",
    "ContractionCost",
    "contraction_cost",
    "topology_fingerprint",
    "slice_sum",
    "random_order",
]
