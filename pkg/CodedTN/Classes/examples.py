# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
ready made networks: the worked examples, PEPS grids and random instances
"""

from typing import Dict, List, Optional, Sequence, Tuple
import itertools
import logging
import string

import numpy as np

from CodedTN.Classes.field import FieldKind, PrimeField
from CodedTN.Classes.network import SlicingPlan, TensorNetwork, plan_for
from CodedTN.Classes.tensor import Tensor, random_tensor
from CodedTN.types import DataType, Label

log = logging.getLogger(__name__)


def _field(field: Optional[FieldKind]) -> FieldKind:
    return field if field is not None else PrimeField()


def matmul_network(A: DataType, B: DataType, field: Optional[FieldKind] = None) -> TensorNetwork:
    """
    two matrices A(i, j) and B(j, k) joined by j
    :param A: a matrix
    :param B: a matrix
    :param field: FieldKind
    :return: TensorNetwork
    """
    field = _field(field)
    A = np.asarray(A)
    B = np.asarray(B)
    return TensorNetwork(
        {
            "A": Tensor((("i", A.shape[0]), ("j", A.shape[1])), A, field),
            "B": Tensor((("j", B.shape[0]), ("k", B.shape[1])), B, field),
        },
        field,
    )


def hyperedge_triple(
    A: DataType = (1, 2), B: DataType = (3, 4), C: DataType = (5, 6), field: Optional[FieldKind] = None
) -> TensorNetwork:
    """
    three vectors sharing the index j, each with an open index of dimension 1
    """
    field = _field(field)
    L = len(A)
    return TensorNetwork(
        {
            "A": Tensor((("j", L), ("a", 1)), A, field),
            "B": Tensor((("b", 1), ("j", L)), B, field),
            "C": Tensor((("j", L), ("c", 1)), C, field),
        },
        field,
    )


def sample_network(L: int = 2, field: Optional[FieldKind] = None, seed: int = 0) -> TensorNetwork:
    """
    the seven tensor sample network A_i B_ijk C_jl D_kl E_km F_lnf G_mng with open
    indices f and g, k is a 3-node index
    :param L: the dimension of every index
    :param field: FieldKind
    :param seed: the data seed
    :return: TensorNetwork
    """
    field = _field(field)
    rng = np.random.default_rng(seed)
    layout = {
        "A": "i",
        "B": "ijk",
        "C": "jl",
        "D": "kl",
        "E": "km",
        "F": "lnf",
        "G": "mng",
    }
    return TensorNetwork(
        {tid: random_tensor([(c, L) for c in labels], field, rng) for tid, labels in layout.items()},
        field,
    )


def _label(i: int) -> Label:
    return string.ascii_lowercase[i] if i < 26 else f"s{i}"


def star_network(
    pairs: Sequence[Tuple[int, int]],
    field: Optional[FieldKind] = None,
    seed: int = 0,
    bond: int = 2,
    open_dim: int = 2,
    labels: Optional[Sequence[Label]] = None,
) -> Tuple[TensorNetwork, SlicingPlan]:
    """
    a network that realises any plan of non-adjacent indices: index i (label a, b, ...)
    joins m_i endpoint tensors (A1..Am, B1..Bm, ...) of dimension L_i, every endpoint
    is also bonded to one hub tensor T that carries the open index "out"
    :param pairs: the (m_i, L_i) of every sliced index
    :param field: FieldKind
    :param seed: the data seed
    :param bond: the dimension of the bonds to the hub
    :param open_dim: the dimension of the open index (0 for a closed network)
    :param labels: the index labels (a, b, c, ... by default)
    :return: Tuple[TensorNetwork, SlicingPlan]
    """
    field = _field(field)
    rng = np.random.default_rng(seed)
    labels = list(labels) if labels is not None else [_label(i) for i in range(len(pairs))]
    tensors: Dict[str, Tensor] = {}
    hub_axes: List[Tuple[Label, int]] = []
    for label, (m, L) in zip(labels, pairs):
        for e in range(1, m + 1):
            tid = f"{label.upper()}{e}"
            link = f"t_{label}{e}"
            tensors[tid] = random_tensor([(label, L), (link, bond)], field, rng)
            hub_axes.append((link, bond))
    if open_dim:
        hub_axes.append(("out", open_dim))
    tensors["T"] = random_tensor(hub_axes, field, rng)
    net = TensorNetwork(tensors, field)
    return net, plan_for(net, labels)


def two_node_example_network(field: Optional[FieldKind] = None, seed: int = 0) -> Tuple[TensorNetwork, SlicingPlan]:
    """
    two 2-node indices a (L = 4) and b (L = 3) around a hub tensor
    """
    return star_network([(2, 4), (2, 3)], field, seed)


def hyperedge_example_network(field: Optional[FieldKind] = None, seed: int = 0) -> Tuple[TensorNetwork, SlicingPlan]:
    """
    a 3-node index a (L = 2) and a 4-node index b (L = 2) around a hub tensor
    """
    return star_network([(3, 2), (4, 2)], field, seed)


def peps_grid(
    rows: int,
    cols: int,
    bond: int = 2,
    phys: int = 0,
    field: Optional[FieldKind] = None,
    seed: int = 0,
) -> TensorNetwork:
    """
    a rows x cols PEPS-like grid: P{r}_{c} is joined to its right neighbour by h{r}_{c}
    and to the one below by v{r}_{c}, phys > 0 adds an open index p{r}_{c} to every site
    :param rows: int
    :param cols: int
    :param bond: the bond dimension
    :param phys: the physical dimension (0 for none)
    :param field: FieldKind
    :param seed: the data seed
    :return: TensorNetwork
    """
    field = _field(field)
    rng = np.random.default_rng(seed)
    tensors: Dict[str, Tensor] = {}
    for r, c in itertools.product(range(rows), range(cols)):
        axes: List[Tuple[Label, int]] = []
        if c > 0:
            axes.append((f"h{r}_{c - 1}", bond))
        if c < cols - 1:
            axes.append((f"h{r}_{c}", bond))
        if r > 0:
            axes.append((f"v{r - 1}_{c}", bond))
        if r < rows - 1:
            axes.append((f"v{r}_{c}", bond))
        if phys:
            axes.append((f"p{r}_{c}", phys))
        tensors[f"P{r}_{c}"] = random_tensor(axes, field, rng)
    return TensorNetwork(tensors, field)


def uniform_grid_family(
    L: int, k: int = 3, m: int = 2, field: Optional[FieldKind] = None, seed: int = 0
) -> Tuple[TensorNetwork, SlicingPlan]:
    """
    m tensors with k indices of dimension L each: the shared index s and k - 1 open ones,
    contracting s costs L^((k-1)m+1) while encoding one endpoint costs L^k
    :param L: int
    :param k: the rank of every tensor
    :param m: the node count of s
    :param field: FieldKind
    :param seed: int
    :return: Tuple[TensorNetwork, SlicingPlan]
    """
    field = _field(field)
    rng = np.random.default_rng(seed)
    tensors = {}
    for e in range(m):
        axes = [("s", L)] + [(f"o{e}_{j}", L) for j in range(k - 1)]
        tensors[f"T{e}"] = random_tensor(axes, field, rng)
    net = TensorNetwork(tensors, field)
    return net, plan_for(net, ["s"])


def random_network(
    rng: np.random.Generator,
    max_tensors: int = 8,
    max_dim: int = 4,
    max_labels: int = 9,
    field: Optional[FieldKind] = None,
    tensors: Optional[int] = None,
) -> TensorNetwork:
    """
    a random network with open edges, 2-node edges and hyperedges
    :param rng: np.random.Generator
    :param max_tensors: the largest tensor count
    :param max_dim: the largest dimension
    :param max_labels: the largest number of distinct indices
    :param field: FieldKind
    :param tensors: an exact tensor count instead of a random one
    :return: TensorNetwork
    """
    field = _field(field)
    n = int(tensors) if tensors is not None else int(rng.integers(2, max_tensors + 1))
    axes: List[List[Tuple[Label, int]]] = [[] for _ in range(n)]
    count = int(rng.integers(n - 1, max_labels + 1))
    for i in range(count):
        dim = int(rng.integers(1, max_dim + 1))
        m = int(rng.choice([1, 2, 2, 2, 3]))
        m = min(m, n)
        for t in rng.choice(n, size=m, replace=False):
            axes[int(t)].append((f"e{i}", dim))
    for t in range(n):
        if not axes[t]:
            axes[t].append((f"x{t}", 2))
    by_id = {f"T{t}": random_tensor(axes[t], field, rng) for t in range(n)}
    return TensorNetwork(by_id, field)


def random_plan(net: TensorNetwork, rng: np.random.Generator, max_indices: int = 3) -> SlicingPlan:
    """
    up to max_indices closed, pairwise non-adjacent indices of the network
    """
    closed = net.closed_labels()
    chosen: List[Label] = []
    used = set()
    for i in rng.permutation(len(closed)):
        label = closed[int(i)]
        ids = set(net.edge(label).tensor_ids)
        if ids & used:
            continue
        chosen.append(label)
        used |= ids
        if len(chosen) == max_indices:
            break
    return plan_for(net, chosen)


__all__ = [
    "matmul_network",
    "hyperedge_triple",
    "sample_network",
    "star_network",
    "two_node_example_network",
    "hyperedge_example_network",
    "peps_grid",
    "uniform_grid_family",
    "random_network",
    "random_plan",
]
