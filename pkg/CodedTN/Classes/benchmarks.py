# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
the cost experiments: encoded against sliced partitions, encoding against contraction
"""

from typing import List, Optional, Sequence
from dataclasses import dataclass
import logging

from CodedTN.Classes.coding import CodeKind, CodeScheme, encode, make_scheme
from CodedTN.Classes.examples import uniform_grid_family
from CodedTN.Classes.field import Complex128, FieldKind, make_evaluation_points
from CodedTN.Classes.network import TensorNetwork, full_contract, greedy_order, slice_network
from CodedTN.utils.timing import best_of, loglog_slope

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionTiming:
    sliced: float
    encoded: float

    @property
    def relative_difference(self) -> float:
        return abs(self.encoded - self.sliced) / max(self.sliced, 1e-12)


def partition_timing(
    net: TensorNetwork,
    scheme: CodeScheme,
    repeats: int = 7,
    field: Optional[FieldKind] = None,
) -> PartitionTiming:
    """
    the best wall-clock contraction time of one sliced partition and of one encoded
    network of the same group, both with the same contraction order
    :param net: TensorNetwork
    :param scheme: a coded scheme
    :param repeats: runs per measurement
    :param field: the field to time in (COMPLEX128 by default)
    :return: PartitionTiming
    """
    net = net.astype(field if field is not None else Complex128())
    group = tuple(1 for _ in scheme.uncoded_labels)
    first = tuple(1 for _ in scheme.plan.labels)
    sliced = slice_network(net, scheme.plan, first)
    x = make_evaluation_points(2, net.field)[1]
    encoded = encode(net, scheme, x, group).network
    order = greedy_order(sliced)
    t_sliced = best_of(lambda: full_contract(sliced, order), repeats)
    t_encoded = best_of(lambda: full_contract(encoded, order), repeats)
    log.info("sliced %.6fs, encoded %.6fs", t_sliced, t_encoded)
    return PartitionTiming(t_sliced, t_encoded)


@dataclass(frozen=True)
class ScalingResult:
    Ls: List[int]
    encode_times: List[float]
    contract_times: List[float]

    @property
    def encode_slope(self) -> float:
        return loglog_slope(self.Ls, self.encode_times)

    @property
    def contract_slope(self) -> float:
        return loglog_slope(self.Ls, self.contract_times)

    @property
    def slope_gap(self) -> float:
        return self.contract_slope - self.encode_slope


def encoding_cost_scaling(
    Ls: Sequence[int] = (6, 8, 12, 16, 24),
    k: int = 3,
    m: int = 2,
    repeats: int = 3,
    field: Optional[FieldKind] = None,
) -> ScalingResult:
    """
    on the uniform family (m tensors of rank k, dimension L) it times the encoding of
    the shared index against its contraction for every L
    :param Ls: the dimensions
    :param k: the tensor rank
    :param m: the node count of the shared index
    :param repeats: runs per measurement
    :param field: the field (COMPLEX128 by default)
    :return: ScalingResult
    """
    field = field if field is not None else Complex128()
    enc: List[float] = []
    con: List[float] = []
    for L in Ls:
        net, plan = uniform_grid_family(L, k, m, field)
        scheme = make_scheme(CodeKind.HYPEREDGE if m > 2 else CodeKind.TWO_NODE, plan)
        x = make_evaluation_points(2, field)[1]
        enc.append(best_of(lambda: encode(net, scheme, x, checked_plan=False), repeats))
        con.append(best_of(lambda: full_contract(net, ["s"]), repeats))
        log.info("L=%d encode %.6fs contract %.6fs", L, enc[-1], con[-1])
    return ScalingResult(list(Ls), enc, con)


__all__ = [
    "PartitionTiming",
    "partition_timing",
    "ScalingResult",
    "encoding_cost_scaling",
]
