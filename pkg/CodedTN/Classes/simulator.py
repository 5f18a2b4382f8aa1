# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
the master-worker harness: provisioning, failures, decoding and verification
"""

from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, TypedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field, asdict
import itertools
import logging
import enum
import math
import time

import numpy as np

from CodedTN.Classes.coding import (
    CodeScheme,
    DecodeGeometry,
    EncodedNetwork,
    degree,
    desired_positions,
    encode,
    f_resilient,
    gain,
)
from CodedTN.Classes.field import FieldKind, make_evaluation_points
from CodedTN.Classes.interpolation import EvaluationSet, interpolate, extract_coefficient, sum_coefficients
from CodedTN.Classes.network import TensorNetwork, full_contract, validate
from CodedTN.Classes.tensor import Tensor
from CodedTN.constants import EXHAUSTIVE_LIMIT, RANDOM_SUBSET_SAMPLES
from CodedTN.exceptions import ResilienceExceeded, InvalidNetwork, CorruptedNetwork
from CodedTN.types import ScalarType, SliceValues

log = logging.getLogger(__name__)

# relative error under which a floating point decode counts as a match
DEFAULT_FLOAT_TOLERANCE = 1e-6


class FailureMode(enum.Enum):
    ADVERSARIAL_EXHAUSTIVE = "adversarial"
    RANDOM = "random"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class FailurePattern:
    """
    which workers fail: every subset of size f, a seeded random subset or an explicit list

    Methods:
    -----------
    adversarial(f):
        every failure subset of size f
    random(f, seed):
        one seeded random subset
    explicit(ids):
        exactly the listed workers
    """

    mode: FailureMode
    f: int
    seed: int = 0
    ids: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.f < 0:
            raise ValueError(f"the failure count must be non-negative, got {self.f}")
        if self.mode == FailureMode.EXPLICIT:
            if len(self.ids) != self.f:
                raise ValueError(f"an explicit pattern lists {len(self.ids)} ids for f={self.f}")
            if len(set(self.ids)) != len(self.ids):
                raise ValueError(f"the failed ids {list(self.ids)} repeat a worker")

    @classmethod
    def adversarial(cls, f: int, seed: int = 0) -> "FailurePattern":
        return cls(FailureMode.ADVERSARIAL_EXHAUSTIVE, int(f), int(seed))

    @classmethod
    def random(cls, f: int, seed: int = 0) -> "FailurePattern":
        return cls(FailureMode.RANDOM, int(f), int(seed))

    @classmethod
    def explicit(cls, ids: Sequence[int]) -> "FailurePattern":
        ids = tuple(int(i) for i in ids)
        return cls(FailureMode.EXPLICIT, len(ids), 0, ids)

    def check(self, pool_size: int) -> None:
        if self.f > pool_size:
            raise ValueError(f"{self.f} failures do not fit in a pool of {pool_size} workers")
        for i in self.ids:
            if not 0 <= i < pool_size:
                raise ValueError(f"the worker id {i} is outside 0..{pool_size - 1}")

    def failed_set(self, pool_size: int) -> FrozenSet[int]:
        """
        the failed workers of a single run, the adversarial mode kills workers 0..f-1
        (run_experiment walks all of its subsets instead)
        :param pool_size: int
        :return: FrozenSet[int]
        """
        self.check(pool_size)
        if self.mode == FailureMode.EXPLICIT:
            return frozenset(self.ids)
        if self.mode == FailureMode.RANDOM:
            rng = np.random.default_rng(self.seed)
            return frozenset(int(i) for i in rng.choice(pool_size, size=self.f, replace=False))
        return frozenset(range(self.f))


@dataclass(frozen=True)
class WorkerJob:
    worker_id: int
    payload: EncodedNetwork
    group: SliceValues
    point: Optional[ScalarType]


def build_pool(net: TensorNetwork, scheme: CodeScheme, f: int) -> List[WorkerJob]:
    """
    the jobs of every worker: d + f + 1 encoded networks per group at distinct points
    (f + 1 copies of every sliced partition for replication), ids contiguous from 0
    :param net: the original network
    :param scheme: the code
    :param f: the failure count
    :type net: TensorNetwork
    :type scheme: CodeScheme
    :type f: int
    :return: List[WorkerJob]
    """
    report = validate(net, scheme.plan)
    if not report.ok:
        raise InvalidNetwork("; ".join(str(v) for v in report.violations), report)
    total = f_resilient(scheme, f)
    jobs: List[WorkerJob] = []
    if scheme.is_coded:
        per_group = degree(scheme) + f + 1
        points = make_evaluation_points(per_group, net.field)
        for group in scheme.groups():
            for x in points:
                payload = encode(net, scheme, x, group, checked_plan=False)
                jobs.append(WorkerJob(len(jobs), payload, group, payload.point))
    else:
        for values in scheme.plan.assignments():
            payload = encode(net, scheme, None, values, checked_plan=False)
            for _ in range(f + 1):
                jobs.append(WorkerJob(len(jobs), payload, values, None))
    if len(jobs) != total:
        raise CorruptedNetwork(f"provisioned {len(jobs)} workers but the formula says {total}")
    log.info("built a pool of %d workers for %s with f=%d", len(jobs), scheme.name, f)
    return jobs


def _work(job: WorkerJob) -> Tuple[int, Tensor]:
    log.debug("worker %d contracting", job.worker_id)
    return job.worker_id, full_contract(job.payload.network)


def run(
    pool: Sequence[WorkerJob],
    pattern: FailurePattern,
    threads: Optional[int] = None,
) -> Dict[int, Tensor]:
    """
    every worker that does not fail contracts its network, results are keyed by worker id
    :param pool: the jobs
    :param pattern: the failures
    :param threads: the thread count of the parallel map (None lets the executor decide)
    :return: Dict[int, Tensor]
    """
    failed = pattern.failed_set(len(pool))
    alive = [job for job in pool if job.worker_id not in failed]
    if threads == 1:
        results = [_work(job) for job in alive]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(_work, alive))
    return dict(sorted(results))


def _group_jobs(pool: Sequence[WorkerJob]) -> Dict[SliceValues, List[WorkerJob]]:
    groups: Dict[SliceValues, List[WorkerJob]] = {}
    for job in pool:
        groups.setdefault(job.group, []).append(job)
    return groups


def survivors_per_group(pool: Sequence[WorkerJob], survivors: Mapping[int, Tensor]) -> Dict[SliceValues, int]:
    return {
        group: sum(1 for job in jobs if job.worker_id in survivors)
        for group, jobs in sorted(_group_jobs(pool).items())
    }


def decode(
    scheme: CodeScheme,
    survivors: Mapping[int, Tensor],
    pool: Sequence[WorkerJob],
    geometry: Optional[DecodeGeometry] = None,
) -> Tensor:
    """
    coded: per group the lowest d + 1 surviving ids are interpolated and the wanted
    coefficients are read (the target exponent for 2-node codes, the sum of the desired
    exponents for hyperedge codes), then the groups are summed;
    replication: the lowest surviving replica of every slice, summed over all slices
    :param scheme: the code
    :param survivors: worker id -> result
    :param pool: the jobs the results came from
    :param geometry: desired_positions(scheme) when omitted
    :return: Tensor
    """
    total: Optional[Tensor] = None
    grouped = _group_jobs(pool)
    if scheme.is_coded:
        geometry = geometry if geometry is not None else desired_positions(scheme)
        need = geometry.degree + 1
    else:
        need = 1

    for group in sorted(grouped):
        alive = [job for job in grouped[group] if job.worker_id in survivors][:need]
        if len(alive) < need:
            raise ResilienceExceeded(
                f"the group {group} has {len(alive)} survivors but needs {need}", group
            )
        if scheme.is_coded:
            ev = EvaluationSet(
                tuple(job.point for job in alive),
                tuple(survivors[job.worker_id] for job in alive),
                geometry.degree,
            )
            coeffs = interpolate(ev)
            if geometry.single:
                part = extract_coefficient(coeffs, next(iter(geometry.positions)))
            else:
                part = sum_coefficients(coeffs, geometry.positions)
        else:
            part = survivors[alive[0].worker_id]
        total = part if total is None else total.plus(part)
    if total is None:
        raise ResilienceExceeded("there is no group to decode")
    return total


class ReportDict(TypedDict):
    schema_version: int
    scheme: str
    field: str
    N: int
    f: int
    degree: int
    workers_provisioned: int
    workers_failed: int
    formula_check: bool
    gain: int
    decode_success: bool
    oracle_match: bool
    exact_match: bool
    max_abs_error: Optional[float]
    max_rel_error: Optional[float]
    survivors_per_group: Dict[str, int]
    subsets_checked: int
    exhaustive: bool
    failing_subset: Optional[List[int]]
    deficient_group: Optional[List[int]]
    seed: int
    timings: Dict[str, float]


@dataclass
class SimulationReport:
    """
    everything one experiment found out, timings are the only field that
    depends on scheduling
    """

    scheme: str
    field: str
    N: int
    f: int
    degree: int
    workers_provisioned: int
    workers_failed: int
    formula_check: bool
    gain: int
    decode_success: bool = False
    oracle_match: bool = False
    exact_match: bool = False
    max_abs_error: Optional[float] = None
    max_rel_error: Optional[float] = None
    survivors_per_group: Dict[str, int] = dc_field(default_factory=dict)
    subsets_checked: int = 0
    exhaustive: bool = False
    failing_subset: Optional[List[int]] = None
    deficient_group: Optional[List[int]] = None
    seed: int = 0
    timings: Dict[str, float] = dc_field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.decode_success and self.oracle_match

    def to_dict(self, schema_version: int = 1) -> ReportDict:
        out = {"schema_version": schema_version}
        out.update(asdict(self))
        return out  # type: ignore[return-value]

    def deterministic_dict(self) -> dict:
        out = dict(self.to_dict())
        out.pop("timings")
        return out


def _group_key(group: SliceValues) -> str:
    return ",".join(str(v) for v in group) if group else "-"


def failure_subsets(
    pool: Sequence[WorkerJob],
    pattern: FailurePattern,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    random_subsets: int = RANDOM_SUBSET_SAMPLES,
) -> Tuple[List[FrozenSet[int]], bool]:
    """
    the failure subsets an experiment decodes from and whether they are all of them;
    above the guard the adversarial mode samples random subsets and adds the subsets
    that put every failure into one group
    :param pool: the jobs
    :param pattern: the failures
    :param exhaustive_limit: the largest C(pool, f) that is enumerated
    :param random_subsets: the sample count above the guard
    :return: Tuple[List[FrozenSet[int]], bool]
    """
    size = len(pool)
    pattern.check(size)
    if pattern.mode != FailureMode.ADVERSARIAL_EXHAUSTIVE:
        return [pattern.failed_set(size)], False
    f = pattern.f
    if math.comb(size, f) <= exhaustive_limit:
        return [frozenset(c) for c in itertools.combinations(range(size), f)], True

    log.warning(
        "C(%d, %d) = %d failure subsets is above the guard %d, sampling %d subsets",
        size, f, math.comb(size, f), exhaustive_limit, random_subsets,
    )
    rng = np.random.default_rng(pattern.seed)
    seen = set()
    subsets: List[FrozenSet[int]] = []
    for jobs in _group_jobs(pool).values():
        # every group holds at least f + 1 workers
        subset = frozenset(job.worker_id for job in jobs[:f])
        if subset not in seen:
            seen.add(subset)
            subsets.append(subset)
    for _ in range(random_subsets):
        subset = frozenset(int(i) for i in rng.choice(size, size=f, replace=False))
        if subset not in seen:
            seen.add(subset)
            subsets.append(subset)
    return subsets, False


def run_experiment(
    net: TensorNetwork,
    scheme: CodeScheme,
    f: int,
    pattern: FailurePattern,
    field: Optional[FieldKind] = None,
    threads: Optional[int] = None,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    random_subsets: int = RANDOM_SUBSET_SAMPLES,
    float_tolerance: float = DEFAULT_FLOAT_TOLERANCE,
) -> SimulationReport:
    """
    it provisions the pool, runs every worker once, decodes from every failure subset of
    the pattern and compares with the full contraction of the original network,
    erased workers simply drop out of the decode so one run serves all subsets
    :param net: the network
    :param scheme: the code
    :param f: the failure count the pool is sized for
    :param pattern: the failures
    :param field: run in another field (integer valued data only)
    :param threads: worker threads
    :param exhaustive_limit: the adversarial guard
    :param random_subsets: samples above the guard
    :param float_tolerance: the relative error a floating point decode may have
    :return: SimulationReport
    """
    if field is not None:
        net = net.astype(field)
    timings: Dict[str, float] = {}

    start = time.perf_counter()
    pool = build_pool(net, scheme, f)
    timings["encode"] = time.perf_counter() - start

    start = time.perf_counter()
    results = run(pool, FailurePattern.explicit([]), threads)
    timings["run"] = time.perf_counter() - start

    start = time.perf_counter()
    oracle = full_contract(net)
    timings["oracle"] = time.perf_counter() - start

    report = SimulationReport(
        scheme=scheme.name,
        field=net.field.selector,
        N=scheme.plan.N,
        f=f,
        degree=degree(scheme),
        workers_provisioned=len(pool),
        workers_failed=pattern.f,
        formula_check=len(pool) == f_resilient(scheme, f),
        gain=gain(scheme, f),
        seed=pattern.seed,
    )

    start = time.perf_counter()
    subsets, exhaustive = failure_subsets(pool, pattern, exhaustive_limit, random_subsets)
    geometry = desired_positions(scheme) if scheme.is_coded else None
    worst_abs: Optional[float] = None
    worst_rel: Optional[float] = None
    exact = True
    match = True
    success = True
    first_counts: Optional[Dict[SliceValues, int]] = None
    for failed in subsets:
        survivors = {i: r for i, r in results.items() if i not in failed}
        counts = survivors_per_group(pool, survivors)
        if first_counts is None:
            first_counts = counts
        try:
            decoded = decode(scheme, survivors, pool, geometry)
        except ResilienceExceeded as e:
            log.info("decode failed for %s: %s", sorted(failed), e)
            success = False
            report.failing_subset = sorted(failed)
            report.deficient_group = list(e.group) if e.group is not None else None
            first_counts = counts
            break
        abs_err, rel_err, is_exact = net.field.error_metric(
            decoded.transpose(oracle.labels).data, oracle.data
        )
        exact = exact and is_exact
        if net.field.exact:
            ok = is_exact
        else:
            ok = rel_err is not None and rel_err <= float_tolerance
            worst_abs = abs_err if worst_abs is None else max(worst_abs, abs_err)
            worst_rel = rel_err if worst_rel is None else max(worst_rel, rel_err)
        if not ok and match:
            report.failing_subset = sorted(failed)
        match = match and ok
        report.subsets_checked += 1
    timings["decode"] = time.perf_counter() - start

    report.decode_success = success
    report.oracle_match = success and match
    report.exact_match = success and exact
    report.max_abs_error = worst_abs if not net.field.exact else (0.0 if report.exact_match else None)
    report.max_rel_error = worst_rel if not net.field.exact else (0.0 if report.exact_match else None)
    report.exhaustive = exhaustive
    report.survivors_per_group = {_group_key(g): c for g, c in (first_counts or {}).items()}
    report.timings = timings
    log.info(
        "%s with f=%d: %d workers, %d subsets, success=%s",
        scheme.name, f, len(pool), report.subsets_checked, report.success,
    )
    return report


@dataclass(frozen=True)
class TightnessResult:
    defeated: bool
    failed: Tuple[int, ...]
    group: SliceValues


def tightness_probe(
    net: TensorNetwork,
    scheme: CodeScheme,
    f: int,
    threads: Optional[int] = None,
) -> TightnessResult:
    """
    it puts f + 1 failures into the first group of a pool sized for f, which leaves the
    group d survivors, decoding has to fail for the pool not to be over-provisioned
    :param net: TensorNetwork
    :param scheme: CodeScheme
    :param f: int
    :param threads: Optional[int]
    :return: TightnessResult
    """
    pool = build_pool(net, scheme, f)
    first_group = min(_group_jobs(pool))
    ids = [job.worker_id for job in pool if job.group == first_group][: f + 1]
    results = run(pool, FailurePattern.explicit(ids), threads)
    try:
        decode(scheme, results, pool)
    except ResilienceExceeded:
        return TightnessResult(True, tuple(ids), first_group)
    return TightnessResult(False, tuple(ids), first_group)


__all__ = [
    "DEFAULT_FLOAT_TOLERANCE",
    "FailureMode",
    "FailurePattern",
    "WorkerJob",
    "build_pool",
    "run",
    "survivors_per_group",
    "decode",
    "ReportDict",
    "SimulationReport",
    "failure_subsets",
    "run_experiment",
    "TightnessResult",
    "tightness_probe",
]
