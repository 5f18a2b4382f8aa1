"""
end to end runs on the two worked examples plus the property sweeps
"""

import pytest
import numpy as np

from CodedTN.Classes.benchmarks import encoding_cost_scaling, partition_timing
from CodedTN.Classes.coding import CodeKind, degree, f_resilient, gain, make_scheme, plan_best
from CodedTN.Classes.examples import random_network, random_plan, star_network
from CodedTN.Classes.field import Complex128
from CodedTN.Classes.network import full_contract, slice_sum
from CodedTN.Classes.oracle import alignment_grid, brute_force_reference, check_alignment, mutate_strides
from CodedTN.Classes.simulator import FailurePattern, run_experiment, tightness_probe


def test_example1_end_to_end(example1):
    net, plan = example1
    scheme = make_scheme(CodeKind.TWO_NODE, plan)
    assert degree(scheme) == 22
    assert [f_resilient(scheme, f) for f in range(6)] == [f + 23 for f in range(6)]
    assert [gain(scheme, f) for f in range(6)] == [11 * (f - 1) for f in range(6)]
    report = run_experiment(net, scheme, 3, FailurePattern.adversarial(3), threads=1)
    assert report.workers_provisioned == 26
    assert report.exhaustive
    assert report.subsets_checked == 2600
    assert report.exact_match
    assert report.success


@pytest.mark.parametrize("f, subsets", [(1, 21), (2, 231)])
def test_example2_end_to_end(example2, f, subsets):
    net, plan = example2
    scheme = make_scheme(CodeKind.HYPEREDGE, plan)
    assert degree(scheme) == 19
    assert gain(scheme, f) == 3 * f - 16
    report = run_experiment(net, scheme, f, FailurePattern.adversarial(f), threads=1)
    assert report.workers_provisioned == f + 20
    assert report.subsets_checked == subsets
    assert report.exact_match
    assert report.success


def test_slice_sum_identity_on_random_networks(gf):
    rng = np.random.default_rng(2024)
    c128 = Complex128()
    for _ in range(200):
        net = random_network(rng, field=gf)
        plan = random_plan(net, rng)
        full = full_contract(net)
        assert slice_sum(net, plan).transpose(full.labels).equals(full)
        reference = brute_force_reference(net)
        assert full.transpose(reference.labels).equals(reference)

        as_complex = net.astype(c128)
        expected = full_contract(as_complex)
        got = slice_sum(as_complex, plan).transpose(expected.labels)
        _, rel, _ = c128.error_metric(got.data, expected.data)
        assert rel <= 1e-9


def test_random_six_tensor_networks_with_the_best_code(gf):
    rng = np.random.default_rng(77)
    checked = 0
    for seed in range(12):
        net = random_network(rng, field=gf, tensors=6)
        plan = random_plan(net, rng)
        if not plan.n:
            continue
        scheme = plan_best(plan, 2)
        report = run_experiment(net, scheme, 2, FailurePattern.random(2, seed=seed), threads=1)
        assert report.scheme == scheme.name
        assert report.workers_provisioned == f_resilient(scheme, 2)
        assert report.workers_failed == 2
        assert report.exact_match
        assert report.success
        checked += 1
    assert checked >= 5


def test_alignment_over_the_grid():
    schemes = alignment_grid()
    assert schemes
    for scheme in schemes:
        assert check_alignment(scheme), scheme.name
        for strides in mutate_strides(scheme):
            assert not check_alignment(scheme, strides), (scheme.name, strides)


def test_tightness_of_the_examples(example1, example2):
    net, plan = example1
    assert tightness_probe(net, make_scheme(CodeKind.TWO_NODE, plan), 3, threads=1).defeated
    net2, plan2 = example2
    for f in (1, 2):
        assert tightness_probe(net2, make_scheme(CodeKind.HYPEREDGE, plan2), f, threads=1).defeated


@pytest.mark.slow
def test_encoded_partitions_cost_the_same():
    net, plan = star_network([(2, 4), (2, 3)], Complex128(), bond=12, open_dim=8)
    timing = partition_timing(net, make_scheme(CodeKind.TWO_NODE, plan), repeats=15)
    assert timing.relative_difference < 0.10


@pytest.mark.slow
def test_encoding_is_cheaper_than_contraction():
    result = encoding_cost_scaling((8, 12, 16, 24, 32), k=3, m=2, repeats=5)
    assert result.slope_gap >= 0.8
