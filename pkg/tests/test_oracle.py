from collections import Counter

import pytest
import numpy as np

from CodedTN.Classes.coding import CodeKind, make_scheme
from CodedTN.Classes.examples import hyperedge_triple, random_network, sample_network
from CodedTN.Classes.network import SlicingPlan, TensorNetwork, full_contract
from CodedTN.Classes.oracle import (
    alignment_grid,
    brute_force_reference,
    check_alignment,
    mutate_strides,
    symbolic_expand,
)
from CodedTN.Classes.tensor import Tensor
from CodedTN.exceptions import GuardExceeded, SchemeNotCoded


def test_brute_force_matmul(matmul):
    assert brute_force_reference(matmul).tolist() == [[19, 22], [43, 50]]


def test_brute_force_all_ones(gf):
    net = TensorNetwork(
        {
            "A": Tensor((("i", 2), ("j", 3)), np.ones((2, 3), dtype=int), gf),
            "B": Tensor((("j", 3),), np.ones(3, dtype=int), gf),
        },
        gf,
    )
    assert brute_force_reference(net).tolist() == [3, 3]
    closed = TensorNetwork(
        {
            "A": Tensor((("i", 2), ("j", 3)), np.ones((2, 3), dtype=int), gf),
            "B": Tensor((("i", 2), ("j", 3)), np.ones((2, 3), dtype=int), gf),
        },
        gf,
    )
    assert brute_force_reference(closed).item() == 6


def test_brute_force_hyperedge(gf):
    out = brute_force_reference(hyperedge_triple(field=gf))
    assert out.data.reshape(-1)[0] == 63


def test_brute_force_agrees_with_full_contract(gf):
    net = sample_network(2, gf, seed=4)
    expected = full_contract(net)
    assert brute_force_reference(net).equals(expected.transpose(sorted(expected.labels)))
    rng = np.random.default_rng(21)
    for _ in range(15):
        net = random_network(rng, max_tensors=5, max_dim=3, max_labels=6, field=gf)
        expected = full_contract(net)
        got = brute_force_reference(net)
        assert got.equals(expected.transpose(got.labels))


def test_brute_force_guard(gf):
    with pytest.raises(GuardExceeded):
        brute_force_reference(sample_network(3, gf), limit=100)


def test_symbolic_matdot():
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, 2)], ["a"]))
    poly = symbolic_expand(scheme)
    assert poly.max_exponent == 2
    assert poly.at(0) == Counter({("a1[1]", "a2[2]"): 1})
    assert poly.at(1) == Counter({("a1[1]", "a2[1]"): 1, ("a1[2]", "a2[2]"): 1})
    assert poly.at(2) == Counter({("a1[2]", "a2[1]"): 1})


def test_symbolic_single_hyperedge():
    scheme = make_scheme(CodeKind.HYPEREDGE, SlicingPlan.from_pairs([(3, 2)], ["a"]))
    poly = symbolic_expand(scheme)
    assert poly.max_exponent == 3
    assert poly.at(0) == Counter({("a1[1]", "a2[1]", "a3[1]"): 1})
    assert poly.at(3) == Counter({("a1[2]", "a2[2]", "a3[2]"): 1})
    assert poly.find(("a1[2]", "a2[2]", "a3[2]")) == [3]


def test_symbolic_needs_a_code():
    scheme = make_scheme(CodeKind.NAIVE_REPLICATION, SlicingPlan.from_pairs([(2, 2)]))
    with pytest.raises(SchemeNotCoded):
        symbolic_expand(scheme)


def test_example_schemes_align(example1, example2):
    for (_, plan), kind in ((example1, CodeKind.TWO_NODE), (example2, CodeKind.HYPEREDGE)):
        result = check_alignment(make_scheme(kind, plan))
        assert result.passed, result.message


def test_alignment_grid_passes():
    schemes = alignment_grid(two_node_limit=8, hyper_limit=40, max_n=2)
    assert {s.kind for s in schemes} == {CodeKind.TWO_NODE, CodeKind.HYPEREDGE}
    for scheme in schemes:
        assert check_alignment(scheme), scheme.name


def test_mutated_strides_are_caught(example1, example2):
    for (_, plan), kind in ((example1, CodeKind.TWO_NODE), (example2, CodeKind.HYPEREDGE)):
        scheme = make_scheme(kind, plan)
        mutants = mutate_strides(scheme)
        assert mutants
        for strides in mutants:
            assert not check_alignment(scheme, strides)


def test_mutations_of_a_single_stride():
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, 3)]))
    assert mutate_strides(scheme) == [[2]]
    result = check_alignment(scheme, [2])
    assert not result.passed
    assert result.exponent == 2
