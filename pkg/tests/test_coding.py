import math

import pytest
import numpy as np

from CodedTN.Classes.coding import (
    CodeKind,
    applicable_schemes,
    degree,
    desired_positions,
    encode,
    f_resilient,
    gain,
    make_scheme,
    plan_best,
    scheme_from_name,
    strides,
    template_exponents_2node,
    template_exponents_hyper,
)
from CodedTN.Classes.examples import star_network
from CodedTN.Classes.field import make_evaluation_points
from CodedTN.Classes.interpolation import EvaluationSet, extract_coefficient, interpolate
from CodedTN.Classes.network import (
    SlicingPlan,
    TensorNetwork,
    full_contract,
    slice_network,
    topology_fingerprint,
)
from CodedTN.Classes.tensor import Tensor
from CodedTN.exceptions import IntegerOverflow, PlanTooLarge, SchemeNotApplicable


EXAMPLE1 = SlicingPlan.from_pairs([(2, 4), (2, 3)])
EXAMPLE2 = SlicingPlan.from_pairs([(3, 2), (4, 2)])
MIXED = SlicingPlan.from_pairs([(2, 2), (3, 2)])


def test_template_exponents_2node():
    assert template_exponents_2node(4, 1) == ([0, 1, 2, 3], [3, 2, 1, 0])
    assert template_exponents_2node(3, 4) == ([0, 4, 8], [8, 4, 0])
    assert template_exponents_2node(1, 7) == ([0], [0])


def test_template_exponents_hyper():
    assert template_exponents_hyper(3, 2, 1) == [0, 1]
    assert template_exponents_hyper(4, 2, 4) == [0, 4]
    assert template_exponents_hyper(2, 3, 1) == [0, 1, 3]


def test_strides():
    assert strides(EXAMPLE1, CodeKind.TWO_NODE) == [1, 4]
    assert strides(EXAMPLE2, CodeKind.HYPEREDGE) == [1, 4]


def test_degree_examples():
    assert degree(make_scheme(CodeKind.TWO_NODE, EXAMPLE1)) == 22
    assert degree(make_scheme(CodeKind.HYPEREDGE, EXAMPLE2)) == 19
    ones = SlicingPlan.from_pairs([(2, 1), (3, 1)])
    assert degree(make_scheme(CodeKind.HYPEREDGE, ones)) == 0
    assert degree(make_scheme(CodeKind.NAIVE_REPLICATION, EXAMPLE1)) == 0


@pytest.mark.parametrize("f", range(6))
def test_example1_closed_forms(f):
    scheme = make_scheme(CodeKind.TWO_NODE, EXAMPLE1)
    assert f_resilient(scheme, f) == f + 23
    assert gain(scheme, f) == 11 * (f - 1)


@pytest.mark.parametrize("f", range(8))
def test_example2_closed_forms(f):
    scheme = make_scheme(CodeKind.HYPEREDGE, EXAMPLE2)
    assert f_resilient(scheme, f) == f + 20
    assert gain(scheme, f) == 3 * f - 16


@pytest.mark.parametrize("L", range(2, 9))
def test_single_two_node_index_matches_matdot(L):
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, L)]))
    for f in range(4):
        assert f_resilient(scheme, f) == f + 2 * L - 1
    forward, backward = template_exponents_2node(L, 1)
    assert forward == list(range(L))
    assert backward == list(range(L))[::-1]
    assert desired_positions(scheme).positions == frozenset({L - 1})


@pytest.mark.parametrize("L", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_uniform_two_node_plan(L, n):
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, L)] * n))
    for f in range(4):
        assert f_resilient(scheme, f) == f + 2 * L**n - 1


def test_naive_replication():
    scheme = make_scheme(CodeKind.NAIVE_REPLICATION, EXAMPLE1)
    assert f_resilient(scheme, 3) == 48
    assert all(gain(scheme, f) == 0 for f in range(6))


def test_partial_schemes():
    partial = make_scheme(CodeKind.PARTIAL_TWO_NODE, MIXED, 1)
    assert partial.name == "partial2node(1)"
    assert partial.coded_labels == ("s1",)
    assert f_resilient(partial, 2) == 10
    assert f_resilient(make_scheme(CodeKind.HYPEREDGE, MIXED), 2) == 14
    one = make_scheme(CodeKind.PARTIAL_ONE_INDEX, SlicingPlan.from_pairs([(4, 2), (3, 3)]))
    # the index with the smallest m is coded
    assert one.coded_plan.pairs == ((3, 3),)
    assert f_resilient(one, 1) == 2 * (12 + 2)


def test_two_node_needs_m_equal_2():
    with pytest.raises(SchemeNotApplicable):
        make_scheme(CodeKind.TWO_NODE, EXAMPLE2)
    with pytest.raises(SchemeNotApplicable):
        make_scheme(CodeKind.PARTIAL_TWO_NODE, EXAMPLE2)


def test_plan_best_examples():
    assert plan_best(EXAMPLE1, 2).kind == CodeKind.TWO_NODE
    assert plan_best(EXAMPLE1, 0).kind == CodeKind.NAIVE_REPLICATION
    best = plan_best(MIXED, 2)
    assert best.kind == CodeKind.PARTIAL_TWO_NODE
    assert f_resilient(best, 2) == 10
    assert plan_best(EXAMPLE2, 2).kind == CodeKind.NAIVE_REPLICATION


def closed_form_minimum(pairs, f):
    N = math.prod(L for _, L in pairs)
    counts = [N * (f + 1)]
    counts.append(f + math.prod((m**L - 1) // (m - 1) for m, L in pairs))
    two = [L for m, L in pairs if m == 2]
    rest = [L for m, L in pairs if m != 2]
    if two and not rest:
        counts.append(f + 2 * math.prod(two) - 1)
    if two:
        counts.append(math.prod(rest) * (f + 2 * math.prod(two) - 1))
    m1, L1 = min(pairs, key=lambda p: p[0])
    counts.append(N // L1 * (f + sum(m1**k for k in range(L1))))
    return min(counts)


def test_plan_best_is_the_minimum():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        pairs = [(int(rng.choice([2, 2, 3, 4])), int(rng.integers(1, 4))) for _ in range(n)]
        plan = SlicingPlan.from_pairs(pairs)
        for f in range(7):
            best = plan_best(plan, f)
            assert f_resilient(best, f) == closed_form_minimum(pairs, f)
            assert f_resilient(best, f) == min(f_resilient(s, f) for s in applicable_schemes(plan))


def test_scheme_from_name():
    assert scheme_from_name("2node", EXAMPLE1).kind == CodeKind.TWO_NODE
    assert scheme_from_name("auto", EXAMPLE2, 2).kind == CodeKind.NAIVE_REPLICATION
    assert scheme_from_name("partial2node", MIXED, k=1).k == 1
    with pytest.raises(SchemeNotApplicable):
        scheme_from_name("turbo", EXAMPLE1)


def test_desired_positions():
    assert desired_positions(make_scheme(CodeKind.TWO_NODE, EXAMPLE1)).positions == {11}
    geometry = desired_positions(make_scheme(CodeKind.HYPEREDGE, EXAMPLE2))
    assert dict(geometry.by_assignment) == {(1, 1): 0, (2, 1): 3, (1, 2): 16, (2, 2): 19}
    single = desired_positions(make_scheme(CodeKind.HYPEREDGE, SlicingPlan.from_pairs([(3, 2)])))
    assert dict(single.by_assignment) == {(1,): 0, (2,): 3}


def test_huge_plans_are_rejected():
    plan = SlicingPlan.from_pairs([(2, 2**21), (2, 2**21)])
    with pytest.raises(PlanTooLarge):
        degree(make_scheme(CodeKind.TWO_NODE, plan))
    with pytest.raises(IntegerOverflow):
        degree(make_scheme(CodeKind.HYPEREDGE, SlicingPlan.from_pairs([(4, 40)])))


def test_encode_endpoints_of_a_two_node_index(gf):
    A1 = Tensor((("a", 4), ("u", 1)), [1, 2, 3, 4], gf)
    A2 = Tensor((("a", 4), ("v", 1)), [5, 6, 7, 8], gf)
    net = TensorNetwork({"A1": A1, "A2": A2}, gf)
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, 4)], ["a"]))
    x = 3
    enc = encode(net, scheme, x).network
    assert enc.tensors["A1"].flat()[0] == 1 + 2 * x + 3 * x**2 + 4 * x**3
    assert enc.tensors["A2"].flat()[0] == 5 * x**3 + 6 * x**2 + 7 * x + 8


def test_encode_L1_is_the_sliced_partition(gf):
    net, plan = star_network([(2, 1)], gf)
    scheme = make_scheme(CodeKind.TWO_NODE, plan)
    sliced = slice_network(net, plan, (1,))
    for x in (1, 2, 5):
        enc = encode(net, scheme, x).network
        assert full_contract(enc).equals(full_contract(sliced))


def test_encoded_quadratic_holds_the_product_sum(gf):
    A1 = Tensor((("a", 2),), [2, 3], gf)
    A2 = Tensor((("a", 2),), [5, 7], gf)
    net = TensorNetwork({"A1": A1, "A2": A2}, gf)
    scheme = make_scheme(CodeKind.TWO_NODE, SlicingPlan.from_pairs([(2, 2)], ["a"]))
    points = make_evaluation_points(3, gf)
    values = [full_contract(encode(net, scheme, x).network) for x in points]
    coeffs = interpolate(EvaluationSet(tuple(points), tuple(values), 2))
    assert [c.item() for c in coeffs] == [14, 31, 15]
    assert extract_coefficient(coeffs, 1).item() == 2 * 5 + 3 * 7


def test_encoding_keeps_the_topology(gf):
    net, plan = star_network([(2, 3), (3, 2)], gf)
    for kind in (CodeKind.HYPEREDGE, CodeKind.PARTIAL_TWO_NODE, CodeKind.PARTIAL_ONE_INDEX):
        scheme = make_scheme(kind, plan)
        for group in scheme.groups():
            sliced = slice_network(net, scheme.plan, (1,) * scheme.k + tuple(group))
            enc = encode(net, scheme, 2, group).network
            assert topology_fingerprint(enc) == topology_fingerprint(sliced)


def test_encoding_is_linear(gf):
    u, plan = star_network([(2, 2), (3, 2)], gf, seed=1)
    v, _ = star_network([(2, 2), (3, 2)], gf, seed=2)
    w = TensorNetwork({tid: u.tensors[tid].plus(v.tensors[tid]) for tid in u.tensors}, gf)
    scheme = make_scheme(CodeKind.HYPEREDGE, plan)
    eu = encode(u, scheme, 5).network
    ev = encode(v, scheme, 5).network
    ew = encode(w, scheme, 5).network
    for tid in ("A1", "A2", "B1", "B2", "B3"):
        assert ew.tensors[tid].equals(eu.tensors[tid].plus(ev.tensors[tid]))
