import pytest
import numpy as np

from CodedTN.Classes.field import make_evaluation_points
from CodedTN.Classes.interpolation import (
    EvaluationSet,
    evaluate,
    extract_coefficient,
    interpolate,
    sum_coefficients,
)
from CodedTN.Classes.tensor import Tensor, random_tensor
from CodedTN.exceptions import (
    CoefficientOutOfRange,
    DuplicatePoints,
    InsufficientSurvivors,
    PointFamilyError,
)


def scalars(values, field):
    return tuple(Tensor((), [v], field) for v in values)


def test_constant_polynomial(gf):
    v = Tensor((("i", 2),), [4, 9], gf)
    coeffs = interpolate(EvaluationSet((5,), (v,), 0))
    assert len(coeffs) == 1
    assert coeffs[0].equals(v)


def test_quadratic_from_three_points(gf):
    ev = EvaluationSet((0, 1, 2), scalars([14, 60, 136], gf), 2)
    assert [c.item() for c in interpolate(ev)] == [14, 31, 15]


def test_extra_points_are_ignored(gf):
    ev = EvaluationSet((0, 1, 2, 3), scalars([14, 60, 136, 0], gf), 2)
    assert [c.item() for c in interpolate(ev)] == [14, 31, 15]


def test_degree_22_round_trip(gf, rng):
    coeffs = [random_tensor((("o", 3),), gf, rng, 0, 2**40) for _ in range(23)]
    points = make_evaluation_points(23, gf)
    ev = EvaluationSet(tuple(points), tuple(evaluate(coeffs, x) for x in points), 22)
    assert all(a.equals(b) for a, b in zip(interpolate(ev), coeffs))


@pytest.mark.parametrize("d", [0, 1, 7, 31, 64])
def test_survivor_subsets_do_not_matter(gf, d):
    rng = np.random.default_rng(d)
    coeffs = [random_tensor((("o", 2), ("p", 2)), gf, rng) for _ in range(d + 1)]
    points = make_evaluation_points(d + 6, gf)
    values = [evaluate(coeffs, x) for x in points]
    for _ in range(10):
        chosen = sorted(rng.choice(d + 6, size=d + 1, replace=False))
        ev = EvaluationSet(tuple(points[i] for i in chosen), tuple(values[i] for i in chosen), d)
        assert all(a.equals(b) for a, b in zip(interpolate(ev), coeffs))


def test_complex_round_trip_on_roots_of_unity(c128):
    rng = np.random.default_rng(3)
    d = 40
    coeffs = [random_tensor((("o", 3),), c128, rng) for _ in range(d + 1)]
    points = make_evaluation_points(d + 1, c128)
    ev = EvaluationSet(tuple(points), tuple(evaluate(coeffs, x) for x in points), d)
    for got, want in zip(interpolate(ev), coeffs):
        _, rel, _ = c128.error_metric(got.data, want.data)
        assert rel <= 1e-6 * (d + 1)


def test_real_low_degree(f64):
    coeffs = [Tensor((), [c], f64) for c in (1.0, -2.0, 0.5, 3.0)]
    points = make_evaluation_points(4, f64)
    ev = EvaluationSet(tuple(points), tuple(evaluate(coeffs, x) for x in points), 3)
    got = [c.item() for c in interpolate(ev)]
    np.testing.assert_allclose(got, [1.0, -2.0, 0.5, 3.0], rtol=1e-9, atol=1e-12)


def test_real_high_degree_warns(f64, caplog):
    d = 24
    points = make_evaluation_points(d + 1, f64)
    ev = EvaluationSet(tuple(points), scalars([1.0] * (d + 1), f64), d)
    with caplog.at_level("WARNING", logger="CodedTN.Classes.interpolation"):
        interpolate(ev)
    assert "REAL64" in caplog.text


def test_complex_points_must_be_on_the_unit_circle(c128):
    ev = EvaluationSet((0.5 + 0j, 1 + 0j), scalars([1, 2], c128), 1)
    with pytest.raises(PointFamilyError):
        interpolate(ev)


def test_evaluation_set_checks(gf):
    with pytest.raises(InsufficientSurvivors):
        EvaluationSet((1, 2), scalars([1, 2], gf), 2)
    with pytest.raises(DuplicatePoints):
        EvaluationSet((1, 1, 2), scalars([1, 2, 3], gf), 2)


def test_extract_coefficient(gf):
    coeffs = list(scalars([14, 31, 15], gf))
    assert extract_coefficient(coeffs, 1).item() == 31
    assert extract_coefficient(coeffs, 0).item() == 14
    with pytest.raises(CoefficientOutOfRange):
        extract_coefficient(coeffs, 3)


def test_sum_coefficients(gf):
    coeffs = list(scalars([15, 68, 100, 48], gf))
    assert sum_coefficients(coeffs, {0, 3}).item() == 63
    assert sum_coefficients(coeffs, {2}).equals(extract_coefficient(coeffs, 2))
    pair = list(scalars([4, 9], gf))
    assert sum_coefficients(pair, {0, 1}).item() == evaluate(pair, 1).item()
    with pytest.raises(CoefficientOutOfRange):
        sum_coefficients(coeffs, {4})


def test_small_prime_field(gf7):
    # 14 + 31x + 15x^2 reduced mod 7
    ev = EvaluationSet((0, 1, 2), scalars([14, 60, 136], gf7), 2)
    assert [c.item() for c in interpolate(ev)] == [0, 3, 1]
