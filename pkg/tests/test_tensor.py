import pytest
import numpy as np

from CodedTN.Classes.field import PrimeField, Real64
from CodedTN.Classes.tensor import (
    Tensor,
    contract_tensors,
    fix_index,
    multiway_contract,
    outer_product,
    random_tensor,
)
from CodedTN.exceptions import (
    DimensionMismatch,
    DuplicateIndex,
    ShapeError,
    SliceValueOutOfRange,
    UnknownIndex,
)


def test_tensor_is_immutable(gf):
    t = Tensor((("i", 2), ("j", 2)), [1, 2, 3, 4], gf)
    assert t.shape == (2, 2)
    assert t.labels == ("i", "j")
    with pytest.raises(ValueError):
        t.data[0, 0] = 9


def test_tensor_rejects_bad_axes(gf):
    with pytest.raises(DuplicateIndex):
        Tensor((("i", 2), ("i", 2)), [1, 2, 3, 4], gf)
    with pytest.raises(ShapeError):
        Tensor((("i", 2), ("j", 3)), [1, 2, 3, 4], gf)
    with pytest.raises(ShapeError):
        Tensor((("i", 0),), [], gf)


def test_fix_index_matrix(gf):
    B = Tensor((("i", 2), ("j", 2)), [[1, 2], [3, 4]], gf)
    v = fix_index(B, "j", 1)
    assert v.axes == (("i", 2),)
    assert v.tolist() == [1, 3]


def test_fix_index_rank3(gf):
    C = Tensor((("i", 2), ("j", 2), ("k", 2)), list(range(1, 9)), gf)
    assert fix_index(C, "i", 2).tolist() == [[5, 6], [7, 8]]


def test_fix_index_errors(gf):
    scalar = Tensor((), [5], gf)
    with pytest.raises(UnknownIndex):
        fix_index(scalar, "i", 1)
    B = Tensor((("i", 2),), [1, 2], gf)
    with pytest.raises(SliceValueOutOfRange):
        fix_index(B, "i", 3)
    with pytest.raises(SliceValueOutOfRange):
        fix_index(B, "i", 0)


def test_multiway_contract_identity(gf):
    A = Tensor((("i", 2), ("j", 2)), [[1, 0], [0, 1]], gf)
    B = Tensor((("j", 2), ("k", 2)), [[5, 6], [7, 8]], gf)
    out = multiway_contract([A, B], "j")
    assert out.labels == ("i", "k")
    assert out.tolist() == [[5, 6], [7, 8]]


def test_multiway_contract_matmul(gf):
    A = Tensor((("i", 2), ("j", 2)), [[1, 2], [3, 4]], gf)
    B = Tensor((("j", 2), ("k", 2)), [[5, 6], [7, 8]], gf)
    assert multiway_contract([A, B], "j").tolist() == [[19, 22], [43, 50]]


def test_multiway_contract_hyperedge(gf):
    vectors = [Tensor((("j", 2),), data, gf) for data in ([1, 2], [3, 4], [5, 6])]
    out = multiway_contract(vectors, "j")
    assert out.rank == 0
    assert out.item() == 63


def test_multiway_contract_all_ones_counts_the_dimension(gf):
    L = 3
    tensors = [
        Tensor((("s", L), ("a", 2)), np.ones((L, 2), dtype=int), gf),
        Tensor((("b", 2), ("s", L), ("c", 1)), np.ones((2, L, 1), dtype=int), gf),
        Tensor((("s", L),), np.ones(L, dtype=int), gf),
    ]
    out = multiway_contract(tensors, "s")
    assert out.labels == ("a", "b", "c")
    assert np.all(out.data == L)


def test_multiway_contract_errors(gf):
    A = Tensor((("j", 2), ("a", 2)), [1, 2, 3, 4], gf)
    B = Tensor((("j", 3),), [1, 2, 3], gf)
    with pytest.raises(DimensionMismatch):
        multiway_contract([A, B], "j")
    C = Tensor((("j", 2), ("a", 2)), [1, 2, 3, 4], gf)
    with pytest.raises(DuplicateIndex):
        multiway_contract([A, C], "j")


def test_contract_tensors_keeps_first_appearance_order(gf):
    A = Tensor((("x", 2), ("j", 2)), [1, 2, 3, 4], gf)
    B = Tensor((("j", 2), ("y", 3)), [1, 2, 3, 4, 5, 6], gf)
    out = contract_tensors([A, B], ["j"])
    assert out.labels == ("x", "y")


def test_outer_product(gf):
    a = Tensor((("i", 2),), [1, 2], gf)
    b = Tensor((("j", 2),), [3, 4], gf)
    assert outer_product([a, b]).tolist() == [[3, 4], [6, 8]]


def test_transpose_and_plus(gf):
    t = Tensor((("i", 2), ("j", 3)), range(6), gf)
    u = t.transpose(["j", "i"])
    assert u.shape == (3, 2)
    assert t.plus(u).tolist() == [[0, 2, 4], [6, 8, 10]]


def test_astype_round_trip(gf, rng):
    t = random_tensor((("i", 3), ("j", 2)), gf, rng)
    back = t.astype(Real64()).astype(gf)
    assert back.equals(t)


def test_random_tensor_range(rng):
    t = random_tensor((("i", 50),), PrimeField(), rng, 0, 100)
    assert all(0 <= v <= 100 for v in t.flat())
