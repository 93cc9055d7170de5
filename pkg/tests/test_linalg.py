from __future__ import annotations

import random

import pytest

from tl2b._ratback import RAT
from tl2b.linalg import (Matrix, _det_bareiss_int, _det_modular_int,
                         commutator, exact_det, invert, rank)


def _random_rational_matrix(n, seed):
    rng = random.Random(seed)
    return Matrix([[RAT(rng.randrange(-20, 21), rng.randrange(1, 9))
                    for _ in range(n)] for _ in range(n)])


def test_matrix_ops():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert (a @ b).rows == [[2, 1], [4, 3]]
    assert (a + b - b) == a
    assert a.transpose().rows == [[1, 3], [2, 4]]
    assert a.scale(2).rows == [[2, 4], [6, 8]]
    assert (-a).rows == [[-1, -2], [-3, -4]]
    assert commutator(a, Matrix.identity(2)).is_zero()
    assert a.column(1) == [2, 4]
    assert a.apply([1, 0]) == [1, 3]
    assert Matrix.zeros(2, 3).first_nonzero() is None
    assert b.first_nonzero() == (0, 1)


def test_scalar_multiple_detection():
    assert Matrix([[5, 0], [0, 5]]).scalar_multiple_of_identity() == 5
    assert Matrix([[5, 1], [0, 5]]).scalar_multiple_of_identity() is None
    assert Matrix([[5, 0], [0, 4]]).scalar_multiple_of_identity() is None


def test_inverse_and_rank():
    m = _random_rational_matrix(6, 3)
    inv = invert(m)
    assert (m @ inv) == Matrix.identity(6)
    assert rank(m) == 6
    singular = Matrix([[1, 2], [2, 4]])
    assert rank(singular) == 1
    with pytest.raises(ZeroDivisionError):
        invert(singular)


def test_determinant_matches_cofactor_expansion():
    m = _random_rational_matrix(3, 5)
    [[a, b, c], [d, e, f], [g, h, i]] = m.rows
    expected = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    assert exact_det(m) == expected


def test_modular_determinant_cross_check():
    rng = random.Random(9)
    for n in (4, 9, 17, 33):
        rows = [[rng.randrange(-10 ** 6, 10 ** 6) for _ in range(n)]
                for _ in range(n)]
        assert _det_modular_int(rows) == _det_bareiss_int(rows)
    singular = [[1, 2, 3], [2, 4, 6], [5, 1, 0]]
    assert _det_modular_int(singular) == _det_bareiss_int(singular) == 0


def test_determinant_of_empty_and_permutation():
    assert exact_det(Matrix([])) == 1
    perm = Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert exact_det(perm) == 1
    swap = Matrix([[0, 1], [1, 0]])
    assert exact_det(swap) == -1
