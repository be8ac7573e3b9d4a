"""Tests for exact rational matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from focal_images.errors import DimensionError, DomainError
from focal_images.exactmath import RMatrix, UniPoly, canonical_vector


def test_shapes_and_equality():
    m = RMatrix([[1, 2], [3, 4]])
    assert m.shape == (2, 2)
    assert m == RMatrix([[Fraction(1), 2], [3, 4]])
    with pytest.raises(DimensionError):
        RMatrix([[1, 2], [3]])


def test_product_and_transpose():
    a = RMatrix([[1, 2], [3, 4]])
    b = RMatrix([[0, 1], [1, 0]])
    assert a * b == RMatrix([[2, 1], [4, 3]])
    assert (a * b).transpose() == b.transpose() * a.transpose()
    assert a.apply([1, 1]) == [Fraction(3), Fraction(7)]


def test_det_rank_inverse():
    m = RMatrix([[2, 1], [1, 1]])
    assert m.det() == 1
    assert m.rank() == 2
    inv = m.inverse()
    assert m * inv == RMatrix.identity(2)
    singular = RMatrix([[1, 2], [2, 4]])
    assert singular.det() == 0
    assert singular.rank() == 1
    with pytest.raises(DomainError):
        singular.inverse()


def test_nullspace_canonical():
    m = RMatrix([[1, 2, 3], [2, 4, 6]])
    basis = m.nullspace()
    assert len(basis) == 2
    for vec in basis:
        assert all(x == 0 for x in m.apply(vec))
        first = next(v for v in vec if v != 0)
        assert first > 0


def test_char_poly_diagonal():
    m = RMatrix.diagonal([1, 2])
    assert m.char_poly() == UniPoly([2, -3, 1])  # (t-1)(t-2)
    roots, complete = m.rational_eigenvalues()
    assert roots == [(Fraction(1), 1), (Fraction(2), 1)]
    assert complete


def test_char_poly_swap():
    m = RMatrix([[0, 1], [1, 0]])
    assert m.char_poly() == UniPoly([-1, 0, 1])
    roots, complete = m.rational_eigenvalues()
    assert roots == [(Fraction(-1), 1), (Fraction(1), 1)]
    assert complete


def test_char_poly_rotation_incomplete():
    m = RMatrix([[0, 1], [-1, 0]])
    assert m.char_poly() == UniPoly([1, 0, 1])
    roots, complete = m.rational_eigenvalues()
    assert roots == []
    assert not complete


def test_eigenvector():
    m = RMatrix([[1, 1], [0, 2]])
    v = m.eigenvector(2)
    assert m.apply(v) == [2 * c for c in v]
    assert v == (Fraction(1), Fraction(1))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_char_poly_similarity_invariant(data):
    n = data.draw(st.integers(2, 3))
    m = RMatrix(
        [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(n)]
    )
    # draw an invertible rational change of basis
    for _ in range(50):
        p = RMatrix(
            [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)]
        )
        if p.det() != 0:
            break
    else:
        return
    conj = p.inverse() * m * p
    assert conj.char_poly() == m.char_poly()


def test_canonical_vector():
    assert canonical_vector([Fraction(-1, 2), Fraction(1, 4)]) == (
        Fraction(2),
        Fraction(-1),
    )
    assert canonical_vector([0, 0]) == (0, 0)
