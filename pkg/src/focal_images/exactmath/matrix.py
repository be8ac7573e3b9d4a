"""Dense matrices over the exact rationals.

Small orders only (the pipeline works with r up to roughly 6), so plain
Gaussian elimination with Fraction entries is exact and fast enough for
determinants, ranks, inverses and null spaces.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionError, DomainError
from .poly import MultiPoly, UniPoly, poly_det


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class RMatrix:
    """An immutable rational matrix stored row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = [tuple(_frac(v) for v in row) for row in data]
        if not rows:
            raise DimensionError("matrix must have at least one row")
        width = len(rows[0])
        if width == 0:
            raise DimensionError("matrix must have at least one column")
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.data = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RMatrix":
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RMatrix":
        n = len(entries)
        return cls(
            [[_frac(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def _same_shape(self, other: "RMatrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other: "RMatrix") -> "RMatrix":
        self._same_shape(other)
        return RMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        self._same_shape(other)
        return RMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self) -> "RMatrix":
        return RMatrix([[-a for a in row] for row in self.data])

    def scale(self, c) -> "RMatrix":
        c = _frac(c)
        return RMatrix([[a * c for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, RMatrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.shape} by {other.shape}"
                )
            cols = list(zip(*other.data))
            return RMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self.data
                ]
            )
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def apply(self, vector: Sequence) -> list[Fraction]:
        vec = [_frac(v) for v in vector]
        if len(vec) != self.cols:
            raise DimensionError("vector length must equal the column count")
        return [sum(a * v for a, v in zip(row, vec)) for row in self.data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RMatrix":
        return RMatrix(list(zip(*self.data)))

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_diagonal(self) -> bool:
        return self.is_square() and all(
            self.data[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def diagonal_entries(self) -> list[Fraction]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RMatrix":
        return RMatrix([[self.data[i][j] for j in col_idx] for i in row_idx])

    # -- elimination-based queries ------------------------------------

    def _echelon(self) -> tuple[list[list[Fraction]], list[int], int]:
        """Row echelon form; returns (rows, pivot column list, sign swaps)."""
        m = [list(row) for row in self.data]
        pivots: list[int] = []
        sign = 1
        row = 0
        for col in range(self.cols):
            pivot = next((i for i in range(row, self.rows) if m[i][col] != 0), None)
            if pivot is None:
                continue
            if pivot != row:
                m[row], m[pivot] = m[pivot], m[row]
                sign = -sign
            inv = 1 / m[row][col]
            for i in range(row + 1, self.rows):
                if m[i][col] != 0:
                    factor = m[i][col] * inv
                    for j in range(col, self.cols):
                        m[i][j] -= factor * m[row][j]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return m, pivots, sign

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        m, pivots, sign = self._echelon()
        if len(pivots) < self.rows:
            return Fraction(0)
        prod = Fraction(sign)
        for i in range(self.rows):
            prod *= m[i][pivots[i]]
        return prod

    def rref(self) -> tuple["RMatrix", list[int]]:
        m, pivots, _ = self._echelon()
        for r in range(len(pivots) - 1, -1, -1):
            col = pivots[r]
            inv = 1 / m[r][col]
            m[r] = [v * inv for v in m[r]]
            for i in range(r):
                if m[i][col] != 0:
                    factor = m[i][col]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        return RMatrix(m), pivots

    def inverse(self) -> "RMatrix":
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = RMatrix(
            [
                list(self.data[i]) + [Fraction(int(i == j)) for j in range(n)]
                for i in range(n)
            ]
        )
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise DomainError("matrix is singular")
        return RMatrix([list(red.data[i][n:]) for i in range(n)])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the kernel, each vector primitive-integer with a positive lead."""
        red, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            vec = [Fraction(0)] * self.cols
            vec[f] = Fraction(1)
            for r, col in enumerate(pivots):
                vec[col] = -red.data[r][f]
            basis.append(canonical_vector(vec))
        return basis

    # -- spectral helpers ----------------------------------------------

    def char_poly(self) -> UniPoly:
        """det(t*I - M), monic, exact."""
        if not self.is_square():
            raise DimensionError("characteristic polynomial of a non-square matrix")
        n = self.rows
        t = MultiPoly.variable(1, 0)
        entries = [
            [
                (t if i == j else MultiPoly.zero(1)) - MultiPoly.const(1, self.data[i][j])
                for j in range(n)
            ]
            for i in range(n)
        ]
        det = poly_det(entries)
        coeffs = [Fraction(0)] * (n + 1)
        for exp, coeff in det.terms.items():
            coeffs[exp[0]] = coeff
        return UniPoly(coeffs)

    def rational_eigenvalues(self) -> tuple[list[tuple[Fraction, int]], bool]:
        """Rational eigenvalues with multiplicities and a completeness flag."""
        return self.char_poly().rational_roots()

    def eigenvector(self, eigenvalue) -> tuple[Fraction, ...]:
        lam = _frac(eigenvalue)
        shifted = self - RMatrix.identity(self.rows).scale(lam)
        basis = shifted.nullspace()
        if not basis:
            raise DomainError(f"{lam} is not an eigenvalue")
        return basis[0]

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"RMatrix[{body}]"


def canonical_vector(vec: Sequence) -> tuple[Fraction, ...]:
    """Scale a rational vector to coprime integers with positive first nonzero."""
    fracs = [_frac(v) for v in vec]
    nonzero = [v for v in fracs if v != 0]
    if not nonzero:
        return tuple(fracs)
    den = math.lcm(*[v.denominator for v in fracs])
    ints = [v * den for v in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, v.numerator)
    scaled = [v / Fraction(g, den) for v in fracs]
    first = next(v for v in scaled if v != 0)
    if first < 0:
        scaled = [-v for v in scaled]
    return tuple(scaled)


def char_poly(matrix: RMatrix) -> UniPoly:
    return matrix.char_poly()


def rational_eigenvalues(matrix: RMatrix) -> tuple[list[tuple[Fraction, int]], bool]:
    return matrix.rational_eigenvalues()
