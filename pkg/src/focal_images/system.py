"""The matrix-data model of a pair (generator, tangent space) and its invariants.

A MatrixSystem packs the second-order data of an n-dimensional submanifold
with an l-dimensional plane generator and Gauss-map rank r in codimension
``codim``: the C family (one r x r matrix per generator coordinate) and the
B family (one r x r matrix per normal direction).  Everything downstream is
computed from these matrices alone:

  * the symmetry law that valid data must satisfy,
  * the focal hypersurface det(sum_i C_i x^i) inside the generator,
  * the focal hypercone det(sum_a xi_a B^a) of singular tangent hyperplanes,
  * second fundamental forms, osculating dimension, characteristic subspace.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    FileFormatError,
    NoRegularPointError,
    PreconditionError,
    StructuralError,
)
from .exactmath import MultiPoly, RMatrix, poly_det

SEARCH_BUDGET = 10_000


@dataclass(frozen=True)
class MatrixSystem:
    """Second-order matrix data: l+1 generator matrices and codim normal matrices."""

    l: int
    r: int
    codim: int
    C: tuple[RMatrix, ...]
    B: tuple[RMatrix, ...]

    def __post_init__(self):
        if self.l < 0:
            raise StructuralError("l must be nonnegative")
        if self.r < 1:
            raise StructuralError("r must be positive")
        if self.codim < 1:
            raise StructuralError("codim must be positive")
        object.__setattr__(self, "C", tuple(self.C))
        object.__setattr__(self, "B", tuple(self.B))
        if len(self.C) != self.l + 1:
            raise StructuralError(
                f"expected {self.l + 1} generator matrices, got {len(self.C)}"
            )
        if len(self.B) != self.codim:
            raise StructuralError(
                f"expected {self.codim} normal matrices, got {len(self.B)}"
            )
        for m in itertools.chain(self.C, self.B):
            if m.shape != (self.r, self.r):
                raise StructuralError(
                    f"all matrices must be {self.r}x{self.r}, found {m.shape}"
                )

    @property
    def n(self) -> int:
        """Dimension of the modeled submanifold."""
        return self.l + self.r

    @property
    def ambient_dim(self) -> int:
        """Dimension of the ambient projective space."""
        return self.n + self.codim

    def c_at(self, x: Sequence) -> RMatrix:
        """The generator pencil sum_i C_i x^i evaluated at a point of the generator."""
        if len(x) != self.l + 1:
            raise PreconditionError("point must have l+1 coordinates")
        total = RMatrix.zeros(self.r)
        for coeff, mat in zip(x, self.C):
            f = Fraction(coeff)
            if f != 0:
                total = total + mat.scale(f)
        return total

    def b_at(self, xi: Sequence) -> RMatrix:
        """The normal pencil sum_a xi_a B^a for a tangent hyperplane."""
        if len(xi) != self.codim:
            raise PreconditionError("hyperplane must have codim coordinates")
        total = RMatrix.zeros(self.r)
        for coeff, mat in zip(xi, self.B):
            f = Fraction(coeff)
            if f != 0:
                total = total + mat.scale(f)
        return total


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    symmetry_violations: tuple[tuple[int, int, int, int], ...]
    regular_point: tuple[Fraction, ...] | None
    regular_normal: tuple[Fraction, ...] | None
    messages: tuple[str, ...]

    def __bool__(self):
        return self.ok


def validate(sys: MatrixSystem) -> ValidationReport:
    """Check the symmetry law and the existence of regular data.

    Passes when every product B^a * C_i is symmetric, some generator point
    has an invertible pencil, and some hyperplane has an invertible normal
    pencil.  Violations are reported as (alpha, i, p, q) with alpha 1-based
    (normal index), i 0-based (generator coordinate) and p < q 0-based
    matrix positions.
    """
    violations: list[tuple[int, int, int, int]] = []
    for a_idx, b_mat in enumerate(sys.B, start=1):
        for i_idx, c_mat in enumerate(sys.C):
            h = b_mat * c_mat
            for p in range(sys.r):
                for q in range(p + 1, sys.r):
                    if h[p][q] != h[q][p]:
                        violations.append((a_idx, i_idx, p, q))
    messages: list[str] = []
    if violations:
        messages.append(f"{len(violations)} symmetry violations")
    point = None
    normal = None
    try:
        point = regular_point(sys)
    except NoRegularPointError:
        messages.append("no regular generator point found (degenerate pencil)")
    try:
        normal = regular_normal(sys)
    except NoRegularPointError:
        messages.append("no regular tangent hyperplane found (degenerate pencil)")
    ok = not violations and point is not None and normal is not None
    return ValidationReport(
        ok=ok,
        symmetry_violations=tuple(violations),
        regular_point=point,
        regular_normal=normal,
        messages=tuple(messages),
    )


def _integer_points(dim: int) -> Iterator[tuple[int, ...]]:
    """Deterministic enumeration: basis vectors first, then growing boxes."""
    for i in range(dim):
        vec = [0] * dim
        vec[i] = 1
        yield tuple(vec)
    radius = 1
    while True:
        for point in itertools.product(range(-radius, radius + 1), repeat=dim):
            if all(v == 0 for v in point):
                continue
            if max(abs(v) for v in point) < radius and radius > 1:
                continue  # interior points were produced at smaller radii
            yield point
        radius += 1


def _search_nonvanishing(poly: MultiPoly, dim: int, what: str) -> tuple[Fraction, ...]:
    if not poly.is_zero():
        for count, point in enumerate(_integer_points(dim)):
            if count >= SEARCH_BUDGET:
                break
            if poly.evaluate(point) != 0:
                return tuple(Fraction(v) for v in point)
    raise NoRegularPointError(
        f"no regular {what} in the search budget; the pencil is degenerate"
    )


def regular_point(sys: MatrixSystem) -> tuple[Fraction, ...]:
    """First small-integer generator point with an invertible pencil.

    The pencil determinant is expanded once and then evaluated along a
    deterministic enumeration of integer points, so the result is
    reproducible and the search cost stays linear in the budget.
    """
    return _search_nonvanishing(focal_hypersurface(sys), sys.l + 1, "generator point")


def regular_normal(sys: MatrixSystem) -> tuple[Fraction, ...]:
    """First small-integer hyperplane with an invertible normal pencil."""
    return _search_nonvanishing(focal_hypercone(sys), sys.codim, "tangent hyperplane")


# ---------------------------------------------------------------------------
# focal images
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FocalImages:
    """Focal hypersurface (in generator coordinates x^0..x^l) and focal
    hypercone (in tangential coordinates xi_1..xi_codim)."""

    F: MultiPoly
    Phi: MultiPoly


def focal_hypersurface(sys: MatrixSystem) -> MultiPoly:
    """det(sum_i C_i x^i): the singular points inside the generator.

    Homogeneous of degree r in x^0..x^l for valid systems.
    """
    nvars = sys.l + 1
    entries = [
        [
            MultiPoly(
                nvars,
                {
                    tuple(int(k == i) for k in range(nvars)): sys.C[i][p][q]
                    for i in range(nvars)
                    if sys.C[i][p][q] != 0
                },
            )
            for q in range(sys.r)
        ]
        for p in range(sys.r)
    ]
    return poly_det(entries)


def focal_hypercone(sys: MatrixSystem) -> MultiPoly:
    """det(sum_a xi_a B^a): the singular tangent hyperplanes through the
    tangent space.  Homogeneous of degree r in xi_1..xi_codim."""
    nvars = sys.codim
    entries = [
        [
            MultiPoly(
                nvars,
                {
                    tuple(int(k == a) for k in range(nvars)): sys.B[a][p][q]
                    for a in range(nvars)
                    if sys.B[a][p][q] != 0
                },
            )
            for q in range(sys.r)
        ]
        for p in range(sys.r)
    ]
    return poly_det(entries)


def focal_images(sys: MatrixSystem) -> FocalImages:
    return FocalImages(F=focal_hypersurface(sys), Phi=focal_hypercone(sys))


# ---------------------------------------------------------------------------
# second fundamental forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FundamentalForms:
    """All products H^a_i = B^a * C_i plus the scalar-pencil evaluation."""

    system: MatrixSystem
    H: tuple[tuple[RMatrix, ...], ...]  # H[a-1][i]

    def h_at(self, xi: Sequence, x: Sequence) -> RMatrix:
        """The quadratic-form matrix of the pair (hyperplane xi, point x)."""
        return self.system.b_at(xi) * self.system.c_at(x)


def second_fundamental_forms(sys: MatrixSystem) -> FundamentalForms:
    return FundamentalForms(
        system=sys,
        H=tuple(tuple(b * c for c in sys.C) for b in sys.B),
    )


# ---------------------------------------------------------------------------
# osculating dimension and characteristic subspace
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OsculatingInfo:
    m: int
    dim_osculating: int  # n + m


def osculating_dimension(sys: MatrixSystem) -> OsculatingInfo:
    """Number of independent second fundamental forms, in the frame C_0 = I.

    The count m is the rank of the codim x r(r+1)/2 matrix whose row a lists
    the upper triangle of B^a; the osculating space has dimension n + m.
    """
    if sys.C[0] != RMatrix.identity(sys.r):
        raise PreconditionError("osculating dimension requires C_0 = identity")
    rows = []
    for b in sys.B:
        rows.append(
            [b[p][q] for p in range(sys.r) for q in range(p, sys.r)]
        )
    m = RMatrix(rows).rank()
    return OsculatingInfo(m=m, dim_osculating=sys.n + m)


@dataclass(frozen=True)
class CharacteristicSubspace:
    m_star: int
    k: int  # projective dimension of the common solution space, l - m_star
    basis: tuple[tuple[Fraction, ...], ...]  # empty when k < 0


def characteristic_subspace(sys: MatrixSystem) -> CharacteristicSubspace:
    """Common kernel of the stacked linear system over the generator.

    Stacks the r^2 linear forms x -> (sum_i C_i x^i)[p][q] into a matrix
    with l+1 columns; the solution space (when nonempty) is a subspace of
    the focal hypersurface and is the vertex candidate.
    """
    rows = [
        [sys.C[i][p][q] for i in range(sys.l + 1)]
        for p in range(sys.r)
        for q in range(sys.r)
    ]
    stacked = RMatrix(rows)
    m_star = stacked.rank()
    k = sys.l - m_star
    basis = tuple(stacked.nullspace()) if m_star < sys.l + 1 else ()
    return CharacteristicSubspace(m_star=m_star, k=k, basis=basis)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def _matrix_to_obj(m: RMatrix) -> list[list[str]]:
    return [[str(v) for v in row] for row in m.data]


def _matrix_from_obj(obj, r: int) -> RMatrix:
    try:
        rows = [[Fraction(v) for v in row] for row in obj]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FileFormatError(f"bad matrix entry: {exc}") from exc
    m = RMatrix(rows)
    if m.shape != (r, r):
        raise FileFormatError(f"matrix has shape {m.shape}, expected {(r, r)}")
    return m


def system_to_dict(sys: MatrixSystem) -> dict:
    return {
        "l": sys.l,
        "r": sys.r,
        "codim": sys.codim,
        "C": [_matrix_to_obj(c) for c in sys.C],
        "B": [_matrix_to_obj(b) for b in sys.B],
    }


def system_from_dict(obj: dict) -> MatrixSystem:
    try:
        l = int(obj["l"])
        r = int(obj["r"])
        codim = int(obj["codim"])
        c_objs = obj["C"]
        b_objs = obj["B"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed system document: {exc}") from exc
    if not isinstance(c_objs, list) or not isinstance(b_objs, list):
        raise FileFormatError("C and B must be arrays of matrices")
    try:
        return MatrixSystem(
            l=l,
            r=r,
            codim=codim,
            C=tuple(_matrix_from_obj(c, r) for c in c_objs),
            B=tuple(_matrix_from_obj(b, r) for b in b_objs),
        )
    except StructuralError as exc:
        raise FileFormatError(str(exc)) from exc


def dumps_system(sys: MatrixSystem) -> str:
    return json.dumps(system_to_dict(sys), indent=2) + "\n"


def loads_system(text: str) -> MatrixSystem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FileFormatError("system document must be a JSON object")
    return system_from_dict(obj)


def save_system(sys: MatrixSystem, path: str) -> None:
    atomic_write_text(path, dumps_system(sys))


def load_system(path: str) -> MatrixSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_system(fh.read())


def atomic_write_text(path: str, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see partials."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
