"""Seeded generators for matrix systems and matched parametric models.

Each generator builds data whose structural type is forced by
construction and verified before returning: torsal families (diagonal
data with squarefree focal images), cones over seeded quadratic-graph
director surfaces, single-normal hypersurface systems from an envelope of
a quadratic hyperplane family, osculating models of rational normal
curves, block-diagonal composites, and the determinantal cubic of
singular conics with its rank-two patch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, GenerationError, StructuralError
from .exactmath import (
    MultiPoly,
    RMatrix,
    has_multiple_components,
    poly_det,
)
from .oracle import ParametricModel
from .system import MatrixSystem, focal_hypercone, focal_hypersurface, validate


@dataclass(frozen=True)
class MatchedPair:
    """A matrix system together with a parametric model of the same geometry."""

    system: MatrixSystem
    model: ParametricModel | None


def _rng(seed: int, tag: int) -> random.Random:
    return random.Random(seed * 1_000_003 + tag)


def _pairwise_independent(rows: Sequence[Sequence[Fraction]]) -> bool:
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            m = RMatrix([rows[i], rows[j]])
            if m.rank() < 2:
                return False
    return True


def _symmetric(rng: random.Random, r: int, lo: int = -4, hi: int = 4) -> RMatrix:
    entries = [[0] * r for _ in range(r)]
    for p in range(r):
        for q in range(p, r):
            v = rng.randint(lo, hi)
            entries[p][q] = v
            entries[q][p] = v
    return RMatrix(entries)


# ---------------------------------------------------------------------------
# plain diagonal systems
# ---------------------------------------------------------------------------


def gen_diagonal(l: int, r: int, codim: int, seed: int) -> MatrixSystem:
    """A valid diagonal system with no further structural constraints.

    C_0 is the identity and every diagonal column of the normal family is
    nonzero, which already guarantees both focal images are nonzero of
    degree r and the symmetry law holds.
    """
    if l < 0 or r < 1 or codim < 1:
        raise DomainError("need l >= 0, r >= 1, codim >= 1")
    rng = _rng(seed, 11)
    c_mats = [RMatrix.identity(r)]
    for _ in range(l):
        c_mats.append(RMatrix.diagonal([rng.randint(-4, 4) for _ in range(r)]))
    for _ in range(200):
        cols = [[rng.randint(-3, 3) for _ in range(codim)] for _ in range(r)]
        if all(any(v != 0 for v in col) for col in cols):
            break
    else:
        raise GenerationError("could not draw nonzero normal columns")
    b_mats = [
        RMatrix.diagonal([cols[p][a] for p in range(r)]) for a in range(codim)
    ]
    return MatrixSystem(l=l, r=r, codim=codim, C=tuple(c_mats), B=tuple(b_mats))


# ---------------------------------------------------------------------------
# torsal systems
# ---------------------------------------------------------------------------


def gen_torsal(l: int, r: int, codim: int, seed: int) -> MatrixSystem:
    """A completely reducible system: diagonal families, squarefree focal
    images, pairwise independent eigenvalue columns.

    Rank-one requests fall back to a plain rank-one system (a torse needs
    no reducibility structure).  For r >= 2 at least two independent
    second fundamental forms are required, hence codim >= 2.
    """
    if l < 1:
        raise DomainError("torsal systems need l >= 1")
    if r == 1:
        rng = _rng(seed, 23)
        c = [RMatrix([[1]])] + [RMatrix([[rng.randint(-3, 3)]]) for _ in range(l)]
        b = [RMatrix([[1]])] + [
            RMatrix([[rng.randint(-3, 3)]]) for _ in range(codim - 1)
        ]
        return MatrixSystem(l=l, r=1, codim=codim, C=tuple(c), B=tuple(b))
    if codim < 2:
        raise DomainError("torsal systems with r >= 2 need codim >= 2")

    if seed == 0:
        c_rows = [[Fraction(p**i) for i in range(l + 1)] for p in range(1, r + 1)]
        if codim == r:
            b_cols = [
                [Fraction(int(a == p)) for a in range(codim)] for p in range(r)
            ]
        else:
            b_cols = [
                [Fraction(p**a) for a in range(codim)] for p in range(1, r + 1)
            ]
        return _torsal_from_rows(l, r, codim, c_rows, b_cols)

    rng = _rng(seed, 37)
    for _ in range(64):
        c_rows = [
            [Fraction(1)] + [Fraction(rng.randint(-4, 4)) for _ in range(l)]
            for _ in range(r)
        ]
        b_cols = [
            [Fraction(rng.randint(-3, 3)) for _ in range(codim)] for _ in range(r)
        ]
        if not _pairwise_independent(c_rows):
            continue
        if any(all(v == 0 for v in col) for col in b_cols):
            continue
        if not _pairwise_independent(b_cols):
            continue
        return _torsal_from_rows(l, r, codim, c_rows, b_cols)
    raise GenerationError(f"no torsal data found for seed {seed}")


def _torsal_from_rows(l, r, codim, c_rows, b_cols) -> MatrixSystem:
    c_mats = [RMatrix.diagonal([c_rows[p][i] for p in range(r)]) for i in range(l + 1)]
    b_mats = [RMatrix.diagonal([b_cols[p][a] for p in range(r)]) for a in range(codim)]
    sys = MatrixSystem(l=l, r=r, codim=codim, C=tuple(c_mats), B=tuple(b_mats))
    f = focal_hypersurface(sys)
    phi = focal_hypercone(sys)
    if has_multiple_components(f) or has_multiple_components(phi):
        raise GenerationError("torsal focal images are not squarefree")
    if not validate(sys).ok:
        raise GenerationError("torsal construction failed validation")
    return sys


def gen_torsal_matched(l: int, r: int, seed: int) -> MatchedPair:
    """A torsal system with codim = r plus a parametric model built from r
    independent curve blocks, one per focal hyperplane.

    Needs l >= r - 1 so the model's codimension matches the system's.
    """
    if l < max(1, r - 1):
        raise DomainError("matched torsal models need l >= r - 1")
    if r < 2:
        raise DomainError("use the curve generator for rank one")
    if seed == 0:
        c_rows = [[Fraction(p**i) for i in range(l + 1)] for p in range(1, r + 1)]
    else:
        rng = _rng(seed, 41)
        for _ in range(64):
            c_rows = [
                [Fraction(1)] + [Fraction(rng.randint(-4, 4)) for _ in range(l)]
                for _ in range(r)
            ]
            if _pairwise_independent(c_rows) and RMatrix(c_rows).rank() == l + 1:
                break
        else:
            raise GenerationError(f"no matched torsal rows for seed {seed}")
    if RMatrix(c_rows).rank() != l + 1:
        raise GenerationError("focal hyperplane forms do not span the generator dual")
    b_cols = [[Fraction(int(a == p)) for a in range(r)] for p in range(r)]
    sys = _torsal_from_rows(l, r, r, c_rows, b_cols)

    # model: x = sum_p ell_p(s) * (1, u_p, u_p^2)_block + completion coords
    nvars = r + l + 1
    extra = l + 1 - r
    ambient = 3 * r + max(extra, 0) - 1
    components = []
    lines = [
        MultiPoly(
            nvars,
            {
                tuple(int(v == r + i) for v in range(nvars)): c_rows[p][i]
                for i in range(l + 1)
                if c_rows[p][i] != 0
            },
        )
        for p in range(r)
    ]
    for p in range(r):
        u_p = MultiPoly.variable(nvars, p)
        components.extend([lines[p], lines[p] * u_p, lines[p] * u_p**2])
    if extra > 0:
        # complete the line forms to a basis with standard coordinates
        chosen: list[int] = []
        base = [list(row) for row in c_rows]
        for j in range(l + 1):
            candidate = [Fraction(int(i == j)) for i in range(l + 1)]
            if RMatrix(base + [candidate]).rank() == len(base) + 1:
                base.append(candidate)
                chosen.append(j)
            if len(base) == l + 1:
                break
        for j in chosen:
            components.append(MultiPoly.variable(nvars, r + j))
    model = ParametricModel(
        ambient=ambient, l=l, r=r, components=tuple(components)
    )
    return MatchedPair(system=sys, model=model)


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------


def gen_cone(l: int, r: int, codim: int, seed: int) -> MatchedPair:
    """A cone: scalar generator family and a normal family whose pencil
    determinant has no rational linear factor (certified at generation).

    The matched model is a cone with an (l-1)-dimensional vertex over a
    graph director surface whose quadratic heights reuse the normal
    matrices.
    """
    if l < 1:
        raise DomainError("cones need l >= 1")
    if codim < 3:
        raise DomainError("linear-factor-free hypercones need codim >= 3")
    if r < 2:
        raise DomainError("rank-one systems are torses, not cones")
    for attempt in range(32):
        rng = _rng(seed, 53 + attempt)
        if seed == 0 and attempt == 0 and r == 2 and codim == 3:
            scalars = [Fraction(1)] + [Fraction(0)] * l
            b_mats = [
                RMatrix.identity(2),
                RMatrix([[0, 1], [1, 0]]),
                RMatrix([[1, 0], [0, -1]]),
            ]
        else:
            scalars = [Fraction(1)] + [
                Fraction(rng.randint(-3, 3)) for _ in range(l)
            ]
            b_mats = [RMatrix.identity(r)]
            second = _rational_free_symmetric(rng, r)
            if second is None:
                continue
            b_mats.append(second)
            for _ in range(codim - 2):
                b_mats.append(_symmetric(rng, r))
        c_mats = [RMatrix.identity(r).scale(c) for c in scalars]
        sys = MatrixSystem(
            l=l, r=r, codim=codim, C=tuple(c_mats), B=tuple(b_mats)
        )
        phi = focal_hypercone(sys)
        if phi.is_zero() or has_multiple_components(phi):
            continue
        if not _certify_no_rational_linear_factor(phi):
            continue
        if not validate(sys).ok:
            continue
        model = _cone_model(l, r, codim, scalars, b_mats)
        return MatchedPair(system=sys, model=model)
    raise GenerationError(f"no linear-factor-free hypercone found for seed {seed}")


def _rational_free_symmetric(rng: random.Random, r: int) -> RMatrix | None:
    """A symmetric integer matrix with no rational eigenvalues."""
    for _ in range(64):
        m = _symmetric(rng, r)
        roots, _ = m.rational_eigenvalues()
        if not roots:
            return m
    return None


def _certify_no_rational_linear_factor(poly: MultiPoly) -> bool:
    """Certify that a focal image has no linear factor (exactly).

    Quadratics are settled by the rank of their coefficient matrix: rank
    at least three rules out any linear factor over the complex numbers.
    Higher degrees restrict to the plane of the first two coordinates;
    when that binary form keeps full degree and has no rational root, no
    rational linear factor can divide the full polynomial either.
    """
    from .classify import gram_matrix
    from .exactmath import restrict

    if poly.degree() == 2:
        return gram_matrix(poly).rank() >= 3
    nvars = poly.nvars
    x0 = [Fraction(0)] * nvars
    d0 = [Fraction(0)] * nvars
    x0[0] = Fraction(1)
    d0[1] = Fraction(1)
    line = restrict(poly, x0, d0)
    if line.degree() != poly.degree():
        return False
    roots, _ = line.rational_roots()
    return not roots


def _cone_model(
    l: int, r: int, codim: int, scalars: Sequence[Fraction], b_mats: Sequence[RMatrix]
) -> ParametricModel:
    nvars = r + l + 1
    ambient = l + r + codim
    # invertible change with first row the scalar vector, so the model's
    # degeneration locus is exactly the zero set of the focal hyperplane
    rows = [list(scalars)]
    for j in range(l + 1):
        candidate = [Fraction(int(i == j)) for i in range(l + 1)]
        if RMatrix(rows + [candidate]).rank() == len(rows) + 1:
            rows.append(candidate)
        if len(rows) == l + 1:
            break
    t_forms = [
        MultiPoly(
            nvars,
            {
                tuple(int(v == r + i) for v in range(nvars)): row[i]
                for i in range(l + 1)
                if row[i] != 0
            },
        )
        for row in rows
    ]
    u_vars = [MultiPoly.variable(nvars, q) for q in range(r)]
    director = [MultiPoly.const(nvars, 1)]
    director.extend(u_vars)
    for b in b_mats:
        quad = MultiPoly.zero(nvars)
        for p in range(r):
            for q in range(r):
                if b[p][q] != 0:
                    quad = quad + Fraction(1, 2) * b[p][q] * u_vars[p] * u_vars[q]
        director.append(quad)
    components = []
    for j in range(1, l + 1):
        components.append(t_forms[j])  # vertex coordinates
    for comp in director:
        components.append(t_forms[0] * comp)
    return ParametricModel(ambient=ambient, l=l, r=r, components=tuple(components))


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------


def gen_hypersurface(l: int, r: int, seed: int) -> MatchedPair:
    """A codimension-one system with identity normal matrix and a focal
    hypersurface free of rational linear factors (certified).

    The matched model is the envelope of the hyperplane family whose
    coefficient quadrics reuse the generator matrices, so the model's
    degeneration polynomial on a generator is exactly the focal
    determinant.
    """
    if l < 2:
        raise DomainError("hypersurface systems need l >= 2")
    if r < 2:
        raise DomainError("rank-one systems are torses, not hypersurfaces")
    for attempt in range(32):
        rng = _rng(seed, 71 + attempt)
        if seed == 0 and attempt == 0 and r == 2 and l == 2:
            c_mats = [
                RMatrix.identity(2),
                RMatrix([[0, 1], [1, 0]]),
                RMatrix([[1, 0], [0, -1]]),
            ]
        else:
            c_mats = [RMatrix.identity(r)]
            c_mats.append(_rational_spectrum_symmetric(rng, r))
            second = _rational_free_symmetric(rng, r)
            if second is None:
                continue
            c_mats.append(second)
            for _ in range(l - 2):
                c_mats.append(_symmetric(rng, r))
        sys = MatrixSystem(
            l=l, r=r, codim=1, C=tuple(c_mats), B=(RMatrix.identity(r),)
        )
        f = focal_hypersurface(sys)
        if f.is_zero() or has_multiple_components(f):
            continue
        if not _certify_f_no_linear_factor(f, c_mats):
            continue
        if not validate(sys).ok:
            continue
        model = _hypersurface_model(l, r, c_mats)
        return MatchedPair(system=sys, model=model)
    raise GenerationError(f"no linear-factor-free hypersurface found for seed {seed}")


def _rational_spectrum_symmetric(rng: random.Random, r: int) -> RMatrix:
    """Symmetric with distinct rational eigenvalues: a rational-rotation
    conjugate of a distinct integer diagonal."""
    values = rng.sample(range(-6, 7), r)
    d = RMatrix.diagonal(values)
    rot = RMatrix.identity(r)
    cos, sin = Fraction(3, 5), Fraction(4, 5)
    for i in range(r - 1):
        g = [[Fraction(int(a == b)) for b in range(r)] for a in range(r)]
        g[i][i] = cos
        g[i][i + 1] = -sin
        g[i + 1][i] = sin
        g[i + 1][i + 1] = cos
        rot = rot * RMatrix(g)
    return rot * d * rot.transpose()


def _certify_f_no_linear_factor(f: MultiPoly, c_mats: Sequence[RMatrix]) -> bool:
    from .classify import gram_matrix
    from .exactmath import restrict

    if f.degree() == 2:
        return gram_matrix(f).rank() >= 3
    nvars = f.nvars
    # restrict to the plane spanned by x0 and x2: the third matrix has no
    # rational eigenvalues, so this binary form has no rational root
    x0 = [Fraction(0)] * nvars
    d0 = [Fraction(0)] * nvars
    x0[0] = Fraction(1)
    d0[2] = Fraction(1)
    line = restrict(f, x0, d0)
    if line.degree() != f.degree():
        return False
    roots, _ = line.rational_roots()
    return not roots


def _hypersurface_model(l: int, r: int, c_mats: Sequence[RMatrix]) -> ParametricModel:
    nvars = r + l + 1
    n = l + r
    u_vars = [MultiPoly.variable(nvars, q) for q in range(r)]
    s_vars = [MultiPoly.variable(nvars, r + j) for j in range(l + 1)]
    quads = []
    for c in c_mats:
        quad = MultiPoly.zero(nvars)
        for p in range(r):
            for q in range(r):
                if c[p][q] != 0:
                    quad = quad + Fraction(1, 2) * c[p][q] * u_vars[p] * u_vars[q]
        quads.append(quad)
    x0 = MultiPoly.zero(nvars)
    for g, s in zip(quads, s_vars):
        x0 = x0 + g * s
    components = [x0]
    for q in range(r):
        comp = MultiPoly.zero(nvars)
        for beta, c in enumerate(c_mats):
            inner = MultiPoly.zero(nvars)
            for p in range(r):
                if c[q][p] != 0:
                    inner = inner + c[q][p] * u_vars[p]
            comp = comp - s_vars[beta] * inner
        components.append(comp)
    components.extend(s_vars)
    return ParametricModel(ambient=n + 1, l=l, r=r, components=tuple(components))


# ---------------------------------------------------------------------------
# torses from curves
# ---------------------------------------------------------------------------


def gen_torse_curve(ambient: int, l: int) -> MatchedPair:
    """Osculating l-planes of the rational normal curve in dimension
    ``ambient``: a rank-one model with its matrix data.

    The degeneration locus inside a generator is the osculating subspace
    one order lower, which in these coordinates is s_l = 0.
    """
    if not 1 <= l <= ambient - 2:
        raise DomainError("need 1 <= l <= ambient - 2")
    codim = ambient - l - 1
    c_mats = [RMatrix([[0]]) for _ in range(l)] + [RMatrix([[1]])]
    b_mats = [RMatrix([[1]])] + [RMatrix([[0]]) for _ in range(codim - 1)]
    sys = MatrixSystem(l=l, r=1, codim=codim, C=tuple(c_mats), B=tuple(b_mats))

    nvars = 1 + l + 1  # t, s_0..s_l
    t = MultiPoly.variable(nvars, 0)
    components = []
    for k in range(ambient + 1):
        comp = MultiPoly.zero(nvars)
        for j in range(min(l, k) + 1):
            factor = 1
            for step in range(j):
                factor *= k - step
            comp = comp + factor * MultiPoly.variable(nvars, 1 + j) * t ** (k - j)
        components.append(comp)
    model = ParametricModel(ambient=ambient, l=l, r=1, components=tuple(components))
    return MatchedPair(system=sys, model=model)


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------


def gen_direct_sum(systems: Sequence[MatrixSystem]) -> MatrixSystem:
    """Block-diagonal concatenation of systems sharing l and codim."""
    if not systems:
        raise DomainError("need at least one summand")
    l = systems[0].l
    codim = systems[0].codim
    for sys in systems:
        if sys.l != l or sys.codim != codim:
            raise StructuralError("summands must share l and codim")
    total_r = sum(sys.r for sys in systems)

    def block_diag(mats: Sequence[RMatrix]) -> RMatrix:
        rows = [[Fraction(0)] * total_r for _ in range(total_r)]
        offset = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    rows[offset + i][offset + j] = m[i][j]
            offset += m.rows
        return RMatrix(rows)

    c_mats = tuple(
        block_diag([sys.C[i] for sys in systems]) for i in range(l + 1)
    )
    b_mats = tuple(
        block_diag([sys.B[a] for sys in systems]) for a in range(codim)
    )
    return MatrixSystem(l=l, r=total_r, codim=codim, C=c_mats, B=b_mats)


# ---------------------------------------------------------------------------
# the determinantal cubic of singular conics
# ---------------------------------------------------------------------------

SYMMETROID_VARS = ("a00", "a01", "a02", "a11", "a12", "a22")
_POSITIONS = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}


@dataclass(frozen=True)
class SymmetroidModel:
    """The symbolic symmetric 3x3 matrix, its determinant, and cofactors."""

    matrix: tuple[tuple[MultiPoly, ...], ...]
    det: MultiPoly
    adjugate: tuple[tuple[MultiPoly, ...], ...]
    gradient: tuple[MultiPoly, ...]  # derivative of det in each of the 6 entries


def _symbolic_symmetric() -> list[list[MultiPoly]]:
    def var(i, j):
        return MultiPoly.variable(6, _POSITIONS[(min(i, j), max(i, j))])

    return [[var(i, j) for j in range(3)] for i in range(3)]


def _poly_adjugate(m: list[list[MultiPoly]]) -> list[list[MultiPoly]]:
    n = len(m)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[a][b] for b in range(n) if b != j] for a in range(n) if a != i
            ]
            cof = poly_det(minor)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof  # transpose of the cofactor matrix
    return adj


def symmetroid_model() -> SymmetroidModel:
    matrix = _symbolic_symmetric()
    det = poly_det(matrix)
    adjugate = _poly_adjugate(matrix)
    gradient = tuple(det.partial(v) for v in range(6))
    return SymmetroidModel(
        matrix=tuple(tuple(row) for row in matrix),
        det=det,
        adjugate=tuple(tuple(row) for row in adjugate),
        gradient=gradient,
    )


def adjugate_identity_check() -> bool:
    """Exact polynomial identity adj(adj A) = det(A) * A for symmetric A.

    On the determinantal hypersurface det A = 0 this forces every 2x2
    minor of the cofactor matrix to vanish, i.e. the tangent-hyperplane
    coordinates have rank one and factor through a point of the quadratic
    embedding of the plane.
    """
    model = symmetroid_model()
    inner = [list(row) for row in model.adjugate]
    outer = _poly_adjugate(inner)
    # cross-check the determinant with an independent expansion route
    det_again = _det_by_bareiss_route(model.matrix)
    if det_again != model.det:
        return False
    for i in range(3):
        for j in range(3):
            if outer[i][j] != model.det * model.matrix[i][j]:
                return False
    return True


def _det_by_bareiss_route(matrix) -> MultiPoly:
    """Determinant via explicit row elimination, independent of poly_det's
    cofactor branch."""
    from .exactmath.poly import _det_bareiss

    return _det_bareiss([list(row) for row in matrix])


def symmetroid_patch_model() -> ParametricModel:
    """The rank-two locus parametrized by its kernel line.

    For the kernel direction (1, u1, u2), the matrices vanishing on it
    form the plane spanned by the three rank-one products of the basis
    vectors orthogonal to it; the generator coordinates are s_0..s_2.
    """
    nvars = 5  # u1, u2, s0, s1, s2
    u1 = MultiPoly.variable(nvars, 0)
    u2 = MultiPoly.variable(nvars, 1)
    s0 = MultiPoly.variable(nvars, 2)
    s1 = MultiPoly.variable(nvars, 3)
    s2 = MultiPoly.variable(nvars, 4)
    components = (
        s0 * u1**2 + 2 * s1 * u1 * u2 + s2 * u2**2,  # a00
        -(s0 * u1) - s1 * u2,  # a01
        -(s1 * u1) - s2 * u2,  # a02
        s0,  # a11
        s1,  # a12
        s2,  # a22
    )
    return ParametricModel(ambient=5, l=2, r=2, components=components)
