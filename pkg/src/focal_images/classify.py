"""Structural classification of matrix systems.

Pipeline: validate, compute focal images and their repeated-factor
structure, normalize the frame so that C_0 is the identity, hunt for a
basis that diagonalizes a generic member of the generator pencil, split
into coupling blocks, refine each block recursively, and label every block
as torse, cone type, or hypersurface type with exact witnesses.

All spectral work stays over the rationals.  When a pencil has an
irrational or repeated generic spectrum in every seeded attempt, the
classifier degrades to a partial report with an explicit status instead of
guessing a label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, SystemInvalidError
from .exactmath import (
    MultiPoly,
    RMatrix,
    has_multiple_components,
    repeated_part,
    squarefree_part,
)
from .system import (
    MatrixSystem,
    ValidationReport,
    characteristic_subspace,
    focal_hypercone,
    focal_hypersurface,
    osculating_dimension,
    regular_point,
    validate,
)

# status values for diagonalization results
FULLY_DIAGONAL = "fully-diagonal"
C_DIAGONAL_ONLY = "C-diagonal-only"
B_DIAGONAL_ONLY = "B-diagonal-only"
PARTIAL_BASIS = "partial-basis"
BLOCKED = "blocked"
SPECTRUM_NOT_RATIONAL = "spectrum-not-rational"

# block labels
TORSE = "Torse"
CONE_TYPE = "ConeType"
HYPERSURFACE_TYPE = "HypersurfaceType"
IRREDUCIBLE_UNCLASSIFIED = "IrreducibleUnclassified"

# overall labels
LABEL_PLANE = "Plane"
LABEL_TORSE = "Torse"
LABEL_TORSAL = "Torsal"
LABEL_CONE = "Cone"
LABEL_HYPERSURFACE = "Hypersurface"
LABEL_REDUCIBLE = "Reducible"
LABEL_OUTSIDE = "OutsideTheory"
LABEL_NONDEGENERATE = "Nondegenerate"

DIAG_ATTEMPTS = 16


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Normalization:
    system: MatrixSystem
    coord_change: RMatrix  # new generator coordinates: x = coord_change * y
    frame: RMatrix  # the pencil value used to scale C_0 to the identity


def normalize(sys: MatrixSystem) -> Normalization:
    """Re-coordinate so that C_0 is the identity matrix.

    Finds a regular generator point, rebases the generator coordinates so
    that point carries index 0, then absorbs the (now invertible) C_0 into
    the frame.  On valid systems every B matrix comes out symmetric.
    """
    point = regular_point(sys)
    size = sys.l + 1
    columns: list[list[Fraction]] = [list(point)]
    for j in range(size):
        candidate = [Fraction(int(i == j)) for i in range(size)]
        trial = columns + [candidate]
        if RMatrix(list(zip(*trial))).rank() == len(trial):
            columns.append(candidate)
        if len(columns) == size:
            break
    coord_change = RMatrix(list(zip(*columns)))  # columns become matrix columns
    new_c = []
    for j in range(size):
        total = RMatrix.zeros(sys.r)
        for i in range(size):
            coeff = coord_change[i][j]
            if coeff != 0:
                total = total + sys.C[i].scale(coeff)
        new_c.append(total)
    frame = new_c[0]
    frame_inv = frame.inverse()
    c_final = tuple(frame_inv * c for c in new_c)
    b_final = tuple(b * frame for b in sys.B)
    for b in b_final:
        if not b.is_symmetric():
            raise PreconditionError(
                "normalization produced an asymmetric normal matrix; "
                "the input system violates the symmetry law"
            )
    return Normalization(
        system=MatrixSystem(l=sys.l, r=sys.r, codim=sys.codim, C=c_final, B=b_final),
        coord_change=coord_change,
        frame=frame,
    )


def conjugate_system(sys: MatrixSystem, p: RMatrix) -> MatrixSystem:
    """Frame change preserving C_0 = I: C -> P^-1 C P, B -> P^T B P."""
    p_inv = p.inverse()
    p_t = p.transpose()
    return MatrixSystem(
        l=sys.l,
        r=sys.r,
        codim=sys.codim,
        C=tuple(p_inv * c * p for c in sys.C),
        B=tuple(p_t * b * p for b in sys.B),
    )


# ---------------------------------------------------------------------------
# simultaneous diagonalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalizedSystem:
    basis: RMatrix | None
    system: MatrixSystem
    status: str
    combination: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.basis is not None


def _combination_seeds(dim: int, attempts: int, tag: int) -> list[tuple[int, ...]]:
    seeds: list[tuple[int, ...]] = []
    if dim >= 1:
        seeds.append(tuple(int(i == 0) for i in range(dim)))
    if dim >= 2:
        seeds.append(tuple(int(i == 1) for i in range(dim)))
    seeds.append((1,) * dim)
    seeds.append(tuple(range(1, dim + 1)))
    rng = random.Random(9176 + tag)
    while len(seeds) < attempts:
        seeds.append(tuple(rng.randint(-9, 9) for _ in range(dim)))
    # drop duplicates while preserving order
    unique: list[tuple[int, ...]] = []
    for s in seeds:
        if s not in unique:
            unique.append(s)
    return unique[:attempts]


def _diagonal_status(sys: MatrixSystem) -> str:
    c_diag = all(c.is_diagonal() for c in sys.C)
    b_diag = all(b.is_diagonal() for b in sys.B)
    if c_diag and b_diag:
        return FULLY_DIAGONAL
    if b_diag:
        return B_DIAGONAL_ONLY
    if c_diag:
        return C_DIAGONAL_ONLY
    return PARTIAL_BASIS


def _try_pencil_basis(
    sys: MatrixSystem, members: Sequence[RMatrix], attempts: int, tag: int
) -> DiagonalizedSystem:
    """Seek a seeded combination of the given pencil members with r distinct
    rational eigenvalues; conjugate the system by its eigenbasis."""
    saw_incomplete = False
    if members:
        for combo in _combination_seeds(len(members), attempts, tag):
            m = RMatrix.zeros(sys.r)
            for coeff, member in zip(combo, members):
                if coeff:
                    m = m + member.scale(coeff)
            roots, complete = m.rational_eigenvalues()
            if not complete:
                saw_incomplete = True
                continue
            if any(mult > 1 for _, mult in roots):
                continue
            columns = [m.eigenvector(value) for value, _ in roots]
            basis = RMatrix(list(zip(*columns)))
            transformed = conjugate_system(sys, basis)
            return DiagonalizedSystem(
                basis=basis,
                system=transformed,
                status=_diagonal_status(transformed),
                combination=combo,
            )
    status = SPECTRUM_NOT_RATIONAL if saw_incomplete else BLOCKED
    return DiagonalizedSystem(basis=None, system=sys, status=status, combination=None)


def simultaneous_diagonalize(
    nsys: MatrixSystem, attempts: int = DIAG_ATTEMPTS
) -> DiagonalizedSystem:
    """Diagonalize via a generic member of the generator pencil.

    Requires C_0 = I.  When a seeded combination of C_1..C_l has r distinct
    rational eigenvalues, conjugation by its eigenbasis makes every B matrix
    diagonal (symmetry forces the off-diagonal entries to vanish) and the
    C matrices diagonal exactly when the system is completely reducible.
    """
    if nsys.C[0] != RMatrix.identity(nsys.r):
        raise PreconditionError("simultaneous diagonalization requires C_0 = identity")
    return _try_pencil_basis(nsys, nsys.C[1:], attempts, tag=1)


def diagonalize_by_normal_pencil(
    nsys: MatrixSystem, attempts: int = DIAG_ATTEMPTS
) -> DiagonalizedSystem:
    """Dual route: diagonalize a generic member of the normal pencil.

    In the C_0 = I frame the B matrices are symmetric, so the eigenbasis of
    a combination with distinct rational eigenvalues has orthogonal columns
    and the congruence B -> P^T B P diagonalizes that combination too.
    """
    if nsys.C[0] != RMatrix.identity(nsys.r):
        raise PreconditionError("diagonalization requires C_0 = identity")
    return _try_pencil_basis(nsys, nsys.B, attempts, tag=2)


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------


def block_decompose(diag: DiagonalizedSystem | MatrixSystem) -> list[list[int]]:
    """Connected components of the coupling graph in the current basis.

    Indices p, q are joined when any C or B matrix has a nonzero entry at
    (p, q) or (q, p).  The result is the finest simultaneous block
    structure visible in this basis, sorted by smallest contained index.
    """
    sys = diag.system if isinstance(diag, DiagonalizedSystem) else diag
    parent = list(range(sys.r))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for mat in list(sys.C) + list(sys.B):
        for p in range(sys.r):
            for q in range(p + 1, sys.r):
                if mat[p][q] != 0 or mat[q][p] != 0:
                    union(p, q)
    groups: dict[int, list[int]] = {}
    for i in range(sys.r):
        groups.setdefault(find(i), []).append(i)
    return [sorted(groups[root]) for root in sorted(groups)]


def extract_block(sys: MatrixSystem, indices: Sequence[int]) -> MatrixSystem:
    idx = list(indices)
    return MatrixSystem(
        l=sys.l,
        r=len(idx),
        codim=sys.codim,
        C=tuple(c.submatrix(idx, idx) for c in sys.C),
        B=tuple(b.submatrix(idx, idx) for b in sys.B),
    )


def _embed_basis(p_local: RMatrix, indices: Sequence[int], r: int) -> RMatrix:
    rows = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for a, gi in enumerate(indices):
        for b, gj in enumerate(indices):
            rows[gi][gj] = p_local[a][b]
    return RMatrix(rows)


def proportional_family(mats: Sequence[RMatrix]) -> tuple[RMatrix, tuple[Fraction, ...]] | None:
    """If every matrix is a rational multiple of a common core, return
    (core, scalars); otherwise None.  Zero matrices get scalar 0."""
    core = next((m for m in mats if not m.is_zero()), None)
    if core is None:
        return None
    anchor = next(
        (p, q)
        for p in range(core.rows)
        for q in range(core.cols)
        if core[p][q] != 0
    )
    scalars = []
    for m in mats:
        scalar = m[anchor[0]][anchor[1]] / core[anchor[0]][anchor[1]]
        if m != core.scale(scalar):
            return None
        scalars.append(scalar)
    return core, tuple(scalars)


# ---------------------------------------------------------------------------
# repeated-component certification
# ---------------------------------------------------------------------------

KIND_NONE = "none"
KIND_LINEAR = "linear"
KIND_NONLINEAR = "nonlinear"
KIND_UNDETERMINED = "undetermined"


def gram_matrix(q: MultiPoly) -> RMatrix:
    """Symmetric coefficient matrix of a quadratic form."""
    n = q.nvars
    rows = [[Fraction(0)] * n for _ in range(n)]
    for exp, coeff in q.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if sum(exp) != 2:
            raise PreconditionError("gram matrix of a non-quadratic polynomial")
        if len(support) == 1:
            i = support[0]
            rows[i][i] = coeff
        else:
            i, j = support
            rows[i][j] = coeff / 2
            rows[j][i] = coeff / 2
    return RMatrix(rows)


def repeated_component_kind(p: MultiPoly) -> str:
    """Classify the repeated factors of p.

    "none": squarefree.  "linear": every repeated component is certified a
    hyperplane (over the complex numbers, so binary forms and rank <= 2
    quadrics count as linear).  "nonlinear": some repeated component is
    certified irreducible of degree >= 2 (a quadric of rank >= 3).
    "undetermined": repeated factors exist but their shape is not certified.
    """
    rep = repeated_part(p)
    if rep.is_constant():
        return KIND_NONE
    radical = squarefree_part(rep)
    if radical.degree() == 1:
        return KIND_LINEAR
    if len(radical.variables()) <= 2:
        # binary forms split into linear factors over the complex numbers
        return KIND_LINEAR
    if radical.degree() == 2 and radical.is_homogeneous():
        rank = gram_matrix(radical).rank()
        return KIND_LINEAR if rank <= 2 else KIND_NONLINEAR
    return KIND_UNDETERMINED


def multiple_hyperplane_decomposition(
    p: MultiPoly,
) -> tuple[MultiPoly, Fraction] | None:
    """If p = const * (linear form)^deg, return (linear form, const)."""
    if p.is_zero() or p.degree() < 1:
        return None
    line = squarefree_part(p)
    if line.degree() != 1:
        return None
    power = line ** p.degree()
    anchor, coeff = power.leading_term()
    if anchor not in p.terms:
        return None
    const = p.terms[anchor] / coeff
    if power * const == p:
        return line, const
    return None


# ---------------------------------------------------------------------------
# eigenvalue matrices
# ---------------------------------------------------------------------------


def b_eigenvalue_matrix(sys: MatrixSystem) -> RMatrix:
    """Rows indexed by the normal direction, columns by the diagonal position."""
    if not all(b.is_diagonal() for b in sys.B):
        raise PreconditionError("normal family is not diagonal in this basis")
    return RMatrix([[b[p][p] for p in range(sys.r)] for b in sys.B])


def c_eigenvalue_matrix(sys: MatrixSystem) -> RMatrix:
    """Rows indexed by the diagonal position, columns by the generator coordinate."""
    if not all(c.is_diagonal() for c in sys.C):
        raise PreconditionError("generator family is not diagonal in this basis")
    return RMatrix([[c[p][p] for c in sys.C] for p in range(sys.r)])


def eigenvalue_matrices(diag: DiagonalizedSystem) -> tuple[RMatrix, RMatrix]:
    sys = diag.system
    return b_eigenvalue_matrix(sys), c_eigenvalue_matrix(sys)


def _rank_without_column(m: RMatrix, col: int) -> int:
    keep = [j for j in range(m.cols) if j != col]
    return m.submatrix(range(m.rows), keep).rank()


def _assemble_eigen_matrix(state, partition, labeled, family: str) -> RMatrix | None:
    """Eigenvalue matrix with one column per diagonal position p.

    For the normal family the rows are the codim directions; for the
    generator family the rows are the l+1 coordinates (the transpose of
    the classical orientation, so that deleting an index p is always a
    column deletion).  Blocks that are neither diagonal nor proportional
    make the matrix unavailable.
    """
    columns: dict[int, list[Fraction]] = {}
    for block in partition:
        sub = extract_block(state, block)
        mats = sub.B if family == "B" else sub.C
        if all(m.is_diagonal() for m in mats):
            for local, p in enumerate(block):
                columns[p] = [m[local][local] for m in mats]
            continue
        outcome = labeled.get(tuple(block))
        scalars = None
        if outcome is not None:
            scalars = outcome.b_scalars if family == "B" else outcome.c_scalars
        if scalars is None:
            return None
        for p in block:
            columns[p] = list(scalars)
    ordered = [columns[p] for p in range(state.r)]
    return RMatrix(list(zip(*ordered)))


# ---------------------------------------------------------------------------
# block classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockOutcome:
    """Result of one classification step on a block subsystem."""

    kind: str  # "label" | "split" | "rebase" | "unresolved"
    label: str | None = None
    basis: RMatrix | None = None
    parts: tuple[tuple[int, ...], ...] | None = None
    rebase_mark: str | None = None  # which pencil produced the basis: "c" or "b"
    b_core: RMatrix | None = None
    b_scalars: tuple[Fraction, ...] | None = None
    c_core: RMatrix | None = None
    c_scalars: tuple[Fraction, ...] | None = None
    both_proportional: bool = False
    reason: str | None = None


def classify_block(
    subsys: MatrixSystem,
    *,
    attempts: int = DIAG_ATTEMPTS,
    c_based: bool = False,
    b_based: bool = False,
) -> BlockOutcome:
    """Classify one block, or report a finer split of it.

    Splitting is attempted before the proportionality labels so that a
    composite sharing a proportional family (for example two hypersurface
    blocks with the same normal matrix) is recovered as a composite.
    """
    r_t = subsys.r
    if r_t == 1:
        return BlockOutcome(kind="label", label=TORSE)
    statuses: list[str] = []
    if not c_based:
        diag = simultaneous_diagonalize(subsys, attempts)
        if diag.ok:
            parts = block_decompose(diag)
            kind = "split" if len(parts) > 1 else "rebase"
            return BlockOutcome(
                kind=kind,
                basis=diag.basis,
                parts=tuple(tuple(p) for p in parts),
                rebase_mark="c",
            )
        statuses.append(diag.status)
    if not b_based:
        diag = diagonalize_by_normal_pencil(subsys, attempts)
        if diag.ok:
            parts = block_decompose(diag)
            kind = "split" if len(parts) > 1 else "rebase"
            return BlockOutcome(
                kind=kind,
                basis=diag.basis,
                parts=tuple(tuple(p) for p in parts),
                rebase_mark="b",
            )
        statuses.append(diag.status)
    b_prop = proportional_family(subsys.B)
    c_prop = proportional_family(subsys.C)
    if c_prop and b_prop:
        return BlockOutcome(
            kind="label",
            label=CONE_TYPE,
            c_core=c_prop[0],
            c_scalars=c_prop[1],
            b_core=b_prop[0],
            b_scalars=b_prop[1],
            both_proportional=True,
        )
    if b_prop:
        return BlockOutcome(
            kind="label",
            label=HYPERSURFACE_TYPE,
            b_core=b_prop[0],
            b_scalars=b_prop[1],
        )
    if c_prop:
        return BlockOutcome(
            kind="label",
            label=CONE_TYPE,
            c_core=c_prop[0],
            c_scalars=c_prop[1],
        )
    reason = (
        SPECTRUM_NOT_RATIONAL if SPECTRUM_NOT_RATIONAL in statuses else BLOCKED
    )
    return BlockOutcome(kind="unresolved", label=IRREDUCIBLE_UNCLASSIFIED, reason=reason)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockReport:
    indices: tuple[int, ...]
    size: int
    label: str
    f_factor: MultiPoly
    phi_factor: MultiPoly
    b_core: RMatrix | None = None
    b_scalars: tuple[Fraction, ...] | None = None
    c_core: RMatrix | None = None
    c_scalars: tuple[Fraction, ...] | None = None
    both_proportional: bool = False
    unresolved_reason: str | None = None


@dataclass(frozen=True)
class StructureReport:
    label: str | None
    status: str
    l: int
    r: int
    codim: int
    n: int
    ambient_dim: int
    validation: ValidationReport
    focal_f: MultiPoly
    focal_phi: MultiPoly
    f_multiple_components: bool
    phi_multiple_components: bool
    f_repeated_kind: str
    phi_repeated_kind: str
    f_squarefree: MultiPoly
    phi_squarefree: MultiPoly
    m: int | None
    dim_osculating: int | None
    m_star: int
    k: int
    characteristic_basis: tuple[tuple[Fraction, ...], ...]
    partition: tuple[tuple[int, ...], ...]
    blocks: tuple[BlockReport, ...]
    rank_b: int | None
    rank_c: int | None
    b_deletion_stable: bool | None
    c_deletion_stable: bool | None
    ambient_reduction: int | None
    vertex_dim: int | None
    torsal_remark: bool
    diag_status: str
    basis: RMatrix | None
    coord_change: RMatrix | None
    frame: RMatrix | None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @property
    def block_types(self) -> tuple[str, ...]:
        return tuple(b.label for b in self.blocks)


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------


def classify(sys: MatrixSystem, *, attempts: int = DIAG_ATTEMPTS) -> StructureReport:
    """Full structural classification of a matrix system."""
    report = validate(sys)
    if not report.ok:
        raise SystemInvalidError("system failed validation", report=report)

    f_poly = focal_hypersurface(sys)
    phi_poly = focal_hypercone(sys)
    f_mult = has_multiple_components(f_poly)
    phi_mult = has_multiple_components(phi_poly)
    f_kind = repeated_component_kind(f_poly)
    phi_kind = repeated_component_kind(phi_poly)
    f_sf = squarefree_part(f_poly)
    phi_sf = squarefree_part(phi_poly)
    char = characteristic_subspace(sys)
    notes: list[str] = []

    base = dict(
        l=sys.l,
        r=sys.r,
        codim=sys.codim,
        n=sys.n,
        ambient_dim=sys.ambient_dim,
        validation=report,
        focal_f=f_poly,
        focal_phi=phi_poly,
        f_multiple_components=f_mult,
        phi_multiple_components=phi_mult,
        f_repeated_kind=f_kind,
        phi_repeated_kind=phi_kind,
        f_squarefree=f_sf,
        phi_squarefree=phi_sf,
        m_star=char.m_star,
        k=char.k,
        characteristic_basis=char.basis,
    )

    if sys.l == 0:
        notes.append("l = 0: the Gauss map has full rank, no generator to foliate")
        return StructureReport(
            label=LABEL_NONDEGENERATE,
            status="ok",
            m=None,
            dim_osculating=None,
            partition=(),
            blocks=(),
            rank_b=None,
            rank_c=None,
            b_deletion_stable=None,
            c_deletion_stable=None,
            ambient_reduction=None,
            vertex_dim=None,
            torsal_remark=False,
            diag_status=BLOCKED,
            basis=None,
            coord_change=None,
            frame=None,
            notes=tuple(notes),
            **base,
        )

    norm = normalize(sys)
    state = norm.system
    osc = osculating_dimension(state)
    r = sys.r

    basis_total = RMatrix.identity(r)
    partition: list[tuple[int, ...]] = [tuple(range(r))]
    flags: dict[tuple[int, ...], dict[str, bool]] = {
        partition[0]: {"c": False, "b": False}
    }
    labeled: dict[tuple[int, ...], BlockOutcome] = {}
    queue: list[tuple[int, ...]] = [partition[0]]

    while queue:
        block = queue.pop(0)
        mark = flags.setdefault(block, {"c": False, "b": False})
        sub = extract_block(state, block)
        outcome = classify_block(
            sub, attempts=attempts, c_based=mark["c"], b_based=mark["b"]
        )
        if outcome.kind in ("split", "rebase"):
            embedded = _embed_basis(outcome.basis, block, r)
            basis_total = basis_total * embedded
            state = conjugate_system(state, embedded)
            new_parts = [tuple(block[i] for i in part) for part in outcome.parts]
            partition.remove(block)
            partition.extend(new_parts)
            for part in new_parts:
                inherited = dict(mark)
                if outcome.kind == "rebase":
                    inherited[outcome.rebase_mark] = True
                else:
                    # freshly separated blocks get their own attempts
                    inherited = {"c": False, "b": False}
                flags[part] = inherited
                queue.append(part)
        else:
            labeled[block] = outcome

    partition.sort(key=lambda b: b[0])

    block_reports: list[BlockReport] = []
    unresolved_reasons: list[str] = []
    for block in partition:
        outcome = labeled[block]
        sub = extract_block(state, block)
        f_factor = focal_hypersurface(sub)
        phi_factor = focal_hypercone(sub)
        block_reports.append(
            BlockReport(
                indices=block,
                size=len(block),
                label=outcome.label,
                f_factor=f_factor,
                phi_factor=phi_factor,
                b_core=outcome.b_core,
                b_scalars=outcome.b_scalars,
                c_core=outcome.c_core,
                c_scalars=outcome.c_scalars,
                both_proportional=outcome.both_proportional,
                unresolved_reason=outcome.reason,
            )
        )
        if outcome.kind == "unresolved":
            unresolved_reasons.append(outcome.reason)

    # eigenvalue-matrix ranks, assembled blockwise: diagonal blocks supply
    # their actual diagonal entries, proportional blocks supply the scalar
    # vector (every true column of such a block is a nonzero multiple of it,
    # which leaves both rank and column-deletion behavior unchanged)
    rank_b = rank_c = None
    b_stable = c_stable = None
    ambient_reduction = None
    vertex_dim = None
    torsal_remark = False
    bmat = _assemble_eigen_matrix(state, partition, labeled, family="B")
    if bmat is not None:
        rank_b = bmat.rank()
        if r >= 2:
            b_stable = all(
                _rank_without_column(bmat, p) == rank_b for p in range(r)
            )
            if rank_b <= r - 1 and b_stable:
                ambient_reduction = sys.n + rank_b
        if rank_b == r and sys.codim > r:
            torsal_remark = True
    cmat = _assemble_eigen_matrix(state, partition, labeled, family="C")
    if cmat is not None:
        rank_c = cmat.rank()
        if r >= 2:
            c_stable = all(_rank_without_column(cmat, p) == rank_c for p in range(r))
            if rank_c <= r - 1 and c_stable:
                vertex_dim = sys.l - rank_c

    diag_status = _diagonal_status(state)
    if unresolved_reasons:
        diag_status = (
            SPECTRUM_NOT_RATIONAL
            if SPECTRUM_NOT_RATIONAL in unresolved_reasons
            else BLOCKED
        )

    # overall label
    label: str | None
    if f_kind == KIND_NONLINEAR or phi_kind == KIND_NONLINEAR:
        label = LABEL_OUTSIDE
        notes.append("a focal image carries a certified nonlinear repeated component")
        status = "ok"
    elif unresolved_reasons:
        label = None
        status = (
            SPECTRUM_NOT_RATIONAL
            if SPECTRUM_NOT_RATIONAL in unresolved_reasons
            else BLOCKED
        )
        notes.append("classification incomplete: " + ", ".join(sorted(set(unresolved_reasons))))
    else:
        types = [b.label for b in block_reports]
        if all(t == TORSE for t in types):
            label = LABEL_TORSE if r == 1 else LABEL_TORSAL
        elif len(types) == 1:
            label = LABEL_CONE if types[0] == CONE_TYPE else LABEL_HYPERSURFACE
        else:
            label = LABEL_REDUCIBLE
        status = "ok"

    return StructureReport(
        label=label,
        status=status,
        m=osc.m,
        dim_osculating=osc.dim_osculating,
        partition=tuple(partition),
        blocks=tuple(block_reports),
        rank_b=rank_b,
        rank_c=rank_c,
        b_deletion_stable=b_stable,
        c_deletion_stable=c_stable,
        ambient_reduction=ambient_reduction,
        vertex_dim=vertex_dim,
        torsal_remark=torsal_remark,
        diag_status=diag_status,
        basis=basis_total,
        coord_change=norm.coord_change,
        frame=norm.frame,
        notes=tuple(notes),
        **base,
    )
