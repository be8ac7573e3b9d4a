"""Command-line interface.

Commands: validate, focal, classify, dualize, generate, oracle-check.
Exit codes: 0 success, 1 domain failure (validation, classification,
generation, ambiguous numerics), 2 unreadable or malformed input.
Output is deterministic: identical input and flags give identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .classify import (
    CONE_TYPE,
    HYPERSURFACE_TYPE,
    LABEL_CONE,
    LABEL_HYPERSURFACE,
    LABEL_NONDEGENERATE,
    LABEL_OUTSIDE,
    LABEL_REDUCIBLE,
    LABEL_TORSAL,
    LABEL_TORSE,
    TORSE,
    StructureReport,
    classify,
)
from .duality import dualize
from .errors import (
    AmbiguousRankError,
    DomainError,
    FileFormatError,
    FocalImagesError,
    GenerationError,
    NoRegularPointError,
    SystemInvalidError,
)
from .exactmath import MultiPoly, RMatrix, has_multiple_components, poly_to_obj
from .generators import (
    gen_cone,
    gen_hypersurface,
    gen_torsal,
    gen_torse_curve,
)
from .oracle import (
    gauss_rank,
    load_model,
    save_model,
    verify_leaf_linearity,
)
from .system import (
    focal_hypercone,
    focal_hypersurface,
    save_system,
    validate,
)

LABEL_CITATIONS = {
    LABEL_TORSAL: "Theorem 2",
    LABEL_HYPERSURFACE: "Theorem 3",
    LABEL_CONE: "Theorem 4",
    LABEL_REDUCIBLE: "Theorem 5",
    LABEL_TORSE: "rank one",
    LABEL_NONDEGENERATE: "full rank",
    LABEL_OUTSIDE: "open problem: multiple nonlinear focal components",
}

BLOCK_CITATIONS = {
    TORSE: "rank one",
    CONE_TYPE: "Theorem 4",
    HYPERSURFACE_TYPE: "Theorem 3",
}


def _x_names(count: int) -> list[str]:
    return [f"x{i}" for i in range(count)]


def _xi_names(count: int) -> list[str]:
    return [f"xi{a}" for a in range(1, count + 1)]


def _matrix_obj(m: RMatrix | None):
    if m is None:
        return None
    return [[str(v) for v in row] for row in m.data]


def _fractions_obj(values):
    if values is None:
        return None
    return [str(v) for v in values]


def _poly_obj(p: MultiPoly, names: list[str]) -> dict:
    return {"text": p.render(names), "terms": poly_to_obj(p)}


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def report_document(report: StructureReport, digest: str) -> dict:
    """JSON-shaped classification document with a stable key order."""
    xn = _x_names(report.l + 1)
    xin = _xi_names(report.codim)
    label_line = render_label_line(report)
    blocks = []
    for block in report.blocks:
        blocks.append(
            {
                "indices": list(block.indices),
                "size": block.size,
                "type": block.label,
                "citation": BLOCK_CITATIONS.get(block.label),
                "f_factor": _poly_obj(block.f_factor, xn),
                "phi_factor": _poly_obj(block.phi_factor, xin),
                "b_scalars": _fractions_obj(block.b_scalars),
                "b_core": _matrix_obj(block.b_core),
                "c_scalars": _fractions_obj(block.c_scalars),
                "c_core": _matrix_obj(block.c_core),
                "both_proportional": block.both_proportional,
                "unresolved_reason": block.unresolved_reason,
            }
        )
    return {
        "input_digest": digest,
        "system": {
            "l": report.l,
            "r": report.r,
            "codim": report.codim,
            "n": report.n,
            "N": report.ambient_dim,
        },
        "validation": {
            "ok": report.validation.ok,
            "symmetry_violations": [
                list(v) for v in report.validation.symmetry_violations
            ],
            "regular_point": _fractions_obj(report.validation.regular_point),
            "regular_normal": _fractions_obj(report.validation.regular_normal),
        },
        "label": report.label,
        "status": report.status,
        "headline": label_line,
        "focal": {
            "F": _poly_obj(report.focal_f, xn),
            "Phi": _poly_obj(report.focal_phi, xin),
            "F_multiple_components": report.f_multiple_components,
            "Phi_multiple_components": report.phi_multiple_components,
            "F_repeated_kind": report.f_repeated_kind,
            "Phi_repeated_kind": report.phi_repeated_kind,
            "F_squarefree_part": _poly_obj(report.f_squarefree, xn),
            "Phi_squarefree_part": _poly_obj(report.phi_squarefree, xin),
        },
        "partition": [list(b) for b in report.partition],
        "blocks": blocks,
        "invariants": {
            "m": report.m,
            "dim_osculating": report.dim_osculating,
            "m_star": report.m_star,
            "k": report.k,
            "characteristic_basis": [
                _fractions_obj(vec) for vec in report.characteristic_basis
            ],
            "rank_B": report.rank_b,
            "rank_C": report.rank_c,
            "b_deletion_stable": report.b_deletion_stable,
            "c_deletion_stable": report.c_deletion_stable,
            "ambient_reduction": report.ambient_reduction,
            "vertex_dim": report.vertex_dim,
            "torsal_remark": report.torsal_remark,
        },
        "diagonalization": {
            "status": report.diag_status,
            "basis": _matrix_obj(report.basis),
            "coord_change": _matrix_obj(report.coord_change),
            "frame": _matrix_obj(report.frame),
        },
        "notes": list(report.notes),
    }


def render_label_line(report: StructureReport) -> str:
    if report.label is None:
        return f"unresolved ({report.status})"
    citation = LABEL_CITATIONS.get(report.label, "")
    line = f"{report.label} — {citation}" if citation else report.label
    if report.label == LABEL_CONE and report.vertex_dim is not None:
        line += f", vertex dimension {report.vertex_dim}"
    elif report.label == LABEL_HYPERSURFACE and report.ambient_reduction is not None:
        line += f", ambient subspace dimension {report.ambient_reduction}"
    elif report.label == LABEL_REDUCIBLE:
        sizes = sorted(b.size for b in report.blocks)
        line += f", blocks {sizes}"
    elif report.label == LABEL_TORSAL:
        line += f", {report.r} torse families"
    return line


def render_report_text(report: StructureReport, digest: str) -> str:
    xn = _x_names(report.l + 1)
    xin = _xi_names(report.codim)
    lines = [
        f"system: l={report.l} r={report.r} codim={report.codim} "
        f"(n={report.n}, N={report.ambient_dim})",
        f"input digest: {digest}",
        f"validation: {'pass' if report.validation.ok else 'fail'}",
        f"F   = {report.focal_f.render(xn)}",
        f"Phi = {report.focal_phi.render(xin)}",
        f"F multiple components: {report.f_multiple_components}"
        + (f" ({report.f_repeated_kind})" if report.f_multiple_components else ""),
        f"Phi multiple components: {report.phi_multiple_components}"
        + (f" ({report.phi_repeated_kind})" if report.phi_multiple_components else ""),
        f"classification: {render_label_line(report)}",
    ]
    for block in report.blocks:
        cite = BLOCK_CITATIONS.get(block.label)
        suffix = f" ({cite})" if cite else ""
        reason = (
            f" [unresolved: {block.unresolved_reason}]"
            if block.unresolved_reason
            else ""
        )
        lines.append(
            f"  block {list(block.indices)} size {block.size}: "
            f"{block.label}{suffix}{reason}"
        )
    if report.m is not None:
        lines.append(
            f"independent second forms m = {report.m}, "
            f"osculating dimension = {report.dim_osculating}"
        )
    lines.append(f"characteristic subspace: m* = {report.m_star}, k = {report.k}")
    if report.rank_b is not None:
        lines.append(f"eigenvalue-matrix rank r_1 = {report.rank_b}")
    if report.ambient_reduction is not None:
        lines.append(
            f"contained in a subspace of dimension "
            f"{report.ambient_reduction} (Theorem 11)"
        )
    if report.torsal_remark:
        lines.append("r_1 = r: osculating span moves, torsal case (Theorem 11 remark)")
    if report.rank_c is not None:
        lines.append(f"eigenvalue-matrix rank r_2 = {report.rank_c}")
    if report.vertex_dim is not None:
        lines.append(f"cone vertex dimension {report.vertex_dim} (Theorem 12)")
    lines.append(f"diagonalization: {report.diag_status}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    raw = _read_bytes(args.path)
    sys_obj = _load_system_bytes(raw)
    report = validate(sys_obj)
    if report.ok:
        print("valid: symmetry law holds, regular point and hyperplane found")
        return 0
    for violation in report.symmetry_violations:
        a, i, p, q = violation
        print(f"symmetry violation at (alpha={a}, i={i}, p={p}, q={q})")
    for message in report.messages:
        print(message)
    return 1


def cmd_focal(args) -> int:
    raw = _read_bytes(args.path)
    sys_obj = _load_system_bytes(raw)
    report = validate(sys_obj)
    if not report.ok:
        print("system failed validation; focal images are not reliable", file=sys.stderr)
        return 1
    f = focal_hypersurface(sys_obj)
    phi = focal_hypercone(sys_obj)
    xn = _x_names(sys_obj.l + 1)
    xin = _xi_names(sys_obj.codim)
    if args.json:
        doc = {
            "input_digest": _digest(raw),
            "F": _poly_obj(f, xn),
            "Phi": _poly_obj(phi, xin),
            "F_multiple_components": has_multiple_components(f),
            "Phi_multiple_components": has_multiple_components(phi),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"F   = {f.render(xn)}")
        print(f"Phi = {phi.render(xin)}")
        print(f"F multiple components: {has_multiple_components(f)}")
        print(f"Phi multiple components: {has_multiple_components(phi)}")
    return 0


def cmd_classify(args) -> int:
    raw = _read_bytes(args.path)
    sys_obj = _load_system_bytes(raw)
    digest = _digest(raw)
    try:
        report = classify(sys_obj)
    except SystemInvalidError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            for violation in exc.report.symmetry_violations:
                print(f"  violation {violation}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(report_document(report, digest), indent=2))
    else:
        sys.stdout.write(render_report_text(report, digest))
    if report.status != "ok":
        print(f"warning: partial report ({report.status})", file=sys.stderr)
    return 0


def cmd_dualize(args) -> int:
    sys_obj = _load_system_bytes(_read_bytes(args.path))
    dual = dualize(sys_obj)
    save_system(dual, args.out)
    print(f"wrote dual system to {args.out}")
    return 0


def cmd_generate(args) -> int:
    kind = args.kind
    seed = args.seed
    model = None
    if kind == "torsal":
        _require(args, "l", "r", "codim")
        system = gen_torsal(args.l, args.r, args.codim, seed)
    elif kind == "cone":
        _require(args, "l", "r", "codim")
        pair = gen_cone(args.l, args.r, args.codim, seed)
        system, model = pair.system, pair.model
    elif kind == "hypersurface":
        _require(args, "l", "r")
        pair = gen_hypersurface(args.l, args.r, seed)
        system, model = pair.system, pair.model
    elif kind == "torse":
        _require(args, "ambient", "l")
        pair = gen_torse_curve(args.ambient, args.l)
        system, model = pair.system, pair.model
    else:
        raise DomainError(f"unknown generator kind: {kind}")
    save_system(system, args.out)
    print(f"wrote {kind} system to {args.out}")
    if args.model_out:
        if model is None:
            print("no parametric model available for this kind", file=sys.stderr)
            return 1
        save_model(model, args.model_out)
        print(f"wrote parametric model to {args.model_out}")
    return 0


def cmd_oracle_check(args) -> int:
    try:
        model = load_model(args.path)
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return 2
    result = gauss_rank(model, samples=args.samples, tol=args.tol, seed=args.seed)
    deviation = verify_leaf_linearity(model, seed=args.seed)
    print(f"gauss rank: {result.rank}")
    print(f"singular-value gap: {result.gap:.3e}")
    print(f"leaf linearity deviation: {deviation:.3e}")
    ok = deviation < 1e-8
    print(f"leaf linearity: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise DomainError(f"--{name.replace('_', '-')} is required for this kind")


def _read_bytes(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _load_system_bytes(raw: bytes):
    from .system import loads_system

    return loads_system(raw.decode("utf-8", errors="strict"))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="focal-images",
        description=(
            "exact focal images and structural classification of "
            "submanifolds with degenerate Gauss maps"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    default_seed = int(os.environ.get("FOCAL_IMAGES_SEED", "0"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the symmetry law and regularity")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("focal", help="print the focal hypersurface and hypercone")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_focal)

    p = sub.add_parser("classify", help="full structural classification")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dualize", help="write the dual system")
    p.add_argument("path")
    p.add_argument("out")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("generate", help="write a seeded example system")
    p.add_argument("kind", choices=["torsal", "cone", "hypersurface", "torse"])
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--codim", type=int, default=None)
    p.add_argument("--ambient", type=int, default=None)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--out", required=True)
    p.add_argument("--model-out", dest="model_out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle-check", help="numeric rank and linearity checks")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=default_seed)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 2
    except (
        DomainError,
        GenerationError,
        NoRegularPointError,
        SystemInvalidError,
        AmbiguousRankError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FocalImagesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
