"""Floating-point cross-checks of parametric models.

A ParametricModel is a polynomial map into projective space whose
variables split into r shape parameters u_1..u_r and l+1 generator
coordinates s_0..s_l (the components are jointly linear in s, so each
fixed u gives a plane).  The oracle measures, numerically:

  * the rank of the map sending u to the tangent plane (the Gauss rank),
  * whether the tangent plane really is constant along each generator,
  * where on a generator the parametrization degenerates.

Derivatives of the components are evaluated exactly over the rationals
and converted to floating point; only the Grassmann-coordinate map is
differentiated by central finite differences.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    AmbiguousRankError,
    DimensionError,
    FileFormatError,
    RankDeficientSample,
)
from .exactmath import MultiPoly, poly_from_obj, poly_to_obj
from .system import atomic_write_text

FD_STEP = 1e-5
RANK_TOL = 1e-6
REGULARITY_TOL = 1e-9


@dataclass(frozen=True)
class ParametricModel:
    """Polynomial parametrization with linear generator coordinates.

    Components live in nvars = r + l + 1 variables ordered u_1..u_r,
    s_0..s_l.  The ambient projective dimension is ``ambient`` (so there
    are ambient+1 components).
    """

    ambient: int
    l: int
    r: int
    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.components) != self.ambient + 1:
            raise DimensionError(
                f"expected {self.ambient + 1} components, got {len(self.components)}"
            )
        nvars = self.r + self.l + 1
        for comp in self.components:
            if comp.nvars != nvars:
                raise DimensionError(
                    "components must use r + l + 1 variables (u first, then s)"
                )

    @property
    def n(self) -> int:
        return self.l + self.r

    def s_linearity_violations(self) -> list[int]:
        """Indices of components that are not jointly linear in the s block."""
        bad = []
        for idx, comp in enumerate(self.components):
            for exp in comp.terms:
                if sum(exp[self.r :]) > 1:
                    bad.append(idx)
                    break
        return bad


# ---------------------------------------------------------------------------
# exact-derivative evaluation
# ---------------------------------------------------------------------------


class _Calculator:
    """Caches the component partials of a model for repeated evaluation."""

    def __init__(self, model: ParametricModel):
        self.model = model
        nvars = model.r + model.l + 1
        self.partials = [
            [comp.partial(v) for comp in model.components] for v in range(nvars)
        ]

    def point(self, u: Sequence[float], s: Sequence[float]) -> list[Fraction]:
        vals = [Fraction(x) for x in itertools.chain(u, s)]
        return vals

    def frame(self, u: Sequence[float], s: Sequence[float]) -> np.ndarray:
        """Rows: d x / d s_j (j = 0..l) then d x / d u_q (q = 1..r).

        The point itself lies in the span of the s-derivatives because the
        components are linear in s.
        """
        vals = self.point(u, s)
        model = self.model
        rows = []
        for j in range(model.l + 1):
            row = [p.evaluate(vals) for p in self.partials[model.r + j]]
            rows.append([float(x) for x in row])
        for q in range(model.r):
            row = [p.evaluate(vals) for p in self.partials[q]]
            rows.append([float(x) for x in row])
        return np.array(rows, dtype=float)


# ---------------------------------------------------------------------------
# tangent spaces and Grassmann coordinates
# ---------------------------------------------------------------------------


def tangent_space(
    model: ParametricModel,
    u: Sequence[float],
    s: Sequence[float],
    *,
    regularity_tol: float = REGULARITY_TOL,
    _calc: _Calculator | None = None,
) -> np.ndarray:
    """Orthonormal basis (rows) of the affine tangent span at (u, s).

    Raises RankDeficientSample when the Jacobian loses rank at the sample,
    which signals a singular point; callers resample.
    """
    calc = _calc or _Calculator(model)
    frame = calc.frame(u, s)
    sv = np.linalg.svd(frame, compute_uv=False)
    if sv.size == 0 or sv[0] == 0 or sv[-1] < regularity_tol * sv[0]:
        raise RankDeficientSample(f"singular sample at u={list(u)}, s={list(s)}")
    q, _ = np.linalg.qr(frame.T)
    return q[:, : frame.shape[0]].T


def plucker_coordinates(basis: np.ndarray) -> np.ndarray:
    """Normalized Grassmann coordinates of the row span of an (n+1) frame.

    The sign is pinned by making the largest-magnitude coordinate positive,
    giving a locally continuous section for finite differencing.
    """
    k, width = basis.shape
    coords = [
        np.linalg.det(basis[:, list(cols)])
        for cols in itertools.combinations(range(width), k)
    ]
    vec = np.array(coords)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise RankDeficientSample("degenerate frame has no Grassmann coordinates")
    vec = vec / norm
    pivot = int(np.argmax(np.abs(vec)))
    if vec[pivot] < 0:
        vec = -vec
    return vec


@dataclass(frozen=True)
class GaussRankResult:
    rank: int
    gap: float
    sample_ranks: tuple[int, ...]

    def __int__(self):
        return self.rank


def gauss_rank(
    model: ParametricModel,
    *,
    samples: int = 20,
    tol: float = RANK_TOL,
    seed: int = 0,
    step: float = FD_STEP,
) -> GaussRankResult:
    """Numeric rank of the Gauss map, modal over random regular samples.

    At each sample the Grassmann coordinates of the tangent span are
    differentiated along every u direction by central differences; the rank
    is the number of singular values above tol times the largest.  The gap
    is the ratio between the last accepted singular value and the first
    rejected one (or the float noise floor when none is rejected).
    """
    if samples < 1:
        raise DimensionError("need at least one sample")
    calc = _Calculator(model)
    rng = np.random.default_rng(seed)
    ranks: list[int] = []
    gaps: list[float] = []
    attempts = 0
    while len(ranks) < samples and attempts < 50 * samples:
        attempts += 1
        u = rng.uniform(-1.0, 1.0, model.r)
        s = rng.uniform(-1.0, 1.0, model.l + 1)
        try:
            base = tangent_space(model, u, s, _calc=calc)
            p0 = plucker_coordinates(base)
            rows = []
            for q in range(model.r):
                du = np.zeros(model.r)
                du[q] = step
                p_plus = plucker_coordinates(
                    tangent_space(model, u + du, s, _calc=calc)
                )
                p_minus = plucker_coordinates(
                    tangent_space(model, u - du, s, _calc=calc)
                )
                if np.dot(p_plus, p0) < 0:
                    p_plus = -p_plus
                if np.dot(p_minus, p0) < 0:
                    p_minus = -p_minus
                rows.append((p_plus - p_minus) / (2.0 * step))
        except RankDeficientSample:
            continue
        if not rows:
            # no shape parameters at all: the tangent plane cannot move
            ranks.append(0)
            gaps.append(math.inf)
            continue
        deriv = np.array(rows)
        sv = np.linalg.svd(deriv, compute_uv=False)
        smax = sv[0] if sv.size else 0.0
        if smax < 1e-12:
            ranks.append(0)
            gaps.append(math.inf)
            continue
        rank = int(np.sum(sv > tol * smax))
        floor = np.finfo(float).eps * smax
        rejected = sv[rank] if rank < sv.size else 0.0
        gaps.append(float(sv[rank - 1] / max(rejected, floor)))
        ranks.append(rank)
    if len(ranks) < samples:
        raise AmbiguousRankError(
            f"only {len(ranks)} regular samples found", histogram=Counter(ranks)
        )
    counts = Counter(ranks)
    mode, freq = counts.most_common(1)[0]
    if freq < 0.7 * len(ranks):
        raise AmbiguousRankError(
            f"inconsistent numeric ranks {dict(counts)}", histogram=counts
        )
    agreeing = [g for g, rk in zip(gaps, ranks) if rk == mode]
    gap = float(np.median(agreeing))
    return GaussRankResult(rank=mode, gap=gap, sample_ranks=tuple(ranks))


def verify_leaf_linearity(
    model: ParametricModel,
    u: Sequence[float] | None = None,
    n_samples: int = 8,
    *,
    seed: int = 0,
) -> float:
    """Largest principal angle (radians) between tangent spans along one
    generator.  Valid models stay below 1e-8; an injected nonlinearity in
    the generator coordinates shows up well above 1e-3."""
    rng = np.random.default_rng(seed)
    if u is None:
        u = rng.uniform(-1.0, 1.0, model.r)
    calc = _Calculator(model)
    spans = []
    attempts = 0
    while len(spans) < n_samples and attempts < 50 * n_samples:
        attempts += 1
        s = rng.uniform(-1.0, 1.0, model.l + 1)
        try:
            spans.append(tangent_space(model, u, s, _calc=calc))
        except RankDeficientSample:
            continue
    if len(spans) < 2:
        raise AmbiguousRankError("not enough regular samples on the generator")
    worst = 0.0
    base = spans[0]
    for other in spans[1:]:
        # sine of the largest principal angle, via the projection residual;
        # accurate for tiny angles where the cosine saturates at 1
        residual = other - (other @ base.T) @ base
        sine = np.linalg.svd(residual, compute_uv=False)
        sine_max = float(sine[0]) if sine.size else 0.0
        angle = float(np.arcsin(np.clip(sine_max, 0.0, 1.0)))
        worst = max(worst, angle)
    return worst


def singular_locus_on_generator(
    model: ParametricModel,
    u: Sequence[float],
    *,
    anchor: Sequence[float] | None = None,
    direction: Sequence[float] | None = None,
    t_range: tuple[float, float] = (-3.0, 3.0),
    grid: int = 601,
    tol: float = 1e-9,
    seed: int = 0,
) -> list[float]:
    """Parameters t where the scan line anchor + t*direction in s-space
    meets the degeneration locus of the generator at u.

    Scans the smallest singular value of the Jacobian frame on a grid,
    refines each deep local minimum by golden-section search to tol, and
    keeps the minima that reach the numeric floor.
    """
    rng = np.random.default_rng(seed)
    if anchor is None:
        anchor = rng.uniform(-1.0, 1.0, model.l + 1)
    if direction is None:
        direction = rng.uniform(-1.0, 1.0, model.l + 1)
    anchor = np.asarray(anchor, dtype=float)
    direction = np.asarray(direction, dtype=float)
    calc = _Calculator(model)

    def sigma_min(t: float) -> float:
        frame = calc.frame(u, anchor + t * direction)
        sv = np.linalg.svd(frame, compute_uv=False)
        return float(sv[-1])

    lo, hi = t_range
    ts = np.linspace(lo, hi, grid)
    vals = np.array([sigma_min(t) for t in ts])
    scale = float(np.median(vals))
    if scale == 0.0:
        scale = float(np.max(vals)) or 1.0
    hits: list[float] = []
    for i in range(1, grid - 1):
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1] and vals[i] < 0.5 * scale:
            a, b = ts[i - 1], ts[i + 1]
            t_star = _golden_min(sigma_min, a, b, tol)
            if sigma_min(t_star) < 1e-6 * scale:
                if not hits or abs(t_star - hits[-1]) > 10 * tol:
                    hits.append(t_star)
    return hits


def _golden_min(fn, a: float, b: float, tol: float) -> float:
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = fn(c), fn(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = fn(d)
    return (a + b) / 2.0


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def model_to_dict(model: ParametricModel) -> dict:
    return {
        "N": model.ambient,
        "l": model.l,
        "r": model.r,
        "components": [poly_to_obj(c) for c in model.components],
    }


def model_from_dict(obj: dict) -> ParametricModel:
    try:
        ambient = int(obj["N"])
        l = int(obj["l"])
        r = int(obj["r"])
        comp_objs = obj["components"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed model document: {exc}") from exc
    nvars = r + l + 1
    try:
        components = tuple(poly_from_obj(c, nvars) for c in comp_objs)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad polynomial serialization: {exc}") from exc
    try:
        return ParametricModel(ambient=ambient, l=l, r=r, components=components)
    except DimensionError as exc:
        raise FileFormatError(str(exc)) from exc


def dumps_model(model: ParametricModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def loads_model(text: str) -> ParametricModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FileFormatError("model document must be a JSON object")
    return model_from_dict(obj)


def save_model(model: ParametricModel, path: str) -> None:
    atomic_write_text(path, dumps_model(model))


def load_model(path: str) -> ParametricModel:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_model(fh.read())
