"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every check is exact unless a numeric tolerance is stated.
"""

import functools
import itertools
import random
from fractions import Fraction

import pytest

from focal_images.classify import (
    CONE_TYPE,
    HYPERSURFACE_TYPE,
    LABEL_CONE,
    LABEL_HYPERSURFACE,
    LABEL_TORSAL,
    TORSE,
    classify,
    conjugate_system,
    multiple_hyperplane_decomposition,
    normalize,
)
from focal_images.duality import dualize
from focal_images.exactmath import MultiPoly, RMatrix, restrict
from focal_images.generators import (
    adjugate_identity_check,
    gen_cone,
    gen_diagonal,
    gen_direct_sum,
    gen_hypersurface,
    gen_torsal,
    gen_torsal_matched,
    gen_torse_curve,
    symmetroid_patch_model,
)
from focal_images.oracle import (
    ParametricModel,
    gauss_rank,
    singular_locus_on_generator,
    verify_leaf_linearity,
)
from focal_images.system import (
    MatrixSystem,
    characteristic_subspace,
    dumps_system,
    focal_hypercone,
    focal_hypersurface,
    validate,
)


def criterion(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number} ({title}): FAIL")
                raise
            print(f"criterion {number} ({title}): PASS")

        return wrapper

    return deco


def _generator_fleet(count):
    """A deterministic mix of generator outputs with r >= 2."""
    systems = []
    i = 0
    while len(systems) < count:
        kind = i % 4
        seed = i // 4
        if kind == 0:
            systems.append(gen_torsal(1 + seed % 2, 2, 2, seed))
        elif kind == 1:
            systems.append(gen_cone(1 + seed % 2, 2, 3, seed).system)
        elif kind == 2:
            systems.append(gen_hypersurface(2, 2, seed).system)
        else:
            systems.append(gen_diagonal(1 + seed % 3, 2 + seed % 2, 2, seed))
        i += 1
    return systems


@criterion(1, "symmetry law with perturbation detection")
def test_criterion_1():
    rng = random.Random(101)
    systems = _generator_fleet(100)
    for idx, sys_obj in enumerate(systems):
        report = validate(sys_obj)
        assert report.ok, f"system {idx} failed validation"
        # perturb one off-diagonal entry of one normal matrix
        alpha = rng.randrange(sys_obj.codim)
        p = rng.randrange(sys_obj.r)
        q = (p + 1 + rng.randrange(sys_obj.r - 1)) % sys_obj.r
        rows = [list(row) for row in sys_obj.B[alpha].data]
        rows[p][q] += 1
        bad = MatrixSystem(
            l=sys_obj.l,
            r=sys_obj.r,
            codim=sys_obj.codim,
            C=sys_obj.C,
            B=sys_obj.B[:alpha] + (RMatrix(rows),) + sys_obj.B[alpha + 1 :],
        )
        bad_report = validate(bad)
        assert not bad_report.ok, f"perturbed system {idx} still validates"
        lo, hi = min(p, q), max(p, q)
        assert any(
            v[0] == alpha + 1 and (v[2], v[3]) == (lo, hi)
            for v in bad_report.symmetry_violations
        ), f"perturbed system {idx} lacks the expected violating index"


@criterion(2, "focal images homogeneous of degree r")
def test_criterion_2():
    combos = list(itertools.product(range(1, 4), range(2, 5), range(1, 5)))
    seeds = itertools.count()
    checked = 0
    for l, r, codim in combos:
        sys_obj = gen_diagonal(l, r, codim, next(seeds))
        assert validate(sys_obj).ok
        F = focal_hypersurface(sys_obj)
        Phi = focal_hypercone(sys_obj)
        assert F.degree() == r and F.is_homogeneous()
        assert Phi.degree() == r and Phi.is_homogeneous()
        checked += 1
    extra = 0
    while checked < 50:
        l, r, codim = combos[extra % len(combos)]
        sys_obj = gen_diagonal(l, r, codim, 1000 + extra)
        assert validate(sys_obj).ok
        F = focal_hypersurface(sys_obj)
        Phi = focal_hypercone(sys_obj)
        assert F.degree() == r and F.is_homogeneous()
        assert Phi.degree() == r and Phi.is_homogeneous()
        checked += 1
        extra += 1
    assert checked >= 50


@criterion(3, "torsal round trip with split focal hypersurface")
def test_criterion_3():
    shapes = [(1, 2, 2), (2, 2, 2), (1, 3, 3), (2, 3, 4)]
    for seed in range(32):
        l, r, codim = shapes[seed % len(shapes)]
        sys_obj = gen_torsal(l, r, codim, seed)
        rep = classify(sys_obj)
        assert rep.label == LABEL_TORSAL, f"seed {seed}"
        assert rep.partition == tuple((i,) for i in range(r))
        lines = []
        product = MultiPoly.const(l + 1, 1)
        for block in rep.blocks:
            assert block.label == TORSE
            assert block.f_factor.degree() == 1
            lines.append(block.f_factor.normalized())
            product = product * block.f_factor
        assert len(set(lines)) == r, "focal factors not pairwise distinct"
        assert product == rep.focal_f, "block factors do not multiply back to F"


@criterion(4, "cone round trip with vertex agreement")
def test_criterion_4():
    shapes = [(2, 2, 3), (1, 2, 3), (2, 2, 4), (3, 2, 3)]
    for seed in range(8):
        l, r, codim = shapes[seed % len(shapes)]
        sys_obj = gen_cone(l, r, codim, seed).system
        rep = classify(sys_obj)
        assert rep.label == LABEL_CONE, f"seed {seed}"
        decomposition = multiple_hyperplane_decomposition(rep.focal_f)
        assert decomposition is not None, "F is not an r-fold hyperplane"
        line, _ = decomposition
        assert rep.focal_f.degree() == r
        char = characteristic_subspace(sys_obj)
        assert char.k == l - 1
        assert rep.rank_c == 1
        assert rep.vertex_dim == l - rep.rank_c
        assert rep.vertex_dim == char.k


@criterion(5, "hypersurface round trip with proportionality witnesses")
def test_criterion_5():
    shapes = [(2, 2), (3, 2), (2, 3), (3, 3)]
    for seed in range(8):
        l, r = shapes[seed % len(shapes)]
        sys_obj = gen_hypersurface(l, r, seed).system
        rep = classify(sys_obj)
        assert rep.label == LABEL_HYPERSURFACE, f"seed {seed}"
        block = rep.blocks[0]
        assert block.label == HYPERSURFACE_TYPE
        # Phi equals (sum b^a xi_a)^r times a nonzero constant, exactly
        bundle = MultiPoly.linear_form(block.b_scalars)
        const = block.b_core.det()
        assert const != 0
        assert block.phi_factor == bundle**r * const
        # the witnesses reproduce every entry of the transformed normal family
        final = conjugate_system(normalize(sys_obj).system, rep.basis)
        for scalar, mat in zip(block.b_scalars, final.B):
            assert mat == block.b_core.scale(scalar)


def _shift_pencil(sys_obj, amount):
    """Shift C_1 by a multiple of the identity: a spectral translation that
    keeps validity and the linear-factor-free property of F."""
    shifted = sys_obj.C[1] + RMatrix.identity(sys_obj.r).scale(amount)
    return MatrixSystem(
        l=sys_obj.l,
        r=sys_obj.r,
        codim=sys_obj.codim,
        C=(sys_obj.C[0], shifted) + sys_obj.C[2:],
        B=sys_obj.B,
    )


def _torse_summand(l, scalar):
    return MatrixSystem(
        l=l,
        r=1,
        codim=1,
        C=(RMatrix([[1]]), RMatrix([[scalar]])) + tuple(RMatrix([[1]]) for _ in range(l - 1)),
        B=(RMatrix([[1]]),),
    )


@criterion(6, "block recovery for mixed direct sums")
def test_criterion_6():
    for seed in range(8):
        # torse summands with pencil values far from the seeded spectra,
        # and a second quadric block shifted to keep all spectra disjoint
        torse_a = _torse_summand(2, 17)
        torse_b = _torse_summand(2, -19)
        hyp = gen_hypersurface(2, 2, seed).system
        hyp_shifted = _shift_pencil(gen_hypersurface(2, 2, seed + 11).system, 13)
        cases = [
            ([torse_a, hyp], [1, 2], {TORSE, HYPERSURFACE_TYPE}),
            ([hyp, hyp_shifted], [2, 2], {HYPERSURFACE_TYPE}),
            ([torse_a, torse_b, hyp], [1, 1, 2], {TORSE, HYPERSURFACE_TYPE}),
        ]
        for summands, sizes, labels in cases:
            sum_sys = gen_direct_sum(summands)
            assert validate(sum_sys).ok
            rep = classify(sum_sys)
            assert rep.status == "ok", f"seed {seed} sizes {sizes}: {rep.status}"
            assert sorted(b.size for b in rep.blocks) == sizes, f"seed {seed}"
            assert set(rep.block_types) == labels, f"seed {seed}"


@criterion(7, "duality: involution, focal swap, cone/hypersurface exchange")
def test_criterion_7():
    shapes = [(2, 2, 3), (1, 2, 3), (2, 2, 4)]
    for seed in range(50):
        l, r, codim = shapes[seed % len(shapes)]
        cone = gen_cone(l, r, codim, seed).system
        dual = dualize(cone)
        # involution is byte-exact
        assert dumps_system(dualize(dual)) == dumps_system(cone)
        # focal images swap exactly under coordinate renaming
        assert focal_hypersurface(dual) == focal_hypercone(cone)
        assert focal_hypercone(dual) == focal_hypersurface(cone)
        # the dual of a cone is a hypersurface, and dualizing back recovers it
        assert classify(dual).label == LABEL_HYPERSURFACE, f"seed {seed}"
        assert classify(dualize(dual)).label == LABEL_CONE, f"seed {seed}"


@criterion(8, "determinantal cubic: adjugate identity and rank-two patch")
def test_criterion_8():
    assert adjugate_identity_check()
    result = gauss_rank(symmetroid_patch_model(), samples=20, seed=8)
    assert result.rank == 2
    assert result.gap >= 1e6


@criterion(9, "rank-one models: oracle rank and focal-root agreement")
def test_criterion_9():
    for ambient, l in ((3, 1), (4, 2)):
        pair = gen_torse_curve(ambient, l)
        assert gauss_rank(pair.model, samples=20, seed=9).rank == 1
        # scan a generator line crossing the degeneration hyperplane s_l = 0
        anchor = [1.0] + [0.25] * (l - 1) + [0.75]
        direction = [0.0] * l + [1.0]
        u = [0.4]
        hits = singular_locus_on_generator(
            pair.model, u, anchor=anchor, direction=direction
        )
        exact_line = restrict(
            focal_hypersurface(pair.system),
            [Fraction(a).limit_denominator(10**9) for a in anchor],
            [Fraction(d) for d in direction],
        )
        exact_roots = sorted(float(root) for root, _ in exact_line.rational_roots()[0])
        assert len(hits) == len(exact_roots) == 1
        assert abs(sorted(hits)[0] - exact_roots[0]) < 1e-6


@criterion(10, "tangent spans constant along generators, corruption detected")
def test_criterion_10():
    models = [
        gen_torse_curve(3, 1).model,
        gen_torse_curve(4, 2).model,
        gen_cone(2, 2, 3, 0).model,
        gen_cone(1, 2, 3, 1).model,
        gen_hypersurface(2, 2, 0).model,
        gen_hypersurface(2, 2, 1).model,
        gen_torsal_matched(1, 2, 0).model,
        symmetroid_patch_model(),
    ]
    for idx, model in enumerate(models):
        deviation = verify_leaf_linearity(model, seed=10 + idx)
        assert deviation < 1e-8, f"model {idx}: deviation {deviation}"
    base = gen_torse_curve(3, 1).model
    nvars = base.r + base.l + 1
    s1 = MultiPoly.variable(nvars, base.r + 1)
    corrupted = ParametricModel(
        ambient=base.ambient,
        l=base.l,
        r=base.r,
        components=(base.components[0] + s1 * s1,) + base.components[1:],
    )
    assert verify_leaf_linearity(corrupted, seed=10) > 1e-3


@criterion(11, "frame invariance of labels and invariants")
def test_criterion_11():
    fixtures = [
        gen_torsal(1, 2, 2, 0),
        gen_cone(2, 2, 3, 0).system,
        gen_hypersurface(2, 2, 0).system,
    ]
    rng = random.Random(111)
    for sys_obj in fixtures:
        expected = classify(sys_obj)
        size_multiset = sorted(b.size for b in expected.blocks)
        for trial in range(20):
            t = _random_invertible(rng, sys_obj.l + 1)
            s = _random_invertible(rng, sys_obj.codim)
            mixed = MatrixSystem(
                l=sys_obj.l,
                r=sys_obj.r,
                codim=sys_obj.codim,
                C=tuple(
                    _mix(sys_obj.C, [t[i][j] for i in range(sys_obj.l + 1)], sys_obj.r)
                    for j in range(sys_obj.l + 1)
                ),
                B=tuple(
                    _mix(sys_obj.B, [s[a][b] for a in range(sys_obj.codim)], sys_obj.r)
                    for b in range(sys_obj.codim)
                ),
            )
            got = classify(mixed)
            assert got.label == expected.label, f"trial {trial}"
            assert sorted(b.size for b in got.blocks) == size_multiset
            assert got.m == expected.m
            assert got.k == expected.k
            assert got.rank_b == expected.rank_b
            assert got.rank_c == expected.rank_c
            # exact transformation law of the focal polynomials
            x_images = [
                MultiPoly.linear_form([t[i][j] for j in range(sys_obj.l + 1)])
                for i in range(sys_obj.l + 1)
            ]
            xi_images = [
                MultiPoly.linear_form([s[a][b] for b in range(sys_obj.codim)])
                for a in range(sys_obj.codim)
            ]
            assert focal_hypersurface(mixed) == focal_hypersurface(
                sys_obj
            ).substitute(x_images)
            assert focal_hypercone(mixed) == focal_hypercone(sys_obj).substitute(
                xi_images
            )


def _random_invertible(rng, n):
    while True:
        m = RMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def _mix(mats, coeffs, r):
    total = RMatrix.zeros(r)
    for coeff, mat in zip(coeffs, mats):
        if coeff != 0:
            total = total + mat.scale(coeff)
    return total


@criterion(12, "rank-deficient eigenvalue matrices and the torsal remark")
def test_criterion_12():
    # r_1 = 1 < r: all normal matrices proportional to the identity
    sys_b = MatrixSystem(
        l=1,
        r=2,
        codim=2,
        C=(RMatrix.identity(2), RMatrix.diagonal([1, 2])),
        B=(RMatrix.identity(2), RMatrix.identity(2).scale(2)),
    )
    rep_b = classify(sys_b)
    assert rep_b.rank_b == 1
    assert rep_b.ambient_reduction == sys_b.n + 1
    # r_2 = 1 < r via the canonical cone: vertex of dimension l - 1
    cone = gen_cone(2, 2, 3, 0).system
    rep_c = classify(cone)
    assert rep_c.rank_c == 1
    assert rep_c.vertex_dim == cone.l - 1
    # r_1 = r with spare codimension: the torsal remark fires
    sys_r = MatrixSystem(
        l=1,
        r=2,
        codim=3,
        C=(RMatrix.identity(2), RMatrix.diagonal([1, 2])),
        B=(
            RMatrix.diagonal([1, 0]),
            RMatrix.diagonal([0, 1]),
            RMatrix.diagonal([1, 1]),
        ),
    )
    rep_r = classify(sys_r)
    assert rep_r.label == LABEL_TORSAL
    assert rep_r.rank_b == sys_r.r
    assert rep_r.torsal_remark
    assert rep_r.ambient_reduction is None
