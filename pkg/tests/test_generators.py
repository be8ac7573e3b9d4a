"""Tests for the seeded generators and the determinantal-cubic model."""

from fractions import Fraction

import pytest

from focal_images.classify import (
    CONE_TYPE,
    HYPERSURFACE_TYPE,
    LABEL_CONE,
    LABEL_HYPERSURFACE,
    LABEL_REDUCIBLE,
    LABEL_TORSAL,
    LABEL_TORSE,
    TORSE,
    classify,
    multiple_hyperplane_decomposition,
)
from focal_images.duality import dualize
from focal_images.errors import DomainError, StructuralError
from focal_images.exactmath import MultiPoly, RMatrix
from focal_images.generators import (
    adjugate_identity_check,
    gen_cone,
    gen_diagonal,
    gen_direct_sum,
    gen_hypersurface,
    gen_torsal,
    gen_torsal_matched,
    gen_torse_curve,
    symmetroid_model,
    symmetroid_patch_model,
)
from focal_images.system import (
    characteristic_subspace,
    focal_hypercone,
    focal_hypersurface,
    validate,
)


def test_gen_torsal_canonical_seed_zero():
    sys = gen_torsal(1, 2, 2, 0)
    assert sys.C[0] == RMatrix.identity(2)
    assert sys.C[1] == RMatrix.diagonal([1, 2])
    assert sys.B[0] == RMatrix.diagonal([1, 0])
    assert sys.B[1] == RMatrix.diagonal([0, 1])
    x0, x1 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert focal_hypersurface(sys) == (x0 + x1) * (x0 + 2 * x1)
    xi1, xi2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert focal_hypercone(sys) == xi1 * xi2


def test_gen_torsal_classifies_torsal():
    for seed in range(8):
        sys = gen_torsal(1, 2, 2, seed)
        rep = classify(sys)
        assert rep.label == LABEL_TORSAL, f"seed {seed}"
        assert len(rep.blocks) == 2


def test_gen_torsal_three_blocks():
    sys = gen_torsal(1, 3, 3, 1)
    rep = classify(sys)
    assert rep.label == LABEL_TORSAL
    assert len(rep.blocks) == 3


def test_gen_torsal_rank_one_delegates():
    sys = gen_torsal(2, 1, 1, 0)
    assert sys.r == 1
    assert classify(sys).label == LABEL_TORSE


def test_gen_torsal_rejects_bad_params():
    with pytest.raises(DomainError):
        gen_torsal(0, 2, 2, 0)
    with pytest.raises(DomainError):
        gen_torsal(1, 2, 1, 0)


def test_gen_torsal_matched_pair():
    pair = gen_torsal_matched(1, 2, 0)
    assert pair.model is not None
    assert pair.model.r == 2
    assert pair.model.ambient - pair.model.n == pair.system.codim
    assert not pair.model.s_linearity_violations()


def test_gen_cone_canonical_seed_zero():
    pair = gen_cone(2, 2, 3, 0)
    sys = pair.system
    assert sys.C[0] == RMatrix.identity(2)
    assert sys.C[1].is_zero() and sys.C[2].is_zero()
    w1, w2, w3 = (MultiPoly.variable(3, i) for i in range(3))
    assert focal_hypercone(sys) == w1**2 - w2**2 - w3**2
    rep = classify(sys)
    assert rep.label == LABEL_CONE
    assert rep.vertex_dim == 1
    assert characteristic_subspace(sys).k == 1


def test_gen_cone_seeds():
    for seed in range(4):
        pair = gen_cone(1, 2, 3, seed)
        rep = classify(pair.system)
        assert rep.label == LABEL_CONE, f"seed {seed}"
        # multiple linear focal component: the r-fold vertex hyperplane
        assert multiple_hyperplane_decomposition(rep.focal_f) is not None


def test_gen_cone_dualizes_to_hypersurface():
    pair = gen_cone(2, 2, 3, 0)
    assert classify(dualize(pair.system)).label == LABEL_HYPERSURFACE


def test_gen_cone_model_shape():
    pair = gen_cone(2, 2, 3, 0)
    model = pair.model
    assert model.ambient == 2 + 2 + 3
    assert model.l == 2 and model.r == 2
    assert not model.s_linearity_violations()


def test_gen_hypersurface_canonical_seed_zero():
    pair = gen_hypersurface(2, 2, 0)
    sys = pair.system
    z0, z1, z2 = (MultiPoly.variable(3, i) for i in range(3))
    assert focal_hypersurface(sys) == z0**2 - z1**2 - z2**2
    xi = MultiPoly.variable(1, 0)
    assert focal_hypercone(sys) == xi**2
    rep = classify(sys)
    assert rep.label == LABEL_HYPERSURFACE


def test_gen_hypersurface_seeds():
    for seed in range(4):
        pair = gen_hypersurface(2, 2, seed)
        rep = classify(pair.system)
        assert rep.label == LABEL_HYPERSURFACE, f"seed {seed}"
        block = rep.blocks[0]
        assert block.label == HYPERSURFACE_TYPE
        # the hypercone factor is the multiple bundle predicted by the
        # proportionality witnesses
        bundle = MultiPoly.linear_form(block.b_scalars)
        assert block.phi_factor == bundle**block.size * block.b_core.det()


def test_gen_hypersurface_rank_three():
    pair = gen_hypersurface(2, 3, 1)
    rep = classify(pair.system)
    assert rep.label == LABEL_HYPERSURFACE


def test_gen_torse_curve():
    pair = gen_torse_curve(3, 1)
    sys = pair.system
    assert sys.r == 1 and sys.l == 1 and sys.codim == 1
    assert classify(sys).label == LABEL_TORSE
    model = pair.model
    assert model.ambient == 3
    # x(t, s) = s0 * (1,t,t^2,t^3) + s1 * (0,1,2t,3t^2)
    vals = model.components
    point = [Fraction(2), Fraction(1), Fraction(0)]  # t=2, s=(1,0)
    coords = [c.evaluate(point) for c in vals]
    assert coords == [1, 2, 4, 8]
    point = [Fraction(2), Fraction(0), Fraction(1)]
    coords = [c.evaluate(point) for c in vals]
    assert coords == [0, 1, 4, 12]


def test_gen_torse_curve_bad_params():
    with pytest.raises(DomainError):
        gen_torse_curve(3, 2)


def test_gen_direct_sum_torsal_blocks():
    a = gen_torsal(1, 1, 2, 1)
    b = gen_torsal(1, 1, 2, 2)
    sum_sys = gen_direct_sum([a, b])
    assert sum_sys.r == 2
    assert validate(sum_sys).ok


def test_gen_direct_sum_shape_check():
    a = gen_torsal(1, 2, 2, 0)
    b = gen_torsal(2, 2, 2, 0)
    with pytest.raises(StructuralError):
        gen_direct_sum([a, b])


def test_direct_sum_block_recovery():
    # a rank-1 block and a hypersurface-type 2x2 block sharing l=2, codim=1
    torse_block = gen_torsal(2, 1, 1, 3)
    hyp_block = gen_hypersurface(2, 2, 0).system
    sum_sys = gen_direct_sum([torse_block, hyp_block])
    assert validate(sum_sys).ok
    rep = classify(sum_sys)
    assert rep.label == LABEL_REDUCIBLE
    assert sorted(b.size for b in rep.blocks) == [1, 2]
    assert set(rep.block_types) == {TORSE, HYPERSURFACE_TYPE}


def test_direct_sum_of_identical_torsal_blocks_is_blocked():
    block = gen_torsal(1, 2, 2, 0)
    doubled = gen_direct_sum([block, block])
    rep = classify(doubled)
    # identical spectra defeat the seeded eigenvalue separation, and the
    # repeated focal components are hyperplanes, so no label is claimed
    assert rep.label is None
    assert rep.status == "blocked"
    assert rep.f_repeated_kind == "linear"


def test_direct_sum_of_identical_quadric_blocks_is_outside():
    block = gen_hypersurface(2, 2, 0).system
    doubled = gen_direct_sum([block, block])
    rep = classify(doubled)
    # the doubled focal quadric is a certified nonlinear repeated component
    assert rep.label == "OutsideTheory"
    assert rep.f_repeated_kind == "nonlinear"


def test_symmetroid_model():
    model = symmetroid_model()
    assert model.det.degree() == 3
    assert len(model.det.terms) == 5
    # gradient entries at the identity-like point: adjugate of diag(1,1,0)
    point = [Fraction(1), 0, 0, Fraction(1), 0, 0]  # diag(1,1,0)
    assert model.det.evaluate(point) == 0
    adj_vals = [
        [entry.evaluate(point) for entry in row] for row in model.adjugate
    ]
    assert adj_vals == [[0, 0, 0], [0, 0, 0], [0, 0, 1]]


def test_adjugate_identity():
    assert adjugate_identity_check()


def test_symmetroid_patch_model():
    model = symmetroid_patch_model()
    assert model.ambient == 5 and model.l == 2 and model.r == 2
    assert not model.s_linearity_violations()
    # every point of the patch is a singular symmetric matrix
    sym = symmetroid_model()
    point = [Fraction(1, 3), Fraction(-2), Fraction(1), Fraction(2), Fraction(5)]
    coords = [c.evaluate(point) for c in model.components]
    assert sym.det.evaluate(coords) == 0


def test_gen_diagonal_validity_grid():
    for seed, (l, r, codim) in enumerate(
        [(1, 2, 1), (2, 3, 2), (3, 4, 4), (1, 2, 3), (2, 2, 2)]
    ):
        sys = gen_diagonal(l, r, codim, seed)
        assert validate(sys).ok
        F = focal_hypersurface(sys)
        Phi = focal_hypercone(sys)
        assert F.degree() == r and F.is_homogeneous()
        assert Phi.degree() == r and Phi.is_homogeneous()
