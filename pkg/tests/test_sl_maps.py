from fractions import Fraction as F
from math import comb

import pytest

import slmod.sl_maps as sl_maps
from slmod.exact_linalg import Subspace, mat_mul, mat_scale, mat_vec
from slmod.graded_modules import ActionSpec, Lambda, Window
from slmod.sl_maps import (
    FamilyKind,
    SpecialFiberPolicy,
    T,
    build_family,
    f,
    map_matrix,
    pi,
    quotient_dims,
    symplectic_extend,
    theta_tilde,
    verify_module_map,
)

HALF = (F(1, 2), 0, 0, 0)
ZERO = (0, 0, 0, 0)


def test_symplectic_extend_examples():
    fr = symplectic_extend((1, 0, 0, 0))
    assert fr.vectors() == (
        (F(1), F(0), F(0), F(0)),
        (F(0), F(0), F(-1), F(0)),
        (F(0), F(1), F(0), F(0)),
        (F(0), F(0), F(0), F(-1)),
    )
    fr3 = symplectic_extend((0, 0, 1, 0))
    assert fr3.vectors()[1] == (F(1), F(0), F(0), F(0))
    with pytest.raises(ValueError):
        symplectic_extend((0, 0, 0, 0))


def test_symplectic_extend_validates_for_denser_vectors():
    for v in [(1, 2, 3, 4), (F(1, 2), 0, 0, 0), (0, -1, 1, F(2, 3)), (1, 1, 1, 1)]:
        symplectic_extend(v).validate()


def test_map_matrix_examples():
    k = (1, 0, 0, 0)
    m = map_matrix(pi(0), k, ZERO)
    assert m == ((1,), (0,), (0,), (0,))
    mt = map_matrix(T(1), k, ZERO)
    assert mt == ((0, 0, 1, 0),)
    mf = map_matrix(f(1), k, ZERO)
    assert mat_vec(mf, (0, 0, 1, 0)) == (F(-1), F(0), F(0), F(0))


def test_square_map_factors_through_wedge_and_contraction():
    k = (1, -1, 0, 2)
    for p in range(0, 4):
        lhs = map_matrix(f(p), k, HALF)
        rhs = mat_mul(map_matrix(T(p + 1), k, HALF), map_matrix(pi(p), k, HALF))
        assert lhs == rhs


def test_map_degree_validation():
    with pytest.raises(ValueError):
        map_matrix(pi(4), (0, 0, 0, 0), ZERO)
    with pytest.raises(ValueError):
        map_matrix(theta_tilde(1), (0, 0, 0, 0), ZERO)


@pytest.mark.parametrize("beta", [ZERO, HALF])
def test_verify_module_map_passes(beta):
    win = Window(4, 1)
    spec = ActionSpec.make("H", 4, Lambda(2), beta)
    assert verify_module_map(T(2), spec, win).status == "PASS"
    assert verify_module_map(pi(1), spec.with_fiber(Lambda(1)), win).status == "PASS"


def test_verify_module_map_detects_sign_flip(monkeypatch):
    # a global sign flip still intertwines; flipping the sign on half of the
    # degrees breaks the squares between flipped and unflipped fibers
    original = sl_maps._map_matrix_scaled

    def half_flipped(map_id, n, kq):
        rows = original(map_id, n, kq)
        if map_id.name == "T" and map_id.p == 2 and kq[0] > 0:
            return mat_scale(-1, rows)
        return rows

    win = Window(4, 1)
    spec = ActionSpec.make("H", 4, Lambda(2), HALF)
    monkeypatch.setattr(sl_maps, "_map_matrix_scaled", half_flipped)
    assert verify_module_map(T(2), spec, win).status == "FAIL"


def test_build_family_examples():
    spec = ActionSpec.make("H", 4, Lambda(2), ZERO)
    win = Window(4, 2)
    k = (1, 0, 0, 0)
    fam_min = build_family(FamilyKind.MIN, 2, spec, win)
    assert fam_min.fiber(k) == Subspace(6, [(1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)])
    assert build_family(FamilyKind.MAX, 2, spec, win).fiber(k).dim == 4
    assert (
        build_family(FamilyKind.MAX, 2, spec, win, restrict_to_fundamental=True).fiber(k).dim == 3
    )
    assert build_family(FamilyKind.INT, 2, spec, win).fiber(k).dim == 3


def test_special_fiber_policies():
    spec = ActionSpec.make("H", 4, Lambda(2), ZERO)
    win = Window(4, 1)
    k0 = (0, 0, 0, 0)
    omit = build_family(FamilyKind.MIN, 2, spec, win, policy=SpecialFiberPolicy.OMIT)
    full = build_family(FamilyKind.MIN, 2, spec, win, policy=SpecialFiberPolicy.FULL)
    assert omit.fiber(k0).dim == 0
    assert full.fiber(k0) == Subspace.full(6)
    # under the fundamental restriction the hat fiber is the restricted space
    fullf = build_family(
        FamilyKind.MIN, 2, spec, win, policy=SpecialFiberPolicy.FULL, restrict_to_fundamental=True
    )
    assert fullf.fiber(k0).dim == 5
    # maximal with OMIT drops the degenerate fiber entirely
    max_omit = build_family(FamilyKind.MAX, 2, spec, win, policy=SpecialFiberPolicy.OMIT)
    assert max_omit.fiber(k0).dim == 0


@pytest.mark.parametrize("n", [4, 6])
def test_generic_fiber_dimension_formulas(n):
    beta = (F(1, 2),) + (F(0),) * (n - 1)
    win = Window(n, 1)
    for p in range(1, n):
        spec = ActionSpec.make("H", n, Lambda(p), beta)
        expected = {
            FamilyKind.MIN: comb(n - 2, p - 1),
            FamilyKind.FULLW: comb(n - 1, p - 1),
            FamilyKind.INT: comb(n - 2, p - 1) + comb(n - 2, p),
            FamilyKind.MAX: comb(n, p) - comb(n - 2, p - 1),
        }
        for kind, dim in expected.items():
            fam = build_family(kind, p, spec, win)
            assert fam.fiber((0,) * n).dim == dim, (n, p, kind)


def test_quotient_dims_examples():
    spec = ActionSpec.make("H", 4, Lambda(2), ZERO)
    win = Window(4, 1)
    k = (1, 0, 0, 0)
    full = sl_maps.GradedFamily(spec, win, {kk: Subspace.full(6) for kk in win.degrees()})
    mx = build_family(FamilyKind.MAX, 2, spec, win, policy=SpecialFiberPolicy.FULL)
    assert quotient_dims(full, mx)[k] == 2
    mxf = build_family(
        FamilyKind.MAX, 2, spec, win, policy=SpecialFiberPolicy.FULL, restrict_to_fundamental=True
    )
    intf = build_family(
        FamilyKind.INT, 2, spec, win, policy=SpecialFiberPolicy.FULL, restrict_to_fundamental=True
    )
    assert quotient_dims(mxf, intf)[k] == 1
    it = build_family(FamilyKind.INT, 2, spec, win, policy=SpecialFiberPolicy.FULL)
    mn = build_family(FamilyKind.MIN, 2, spec, win, policy=SpecialFiberPolicy.FULL)
    assert quotient_dims(it, mn)[k] == 1


def test_quotient_dims_containment_error():
    spec = ActionSpec.make("H", 4, Lambda(2), HALF)
    win = Window(4, 1)
    mn = build_family(FamilyKind.MIN, 2, spec, win)
    mx = build_family(FamilyKind.MAX, 2, spec, win)
    with pytest.raises(ValueError):
        quotient_dims(mn, mx)


def test_int_family_invalid_at_top_degree():
    spec = ActionSpec.make("H", 4, Lambda(4), HALF)
    win = Window(4, 1)
    with pytest.raises(ValueError):
        build_family(FamilyKind.INT, 4, spec, win)
