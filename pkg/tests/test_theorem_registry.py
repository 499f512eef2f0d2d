import random
from fractions import Fraction as F

import pytest

from slmod.graded_modules import ActionSpec, Fund, Lambda, Window, closure
from slmod.sl_maps import FamilyKind, build_family
from slmod.theorem_registry import (
    CATALOGUE,
    default_grid,
    oracle_fiber_dims,
    probe_engine,
    run_check,
)

HALF = (F(1, 2), 0, 0, 0)


def test_oracle_examples():
    assert oracle_fiber_dims(4, 2, (1, 0, 0, 0)) == {"min": 2, "fullw": 3, "int": 3, "max": 4}
    got = oracle_fiber_dims(4, 1, (1, 0, 0, 0))
    assert (got["min"], got["fullw"], got["max"]) == (1, 1, 3)
    assert oracle_fiber_dims(6, 3, (1, 0, 0, 0, 0, 0))["min"] == 6


def test_oracle_rejects_zero_shift():
    with pytest.raises(ValueError):
        oracle_fiber_dims(4, 2, (0, 0, 0, 0))


def test_oracle_agrees_with_builders_on_samples():
    rng = random.Random(123)
    win = Window(4, 1)
    for p in (1, 2, 3):
        spec = ActionSpec.make("H", 4, Lambda(p), HALF)
        families = {
            "min": build_family(FamilyKind.MIN, p, spec, win),
            "fullw": build_family(FamilyKind.FULLW, p, spec, win),
            "int": build_family(FamilyKind.INT, p, spec, win),
            "max": build_family(FamilyKind.MAX, p, spec, win),
        }
        degs = win.degrees()
        for _ in range(4):
            k = degs[rng.randrange(len(degs))]
            shift = tuple(F(a) + b for a, b in zip(k, HALF))
            got = oracle_fiber_dims(4, p, shift)
            for name, fam in families.items():
                assert got[name] == fam.fiber(k).dim, (p, k, name)


def test_probe_engine_agrees_with_reference_closure():
    spec = ActionSpec.make("H", 4, Fund(2), HALF)
    win = Window(4, 1)
    fam = build_family(FamilyKind.MIN, 2, spec, win)
    engine = probe_engine(spec, win)
    target = engine.min_target(fam)
    for k in [(1, 1, 1, 1), (0, 0, 0, 0), (-1, 1, 0, -1)]:
        for row in fam.fiber(k).rows:
            reference = closure(spec, {k: [list(row)]}, win)
            expected = all(reference.fiber(kk) == fam.fiber(kk) for kk in win.interior_degrees())
            assert engine.run(k, list(row), "exact", target) == expected


def test_probe_engine_rejects_wrong_targets():
    spec = ActionSpec.make("H", 4, Fund(2), HALF)
    win = Window(4, 2)
    mn = build_family(FamilyKind.MIN, 2, spec, win)
    mx = build_family(FamilyKind.MAX, 2, spec, win)
    engine = probe_engine(spec, win)
    k0 = (0, 0, 0, 0)
    seed = list(mn.fiber(k0).rows[0])
    assert not engine.run(k0, seed, "exact", engine.min_target(mx))
    assert not engine.run(k0, seed, "contains", engine.min_target(mx))
    assert not engine.run(k0, list(mx.fiber(k0).rows[0]), "full", engine.full_target())


def test_run_check_unknown_id():
    with pytest.raises(KeyError):
        run_check("no-such-check")


def test_catalogue_grids_are_well_formed():
    for check_id in CATALOGUE:
        grid = default_grid(check_id)
        assert grid, check_id
        for params in grid:
            assert isinstance(params, dict), (check_id, params)


def test_check_results_are_deterministic():
    a = run_check("uniqueness", N=4, p=1, beta=HALF, d=2, samples=20)
    b = run_check("uniqueness", N=4, p=1, beta=HALF, d=2, samples=20)
    assert a.to_dict() == b.to_dict()


def test_composition_reports_the_expected_chain():
    result = run_check("composition", N=4, p=2, beta=HALF, d=2)
    assert result.status == "PASS"
    notes = " ".join(d.note for d in result.details)
    assert "(2, 2, 3, 5)" in notes


def test_quick_checks_pass():
    assert run_check("fundamental-dims").status == "PASS"
    assert run_check("contraction-iso", N=4).status == "PASS"
    assert run_check("L3-span", N=4).status == "PASS"
    assert run_check("cor-p0", N=2, beta=(0, 0), d=2).status == "PASS"
    assert run_check("criterion-sym2", N=2, beta=(F(1, 2), 0), d=3).status == "PASS"
