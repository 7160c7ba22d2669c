import numpy as np
import pytest
from pytest import approx, raises

from conftest import real_potentials
from diracelim import expressions
from diracelim.errors import OrderUnderflowError, ScenarioError
from diracelim.fields import (
    METRIC,
    PotentialJets,
    divergence_lower,
    elimination_coefficient,
    field_strength,
    field_tensor,
    gauge_shift,
    maxwell_residual,
    potential_at,
)
from diracelim.jets import Jet, max_rel_diff, random_jet
from diracelim.scenarios import builtin_scenarios


def potentials_from_text(texts, point, order):
    return PotentialJets(
        tuple(expressions.eval_jet(expressions.parse(s), point, order) for s in texts)
    )


def test_metric_signs_on_lowering():
    p = potentials_from_text(("2", "3", "5", "7"), (0, 0, 0, 0), 2)
    assert [p.lower(mu).value() for mu in range(4)] == [2, -3, -5, -7]
    assert METRIC == (1.0, -1.0, -1.0, -1.0)


def test_component_order_must_agree():
    with raises(ValueError):
        PotentialJets((Jet.zero(2), Jet.zero(2), Jet.zero(2), Jet.zero(3)))


def test_constant_electric_field():
    # A^0 = -x gives E = (1, 0, 0) and no magnetic field
    p = potentials_from_text(("-x", "0", "0", "0"), (0.0, 0.5, 0.0, 0.0), 3)
    fs = field_strength(p)
    assert [e.value() for e in fs.e] == approx([1.0, 0.0, 0.0])
    assert [h.value() for h in fs.h] == approx([0.0, 0.0, 0.0])
    assert fs.f[0].value() == approx(1.0)


def test_constant_magnetic_field():
    # A^2 = x gives H = (0, 0, 1) and no electric field
    p = potentials_from_text(("0", "0", "x", "0"), (0.0, 0.0, 0.0, 0.0), 3)
    fs = field_strength(p)
    assert [e.value() for e in fs.e] == approx([0.0, 0.0, 0.0])
    assert [h.value() for h in fs.h] == approx([0.0, 0.0, 1.0])
    assert fs.f[2].value() == approx(1j)


def test_field_tensor_antisymmetry(rng):
    p = real_potentials(rng, 4)
    F = field_tensor(p)
    for mu in range(4):
        for nu in range(4):
            assert (F[mu][nu] + F[nu][mu]).max_abs() == approx(0.0, abs=1e-15)


def test_elimination_coefficient_combination():
    p = potentials_from_text(("-x", "0", "x", "0"), (0, 0, 0, 0), 2)
    fs = field_strength(p)
    # E = (1,0,0) and H = (0,0,1), so F = (1, 0, i) and i*F1 + F2 = i
    assert elimination_coefficient(fs).value() == approx(1j)


def test_gauge_shift_adds_upper_gradient():
    # A = 0 shifted by chi = -x picks up A^1 = +1 (spatial sign flip)
    p = potentials_from_text(("0", "0", "0", "0"), (0, 0, 0, 0), 2)
    chi = -Jet.coordinate(1, 0.0, 2)
    b = gauge_shift(p, chi)
    assert b.upper(1).value() == approx(1.0)
    assert b.upper(0).value() == approx(0.0)
    assert b.order == 1


def test_gauge_shift_needs_enough_chi_order():
    p = potentials_from_text(("0", "0", "0", "0"), (0, 0, 0, 0), 3)
    with raises(OrderUnderflowError):
        gauge_shift(p, Jet.zero(2))


def test_field_strength_invariant_under_gauge_shift(rng):
    p = real_potentials(rng, 5)
    chi = random_jet(rng, 5).real_part()
    b = gauge_shift(p, chi)
    fs_a = field_strength(p).truncated(3)
    fs_b = field_strength(b)
    worst = max(max_rel_diff(x, y) for x, y in zip(fs_a.f, fs_b.f))
    assert worst < 1e-13


def test_pure_gauge_field_has_no_strength(rng):
    zero = PotentialJets(tuple(Jet.zero(5) for _ in range(4)))
    chi = random_jet(rng, 5).real_part()
    fs = field_strength(gauge_shift(zero, chi))
    assert max(c.max_abs() for c in fs.f) < 1e-13


def test_divergence_lower_contracts_with_metric():
    # j = (t, x, 0, 0) lower-index: d^mu j_mu = d_t j_0 - d_x j_1 = 1 - 1 = 0
    j = (
        Jet.coordinate(0, 0.0, 2),
        Jet.coordinate(1, 0.0, 2),
        Jet.zero(2),
        Jet.zero(2),
    )
    assert divergence_lower(j).max_abs() == approx(0.0)


def test_potential_at_checks_region():
    s = builtin_scenarios()["constant_E1"]
    p = potential_at(s, (0.0, 1.0, 0.0, 0.0), 4)
    assert p.upper(0).value() == approx(-1.0)
    with raises(ScenarioError):
        potential_at(s, (0.0, 3.0, 0.0, 0.0), 4)


def test_maxwell_vacuum_examples():
    # the constant-E potential solves the vacuum equations ...
    point = (0.1, 0.4, -0.2, 0.3)
    p = potentials_from_text(("-x", "0", "0", "0"), point, 4)
    res = maxwell_residual(p, None)
    assert max(c.max_abs() for c in res) == approx(0.0, abs=1e-15)
    # ... the oscillating one does not (it needs a source)
    pw = potentials_from_text(("-x*cos(t)", "0", "0", "0"), point, 4)
    resw = maxwell_residual(pw, None)
    assert max(abs(c.value()) for c in resw) > 1e-2


def test_maxwell_accepts_matching_source():
    point = (0.1, 0.4, -0.2, 0.3)
    pw = potentials_from_text(("-x*cos(t)", "0", "0", "0"), point, 4)
    res = maxwell_residual(pw, None)
    j = tuple(r.truncated(pw.order - 2) for r in res)
    settled = maxwell_residual(pw, j)
    assert max(c.max_abs() for c in settled) == approx(0.0, abs=1e-15)
