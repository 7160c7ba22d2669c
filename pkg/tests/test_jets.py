import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pytest import approx, raises

from diracelim.errors import OrderMismatchError, OrderUnderflowError, SingularityError
from diracelim import jets
from diracelim.jets import (
    Jet,
    max_rel_diff,
    random_jet,
    random_unit_jet,
    simplex_indices,
    simplex_size,
)


def jet_strategy(order):
    """Random jets via a drawn seed; keeps hypothesis shrinking meaningful."""
    return st.integers(0, 2**32 - 1).map(
        lambda seed: random_jet(np.random.default_rng(seed), order)
    )


# -- layout -------------------------------------------------------------


@pytest.mark.parametrize("order, size", [(0, 1), (1, 5), (2, 15), (4, 70), (6, 210)])
def test_simplex_size(order, size):
    assert simplex_size(order) == size


def test_simplex_sorted_by_degree_then_lex():
    idx = simplex_indices(3)
    keys = [(sum(a), a) for a in idx]
    assert keys == sorted(keys)


@pytest.mark.parametrize("low, high", [(0, 1), (2, 5), (4, 6)])
def test_lower_order_indices_are_a_prefix(low, high):
    assert simplex_indices(high)[: simplex_size(low)] == simplex_indices(low)


def test_truncation_is_a_prefix_slice(rng):
    f = random_jet(rng, 6)
    g = f.truncated(3)
    assert np.array_equal(g.coeffs, f.coeffs[: simplex_size(3)])


# -- constructors and accessors ----------------------------------------


def test_coordinate_jet():
    x = Jet.coordinate(1, 2.0, 3)
    assert x.value() == 2.0
    assert x.coefficient((0, 1, 0, 0)) == 1.0
    assert x.max_abs() == 2.0


def test_from_coefficients_and_coefficient_roundtrip():
    f = Jet.from_coefficients(2, {(0, 0, 0, 0): 1.5, (1, 1, 0, 0): 2 - 1j})
    assert f.coefficient((1, 1, 0, 0)) == 2 - 1j
    assert f.coefficient((2, 0, 0, 0)) == 0.0
    with raises(ValueError):
        f.coefficient((3, 0, 0, 0))
    with raises(ValueError):
        Jet.from_coefficients(2, {(3, 0, 0, 0): 1.0})


def test_derivative_restores_factorials():
    # t^2 * x has d^3/dt^2 dx = 2
    t = Jet.coordinate(0, 0.0, 4)
    x = Jet.coordinate(1, 0.0, 4)
    f = t * t * x
    assert f.derivative((2, 1, 0, 0)) == approx(2.0)
    assert f.coefficient((2, 1, 0, 0)) == approx(1.0)


def test_bad_shapes_and_orders():
    with raises(ValueError):
        Jet(2, np.zeros(7))
    with raises(ValueError):
        Jet.coordinate(4, 0.0, 2)
    with raises(OrderUnderflowError):
        Jet.zero(2).truncated(3)
    with raises(OrderUnderflowError):
        Jet.zero(0).partial(0)


# -- arithmetic ---------------------------------------------------------


def test_square_of_binomial():
    x = Jet.coordinate(1, 0.0, 3)
    f = (1 + x) ** 2
    assert f.coefficient((0, 0, 0, 0)) == approx(1.0)
    assert f.coefficient((0, 1, 0, 0)) == approx(2.0)
    assert f.coefficient((0, 2, 0, 0)) == approx(1.0)
    assert f.coefficient((0, 3, 0, 0)) == approx(0.0)


def test_scalar_mixing():
    x = Jet.coordinate(1, 1.0, 2)
    assert ((2 * x - x) - x).max_abs() == approx(0.0)
    assert (1 + x).value() == approx(2.0)
    assert (x / 2).coefficient((0, 1, 0, 0)) == approx(0.5)
    assert (2 / x).value() == approx(2.0)


def test_order_mismatch_rejected():
    with raises(OrderMismatchError):
        Jet.zero(2) + Jet.zero(3)
    with raises(OrderMismatchError):
        max_rel_diff(Jet.zero(2), Jet.zero(3))


def test_integer_powers():
    x = Jet.coordinate(1, 1.0, 4)
    f = 1 + x
    assert max_rel_diff(f ** 3, f * f * f) < 1e-15
    assert max_rel_diff(f ** -2, 1 / (f * f)) < 1e-14
    with raises(TypeError):
        f ** 0.5


@pytest.mark.parametrize("k", range(7))
def test_exp_of_linear_coefficients(k):
    # exp(c*t) has pure-t coefficients c^k / k!
    c = 0.7 - 0.3j
    t = Jet.coordinate(0, 0.0, 6)
    f = jets.exp(c * t)
    alpha = (k, 0, 0, 0)
    assert f.coefficient(alpha) == approx(c**k / math.factorial(k), rel=1e-15)


def test_log_inverts_exp(rng):
    g = random_jet(rng, 5)
    assert max_rel_diff(jets.log(jets.exp(g)), g) < 1e-13


def test_sin_cos_pythagoras(rng):
    g = random_jet(rng, 5).real_part()
    s, c = jets.sin(g), jets.cos(g)
    assert max_rel_diff(s * s + c * c, Jet.constant(1.0, 5)) < 1e-14


@pytest.mark.parametrize("fn", [jets.log, jets.reciprocal])
def test_singular_at_zero_value(fn):
    with raises(SingularityError):
        fn(Jet.coordinate(0, 0.0, 3))


def test_division_by_zero_value_jet():
    x = Jet.coordinate(1, 0.0, 3)
    with raises(SingularityError):
        (1 + x) / x


# -- calculus properties ------------------------------------------------


@given(jet_strategy(5), jet_strategy(5))
def test_leibniz_rule(f, g):
    lhs = (f * g).partial(1)
    rhs = f.partial(1) * g.truncated(4) + f.truncated(4) * g.partial(1)
    assert max_rel_diff(lhs, rhs) < 1e-13


@given(jet_strategy(5), st.integers(0, 3), st.integers(0, 3))
def test_mixed_partials_commute(f, i, j):
    assert max_rel_diff(f.partial(i).partial(j), f.partial(j).partial(i)) < 1e-15


@given(jet_strategy(5))
def test_reciprocal_is_inverse(f):
    g = 1 + f - f.value() + 0.5  # value 1.5, safely away from zero
    assert max_rel_diff(g * jets.reciprocal(g), Jet.constant(1.0, 5)) < 1e-13


@given(jet_strategy(6), jet_strategy(6))
def test_product_truncation_consistency(f, g):
    # truncating a product equals the product of truncations
    assert max_rel_diff((f * g).truncated(3), f.truncated(3) * g.truncated(3)) < 1e-15


@given(jet_strategy(4))
def test_conjugation_is_involutive_and_multiplicative(f):
    assert max_rel_diff(f.conj().conj(), f) < 1e-15
    assert max_rel_diff((f * f).conj(), f.conj() * f.conj()) < 1e-14
    assert max_rel_diff(f.real_part() + 1j * f.imag_part(), f) < 1e-15


def test_partial_of_truncation_matches_truncated_partial(rng):
    f = random_jet(rng, 6)
    assert max_rel_diff(f.truncated(4).partial(2), f.partial(2).truncated(3)) < 1e-15


# -- random draws -------------------------------------------------------


def test_random_jet_is_deterministic_per_seed():
    a = random_jet(np.random.default_rng(5), 4)
    b = random_jet(np.random.default_rng(5), 4)
    assert np.array_equal(a.coeffs, b.coeffs)


def test_random_unit_jet_constant_term_in_annulus():
    rng = np.random.default_rng(0)
    for _ in range(50):
        f = random_unit_jet(rng, 4)
        assert 0.5 - 1e-12 <= abs(f.value()) <= 1.0 + 1e-12


def test_max_rel_diff_scale_invariance(rng):
    a = random_jet(rng, 4)
    b = random_jet(rng, 4)
    assert max_rel_diff(a, a) == 0.0
    assert max_rel_diff(1e6 * a, 1e6 * b) == approx(max_rel_diff(a, b), rel=1e-12)
