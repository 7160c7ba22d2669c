"""Potentials, field strengths and gauge shifts as jet-valued objects.

Conventions, fixed once here and relied on everywhere else: metric signature
(+,-,-,-), so lowering a spatial index flips the sign and d^0 = d_0,
d^i = -d_i.  The field tensor is F^{mu nu} = d^mu A^nu - d^nu A^mu, from which
E^i = -F^{0i} and the magnetic field is the curl of (A^1, A^2, A^3).  The
complex combination F^i = E^i + i H^i is what the elimination divides by.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expressions
from .errors import OrderUnderflowError, ScenarioError
from .jets import Jet

METRIC = (1.0, -1.0, -1.0, -1.0)


@dataclass(frozen=True)
class PotentialJets:
    """The four contravariant potential components A^0..A^3 as jets of one order."""

    components: tuple  # four Jets

    def __post_init__(self):
        orders = {c.order for c in self.components}
        if len(self.components) != 4 or len(orders) != 1:
            raise ValueError("need four potential jets of equal order")

    @property
    def order(self):
        return self.components[0].order

    def upper(self, mu):
        return self.components[mu]

    def lower(self, mu):
        return METRIC[mu] * self.components[mu]

    def truncated(self, order):
        return PotentialJets(tuple(c.truncated(order) for c in self.components))


@dataclass(frozen=True)
class FieldStrength:
    """Electric field, magnetic field and their complex combination F = E + iH,
    all one order below the potential they came from."""

    e: tuple  # three Jets
    h: tuple  # three Jets
    f: tuple  # three Jets

    @property
    def order(self):
        return self.e[0].order

    def truncated(self, order):
        return FieldStrength(
            tuple(c.truncated(order) for c in self.e),
            tuple(c.truncated(order) for c in self.h),
            tuple(c.truncated(order) for c in self.f),
        )


def potential_at(scenario, point, order):
    """Evaluate a scenario's potentials as jets expanded at `point`."""
    if not scenario.region.contains(point):
        raise ScenarioError(
            f"point {tuple(point)} lies outside the region of scenario "
            f"{scenario.name!r}"
        )
    return PotentialJets(
        tuple(expressions.eval_jet(a, point, order) for a in scenario.potentials)
    )


def _d_upper(p, mu, nu):
    """d^mu A^nu with the metric sign folded into the derivative index."""
    return METRIC[mu] * p.upper(nu).partial(mu)


def field_tensor(p):
    """F^{mu nu} = d^mu A^nu - d^nu A^mu as a 4x4 nest of jets, order reduced by one."""
    if p.order == 0:
        raise OrderUnderflowError("field tensor needs potentials of order >= 1")
    d = [[_d_upper(p, mu, nu) for nu in range(4)] for mu in range(4)]
    return tuple(
        tuple(d[mu][nu] - d[nu][mu] for nu in range(4)) for mu in range(4)
    )


def field_strength(p):
    """E, H and F = E + iH read off the field tensor: E^i = -F^{0i},
    H^1 = -F^{23}, H^2 = F^{13}, H^3 = -F^{12}."""
    F = field_tensor(p)
    e = (-1 * F[0][1], -1 * F[0][2], -1 * F[0][3])
    h = (-1 * F[2][3], F[1][3], -1 * F[1][2])
    f = tuple(ei + 1j * hi for ei, hi in zip(e, h))
    return FieldStrength(e, h, f)


def elimination_coefficient(fs):
    """The combination i*F1 + F2 whose reciprocal drives the elimination."""
    return 1j * fs.f[0] + fs.f[1]


def gauge_shift(p, chi):
    """Shift the potential by the gradient of a real jet: A_mu -> A_mu + chi_{,mu}.

    On upper indices that is A^mu -> A^mu + d^mu chi.  The matter field that
    keeps every equation form-invariant alongside this shift transforms as
    psi -> exp(-i*chi) * psi; realform.make_real and the gauge-covariance
    checks rely on that pairing.
    """
    if chi.order < p.order:
        raise OrderUnderflowError(
            f"gauge function order {chi.order} below potential order {p.order}"
        )
    out_order = min(p.order, chi.order - 1)
    return PotentialJets(
        tuple(
            p.upper(mu).truncated(out_order) + METRIC[mu] * chi.partial(mu).truncated(out_order)
            for mu in range(4)
        )
    )


def divergence_lower(j):
    """d^mu j_mu for four lower-index jets, one order down."""
    out = METRIC[0] * j[0].partial(0)
    for mu in range(1, 4):
        out = out + METRIC[mu] * j[mu].partial(mu)
    return out


def maxwell_residual(p, j_lower):
    """Box A_mu - d_mu(d_nu A^nu) - j_mu for a given lower-index source.

    A diagnostic, not a verified identity: scenario potentials need not solve
    the Maxwell equations for any particular source.
    """
    if p.order < 2:
        raise OrderUnderflowError("maxwell residual needs potentials of order >= 2")
    m = p.order - 2
    div = p.upper(0).partial(0)
    for nu in range(1, 4):
        div = div + p.upper(nu).partial(nu)
    out = []
    for mu in range(4):
        a = p.lower(mu)
        box = a.partial(0).partial(0)
        for k in range(1, 4):
            box = box - a.partial(k).partial(k)
        res = box - div.partial(mu)
        if j_lower is not None:
            res = res - j_lower[mu].truncated(m)
        out.append(res)
    return tuple(out)
