"""The scalar (Klein-Gordon) analogue: the same realification trick applied to
charged scalar electrodynamics, where the bookkeeping is short enough to see
whole.

Complex branch, charge e and mass m explicit:

    residual = box psi + i e A^mu_{,mu} psi + 2i e A^mu psi_{,mu}
               - e^2 A^mu A_mu psi + m^2 psi
    j_mu = i e (psi* psi_{,mu} - psi*_{,mu} psi) - 2 e^2 A_mu psi* psi

After the phase is gauged away (psi = phi e^{i alpha}, B = A + d(alpha/e), a
real phi and potential carry the whole state):

    residual = box phi - (e^2 B^mu B_mu - m^2) phi
    j_mu = -2 e^2 B_mu phi^2

and the imaginary part of the complex residual becomes current conservation:
d^mu j_mu + 2 e phi Im(residual) = 0 identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jets
from .errors import ContractViolationError, OrderUnderflowError
from .fields import METRIC, PotentialJets, gauge_shift
from .jets import Jet
from .realform import phase_jet

REALITY_TOLERANCE = 1e-11


@dataclass(frozen=True)
class ScalarState:
    """A scalar matter field with its potential and couplings.

    `real` marks the realified branch, where the field and potential are
    promised real and the shorter current formula applies.
    """

    field: Jet
    potentials: PotentialJets
    charge: float = 1.0
    mass: float = 1.0
    real: bool = False

    @classmethod
    def complex_field(cls, psi, p, *, charge=1.0, mass=1.0):
        return cls(psi, p, charge, mass, real=False)

    @classmethod
    def real_field(cls, phi, b, *, charge=1.0, mass=1.0):
        _require_real(phi, "scalar field")
        for mu in range(4):
            _require_real(b.upper(mu), f"potential component {mu}")
        return cls(phi, b, charge, mass, real=True)


def _require_real(jet, what):
    imag = jet.imag_part().max_abs()
    scale = max(jet.max_abs(), 1.0)
    if imag > REALITY_TOLERANCE * scale:
        raise ContractViolationError(
            f"{what} must be real on this branch; imaginary part has relative "
            f"magnitude {imag / scale:.3e}"
        )


def _box(f):
    out = f.partial(0).partial(0)
    for k in range(1, 4):
        out = out - f.partial(k).partial(k)
    return out


def kg_residual(psi, p, *, charge=1.0, mass=1.0):
    """Residual of the gauged Klein-Gordon equation, two orders down."""
    if psi.order < 2:
        raise OrderUnderflowError("the scalar residual needs order >= 2")
    m = psi.order - 2
    e = charge
    a = [p.upper(mu).truncated(m) for mu in range(4)]
    adiv = p.upper(0).partial(0)
    for mu in range(1, 4):
        adiv = adiv + p.upper(mu).partial(mu)
    asq = a[0] * a[0] - a[1] * a[1] - a[2] * a[2] - a[3] * a[3]
    psit = psi.truncated(m)
    grad = sum((a[mu] * psi.partial(mu).truncated(m) for mu in range(4)), Jet.zero(m))
    return (
        _box(psi)
        + 1j * e * (adiv.truncated(m) * psit)
        + 2j * e * grad
        - e * e * (asq * psit)
        + mass * mass * psit
    )


def real_kg_residual(phi, b, *, charge=1.0, mass=1.0):
    """Residual of the realified equation box phi - (e^2 B^mu B_mu - m^2) phi."""
    _require_real(phi, "scalar field")
    for mu in range(4):
        _require_real(b.upper(mu), f"potential component {mu}")
    if phi.order < 2:
        raise OrderUnderflowError("the scalar residual needs order >= 2")
    m = phi.order - 2
    e = charge
    bb = [b.upper(mu).truncated(m) for mu in range(4)]
    bsq = bb[0] * bb[0] - bb[1] * bb[1] - bb[2] * bb[2] - bb[3] * bb[3]
    return _box(phi) - (e * e) * (bsq * phi.truncated(m)) + (mass * mass) * phi.truncated(m)


def kg_currents(state):
    """The four lower-index current components j_0..j_3 for either branch,
    one order down from the field."""
    e = state.charge
    psi = state.field
    if psi.order < 1:
        raise OrderUnderflowError("currents need order >= 1")
    m = psi.order - 1
    if state.real:
        phi2 = psi.truncated(m) * psi.truncated(m)
        return tuple(
            (-2 * e * e) * (state.potentials.lower(mu).truncated(m) * phi2)
            for mu in range(4)
        )
    conj = psi.conj()
    out = []
    dens = psi.conj().truncated(m) * psi.truncated(m)
    for mu in range(4):
        bracket = conj.truncated(m) * psi.partial(mu) - conj.partial(mu) * psi.truncated(m)
        out.append(
            1j * e * bracket - 2 * e * e * (state.potentials.lower(mu).truncated(m) * dens)
        )
    return tuple(out)


def schroedinger_transform(psi, p, *, charge=1.0):
    """Gauge away the scalar field's phase: phi = e^{-i alpha} psi and
    B = A + d(alpha/e), so that (phi, B) is the realified state."""
    alpha = phase_jet(psi)
    phi = jets.exp(-1j * alpha) * psi
    b = gauge_shift(p, alpha * (1.0 / charge))
    return phi, b
