"""Making the first component real by a gauge transform, and splitting the
remaining complex equation into a real equation plus current conservation.

With alpha the local phase of psi1, the gauge pair (psi -> e^{-i alpha} psi,
A -> A + d alpha) turns psi1 into |psi1| while leaving the field strengths and
the form of every equation untouched.  What remains of the second-order
equation for psi2 is one complex condition delta = 0; against the assembled
spinor it splits into the pair 2 Re(psi4* delta) = 0 and the current
conservation statement 2 Im(-psi4* delta) = 0, which together carry exactly
|delta|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jets
from .errors import SingularityError
from .fields import PotentialJets, gauge_shift
from .jets import Jet
from .reduction import second_order_residuals

PSI4_FLOOR = 1e-8


@dataclass(frozen=True)
class RealForm:
    """psi1 after the phase removal, the shifted potential, and the phase."""

    psi1_real: Jet
    b: PotentialJets
    alpha: Jet


@dataclass(frozen=True)
class ConservationSplit:
    """The two real conditions carried by delta = 0 against psi4.

    real_eq = 2 Re(psi4* delta), conservation = 2 Im(-psi4* delta); at any
    point |delta|^2 = (real_eq^2 + conservation^2) / (4 |psi4|^2).  The flag
    records a |psi4| below PSI4_FLOOR at the expansion point, where dividing
    back by psi4 is no longer meaningful.
    """

    real_eq: Jet
    conservation: Jet
    delta: Jet
    psi4_below_floor: bool


def phase_jet(psi1):
    """The local phase alpha with psi1 = |psi1| e^{i alpha}, via Im log psi1."""
    try:
        lg = jets.log(psi1)
    except SingularityError:
        raise SingularityError(
            "phase undefined at the expansion point: psi1 vanishes there"
        ) from None
    return lg.imag_part()


def make_real(psi1, p):
    """Gauge away the phase of psi1.

    Returns psi1_real = e^{-i alpha} psi1 (real up to roundoff), the shifted
    potential B = A + d alpha, and alpha itself.  B sits one order below the
    potential when alpha has only its order to give (see gauge_shift).
    """
    alpha = phase_jet(psi1)
    psi1_real = jets.exp(-1j * alpha) * psi1
    b = gauge_shift(p, alpha)
    return RealForm(psi1_real, b, alpha)


def conservation_split(psi, p, *, delta=None, floor=PSI4_FLOOR):
    """Split delta against psi4 for an assembled spinor.

    `delta` defaults to the second-order residual of the spinor's own upper
    pair; callers holding a higher-order psi1 can pass the richer jet.
    """
    if delta is None:
        delta = second_order_residuals(psi.component(1), psi.component(2), p).rho2
    m = min(delta.order, psi.order)
    delta = delta.truncated(m)
    p4c = psi.component(4).conj().truncated(m)
    prod = p4c * delta
    real_eq = 2 * prod.real_part()
    conservation = -2 * prod.imag_part()
    below = abs(psi.component(4).value()) < floor
    return ConservationSplit(real_eq, conservation, delta, below)
