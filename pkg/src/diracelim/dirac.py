"""The four-component Dirac equation as jet arithmetic.

Gamma matrices in the chiral basis:

    gamma^0 = [[0, -I], [-I, 0]]      gamma^k = [[0, sigma^k], [-sigma^k, 0]]

with 2x2 blocks and the Pauli matrices sigma^k.  The equation under test is

    (i gamma^mu d_mu - gamma^mu A_mu - 1) psi = 0

for unit mass, with A_mu the lower-index potential.  The residual of that
equation is built twice: once by matrix algebra over the gammas, and once
from hand-expanded per-component formulas.  Their agreement is one of the
verified identities, so neither routine may call the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OrderUnderflowError
from .fields import METRIC
from .jets import Jet

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _assemble_gammas():
    eye = np.eye(2, dtype=np.complex128)
    zero = np.zeros((2, 2), dtype=np.complex128)
    mats = [np.block([[zero, -eye], [-eye, zero]])]
    for s in PAULI:
        mats.append(np.block([[zero, s], [-s, zero]]))
    for m in mats:
        m.flags.writeable = False
    return tuple(mats)


GAMMA = _assemble_gammas()


def gamma(mu):
    """The 4x4 chiral-basis gamma matrix for index mu in 0..3."""
    if not 0 <= mu < 4:
        raise ValueError(f"gamma index must be in 0..3, got {mu}")
    return GAMMA[mu]


@dataclass(frozen=True)
class SpinorJets:
    """Four spinor components as jets of one common order."""

    components: tuple

    def __post_init__(self):
        orders = {c.order for c in self.components}
        if len(self.components) != 4 or len(orders) != 1:
            raise ValueError("need four spinor component jets of equal order")

    @property
    def order(self):
        return self.components[0].order

    def component(self, a):
        """1-based component access, matching the usual psi_1..psi_4 labels."""
        return self.components[a - 1]

    def truncated(self, order):
        return SpinorJets(tuple(c.truncated(order) for c in self.components))

    def max_abs(self):
        return max(c.max_abs() for c in self.components)


@dataclass(frozen=True)
class CurrentJets:
    """The contravariant current components j^0..j^3."""

    components: tuple

    @property
    def order(self):
        return self.components[0].order

    def upper(self, mu):
        return self.components[mu]


def dirac_residual_matrix(psi, p):
    """(i gamma^mu d_mu - gamma^mu A_mu - 1) psi via gamma-matrix contraction."""
    if psi.order < 1:
        raise OrderUnderflowError("dirac residual needs spinor order >= 1")
    m = psi.order - 1
    comp = [c.truncated(m) for c in psi.components]
    a_low = [p.lower(mu).truncated(m) for mu in range(4)]
    dpsi = [[c.partial(mu) for c in psi.components] for mu in range(4)]
    out = []
    for a in range(4):
        acc = -1 * comp[a]
        for mu in range(4):
            g = GAMMA[mu]
            for b in range(4):
                z = g[a, b]
                if z == 0:
                    continue
                # gamma^mu_{ab} (i psi_{b,mu} - A_mu psi_b)
                acc = acc + z * (1j * dpsi[mu][b] - a_low[mu] * comp[b])
        out.append(acc)
    return SpinorJets(tuple(out))


def dirac_residual_components(psi, p):
    """The same residual from the written-out component equations.

    With D = i*d and the contravariant potential components:

      r1 = (A0+A3) p3 + (A1-iA2) p4 + i(p3_z - i p4_y + p4_x - p3_t) - p1
      r2 = (A1+iA2) p3 + (A0-A3) p4 - i(p4_z - i p3_y - p3_x + p4_t) - p2
      r3 = (A0-A3) p1 - (A1-iA2) p2 - i(p1_z - i p2_y + p2_x + p1_t) - p3
      r4 = -(A1+iA2) p1 + (A0+A3) p2 + i p2_z + p1_y - i(p1_x + p2_t) - p4
    """
    if psi.order < 1:
        raise OrderUnderflowError("dirac residual needs spinor order >= 1")
    m = psi.order - 1
    p1, p2, p3, p4 = (c.truncated(m) for c in psi.components)
    a0, a1, a2, a3 = (p.upper(mu).truncated(m) for mu in range(4))
    d = lambda c, mu: psi.components[c].partial(mu)

    r1 = (
        (a0 + a3) * p3
        + (a1 - 1j * a2) * p4
        + 1j * (d(2, 3) - 1j * d(3, 2) + d(3, 1) - d(2, 0))
        - p1
    )
    r2 = (
        (a1 + 1j * a2) * p3
        + (a0 - a3) * p4
        - 1j * (d(3, 3) - 1j * d(2, 2) - d(2, 1) + d(3, 0))
        - p2
    )
    r3 = (
        (a0 - a3) * p1
        - (a1 - 1j * a2) * p2
        - 1j * (d(0, 3) - 1j * d(1, 2) + d(1, 1) + d(0, 0))
        - p3
    )
    r4 = (
        -(a1 + 1j * a2) * p1
        + (a0 + a3) * p2
        + 1j * d(1, 3)
        + d(0, 2)
        - 1j * (d(0, 1) + d(1, 0))
        - p4
    )
    return SpinorJets((r1, r2, r3, r4))


_GAMMA0_GAMMA = tuple(GAMMA[0] @ GAMMA[mu] for mu in range(4))


def current(psi):
    """j^mu = psibar gamma^mu psi, with psibar = psi^dagger gamma^0.

    Each component is real up to roundoff for any spinor.
    """
    conj = [c.conj() for c in psi.components]
    out = []
    for mu in range(4):
        mat = _GAMMA0_GAMMA[mu]
        acc = Jet.zero(psi.order)
        for a in range(4):
            for b in range(4):
                z = mat[a, b]
                if z == 0:
                    continue
                acc = acc + z * (conj[a] * psi.components[b])
        out.append(acc)
    return CurrentJets(tuple(out))


def current_divergence(psi):
    """d_mu j^mu by differentiating the current components."""
    j = current(psi)
    out = j.upper(0).partial(0)
    for mu in range(1, 4):
        out = out + j.upper(mu).partial(mu)
    return out


def bar_components(psi, order=None):
    """The row spinor psibar = psi^dagger gamma^0 as four jets."""
    m = psi.order if order is None else order
    conj = [c.conj().truncated(m) for c in psi.components]
    out = []
    for k in range(4):
        acc = Jet.zero(m)
        for a in range(4):
            z = GAMMA[0][a, k]
            if z != 0:
                acc = acc + z * conj[a]
        out.append(acc)
    return tuple(out)


def current_divergence_bilinear(psi):
    """d_mu j^mu rewritten as 2 Re(psibar gamma^mu psi_{,mu}).

    An algebraically independent route to the divergence, used to cross-check
    `current_divergence`.
    """
    if psi.order < 1:
        raise OrderUnderflowError("divergence needs spinor order >= 1")
    m = psi.order - 1
    conj = [c.conj().truncated(m) for c in psi.components]
    acc = Jet.zero(m)
    for mu in range(4):
        g = GAMMA[0] @ GAMMA[mu]
        for a in range(4):
            for b in range(4):
                z = g[a, b]
                if z == 0:
                    continue
                acc = acc + z * (conj[a] * psi.components[b].partial(mu))
    return 2 * acc.real_part()
