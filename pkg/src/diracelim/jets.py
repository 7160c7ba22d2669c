"""Truncated multivariate Taylor arithmetic over the spacetime variables (t, x, y, z).

A jet of order N stores the Taylor coefficients d^a f / a!  of a smooth
function at a point, for every multi-index a with |a| <= N.  Sums, products,
quotients and compositions of jets then reproduce the Taylor coefficients of
the corresponding operations on functions, exactly up to the truncation.
That makes identities between differential expressions checkable as numerical
identities between finite coefficient arrays.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import OrderMismatchError, OrderUnderflowError, SingularityError

NUM_VARS = 4
AXIS_NAMES = ("t", "x", "y", "z")


@lru_cache(maxsize=None)
def simplex_indices(order):
    """All multi-indices with |a| <= order, sorted by (degree, lexicographic).

    The sort key makes the layout nested: the indices of any lower order are
    a prefix of those of a higher order, so truncation is an array slice.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    idx = [a for a in product(range(order + 1), repeat=NUM_VARS) if sum(a) <= order]
    idx.sort(key=lambda a: (sum(a), a))
    return tuple(idx)


def simplex_size(order):
    return len(simplex_indices(order))


@lru_cache(maxsize=None)
def _positions(order):
    return {a: k for k, a in enumerate(simplex_indices(order))}


@lru_cache(maxsize=None)
def _factorials(order):
    """alpha! for every index in layout order."""
    idx = simplex_indices(order)
    return np.array([math.prod(math.factorial(ai) for ai in a) for a in idx], dtype=float)


@lru_cache(maxsize=None)
def _mul_table(order):
    """Triples (i, j, k) with index_i + index_j = index_k on the simplex."""
    idx = simplex_indices(order)
    pos = _positions(order)
    degs = [sum(a) for a in idx]
    I, J, K = [], [], []
    for i, a in enumerate(idx):
        da = degs[i]
        for j, b in enumerate(idx):
            if da + degs[j] > order:
                continue
            I.append(i)
            J.append(j)
            K.append(pos[tuple(x + y for x, y in zip(a, b))])
    return (
        np.array(I, dtype=np.intp),
        np.array(J, dtype=np.intp),
        np.array(K, dtype=np.intp),
    )


@lru_cache(maxsize=None)
def _partial_table(order, axis):
    """Source positions and multipliers mapping order-N coefficients to the
    order-(N-1) coefficients of the derivative along `axis`."""
    small = simplex_indices(order - 1)
    pos = _positions(order)
    src = np.empty(len(small), dtype=np.intp)
    fac = np.empty(len(small))
    for k, a in enumerate(small):
        up = list(a)
        up[axis] += 1
        src[k] = pos[tuple(up)]
        fac[k] = a[axis] + 1
    return src, fac


def _mul_coeffs(a, b, order):
    I, J, K = _mul_table(order)
    prod_ = a[I] * b[J]
    n = simplex_size(order)
    out = np.bincount(K, weights=prod_.real, minlength=n).astype(np.complex128)
    out += 1j * np.bincount(K, weights=prod_.imag, minlength=n)
    return out


class Jet:
    """Taylor coefficients of a function at a point, truncated at total degree `order`."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs, *, copy=True):
        arr = np.array(coeffs, dtype=np.complex128, copy=copy)
        if arr.shape != (simplex_size(order),):
            raise ValueError(
                f"expected {simplex_size(order)} coefficients for order {order}, "
                f"got shape {arr.shape}"
            )
        arr.flags.writeable = False
        self.order = order
        self.coeffs = arr

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls(order, np.zeros(simplex_size(order), dtype=np.complex128), copy=False)

    @classmethod
    def constant(cls, value, order):
        c = np.zeros(simplex_size(order), dtype=np.complex128)
        c[0] = value
        return cls(order, c, copy=False)

    @classmethod
    def coordinate(cls, axis, value, order):
        """The jet of the coordinate function along `axis`, expanded at `value`."""
        if not 0 <= axis < NUM_VARS:
            raise ValueError(f"axis must be in 0..3, got {axis}")
        c = np.zeros(simplex_size(order), dtype=np.complex128)
        c[0] = value
        if order >= 1:
            unit = tuple(1 if k == axis else 0 for k in range(NUM_VARS))
            c[_positions(order)[unit]] = 1.0
        return cls(order, c, copy=False)

    @classmethod
    def from_coefficients(cls, order, mapping):
        """Build a jet from a {multi-index: coefficient} mapping."""
        c = np.zeros(simplex_size(order), dtype=np.complex128)
        pos = _positions(order)
        for a, v in mapping.items():
            key = tuple(a)
            if key not in pos:
                raise ValueError(f"multi-index {key} exceeds order {order}")
            c[pos[key]] = v
        return cls(order, c, copy=False)

    # -- accessors ------------------------------------------------------

    def value(self):
        """The function value at the expansion point."""
        return complex(self.coeffs[0])

    def coefficient(self, alpha):
        """Taylor coefficient for multi-index alpha (that is d^a f / a!)."""
        key = tuple(alpha)
        pos = _positions(self.order)
        if key not in pos:
            raise ValueError(f"multi-index {key} exceeds order {self.order}")
        return complex(self.coeffs[pos[key]])

    def derivative(self, alpha):
        """The partial derivative d^a f at the expansion point (coefficient times a!)."""
        key = tuple(alpha)
        fac = math.prod(math.factorial(ai) for ai in key)
        return self.coefficient(key) * fac

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self):
        return f"Jet(order={self.order}, value={self.value():.6g})"

    # -- structural operations -----------------------------------------

    def truncated(self, order):
        """Drop all coefficients of total degree above `order`."""
        if order > self.order:
            raise OrderUnderflowError(
                f"cannot extend a jet of order {self.order} to order {order}"
            )
        if order == self.order:
            return self
        return Jet(order, self.coeffs[: simplex_size(order)])

    def partial(self, axis):
        """Partial derivative along axis (0=t, 1=x, 2=y, 3=z); drops one order."""
        if not 0 <= axis < NUM_VARS:
            raise ValueError(f"axis must be in 0..3, got {axis}")
        if self.order == 0:
            raise OrderUnderflowError(
                "cannot differentiate a jet of order 0; no derivative information left"
            )
        src, fac = _partial_table(self.order, axis)
        return Jet(self.order - 1, self.coeffs[src] * fac, copy=False)

    def conj(self):
        """Complex conjugate (the jet of the conjugated function)."""
        return Jet(self.order, np.conj(self.coeffs), copy=False)

    def real_part(self):
        return Jet(self.order, self.coeffs.real.astype(np.complex128), copy=False)

    def imag_part(self):
        return Jet(self.order, self.coeffs.imag.astype(np.complex128), copy=False)

    # -- arithmetic -----------------------------------------------------

    def _match(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        return None

    def __add__(self, other):
        o = self._match(other)
        if o is not None:
            return Jet(self.order, self.coeffs + o.coeffs, copy=False)
        c = self.coeffs.copy()
        c[0] += complex(other)
        return Jet(self.order, c, copy=False)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.order, -self.coeffs, copy=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -complex(other))

    def __rsub__(self, other):
        return (-self) + complex(other)

    def __mul__(self, other):
        o = self._match(other)
        if o is not None:
            return Jet(self.order, _mul_coeffs(self.coeffs, o.coeffs, self.order), copy=False)
        return Jet(self.order, self.coeffs * complex(other), copy=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._match(other)
        if o is not None:
            return self * reciprocal(o)
        return Jet(self.order, self.coeffs / complex(other), copy=False)

    def __rtruediv__(self, other):
        return complex(other) * reciprocal(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("jet exponent must be an integer")
        if n < 0:
            return reciprocal(self) ** (-n)
        out = Jet.constant(1.0, self.order)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out


def _compose(series, g):
    """Sum series[k] * (g - g(0))^k by Horner; series[k] = f^(k)(g0)/k!."""
    h = g - g.value()
    out = Jet.constant(series[-1], g.order)
    for c in series[-2::-1]:
        out = out * h + c
    return out


def exp(g):
    e0 = cmath.exp(g.value())
    series = [e0 / math.factorial(k) for k in range(g.order + 1)]
    return _compose(series, g)


def log(g):
    g0 = g.value()
    if g0 == 0:
        raise SingularityError("log of a jet with zero value")
    series = [cmath.log(g0)]
    series += [(-1) ** (k - 1) / (k * g0**k) for k in range(1, g.order + 1)]
    return _compose(series, g)


def reciprocal(g):
    g0 = g.value()
    if g0 == 0:
        raise SingularityError("reciprocal of a jet with zero value")
    series = [(-1) ** k / g0 ** (k + 1) for k in range(g.order + 1)]
    return _compose(series, g)


def sin(g):
    g0 = g.value()
    cycle = (cmath.sin(g0), cmath.cos(g0), -cmath.sin(g0), -cmath.cos(g0))
    series = [cycle[k % 4] / math.factorial(k) for k in range(g.order + 1)]
    return _compose(series, g)


def cos(g):
    g0 = g.value()
    cycle = (cmath.cos(g0), -cmath.sin(g0), -cmath.cos(g0), cmath.sin(g0))
    series = [cycle[k % 4] / math.factorial(k) for k in range(g.order + 1)]
    return _compose(series, g)


def random_jet(rng, order, amplitude=1.0):
    """A random jet with coefficients drawn uniformly from the complex disc of
    radius `amplitude`, damped by 1/a! so higher coefficients stay tame."""
    n = simplex_size(order)
    r = amplitude * np.sqrt(rng.uniform(0.0, 1.0, n))
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    c = r * np.exp(1j * phi) / _factorials(order)
    return Jet(order, c, copy=False)


def random_unit_jet(rng, order, amplitude=0.5):
    """A random jet conditioned for phase extraction: constant term drawn from
    the annulus 0.5 <= |c| <= 1, higher coefficients from `random_jet` with a
    damped amplitude.  Keeps log-composition (and everything downstream of the
    extracted phase) well away from float cancellation."""
    h = random_jet(rng, order, amplitude)
    h = h - h.value()
    radius = 0.5 + 0.5 * rng.uniform()
    return h + radius * np.exp(2j * np.pi * rng.uniform())


def max_rel_diff(a, b, floor=1e-30):
    """Max coefficient difference between two jets, relative to the larger scale."""
    if a.order != b.order:
        raise OrderMismatchError(f"jet orders differ: {a.order} vs {b.order}")
    diff = float(np.max(np.abs(a.coeffs - b.coeffs)))
    scale = max(a.max_abs(), b.max_abs(), floor)
    return diff / scale
