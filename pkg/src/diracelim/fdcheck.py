"""Finite-difference oracle: everything here works on raw point samples of
expressions and never touches jet arithmetic, so agreement with the jet route
is evidence and not tautology.

Central stencils per axis, tensor products for mixed partials, Richardson
extrapolation on a step halving ladder.  The tolerance table loosens with
derivative order; division by h^k turns sampling noise into the usual h^{-k}
amplification, while the jets stay exact.

Also home of the seeded random field generator, which emits ordinary scenario
text so generated configurations flow through the same loader as curated ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import expressions, scenarios
from .errors import ConstraintInfeasibleError
from .fields import elimination_coefficient, field_strength, potential_at

DEFAULT_TOLERANCES = {0: 1e-12, 1: 1e-8, 2: 1e-8, 3: 1e-6, 4: 1e-4}

# offsets and weights of the shortest central stencil per derivative order;
# divide by h^order after composing
_STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}

MAX_FD_ORDER = 4


@dataclass(frozen=True)
class FdConfig:
    base_step: float = 1e-2
    levels: int = 3
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.base_step <= 0:
            raise ValueError("base step must be positive")
        if self.levels < 1:
            raise ValueError("need at least one Richardson level")


def _single_step_estimate(sampler, point, alpha, h):
    """One tensor-product stencil evaluation at step h."""
    axes = [k for k in range(4) if alpha[k] > 0]
    if not axes:
        return sampler(tuple(point))
    grids = [zip(*_STENCILS[alpha[k]]) for k in axes]
    total = 0.0 + 0.0j
    for combo in product(*[list(g) for g in grids]):
        q = list(point)
        w = 1.0
        for axis, (offset, weight) in zip(axes, combo):
            q[axis] += offset * h
            w *= weight
        total += w * sampler(tuple(q))
    return total / h ** sum(alpha)


def fd_partial(sampler, point, alpha, cfg=None):
    """Estimate d^alpha of a point function; returns (estimate, error_estimate).

    The error estimate is the difference between the last two Richardson
    diagonal entries (infinite when only one level is configured).
    """
    cfg = cfg or FdConfig()
    alpha = tuple(alpha)
    degree = sum(alpha)
    if degree > MAX_FD_ORDER or any(a < 0 for a in alpha):
        raise ValueError(f"fd stencils cover derivative orders 0..4, got {alpha}")
    if degree == 0:
        return sampler(tuple(point)), 0.0
    if cfg.base_step / 2 ** (cfg.levels - 1) < 1e-12:
        raise ValueError("step underflow: base_step too small for the level count")
    # Richardson ladder: halving h gains a factor 4 per column for central stencils
    diag = []
    row_prev = []
    for level in range(cfg.levels):
        h = cfg.base_step / 2**level
        row = [_single_step_estimate(sampler, point, alpha, h)]
        for j in range(1, level + 1):
            improved = row[j - 1] + (row[j - 1] - row_prev[j - 1]) / (4**j - 1)
            row.append(improved)
        diag.append(row[-1])
        row_prev = row
    estimate = diag[-1]
    err = abs(diag[-1] - diag[-2]) if len(diag) > 1 else math.inf
    return estimate, err


@dataclass(frozen=True)
class FdRow:
    alpha: tuple
    jet_derivative: complex
    fd_estimate: complex
    difference: float
    tolerance: float
    passed: bool


def compare_jet_vs_fd(expr, point, order, cfg=None):
    """Jet coefficients (times alpha!) against FD estimates, one row per
    multi-index up to `order` (capped at the stencil limit 4).

    Differences are relative to max(1, |jet|, |fd|), so near-zero rows are
    judged absolutely.
    """
    cfg = cfg or FdConfig()
    from .jets import simplex_indices  # local import to keep module routes apart

    jet = expressions.eval_jet(expr, point, order)
    sampler = lambda q: expressions.eval_point(expr, q)
    rows = []
    for alpha in simplex_indices(min(order, MAX_FD_ORDER)):
        degree = sum(alpha)
        want = jet.derivative(alpha)
        got, _ = fd_partial(sampler, point, alpha, cfg)
        diff = abs(want - got) / max(1.0, abs(want), abs(got))
        tol = cfg.tolerances[degree]
        rows.append(FdRow(alpha, want, got, diff, tol, diff <= tol))
    return rows


# -- pure-FD evaluation of the reduction chain --------------------------
#
# These evaluators rebuild the operator chain from point samples only:
# potentials and psi1 enter as expression samplers, fields come from FD first
# derivatives, box' from FD second derivatives, and the fourth-order value
# from a second FD pass over the solved psi2 samples.  Slow and noisy by
# design; their only job is independence.


def _field_values(potential_samplers, point, cfg):
    """E, H, F values at a point from FD derivatives of the potentials."""
    d = [[None] * 4 for _ in range(4)]  # d[mu][nu] = d_nu A^mu
    for mu in range(4):
        for nu in range(4):
            unit = tuple(1 if k == nu else 0 for k in range(4))
            d[mu][nu], _ = fd_partial(potential_samplers[mu], point, unit, cfg)
    e = [-(d[i][0] + d[0][i]) for i in (1, 2, 3)]
    h = [d[3][2] - d[2][3], d[1][3] - d[3][1], d[2][1] - d[1][2]]
    f = [ei + 1j * hi for ei, hi in zip(e, h)]
    return e, h, f


def fd_box_prime_value(sampler, potential_samplers, point, cfg=None):
    """box' applied to a sampled function, evaluated at one point via FD."""
    cfg = cfg or FdConfig()
    unit = lambda nu: tuple(1 if k == nu else 0 for k in range(4))
    two = lambda nu: tuple(2 if k == nu else 0 for k in range(4))
    f0 = sampler(tuple(point))
    a = [potential_samplers[mu](tuple(point)) for mu in range(4)]
    wave = fd_partial(sampler, point, two(0), cfg)[0]
    for k in (1, 2, 3):
        wave -= fd_partial(sampler, point, two(k), cfg)[0]
    grad = sum(a[mu] * fd_partial(sampler, point, unit(mu), cfg)[0] for mu in range(4))
    adiv = sum(fd_partial(potential_samplers[mu], point, unit(mu), cfg)[0] for mu in range(4))
    asq = a[0] ** 2 - a[1] ** 2 - a[2] ** 2 - a[3] ** 2
    return wave + 2j * grad + 1j * adiv * f0 - asq * f0 + f0


def fd_solve_psi2_value(psi1_sampler, potential_samplers, point, cfg=None):
    """psi2 = -(iF1+F2)^{-1} (box' + iF3) psi1 at one point, all via FD."""
    cfg = cfg or FdConfig()
    _, _, f = _field_values(potential_samplers, point, cfg)
    coef = 1j * f[0] + f[1]
    rhs = fd_box_prime_value(psi1_sampler, potential_samplers, point, cfg)
    rhs += 1j * f[2] * psi1_sampler(tuple(point))
    return -rhs / coef


def fd_fourth_order_value(psi1_sampler, potential_samplers, point, outer_cfg=None, inner_cfg=None):
    """The fourth-order residual value at one point by nesting FD passes.

    The inner pass samples psi2 wherever the outer box' stencil asks; noise
    compounds, so the outer step is kept larger than the inner one.
    """
    outer = outer_cfg or FdConfig(base_step=5e-2, levels=3)
    inner = inner_cfg or FdConfig(base_step=1e-2, levels=3)

    def w(q):
        # w = (iF1+F2)^{-1}(box'+iF3) psi1 = -psi2
        return -fd_solve_psi2_value(psi1_sampler, potential_samplers, q, inner)

    _, _, f = _field_values(potential_samplers, point, inner)
    value = fd_box_prime_value(w, potential_samplers, point, outer)
    value -= 1j * f[2] * w(tuple(point))
    value += (-1j * f[0] + f[1]) * psi1_sampler(tuple(point))
    return value


# -- random field generation -------------------------------------------


@dataclass(frozen=True)
class RandomFieldSpec:
    seed: int
    poly_terms: int = 2
    trig_terms: int = 1
    amplitude: float = 1.0
    min_coefficient: float = 0.1
    region: tuple = (((-1.0, 1.0),) * 4)
    max_tries: int = 64
    check_points: int = 1000


def _random_poly_term(rng, amplitude):
    c = float(rng.uniform(-amplitude, amplitude))
    powers = rng.multinomial(int(rng.integers(1, 3)), [0.25] * 4)
    body = "*".join(
        (name if k == 1 else f"{name}^{k}")
        for name, k in zip(("t", "x", "y", "z"), powers)
        if k > 0
    )
    return f"{c!r}*{body}" if body else repr(c)


def _random_trig_term(rng, amplitude):
    c = float(rng.uniform(-amplitude, amplitude))
    fn = "cos" if rng.uniform() < 0.5 else "sin"
    w = [float(rng.uniform(-1.0, 1.0)) for _ in range(4)]
    phase = " + ".join(f"{wk!r}*{name}" for wk, name in zip(w, ("t", "x", "y", "z")))
    return f"{c!r}*{fn}({phase})"


def _random_potential_text(rng, spec):
    terms = [_random_poly_term(rng, spec.amplitude) for _ in range(spec.poly_terms)]
    terms += [_random_trig_term(rng, spec.amplitude) for _ in range(spec.trig_terms)]
    return " + ".join(terms)


def random_scenario(spec):
    """Draw potentials until |iF1 + F2| clears spec.min_coefficient over the
    region (checked at spec.check_points sample points); deterministic per seed."""
    rng = np.random.default_rng(spec.seed)
    region = scenarios.Region(tuple(tuple(map(float, b)) for b in spec.region))
    for attempt in range(spec.max_tries):
        lines = [f'name = "random_{spec.seed}"']
        for mu in range(4):
            lines.append(f'A{mu} = "{_random_potential_text(rng, spec)}"')
        lines.append(f"min_coefficient = {spec.min_coefficient!r}")
        lines.append("")
        lines.append("[region]")
        for axis, (lo, hi) in zip(scenarios.AXES, region.bounds):
            lines.append(f"{axis} = [{lo!r}, {hi!r}]")
        candidate = scenarios.load_scenario("\n".join(lines) + "\n")
        points = region.sample(rng, spec.check_points)
        ok = True
        for pt in points:
            p = potential_at(candidate, pt, 1)
            coef = elimination_coefficient(field_strength(p))
            if abs(coef.value()) < spec.min_coefficient:
                ok = False
                break
        if ok:
            return candidate
    raise ConstraintInfeasibleError(
        f"no field with |i*F1 + F2| >= {spec.min_coefficient} over the region "
        f"found in {spec.max_tries} tries (amplitude {spec.amplitude})"
    )
