"""The identity suite: every verified claim evaluated at sampled points of a
scenario, with residuals aggregated into a report.

Identities whose tolerance the theory fixes tightly (pure transcription,
field-strength invariance, realified imaginary parts) carry their own
constants; the rest share the configurable suite tolerance.  Points where the
elimination coefficient is too small to invert are counted per identity as
degenerate rather than silently skipped; an identity left with no usable
points fails with a note, so an everywhere-degenerate scenario fails loudly.
"""

from __future__ import annotations

import time

import numpy as np

from . import __version__, dirac, fdcheck, fields, jets, realform, reduction, scalar
from .errors import DegenerateFieldError, ScenarioError
from .jets import max_rel_diff, random_jet, random_unit_jet
from .report import IdentityRecord, PointRecord, VerificationReport

TRANSCRIPTION_TOL = 1e-13
ZERO_COMPONENT_TOL = 1e-12
FIELD_STRENGTH_TOL = 1e-13
IMAGINARY_TOL = 1e-11

MIN_ORDER = 4
MAX_ORDER = 10

# identity id -> fixed tolerance (None: the shared suite tolerance applies)
IDENTITIES = {
    "dirac_residual_transcription": TRANSCRIPTION_TOL,
    "normalized_forms": None,
    "second_order_substitution": None,
    "fourth_order_substitution": None,
    "reduced_spinor_zero_components": ZERO_COMPONENT_TOL,
    "reduced_spinor_fourth_order": None,
    "current_conservation": None,
    "conservation_equivalence": None,
    "field_strength_gauge_invariance": FIELD_STRENGTH_TOL,
    "fourth_order_gauge_covariance": None,
    "realified_imaginary_part": IMAGINARY_TOL,
    "realified_field_strength": FIELD_STRENGTH_TOL,
    "realified_fourth_order": None,
    "scalar_residual_covariance": None,
    "scalar_current_map": None,
    "scalar_conservation_split": None,
    "jet_vs_fd": 1.0,
}

# identities that need the reciprocal of i*F1 + F2 and sit out degenerate points
_NEEDS_INVERSION = (
    "fourth_order_substitution",
    "reduced_spinor_zero_components",
    "reduced_spinor_fourth_order",
    "current_conservation",
    "conservation_equivalence",
    "fourth_order_gauge_covariance",
    "realified_fourth_order",
)


class _Collector:
    def __init__(self, tolerance, collect_points):
        self.tolerance = tolerance
        self.collect = collect_points
        self.state = {
            key: {"max": 0.0, "points": 0, "degenerate": 0}
            for key in IDENTITIES
        }
        self.rows = []

    def tol(self, key):
        fixed = IDENTITIES[key]
        return self.tolerance if fixed is None else fixed

    def add(self, key, index, point, residual):
        s = self.state[key]
        s["points"] += 1
        s["max"] = max(s["max"], residual)
        if self.collect:
            self.rows.append(
                PointRecord(key, index, point, residual, self.tol(key), residual <= self.tol(key))
            )

    def degenerate(self, key):
        self.state[key]["degenerate"] += 1

    def records(self, keys):
        out = []
        for key in IDENTITIES:
            if key not in keys:
                continue
            s = self.state[key]
            note = ""
            if s["points"] == 0:
                passed = False
                note = "no usable sample points (all degenerate)" if s["degenerate"] else "not evaluated"
            else:
                passed = s["max"] <= self.tol(key)
                if s["degenerate"]:
                    note = f"{s['degenerate']} degenerate points skipped"
            out.append(
                IdentityRecord(
                    identity=key,
                    points=s["points"],
                    degenerate_points=s["degenerate"],
                    max_residual=s["max"],
                    tolerance=self.tol(key),
                    passed=passed,
                    note=note,
                )
            )
        return out


def _require_real_potentials(p, scenario, point):
    for mu in range(4):
        a = p.upper(mu)
        if a.imag_part().max_abs() > scalar.REALITY_TOLERANCE * max(a.max_abs(), 1.0):
            raise ScenarioError(
                f"potential A{mu} of scenario {scenario.name!r} is not real at "
                f"point {tuple(point)}; the verified identities assume real "
                f"electromagnetic potentials"
            )


def _fd_ratio(scenario, point, order, cfg=None):
    """Worst FD-vs-jet ratio (difference over the per-degree tolerance)
    across the scenario's expressions at one point."""
    exprs = list(scenario.potentials)
    if scenario.psi1 is not None:
        exprs.append(scenario.psi1)
    worst = 0.0
    for expr in exprs:
        for row in fdcheck.compare_jet_vs_fd(expr, point, min(order, fdcheck.MAX_FD_ORDER), cfg):
            worst = max(worst, row.difference / row.tolerance)
    return worst


def run_suite(scenario, *, points=100, order=6, tolerance=1e-10, seed=0,
              fd_points=2, collect_points=False):
    """Evaluate every identity at `points` sampled points of the scenario;
    returns (VerificationReport, per-point rows).

    FD cross-checks run only at the first `fd_points` points (they are far
    slower than jet arithmetic); `collect_points` switches on the per-point
    rows used for delimited output.
    """
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"order must be in {MIN_ORDER}..{MAX_ORDER}, got {order}")
    if points < 1:
        raise ValueError("need at least one sample point")
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    col = _Collector(tolerance, collect_points)
    n = order
    sample_points = scenario.region.sample(rng, points)
    maxwell_worst = 0.0

    for index, pt in enumerate(sample_points):
        p_hi = fields.potential_at(scenario, pt, n + 1)
        _require_real_potentials(p_hi, scenario, pt)
        p = p_hi.truncated(n)

        # one draw block per point, consumed before any branch can bail out,
        # so the stream never depends on which points were degenerate
        spin = dirac.SpinorJets(tuple(random_jet(rng, n) for _ in range(4)))
        psi1 = random_unit_jet(rng, n)
        psi2r = random_jet(rng, n)
        chi = random_jet(rng, n + 1).real_part()
        psis = random_unit_jet(rng, n)
        chi_s = random_jet(rng, n + 1).real_part()

        # transcription: gamma-matrix route against the written-out components
        rm = dirac.dirac_residual_matrix(spin, p)
        rc = dirac.dirac_residual_components(spin, p)
        col.add(
            "dirac_residual_transcription", index, pt,
            max(max_rel_diff(a, b) for a, b in zip(rm.components, rc.components)),
        )

        # the second-order residuals against their box'-centred arrangement
        pair = reduction.second_order_residuals(psi1, psi2r, p)
        nf = reduction.normalized_forms(psi1, psi2r, p)
        col.add(
            "normalized_forms", index, pt,
            max(max_rel_diff(pair.rho1, -nf.sigma1), max_rel_diff(pair.rho2, -nf.sigma2)),
        )

        # substituting the reconstructed lower pair back into the component
        # equations: upper residuals become (rho1, rho2), lower ones vanish
        p3, p4 = reduction.reconstruct_psi34(psi1, psi2r, p)
        spin_sub = dirac.SpinorJets((psi1.truncated(n - 1), psi2r.truncated(n - 1), p3, p4))
        rsub = dirac.dirac_residual_components(spin_sub, p)
        sub_scale = max(spin_sub.max_abs(), 1.0)
        col.add(
            "second_order_substitution", index, pt,
            max(
                max_rel_diff(rsub.component(1), reduction.ELIMINATION_SCALE_1 * pair.rho1),
                max_rel_diff(rsub.component(2), reduction.ELIMINATION_SCALE_2 * pair.rho2),
                rsub.component(3).max_abs() / sub_scale,
                rsub.component(4).max_abs() / sub_scale,
            ),
        )

        # everything downstream needs the reciprocal of i*F1 + F2
        try:
            psi2s = reduction.solve_psi2(psi1, p)
            l4 = reduction.fourth_order_residual(psi1, p)
        except DegenerateFieldError:
            for key in _NEEDS_INVERSION:
                col.degenerate(key)
            psi2s = l4 = None

        if psi2s is not None:
            pair_s = reduction.second_order_residuals(psi1.truncated(n - 2), psi2s, p)
            col.add("fourth_order_substitution", index, pt, max_rel_diff(pair_s.rho2, l4))

            full = reduction.spinor_from_psi1(psi1, p)
            rfull = dirac.dirac_residual_matrix(full, p)
            zero_scale = max(full.max_abs(), 1.0)
            col.add(
                "reduced_spinor_zero_components", index, pt,
                max(rfull.component(k).max_abs() for k in (1, 3, 4)) / zero_scale,
            )
            col.add(
                "reduced_spinor_fourth_order", index, pt,
                max_rel_diff(rfull.component(2), reduction.ELIMINATION_SCALE_4TH * l4),
            )

            # divergence of the assembled current against the split's
            # conservation half, delta taken from the transcribed route
            split = realform.conservation_split(full, p, delta=pair_s.rho2)
            div = dirac.current_divergence(full)
            col.add("current_conservation", index, pt, max_rel_diff(div, split.conservation))
            if not split.psi4_below_floor:
                d0 = abs(split.delta.value()) ** 2
                p40 = abs(full.component(4).value())
                recon = (
                    split.real_eq.value().real ** 2 + split.conservation.value().real ** 2
                ) / (4 * p40 ** 2)
                col.add(
                    "conservation_equivalence", index, pt,
                    abs(d0 - recon) / max(d0, recon, 1e-30),
                )
            else:
                col.degenerate("conservation_equivalence")

        # a drawn gauge shift: field strength invariant, the fourth-order
        # residual covariant with the matching phase
        p_shift = fields.gauge_shift(p_hi, chi)
        fs_a = fields.field_strength(p)
        fs_shift = fields.field_strength(p_shift)
        col.add(
            "field_strength_gauge_invariance", index, pt,
            max(max_rel_diff(a, b) for a, b in zip(fs_a.f, fs_shift.f)),
        )
        if l4 is not None:
            phase = jets.exp(-1j * chi.truncated(n))
            l4_shift = reduction.fourth_order_residual(phase * psi1, p_shift)
            col.add(
                "fourth_order_gauge_covariance", index, pt,
                max_rel_diff(l4_shift, phase.truncated(n - 4) * l4),
            )

        # realification of the drawn psi1
        mr = realform.make_real(psi1, p)
        col.add(
            "realified_imaginary_part", index, pt,
            mr.psi1_real.imag_part().max_abs() / max(mr.psi1_real.max_abs(), 1.0),
        )
        fs_b = fields.field_strength(mr.b)
        col.add(
            "realified_field_strength", index, pt,
            max(max_rel_diff(a.truncated(n - 2), b) for a, b in zip(fs_a.f, fs_b.f)),
        )
        if l4 is not None:
            l4_real = reduction.fourth_order_residual(mr.psi1_real, mr.b)
            ph = jets.exp(-1j * mr.alpha).truncated(n - 4)
            jet_identity = max_rel_diff(l4_real, ph * l4)
            modulus = abs(abs(l4_real.value()) - abs(l4.value())) / max(abs(l4.value()), 1.0)
            col.add("realified_fourth_order", index, pt, max(jet_identity, modulus))

        # the scalar analogue: residual covariance, current map, conservation
        r1 = scalar.kg_residual(psis, p)
        phase_s = jets.exp(-1j * chi_s.truncated(n))
        r2 = scalar.kg_residual(phase_s * psis, fields.gauge_shift(p_hi, chi_s))
        col.add(
            "scalar_residual_covariance", index, pt,
            max_rel_diff(r2, phase_s.truncated(n - 2) * r1),
        )

        phi, b = scalar.schroedinger_transform(psis, p)
        phi_r = phi.real_part()
        jc = scalar.kg_currents(scalar.ScalarState.complex_field(psis, p))
        jr = scalar.kg_currents(scalar.ScalarState.real_field(phi_r, b))
        col.add(
            "scalar_current_map", index, pt,
            max(max_rel_diff(a, c) for a, c in zip(jc, jr)),
        )
        div_j = fields.divergence_lower(jr)
        res = scalar.kg_residual(phi_r, b)
        lhs = div_j + 2 * (phi_r.truncated(n - 2) * res.imag_part())
        col.add(
            "scalar_conservation_split", index, pt,
            lhs.max_abs() / max(div_j.max_abs(), 1.0),
        )

        # report-only diagnostic: distance from a vacuum Maxwell solution
        mres = fields.maxwell_residual(p, None)
        maxwell_worst = max(maxwell_worst, max(abs(c.value()) for c in mres))

        if index < fd_points:
            col.add("jet_vs_fd", index, pt, _fd_ratio(scenario, pt, order))

    keys = set(IDENTITIES)
    if fd_points < 1:
        keys.discard("jet_vs_fd")
    report = VerificationReport(
        tool="diracelim",
        version=__version__,
        scenario=scenario.name,
        order=order,
        points=points,
        seed=seed,
        tolerance=tolerance,
        identities=col.records(keys),
        diagnostics={"maxwell_residual_vacuum_max": maxwell_worst},
    )
    report.overall_pass = all(r.passed for r in report.identities)
    report.wall_time_s = time.perf_counter() - started
    return report, col.rows
