"""Two-sided evaluation of the geometric inequalities, with explicit margins.

Every check produces an InequalityReport whose margin is oriented so that a
nonnegative value means the inequality holds.  Exact integration paths get a
relative tolerance verdict; Wulff-shape paths additionally evaluate one grid
level coarser and use the observed refinement delta as the inconclusive band,
because a finite halfspace intersection only bounds the true volume from
above.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import bonnesen as BN
from . import measures as M
from .errors import InvalidExponent, InvalidParameter
from .wulff import DirectionGrid, geodesic_grid, log_combination, lp_combination

EXACT_TOL_FACTOR = 1e-9

REPORT_NAMES = ("Lemma31a", "Lemma31b", "LogMinkowski", "LogBM",
                "LpMinkowski", "LpBM", "AF1", "AF2")


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    margin: float
    margin_rel: float
    verdict: str          # holds | violated | inconclusive
    params: dict
    tol: float

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "margin_rel": self.margin_rel,
            "verdict": self.verdict,
            "params": self.params,
            "tol": self.tol,
        }

    def csv_row(self):
        params = ";".join(f"{k}={self.params[k]!r}" for k in sorted(self.params))
        return [self.name, repr(self.lhs), repr(self.rhs), repr(self.margin),
                repr(self.margin_rel), self.verdict, params]


def _margin_rel(margin, lhs, rhs):
    return margin / max(abs(lhs), abs(rhs), 1e-300)


def _exact_report(name, lhs, rhs, margin, params):
    tol = EXACT_TOL_FACTOR * max(abs(lhs), abs(rhs), 1e-12)
    verdict = "holds" if margin >= -tol else "violated"
    return InequalityReport(name=name, lhs=float(lhs), rhs=float(rhs),
                            margin=float(margin), margin_rel=_margin_rel(margin, lhs, rhs),
                            verdict=verdict, params=params, tol=tol)


def _wulff_report(name, lhs_fine, lhs_coarse, rhs, params):
    margin = lhs_fine - rhs
    tol_grid = max(lhs_coarse - lhs_fine, 0.0) + 1e-12 * abs(lhs_fine)
    if margin >= 0:
        verdict = "holds"
    elif margin >= -tol_grid:
        verdict = "inconclusive"
    else:
        verdict = "violated"
    return InequalityReport(name=name, lhs=float(lhs_fine), rhs=float(rhs),
                            margin=float(margin),
                            margin_rel=_margin_rel(margin, lhs_fine, rhs),
                            verdict=verdict, params=params, tol=tol_grid)


def check_lemma31(K, L, which="R1_bound", q: M.QuermassVector | None = None):
    """Integral of h_K^2/h_L against dS_K versus its two quermass bounds."""
    if which not in ("R1_bound", "R2_bound"):
        raise InvalidParameter("which must be R1_bound or R2_bound")
    q = q or M.quermass(K, L)
    lhs = M.lemma31_integral(K, L)
    if which == "R1_bound":
        name = "Lemma31a"
        rhs = 3.0 * q.w0 * q.w1 / q.w2
    else:
        name = "Lemma31b"
        rhs = (6.0 * q.w0 * q.w2 - 3.0 * q.w1 ** 2) / q.w3
    return _exact_report(name, lhs, rhs, rhs - lhs, {})


def check_log_minkowski(K, L, q: M.QuermassVector | None = None):
    """Cone-volume integral of log(h_L/h_K) versus (V(K)/3) log(V(L)/V(K))."""
    hk, hl = K.support, L.support

    def integrand(dirs):
        return np.log(np.asarray(hl(dirs)) / np.asarray(hk(dirs)))

    lhs = M.cone_volume_integral(K, integrand)
    vk = q.w0 if q is not None else M.volume(K)
    vl = q.w3 if q is not None else M.volume(L)
    rhs = vk * math.log(vl / vk) / 3.0
    return _exact_report("LogMinkowski", lhs, rhs, lhs - rhs, {})


def _coarse_grid(grid: DirectionGrid):
    return geodesic_grid(grid.resolution - 1) if grid.resolution >= 1 else None


def check_log_bm(K, L, lam, grid: DirectionGrid, q: M.QuermassVector | None = None):
    """Volume of the geometric-mean combination versus V(K)^(1-lam) V(L)^lam."""
    fine = log_combination(K, L, lam, grid).volume
    coarse_grid = _coarse_grid(grid)
    coarse = (log_combination(K, L, lam, coarse_grid).volume
              if coarse_grid is not None else fine)
    vk = q.w0 if q is not None else M.volume(K)
    vl = q.w3 if q is not None else M.volume(L)
    rhs = vk ** (1.0 - lam) * vl ** lam
    return _wulff_report("LogBM", fine, coarse, rhs,
                         {"lambda": float(lam), "grid": grid.resolution})


def check_lp(K, L, p, lam=0.5, grid: DirectionGrid | None = None,
             which="minkowski", q: M.QuermassVector | None = None):
    """The p-mean inequalities for p in (0, 1), in integral or volume form."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise InvalidExponent("p must lie in (0, 1)")
    vk = q.w0 if q is not None else M.volume(K)
    vl = q.w3 if q is not None else M.volume(L)
    if which == "minkowski":
        hk, hl = K.support, L.support

        def integrand(dirs):
            return (np.asarray(hl(dirs)) / np.asarray(hk(dirs))) ** p

        lhs = (M.cone_volume_integral(K, integrand) / vk) ** (1.0 / p)
        rhs = (vl / vk) ** (1.0 / 3.0)
        return _exact_report("LpMinkowski", lhs, rhs, lhs - rhs, {"p": p})
    if which != "bm":
        raise InvalidParameter("which must be minkowski or bm")
    if grid is None:
        raise InvalidParameter("the volume form needs a direction grid")
    fine = lp_combination(K, L, p, lam, grid).volume
    coarse_grid = _coarse_grid(grid)
    coarse = (lp_combination(K, L, p, lam, coarse_grid).volume
              if coarse_grid is not None else fine)
    # p-mean of the volumes; dilates are equality cases, and this bound
    # dominates the geometric mean, so the multiplicative form follows
    rhs = ((1.0 - lam) * vk ** (p / 3.0) + lam * vl ** (p / 3.0)) ** (3.0 / p)
    return _wulff_report("LpBM", fine, coarse, rhs,
                         {"p": p, "lambda": float(lam), "grid": grid.resolution})


def check_af(K, L, which=1, q: M.QuermassVector | None = None):
    """Log-concavity of the quermass sequence: w1^2 >= w0 w2 and w2^2 >= w1 w3."""
    q = q or M.quermass(K, L)
    if which == 1:
        name, lhs, rhs = "AF1", q.w1 ** 2, q.w0 * q.w2
    elif which == 2:
        name, lhs, rhs = "AF2", q.w2 ** 2, q.w1 * q.w3
    else:
        raise InvalidParameter("which must be 1 or 2")
    margin = lhs - rhs
    tol = EXACT_TOL_FACTOR * q.max_abs() ** 2
    verdict = "holds" if margin >= -tol else "violated"
    return InequalityReport(name=name, lhs=float(lhs), rhs=float(rhs),
                            margin=float(margin), margin_rel=_margin_rel(margin, lhs, rhs),
                            verdict=verdict, params={}, tol=tol)


def f_curve(K, L, t_values):
    """Samples of F(t), the slack of the log inequality along outer parallels of L.

    F(t) = integral of log((h_L + t h_K)/h_K) dV_K - (V(K)/3) log(V(L+tK)/V(K)),
    with V(L + tK) taken from the Steiner polynomial of the pair (L, K).
    F decreases to 0, and F(0) is exactly the LogMinkowski margin.
    """
    ts = [float(t) for t in t_values]
    if any(t < 0 for t in ts) or any(b < a for a, b in zip(ts, ts[1:])):
        raise InvalidParameter("t values must be nonnegative and ascending")
    q_lk = M.quermass(L, K)
    vk = q_lk.w3
    hk, hl = K.support, L.support
    out = []
    for t in ts:
        def integrand(dirs, t=t):
            a = np.asarray(hk(dirs))
            return np.log((np.asarray(hl(dirs)) + t * a) / a)

        lhs = M.cone_volume_integral(K, integrand)
        vol_sum = M.steiner_eval(q_lk, t)
        out.append((t, lhs - vk * math.log(vol_sum / vk) / 3.0))
    return out


def suite(K, L, lambdas=(0.25, 0.5, 0.75), ps=(0.3, 0.5, 0.8),
          grid: DirectionGrid | None = None, conditional=False,
          report: BN.BonnesenReport | None = None):
    """All checks for one pair, in a fixed order.

    With conditional=True only the checks whose hypotheses the pair satisfies
    run (class membership from the Bonnesen report); the theorems are
    conditional, so this mode is what randomized searches use.  Returns the
    Bonnesen report and the list of inequality reports.
    """
    if grid is None:
        grid = geodesic_grid(4)
    if report is None:
        report = BN.classify(K, L)
    q = report.quermass
    reports = []
    if not conditional or report.in_R1:
        reports.append(check_lemma31(K, L, "R1_bound", q=q))
    if not conditional or report.in_R2:
        reports.append(check_lemma31(K, L, "R2_bound", q=q))
    if not conditional or report.in_R1:
        reports.append(check_log_minkowski(K, L, q=q))
        for lam in lambdas:
            reports.append(check_log_bm(K, L, lam, grid, q=q))
        for p in ps:
            reports.append(check_lp(K, L, p, which="minkowski", q=q))
        for p in ps:
            for lam in lambdas:
                reports.append(check_lp(K, L, p, lam, grid, which="bm", q=q))
    reports.append(check_af(K, L, 1, q=q))
    reports.append(check_af(K, L, 2, q=q))
    return report, reports


def reports_to_json_lines(reports):
    return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in reports) + "\n"


def reports_to_csv(reports):
    lines = ["name,lhs,rhs,margin,margin_rel,verdict,params"]
    for r in reports:
        row = r.csv_row()
        quoted = [f'"{cell}"' if ("," in cell or ";" in cell) else cell for cell in row]
        lines.append(",".join(quoted))
    return "\n".join(lines) + "\n"
