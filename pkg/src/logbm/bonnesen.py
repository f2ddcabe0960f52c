"""Relative Bonnesen functions and the two membership classes they define.

For a pair (K, L) with the origin interior to both, the i-th Bonnesen
function is the concave quadratic  B_i(r) = 2 W_{i+1} r - W_i - W_{i+2} r^2.
Nonnegativity of B_0 (resp. B_1) on the ratio interval [r_o, R_o] puts K in
the first (resp. second) class relative to L.  Concavity makes the endpoint
test exact, so no interval optimization happens here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bodies as B
from . import measures as M
from .errors import InvalidParameter

TOL_FACTOR = 1e-9


@dataclass(frozen=True)
class BonnesenReport:
    r_o: float
    R_o: float
    b0_at_r: float
    b0_at_R: float
    b1_at_r: float
    b1_at_R: float
    in_R1: bool
    in_R2: bool
    marginal: bool
    quermass: M.QuermassVector

    def to_dict(self):
        return {
            "r_o": self.r_o,
            "R_o": self.R_o,
            "b0_at_r": self.b0_at_r,
            "b0_at_R": self.b0_at_R,
            "b1_at_r": self.b1_at_r,
            "b1_at_R": self.b1_at_R,
            "in_R1": self.in_R1,
            "in_R2": self.in_R2,
            "marginal": self.marginal,
            "quermass": self.quermass.to_dict(),
        }


def bonnesen_eval(q: M.QuermassVector, i: int, r):
    """B_i(r) = 2 W_{i+1} r - W_i - W_{i+2} r^2 for i in {0, 1}."""
    if i not in (0, 1):
        raise InvalidParameter("Bonnesen index must be 0 or 1 in three dimensions")
    w = q.as_tuple()
    r = np.asarray(r, dtype=float)
    out = 2.0 * w[i + 1] * r - w[i] - w[i + 2] * r * r
    return float(out) if out.ndim == 0 else out


def report_from_quermass(q: M.QuermassVector, r_o: float, R_o: float) -> BonnesenReport:
    tol = TOL_FACTOR * q.max_abs()
    vals = {
        "b0_at_r": bonnesen_eval(q, 0, r_o),
        "b0_at_R": bonnesen_eval(q, 0, R_o),
        "b1_at_r": bonnesen_eval(q, 1, r_o),
        "b1_at_R": bonnesen_eval(q, 1, R_o),
    }
    b0_min = min(vals["b0_at_r"], vals["b0_at_R"])
    b1_min = min(vals["b1_at_r"], vals["b1_at_R"])
    in_r1 = b0_min >= -tol
    in_r2 = b1_min >= -tol
    # values rescued by the tolerance band are flagged so callers can apply
    # a strict-positivity convention instead
    marginal = (in_r1 and -tol <= b0_min < 0) or (in_r2 and -tol <= b1_min < 0)
    return BonnesenReport(r_o=float(r_o), R_o=float(R_o), in_R1=bool(in_r1),
                          in_R2=bool(in_r2), marginal=bool(marginal), quermass=q, **vals)


def classify(K, L, sampling=None) -> BonnesenReport:
    """Quermass vector, ratio extremes, and endpoint verdicts for the pair (K, L)."""
    q = M.quermass(K, L)
    r_o, R_o = B.rho_extremes(K, L, sampling=sampling)
    return report_from_quermass(q, r_o, R_o)


def parallel_identity_residual(K, L, r, t):
    """Residuals of the outer-parallel-body identities at n = 3.

    res0 = B_0 of (K+tL, L) at r+t minus [B_0(r) + t B_1(r)] of (K, L);
    res1 = B_1 of (K+tL, L) at r+t minus B_1(r) of (K, L).
    The left sides use an independently materialized Minkowski-sum polytope
    whenever both bodies are polytopal; otherwise they come from the binomial
    expansion of the quermass vector, which makes the test vacuous but keeps
    the function total.
    """
    t = float(t)
    if t < 0:
        raise InvalidParameter("parallel-body parameter t must be nonnegative")
    q = M.quermass(K, L)
    summed = M.minkowski_sum(K, L, t) if t > 0 else None
    q_sum = M.quermass(summed, L) if summed is not None else M.quermass_of_sum(q, t)
    res0 = bonnesen_eval(q_sum, 0, r + t) - (bonnesen_eval(q, 0, r) + t * bonnesen_eval(q, 1, r))
    res1 = bonnesen_eval(q_sum, 1, r + t) - bonnesen_eval(q, 1, r)
    return res0, res1
