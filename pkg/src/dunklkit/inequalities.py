"""Functional inequalities as checkable specs: admissibility + LHS/RHS.

Every theorem is encoded as a parameter record with

* an admissibility predicate that evaluates each hypothesis and reports a
  residual per condition (0 residual on a strict inequality = rejection);
* constant-free evaluators: lhs is the left display norm, rhs the product of
  right-hand norms with the theorem's powers.  Empirical constants are
  reported as sup (or inf) ratios; closed-form sharp constants exist for the
  fractional Hardy and classical Rellich inequalities and act as ceilings.

Throughout, Λ = N + 2γ and ‖|x|^a f‖_p denotes the weighted L^p(μ_k) norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np
from scipy import special as sps

from .functions import TestFunction
from .measure import WeightedQuadrature
from .workbench import Workbench

__all__ = [
    "InequalitySpec",
    "Condition",
    "AdmissibilityReport",
    "VerificationRecord",
    "CorpusVerification",
    "AdmissibilityError",
    "FunctionClassError",
    "DegenerateFunctionError",
    "SeriesCapError",
    "THEOREM_TAGS",
    "admissible",
    "evaluate_sides",
    "verify_corpus",
    "trudinger_lhs",
    "largest_admissible_a",
    "fractional_hardy_constant",
    "make_spec",
    "weighted_hardy_spec",
    "weighted_rellich_spec",
    "higher_rellich_spec",
    "uncertainty_spec",
    "sobolev_spec",
    "gn1_spec",
    "wgn1_spec",
    "wgn2_spec",
    "ckn1_spec",
    "ckn2_spec",
    "ckn_fractional_spec",
]


class AdmissibilityError(ValueError):
    pass


class FunctionClassError(ValueError):
    pass


class DegenerateFunctionError(ValueError):
    pass


class SeriesCapError(RuntimeError):
    pass


EQ_TOL = 1e-9          # equality-condition tolerance
NONSTRICT_SLACK = -1e-12


@dataclass(frozen=True)
class Condition:
    cid: str
    statement: str
    ok: bool
    residual: float


@dataclass(frozen=True)
class AdmissibilityReport:
    conditions: tuple

    @property
    def admissible(self) -> bool:
        return all(c.ok for c in self.conditions)

    @property
    def failed(self) -> tuple:
        return tuple(c for c in self.conditions if not c.ok)


@dataclass(frozen=True)
class VerificationRecord:
    function_id: str
    lhs: float
    rhs: float
    ratio: float
    notes: str = ""


@dataclass(frozen=True)
class CorpusVerification:
    records: tuple
    direction: str                    # "upper": lhs ≤ C rhs; "lower": lhs ≥ c rhs
    known_bound: float | None
    violations: tuple
    empirical_constant: float         # sup ratio (upper) / inf ratio (lower)


def _strict(cid, statement, slack) -> Condition:
    return Condition(cid, statement, bool(slack > 0.0), float(slack))


def _nonstrict(cid, statement, slack) -> Condition:
    return Condition(cid, statement, bool(slack >= NONSTRICT_SLACK), float(slack))


def _eq(cid, statement, diff) -> Condition:
    return Condition(cid, statement, bool(abs(diff) <= EQ_TOL), float(abs(diff)))


def fractional_hardy_constant(N: int, gamma: float, s: float) -> float:
    """Sharp constant C(s) = 2^s Γ((Λ/2+s)/2) / Γ((Λ/2-s)/2), 0 ≤ s < Λ/2."""
    lam = N + 2.0 * gamma
    if not 0.0 <= s < lam / 2.0:
        raise ValueError(f"need 0 ≤ s < Λ/2 = {lam / 2.0:g}")
    return float(2.0 ** s * sps.gamma((lam / 2.0 + s) / 2.0) / sps.gamma((lam / 2.0 - s) / 2.0))


# ---------------------------------------------------------------------------
# theorem registry


@dataclass(frozen=True)
class TheoremDef:
    tag: str
    params: tuple
    direction: str
    conditions: Callable[[dict], List[Condition]]
    evaluate: Callable[[dict, TestFunction, Workbench], tuple]
    known_bound: Callable[[dict], float | None] = lambda P: None
    requires_vanishing: bool = False


def _lam(P: dict) -> float:
    return P["N"] + 2.0 * P["gamma"]


def _base_conditions(P: dict) -> List[Condition]:
    return [
        _strict("dimension", "N ≥ 1", P["N"] - 0.0),
        _nonstrict("gamma_nonneg", "γ ≥ 0", P["gamma"]),
    ]


def _delta_interval(P: dict, hi: float) -> Condition:
    lo = max(0.0, (P["r"] - P["q"]) / P["r"])
    up = min(1.0, hi)
    slack = min(P["delta"] - lo, up - P["delta"])
    return _nonstrict("delta_range", "δ ∈ [0,1] ∩ [(r-q)/r, ·]", slack)


def _c_sobolev(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("p_low", "p ≥ 1", P["p"] - 1.0),
        _strict("p_high", "p < Λ", lam - P["p"]),
        _eq("q_formula", "q = pΛ/(Λ-p)", P["q"] - P["p"] * lam / (lam - P["p"])),
    ]


def _e_sobolev(P, f, wb):
    return wb.norm(f, P["q"]), wb.grad_norm(f, P["p"])


def _c_hardy_lp(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _strict("p_high", "p < Λ/(1+2γ)", lam / (1.0 + 2.0 * P["gamma"]) - P["p"]),
    ]


def _e_hardy_lp(P, f, wb):
    return wb.norm(f, P["p"], -1.0), wb.grad_norm(f, P["p"])


def _c_weighted_hardy(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("weight_low", "a ≤ b", P["b"] - P["a"]),
        _nonstrict("weight_high", "b ≤ a+1", P["a"] + 1.0 - P["b"]),
        _eq("p_formula", "p = 2Λ/(Λ-2+2(b-a))",
            P["p"] - 2.0 * lam / (lam - 2.0 + 2.0 * (P["b"] - P["a"]))),
        _strict("a_bound", "a < (Λ-2)/2", (lam - 2.0) / 2.0 - P["a"]),
    ]


def _e_weighted_hardy(P, f, wb):
    return wb.norm(f, P["p"], -P["b"]), wb.grad_norm(f, 2.0, -P["a"])


def _c_classical_rellich(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("lambda_ne_2", "Λ ≠ 2", abs(lam - 2.0)),
    ]


def _e_classical_rellich(P, f, wb):
    return wb.norm(f, 2.0, -2.0), wb.lap_norm(f, 1, 2.0)


def _b_classical_rellich(P):
    lam = _lam(P)
    if abs(lam - 4.0) < 1e-12:
        return None          # vacuous: sharp constant degenerates to 0
    return 4.0 / (lam * abs(lam - 4.0))


def _c_weighted_rellich(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("weight_low", "a+1 ≤ b", P["b"] - P["a"] - 1.0),
        _nonstrict("weight_high", "b ≤ a+2", P["a"] + 2.0 - P["b"]),
        _eq("p_formula", "p = 2Λ/(Λ-2+2(b-(a+1)))",
            P["p"] - 2.0 * lam / (lam - 2.0 + 2.0 * (P["b"] - P["a"] - 1.0))),
        _strict("a_bound", "a+1 < (Λ-2)/2", (lam - 2.0) / 2.0 - P["a"] - 1.0),
    ]


def _e_weighted_rellich(P, f, wb):
    return wb.norm(f, P["p"], -P["b"]), wb.lap_norm(f, 1, 2.0, -P["a"])


def _c_higher_rellich(P):
    lam = _lam(P)
    j = P["j"]
    A = P["a"] + 2.0 * (j - 1.0) + 1.0
    return _base_conditions(P) + [
        _eq("j_integer", "j ∈ ℕ", j - round(j)),
        _nonstrict("j_low", "j ≥ 1", j - 1.0),
        _nonstrict("weight_low", "a+2(j-1)+1 ≤ b", P["b"] - A),
        _nonstrict("weight_high", "b ≤ a+2(j-1)+2", A + 1.0 - P["b"]),
        _eq("p_formula", "p = 2Λ/(Λ-2+2(b-(a+2(j-1)+1)))",
            P["p"] - 2.0 * lam / (lam - 2.0 + 2.0 * (P["b"] - A))),
        _strict("a_bound", "a+2(j-1)+1 < (Λ-2)/2", (lam - 2.0) / 2.0 - A),
    ]


def _e_higher_rellich(P, f, wb):
    return wb.norm(f, P["p"], -P["b"]), wb.lap_norm(f, int(round(P["j"])), 2.0, -P["a"])


def _c_uncertainty(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _strict("p_high", "p < Λ/(1+2γ)", lam / (1.0 + 2.0 * P["gamma"]) - P["p"]),
        _eq("conjugate", "1/p + 1/q = 1", 1.0 / P["p"] + 1.0 / P["q"] - 1.0),
    ]


def _e_uncertainty(P, f, wb):
    lhs = wb.grad_norm(f, P["p"]) * wb.norm(f, P["q"], 1.0)
    return lhs, wb.norm(f, 2.0) ** 2


def _c_gn1(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("p_low", "p ≥ 1", P["p"] - 1.0),
        _nonstrict("q_low", "q ≥ 1", P["q"] - 1.0),
        _nonstrict("r_low", "r ≥ 1", P["r"] - 1.0),
        _strict("r_high", "r < Λ", lam - P["r"]),
        _nonstrict("theta_range", "θ ∈ [0,1]", min(P["theta"], 1.0 - P["theta"])),
        _eq("balance", "θ(1/Λ + 1/p - 1/r) = 1/p - 1/q",
            P["theta"] * (1.0 / lam + 1.0 / P["p"] - 1.0 / P["r"])
            - (1.0 / P["p"] - 1.0 / P["q"])),
    ]


def _e_gn1(P, f, wb):
    th = P["theta"]
    return wb.norm(f, P["q"]), wb.grad_norm(f, P["r"]) ** th * wb.norm(f, P["p"]) ** (1.0 - th)


def _c_gn2(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _nonstrict("s_low", "s ≥ 0", P["s"]),
        _nonstrict("s_high", "s ≤ Λ/p", lam / P["p"] - P["s"]),
        _nonstrict("theta_range", "θ ∈ [0,1]", min(P["theta"], 1.0 - P["theta"])),
    ]


def _e_gn2(P, f, wb):
    th, s, p = P["theta"], P["s"], P["p"]
    lhs = wb.frac_norm(f, s * (1.0 - th), p)
    rhs = wb.frac_norm(f, s, p) ** (1.0 - th) * wb.norm(f, p) ** th
    return lhs, rhs


def _c_wgn1(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _strict("p_high", "p < Λ/(2+2γ)", lam / (2.0 + 2.0 * P["gamma"]) - P["p"]),
        _nonstrict("s_low", "s ≥ 2", P["s"] - 2.0),
        _nonstrict("s_high", "s ≤ Λ/p", lam / P["p"] - P["s"]),
        _eq("q_formula", "q = pΛ/(Λ-p)", P["q"] - P["p"] * lam / (lam - P["p"])),
    ]


def _e_wgn1(P, f, wb):
    s = P["s"]
    lhs = wb.norm(f, P["q"], -1.0)
    rhs = wb.frac_norm(f, s, P["p"]) ** (2.0 / s) * wb.norm(f, P["p"]) ** (1.0 - 2.0 / s)
    return lhs, rhs


def _c_wgn2(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        # the chain through the weighted Rellich inequality needs 1 < (Λ-2)/2
        _strict("lambda_gt_4", "Λ > 4", lam - 4.0),
        _nonstrict("a_low", "a ≥ 1", P["a"] - 1.0),
        _nonstrict("a_high", "a ≤ 2", 2.0 - P["a"]),
        _nonstrict("s_low", "s ≥ 2", P["s"] - 2.0),
        _nonstrict("s_high", "s ≤ Λ/2", lam / 2.0 - P["s"]),
        _eq("p_formula", "p = 2Λ/(Λ-2+2(a-1))",
            P["p"] - 2.0 * lam / (lam - 2.0 + 2.0 * (P["a"] - 1.0))),
    ]


def _e_wgn2(P, f, wb):
    s = P["s"]
    lhs = wb.norm(f, P["p"], -P["a"])
    rhs = wb.frac_norm(f, s, 2.0) ** (2.0 / s) * wb.norm(f, 2.0) ** (1.0 - 2.0 / s)
    return lhs, rhs


def _c_wgn3(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("a_low", "a ≥ 0", P["a"]),
        _nonstrict("a_le_s", "a ≤ s", P["s"] - P["a"]),
        _nonstrict("s_high", "s ≤ Λ/2", lam / 2.0 - P["s"]),
    ]


def _e_wgn3(P, f, wb):
    a, s = P["a"], P["s"]
    lhs = wb.norm(f, 2.0, -a)
    if s == 0.0:
        return lhs, wb.norm(f, 2.0)
    rhs = wb.frac_norm(f, s, 2.0) ** (a / s) * wb.norm(f, 2.0) ** (1.0 - a / s)
    return lhs, rhs


def _c_frac_hardy(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _nonstrict("s_low", "s ≥ 0", P["s"]),
        _strict("s_high", "s < Λ/2", lam / 2.0 - P["s"]),
    ]


def _e_frac_hardy(P, f, wb):
    return wb.norm(f, 2.0, -P["s"]), wb.frac_norm(f, P["s"], 2.0)


def _b_frac_hardy(P):
    return 1.0 / fractional_hardy_constant(int(P["N"]), P["gamma"], P["s"])


def _c_trudinger(P):
    return _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _strict("p_finite", "p < ∞", math.inf if np.isfinite(P["p"]) else 0.0),
        _strict("a_pos", "a > 0", P["a"]),
    ]


def _e_trudinger(P, f, wb):
    lam = wb.lam
    p, a = P["p"], P["a"]
    c = wb.frac_norm(f, lam / p, p)
    if c == 0.0:
        raise DegenerateFunctionError("zero critical-derivative norm")
    vals = np.asarray(f.value(wb.quad.nodes), dtype=float) / c
    lhs = trudinger_lhs(vals, a, p, wb.quad)
    rhs = (wb.norm(f, p) / c) ** p
    return lhs, rhs


def _c_ckn1(P):
    lam = _lam(P)
    conds = _base_conditions(P) + [
        _strict("p_low", "p > 1", P["p"] - 1.0),
        _strict("p_high", "p < Λ/(1+2γ)", lam / (1.0 + 2.0 * P["gamma"]) - P["p"]),
        _strict("q_low", "q > 1", P["q"] - 1.0),
        _strict("r_pos", "r > 0", P["r"]),
        _nonstrict("pq_ge_r", "p + q ≥ r", P["p"] + P["q"] - P["r"]),
        _delta_interval(P, P["p"] / P["r"]),
        _eq("balance", "δr/p + (1-δ)r/q = 1",
            P["delta"] * P["r"] / P["p"] + (1.0 - P["delta"]) * P["r"] / P["q"] - 1.0),
        _eq("c_formula", "c = -δ + b(1-δ)",
            P["c"] - (-P["delta"] + P["b"] * (1.0 - P["delta"]))),
    ]
    return conds


def _e_ckn1(P, f, wb):
    d = P["delta"]
    lhs = wb.norm(f, P["r"], P["c"])
    rhs = wb.grad_norm(f, P["p"]) ** d * wb.norm(f, P["q"], P["b"]) ** (1.0 - d)
    return lhs, rhs


def _c_ckn2(P):
    lam = _lam(P)
    L = 2.0 * lam / (lam - 2.0) if lam > 2.0 else math.inf
    return _base_conditions(P) + [
        _strict("lambda_gt_2", "Λ > 2", lam - 2.0),
        _strict("q_low", "q > 1", P["q"] - 1.0),
        _strict("r_pos", "r > 0", P["r"]),
        _nonstrict("sob_q_ge_r", "2Λ/(Λ-2) + q ≥ r", L + P["q"] - P["r"]),
        _delta_interval(P, L / P["r"]),
        _strict("a_bound", "Λ-2+2a > 0", lam - 2.0 + 2.0 * P["a"]),
        _eq("balance", "δr(Λ-2)/(2Λ) + (1-δ)r/q = 1",
            P["delta"] * P["r"] * (lam - 2.0) / (2.0 * lam)
            + (1.0 - P["delta"]) * P["r"] / P["q"] - 1.0),
        _eq("c_formula", "c = δa + b(1-δ)",
            P["c"] - (P["delta"] * P["a"] + P["b"] * (1.0 - P["delta"]))),
    ]


def _e_ckn2(P, f, wb):
    d = P["delta"]
    lhs = wb.norm(f, P["r"], P["c"])
    rhs = wb.grad_norm(f, 2.0, P["a"]) ** d * wb.norm(f, P["q"], P["b"]) ** (1.0 - d)
    return lhs, rhs


def _c_ckn3(P):
    lam = _lam(P)
    return _base_conditions(P) + [
        _strict("q_low", "q > 1", P["q"] - 1.0),
        _strict("r_pos", "r > 0", P["r"]),
        _nonstrict("twoq_ge_r", "2 + q ≥ r", 2.0 + P["q"] - P["r"]),
        _delta_interval(P, 2.0 / P["r"]),
        _eq("balance", "δr/2 + (1-δ)r/q = 1",
            P["delta"] * P["r"] / 2.0 + (1.0 - P["delta"]) * P["r"] / P["q"] - 1.0),
        _eq("c_formula", "c = δ(a-1) + b(1-δ)",
            P["c"] - (P["delta"] * (P["a"] - 1.0) + P["b"] * (1.0 - P["delta"]))),
        _strict("a_low", "a > 1 - Λ/2", P["a"] - (1.0 - lam / 2.0)),
        _nonstrict("a_high", "a ≤ 1", 1.0 - P["a"]),
    ]


def _e_ckn3(P, f, wb):
    d = P["delta"]
    lhs = wb.norm(f, P["r"], P["c"])
    rhs = wb.frac_norm(f, 1.0 - P["a"], 2.0) ** d * wb.norm(f, P["q"], P["b"]) ** (1.0 - d)
    return lhs, rhs


def _b_ckn3(P):
    return 1.0 / fractional_hardy_constant(int(P["N"]), P["gamma"], 1.0 - P["a"]) ** P["delta"]


def _c_classical_ckn(P):
    N = P["N"]
    c = P["delta"] * P["d"] + (1.0 - P["delta"]) * P["b"]
    conds = _base_conditions(P) + [
        _eq("classical_setting", "γ = 0 (classical Lebesgue case)", P["gamma"]),
        _nonstrict("p_low", "p ≥ 1", P["p"] - 1.0),
        _nonstrict("q_low", "q ≥ 1", P["q"] - 1.0),
        _strict("r_pos", "r > 0", P["r"]),
        _nonstrict("delta_range", "0 ≤ δ ≤ 1", min(P["delta"], 1.0 - P["delta"])),
        _strict("clas_CKN0", "1/p+a/N, 1/q+b/N, 1/r+c/N > 0",
                min(1.0 / P["p"] + P["a"] / N,
                    1.0 / P["q"] + P["b"] / N,
                    1.0 / P["r"] + c / N)),
        _eq("clas_CKN2", "1/r+c/N = δ(1/p+(a-1)/N) + (1-δ)(1/q+b/N)",
            (1.0 / P["r"] + c / N)
            - (P["delta"] * (1.0 / P["p"] + (P["a"] - 1.0) / N)
               + (1.0 - P["delta"]) * (1.0 / P["q"] + P["b"] / N))),
    ]
    if P["delta"] > 0:
        conds.append(_nonstrict("clas_CKN3", "a - d ≥ 0 if δ > 0", P["a"] - P["d"]))
        critical = abs((1.0 / P["r"] + c / N) - (1.0 / P["p"] + (P["a"] - 1.0) / N)) <= EQ_TOL
        if critical:
            conds.append(_nonstrict("clas_CKN4", "a - d ≤ 1 in the critical case",
                                    1.0 - (P["a"] - P["d"])))
    return conds


def _e_classical_ckn(P, f, wb):
    d = P["delta"]
    c = P["delta"] * P["d"] + (1.0 - P["delta"]) * P["b"]
    lhs = wb.norm(f, P["r"], c)
    rhs = wb.grad_norm(f, P["p"], P["a"]) ** d * wb.norm(f, P["q"], P["b"]) ** (1.0 - d)
    return lhs, rhs


THEOREMS: Dict[str, TheoremDef] = {t.tag: t for t in [
    TheoremDef("Sobolev", ("N", "gamma", "p", "q"), "upper", _c_sobolev, _e_sobolev),
    TheoremDef("Hardy_Lp", ("N", "gamma", "p"), "upper", _c_hardy_lp, _e_hardy_lp),
    TheoremDef("WeightedHardy", ("N", "gamma", "a", "b", "p"), "upper",
               _c_weighted_hardy, _e_weighted_hardy),
    TheoremDef("ClassicalRellich", ("N", "gamma"), "upper", _c_classical_rellich,
               _e_classical_rellich, _b_classical_rellich, requires_vanishing=True),
    TheoremDef("WeightedRellich", ("N", "gamma", "a", "b", "p"), "upper",
               _c_weighted_rellich, _e_weighted_rellich),
    TheoremDef("HigherRellich", ("N", "gamma", "a", "b", "p", "j"), "upper",
               _c_higher_rellich, _e_higher_rellich),
    TheoremDef("Uncertainty", ("N", "gamma", "p", "q"), "lower", _c_uncertainty,
               _e_uncertainty),
    TheoremDef("GN_I", ("N", "gamma", "p", "q", "r", "theta"), "upper", _c_gn1, _e_gn1),
    TheoremDef("GN_II", ("N", "gamma", "p", "s", "theta"), "upper", _c_gn2, _e_gn2),
    TheoremDef("WeightedGN_I", ("N", "gamma", "p", "q", "s"), "upper", _c_wgn1, _e_wgn1),
    TheoremDef("WeightedGN_II", ("N", "gamma", "a", "p", "s"), "upper", _c_wgn2, _e_wgn2,
               requires_vanishing=True),
    TheoremDef("WeightedGN_III", ("N", "gamma", "a", "s"), "upper", _c_wgn3, _e_wgn3),
    TheoremDef("FractionalHardy", ("N", "gamma", "s"), "upper", _c_frac_hardy,
               _e_frac_hardy, _b_frac_hardy),
    TheoremDef("Trudinger", ("N", "gamma", "p", "a"), "upper", _c_trudinger, _e_trudinger),
    TheoremDef("CKN_I", ("N", "gamma", "p", "q", "r", "b", "c", "delta"), "upper",
               _c_ckn1, _e_ckn1),
    TheoremDef("CKN_II", ("N", "gamma", "q", "r", "a", "b", "c", "delta"), "upper",
               _c_ckn2, _e_ckn2),
    TheoremDef("CKN_fractional", ("N", "gamma", "q", "r", "a", "b", "c", "delta"), "upper",
               _c_ckn3, _e_ckn3, _b_ckn3),
    TheoremDef("ClassicalCKN_1_1", ("N", "gamma", "p", "q", "r", "a", "b", "d", "delta"),
               "upper", _c_classical_ckn, _e_classical_ckn),
]}

THEOREM_TAGS = tuple(THEOREMS)


@dataclass(frozen=True)
class InequalitySpec:
    """One theorem instance: tag + parameter map (N, γ always included)."""

    theorem: str
    params: dict

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise AdmissibilityError(f"unknown theorem tag {self.theorem!r}")
        want = set(THEOREMS[self.theorem].params)
        got = set(self.params)
        if got != want:
            missing, extra = want - got, got - want
            msg = []
            if missing:
                msg.append(f"missing {sorted(missing)}")
            if extra:
                msg.append(f"extraneous {sorted(extra)}")
            raise AdmissibilityError(f"{self.theorem}: " + ", ".join(msg))
        object.__setattr__(self, "params", {k: float(v) for k, v in self.params.items()})

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "params": dict(self.params)}


def make_spec(theorem: str, **params) -> InequalitySpec:
    return InequalitySpec(theorem, params)


# convenience constructors deriving the balanced parameters


def sobolev_spec(N, gamma, p):
    lam = N + 2.0 * gamma
    return make_spec("Sobolev", N=N, gamma=gamma, p=p, q=p * lam / (lam - p))


def weighted_hardy_spec(N, gamma, a, b):
    lam = N + 2.0 * gamma
    return make_spec("WeightedHardy", N=N, gamma=gamma, a=a, b=b,
                     p=2.0 * lam / (lam - 2.0 + 2.0 * (b - a)))


def weighted_rellich_spec(N, gamma, a, b):
    lam = N + 2.0 * gamma
    return make_spec("WeightedRellich", N=N, gamma=gamma, a=a, b=b,
                     p=2.0 * lam / (lam - 2.0 + 2.0 * (b - a - 1.0)))


def higher_rellich_spec(N, gamma, a, b, j):
    lam = N + 2.0 * gamma
    A = a + 2.0 * (j - 1.0) + 1.0
    return make_spec("HigherRellich", N=N, gamma=gamma, a=a, b=b, j=j,
                     p=2.0 * lam / (lam - 2.0 + 2.0 * (b - A)))


def uncertainty_spec(N, gamma, p):
    return make_spec("Uncertainty", N=N, gamma=gamma, p=p, q=p / (p - 1.0))


def gn1_spec(N, gamma, p, q, r):
    lam = N + 2.0 * gamma
    theta = (1.0 / p - 1.0 / q) / (1.0 / lam + 1.0 / p - 1.0 / r)
    return make_spec("GN_I", N=N, gamma=gamma, p=p, q=q, r=r, theta=theta)


def wgn1_spec(N, gamma, p, s):
    lam = N + 2.0 * gamma
    return make_spec("WeightedGN_I", N=N, gamma=gamma, p=p, s=s, q=p * lam / (lam - p))


def wgn2_spec(N, gamma, a, s):
    lam = N + 2.0 * gamma
    return make_spec("WeightedGN_II", N=N, gamma=gamma, a=a, s=s,
                     p=2.0 * lam / (lam - 2.0 + 2.0 * (a - 1.0)))


def ckn1_spec(N, gamma, p, q, b, delta):
    r = 1.0 / (delta / p + (1.0 - delta) / q)
    return make_spec("CKN_I", N=N, gamma=gamma, p=p, q=q, r=r, b=b, delta=delta,
                     c=-delta + b * (1.0 - delta))


def ckn2_spec(N, gamma, q, a, b, delta):
    lam = N + 2.0 * gamma
    r = 1.0 / (delta * (lam - 2.0) / (2.0 * lam) + (1.0 - delta) / q)
    return make_spec("CKN_II", N=N, gamma=gamma, q=q, r=r, a=a, b=b, delta=delta,
                     c=delta * a + b * (1.0 - delta))


def ckn_fractional_spec(N, gamma, q, a, b, delta):
    r = 1.0 / (delta / 2.0 + (1.0 - delta) / q)
    return make_spec("CKN_fractional", N=N, gamma=gamma, q=q, r=r, a=a, b=b, delta=delta,
                     c=delta * (a - 1.0) + b * (1.0 - delta))


# ---------------------------------------------------------------------------
# operations


def admissible(spec: InequalitySpec) -> AdmissibilityReport:
    """Evaluate every hypothesis of the theorem at the spec's parameters."""
    thm = THEOREMS[spec.theorem]
    return AdmissibilityReport(tuple(thm.conditions(spec.params)))


def evaluate_sides(spec: InequalitySpec, f: TestFunction, wb: Workbench,
                   enforce_hypotheses: bool = True) -> VerificationRecord:
    """Constant-free lhs/rhs evaluation for one function.

    Raises AdmissibilityError on an inadmissible spec, FunctionClassError on
    a class mismatch, DegenerateFunctionError when rhs = 0.  Passing
    enforce_hypotheses=False evaluates the two sides as plain quantities
    (evaluator arithmetic only; no inequality is claimed).
    """
    thm = THEOREMS[spec.theorem]
    if enforce_hypotheses:
        rep = admissible(spec)
        if not rep.admissible:
            failed = ", ".join(c.cid for c in rep.failed)
            raise AdmissibilityError(f"{spec.theorem}: inadmissible parameters ({failed})")
    P = spec.params
    if abs(P["N"] + 2.0 * P["gamma"] - wb.lam) > 1e-9:
        raise ValueError("workbench (N, γ) does not match the spec parameters")
    if enforce_hypotheses and thm.requires_vanishing and not (
            f.vanishes_at_origin or f.in_origin_closure):
        raise FunctionClassError(
            f"{spec.theorem} requires functions vanishing at the origin; {f.fid} does not")
    lhs, rhs = thm.evaluate(P, f, wb)
    if rhs == 0.0 or not np.isfinite(rhs):
        raise DegenerateFunctionError(f"{f.fid}: degenerate rhs = {rhs}")
    return VerificationRecord(f.fid, float(lhs), float(rhs), float(lhs / rhs))


def verify_corpus(spec: InequalitySpec, corpus: Sequence[TestFunction], wb: Workbench,
                  violation_rtol: float = 1e-4) -> CorpusVerification:
    """Evaluate a spec across a corpus; flag known-bound violations.

    With a closed-form sharp constant the bound acts as a ceiling (upper
    direction): a record violates when ratio > bound (1 + violation_rtol).
    Without one, the sup (or inf) ratio is reported as the empirical
    constant estimate.
    """
    if not corpus:
        raise ValueError("empty corpus")
    thm = THEOREMS[spec.theorem]
    records = tuple(evaluate_sides(spec, f, wb) for f in corpus)
    bound = thm.known_bound(spec.params)
    violations = ()
    if bound is not None and thm.direction == "upper":
        violations = tuple(r for r in records if r.ratio > bound * (1.0 + violation_rtol))
    ratios = [r.ratio for r in records]
    empirical = max(ratios) if thm.direction == "upper" else min(ratios)
    return CorpusVerification(records, thm.direction, bound, violations, float(empirical))


def trudinger_lhs(f, a: float, p: float, quad: WeightedQuadrature,
                  series_cap: int = 200) -> float:
    """∫ (exp(a|f|^{p'}) - Σ_{0≤j<p-1} (a|f|^{p'})^j / j!) dμ_k.

    The caller normalizes f so the critical-derivative norm is ≤ 1.  The
    subtracted partial sum removes the integrable low powers; the remaining
    series Σ_{j≥⌈p-1⌉} z^j/j! is accumulated to machine accuracy, switching
    to exp(z) minus the partial sum once z is large enough for that to be
    cancellation-free.  Exceeding series_cap with a non-negligible tail
    raises SeriesCapError.
    """
    if a <= 0 or p <= 1:
        raise ValueError("need a > 0 and p > 1")
    vals = np.abs(np.asarray(f(quad.nodes) if callable(f) else f, dtype=float))
    pp = p / (p - 1.0)
    z = a * vals ** pp
    j0 = int(math.ceil(p - 1.0 - 1e-12))
    out = np.zeros_like(z)

    big = z > 40.0
    if np.any(big):
        zb = z[big]
        if np.any(zb > 700.0):
            raise SeriesCapError("exponential overflow: a|f|^{p'} exceeds 700")
        partial = np.zeros_like(zb)        # Σ_{j<j0} z^j/j!
        term = np.ones_like(zb)
        for j in range(j0):
            partial += term
            term = term * zb / (j + 1.0)
        out[big] = np.exp(zb) - partial

    small = ~big
    if np.any(small):
        zs = z[small]
        with np.errstate(divide="ignore"):
            logterm = j0 * np.log(np.maximum(zs, 1e-300)) - sps.gammaln(j0 + 1.0)
        term = np.where(zs > 0.0, np.exp(logterm), 0.0)
        total = term.copy()
        j = j0
        while True:
            j += 1
            if j - j0 > series_cap:
                if np.max(term) > 1e-15 * (np.max(total) + 1e-300):
                    raise SeriesCapError("Trudinger series cap reached with a "
                                         "non-negligible tail")
                break
            term = term * zs / j
            total += term
            if np.max(term) <= 1e-17 * (np.max(total) + 1e-300):
                break
        out[small] = total

    return float(np.sum(quad.weights * out))


def largest_admissible_a(corpus: Sequence[TestFunction], p: float, wb: Workbench,
                         ratio_bound: float, a_hi: float = 8.0,
                         iters: int = 40) -> float:
    """Bisection for the largest a with max_f lhs(a)/‖f‖_p^p ≤ ratio_bound."""
    lam = wb.lam
    normalized = []
    for f in corpus:
        c = wb.frac_norm(f, lam / p, p)
        vals = np.asarray(f.value(wb.quad.nodes), dtype=float) / c
        normalized.append((vals, (wb.norm(f, p) / c) ** p))

    def admissible_at(a: float) -> bool:
        try:
            worst = max(trudinger_lhs(v, a, p, wb.quad) / base for v, base in normalized)
        except SeriesCapError:
            return False
        return worst <= ratio_bound

    lo, hi = 0.0, a_hi
    if admissible_at(a_hi):
        return a_hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if admissible_at(mid):
            lo = mid
        else:
            hi = mid
    return lo
