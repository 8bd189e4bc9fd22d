"""Boundedness classification and exact operator norms on ell-p.

Two regimes with different formulas: measures without endpoint atoms are
bounded iff the sharp-norm integral converges (and that integral is the
norm); an atom at an endpoint forces unboundedness except in two special
pairings (atom at 1 with p=1, atom at 0 with p=infinity), each with its
own closed-form norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernel import decompose
from .measure import Measure, beta_kernel_integral

__all__ = [
    "REASON_DIVERGENT_INTEGRAL",
    "REASON_ATOM_AT_ZERO_FINITE_P",
    "REASON_ATOM_AT_ONE_P_GT_1",
    "REASON_ATOM_AT_ONE_P_INF",
    "FORMULA_INTERIOR",
    "FORMULA_P1_ATOM_AT_ONE",
    "FORMULA_PINF_ATOM_AT_ZERO",
    "NormVerdict",
    "validate_p",
    "norm_integral",
    "classify_boundedness",
    "classical_constant",
    "verdict_to_dict",
    "verdict_to_json",
]

REASON_DIVERGENT_INTEGRAL = "DivergentIntegral"
REASON_ATOM_AT_ZERO_FINITE_P = "AtomAtZero_FiniteP"
REASON_ATOM_AT_ONE_P_GT_1 = "AtomAtOne_PGreaterThan1"
REASON_ATOM_AT_ONE_P_INF = "AtomAtOne_PInfinity"

FORMULA_INTERIOR = "Interior_Np"
FORMULA_P1_ATOM_AT_ONE = "P1_WithAtomAtOne"
FORMULA_PINF_ATOM_AT_ZERO = "PInf_WithAtomAtZero"


def validate_p(p: float) -> float:
    """Check that p is a real >= 1 or math.inf; returns it as a float."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    return p


@dataclass(frozen=True)
class NormVerdict:
    """Outcome of the boundedness decision for one (measure, p) pair.

    Exactly one of ``norm`` (bounded) and ``reason`` (unbounded) is set;
    ``formula_used`` names the closed form behind a bounded norm.
    """

    status: str
    p: float
    norm: float | None = None
    reason: str | None = None
    formula_used: str | None = None

    def __post_init__(self):
        if self.status not in ("Bounded", "Unbounded"):
            raise ValueError(f"status must be Bounded or Unbounded, got {self.status!r}")
        if (self.norm is None) == (self.reason is None):
            raise ValueError("exactly one of norm and reason must be present")
        if self.norm is not None and not (0.0 <= self.norm < math.inf):
            raise ValueError(f"bounded verdict requires a finite nonnegative norm, got {self.norm}")
        if (self.status == "Bounded") != (self.norm is not None):
            raise ValueError("status Bounded iff norm present")

    @property
    def is_bounded(self) -> bool:
        return self.status == "Bounded"


def norm_integral(mu: Measure, p: float) -> float:
    """Sharp-norm integral of t^{-1/p} (1-t)^{1/p-1} against the measure.

    This is the quantity whose finiteness decides boundedness on ell-p (and
    whose value is the operator norm) for measures without endpoint atoms;
    for p=infinity the kernel degenerates to 1/(1-t).  Returns math.inf
    when the integral diverges.
    """
    p = validate_p(p)
    if any(atom.location in (0.0, 1.0) for atom in mu.atoms):
        raise ValueError(
            "norm_integral requires a measure without endpoint atoms; "
            "use classify_boundedness for the endpoint taxonomy"
        )
    if math.isinf(p):
        return beta_kernel_integral(mu, 0.0, -1.0)
    return beta_kernel_integral(mu, -1.0 / p, 1.0 / p - 1.0)


def classify_boundedness(mu: Measure, p: float) -> NormVerdict:
    """Decide boundedness on ell-p and produce the exact norm when bounded.

    Decision order matters: an atom at 0 dominates for every finite p, an
    atom at 1 dominates for p > 1; the two surviving endpoint pairings and
    the atom-free case each reduce to one integral's finiteness.
    """
    p = validate_p(p)
    dec = decompose(mu)
    if dec.c0 > 0.0 and not math.isinf(p):
        return NormVerdict("Unbounded", p, reason=REASON_ATOM_AT_ZERO_FINITE_P)
    if dec.c1 > 0.0 and 1.0 < p < math.inf:
        return NormVerdict("Unbounded", p, reason=REASON_ATOM_AT_ONE_P_GT_1)
    if dec.c1 > 0.0 and math.isinf(p):
        return NormVerdict("Unbounded", p, reason=REASON_ATOM_AT_ONE_P_INF)
    if dec.c1 > 0.0 and p == 1.0:
        value = beta_kernel_integral(mu, -1.0, 0.0) + dec.c1
        if math.isinf(value):
            return NormVerdict("Unbounded", p, reason=REASON_DIVERGENT_INTEGRAL)
        return NormVerdict("Bounded", p, norm=value, formula_used=FORMULA_P1_ATOM_AT_ONE)
    if dec.c0 > 0.0 and math.isinf(p):
        value = beta_kernel_integral(mu, 0.0, -1.0, include_zero=True)
        if math.isinf(value):
            return NormVerdict("Unbounded", p, reason=REASON_DIVERGENT_INTEGRAL)
        return NormVerdict("Bounded", p, norm=value, formula_used=FORMULA_PINF_ATOM_AT_ZERO)
    value = norm_integral(mu, p)
    if math.isinf(value):
        return NormVerdict("Unbounded", p, reason=REASON_DIVERGENT_INTEGRAL)
    return NormVerdict("Bounded", p, norm=value, formula_used=FORMULA_INTERIOR)


def classical_constant(p: float) -> float:
    """Sharp constant pi/sin(pi/p) of the classical inequality; needs 1 < p < inf."""
    p = validate_p(p)
    if p == 1.0 or math.isinf(p):
        raise ValueError(
            f"classical constant undefined at p={p} (operator unbounded there)"
        )
    return math.pi / math.sin(math.pi / p)


def _p_token(p: float):
    return "inf" if math.isinf(p) else float(p)


def verdict_to_dict(verdict: NormVerdict) -> dict:
    """Serialization with keys status, norm or reason, formula_used, p."""
    out: dict = {"status": verdict.status.lower()}
    if verdict.norm is not None:
        out["norm"] = verdict.norm
    if verdict.reason is not None:
        out["reason"] = verdict.reason
    if verdict.formula_used is not None:
        out["formula_used"] = verdict.formula_used
    out["p"] = _p_token(verdict.p)
    return out


def verdict_to_json(verdict: NormVerdict) -> str:
    import json

    return json.dumps(verdict_to_dict(verdict))
