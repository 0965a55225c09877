"""Independent verification of the splitting exponents.

Three checks, in increasing distance from the algebra:

* `peel_oracle` re-derives W_2..W_K from scratch by peeling the ordered
  product: starting from R = e^(-Xn) ... e^(-X1) e^(X1+...+Xn), the
  lowest-degree component of log R is exactly W_m, which is then divided
  out and the process repeated.  It uses only the free-algebra kernel
  (exp, log, multiplication) and never touches the engine's f/W
  recursion, so agreement with the engine is genuine evidence.
* `exact_identity_check` multiplies the whole truncated splitting back
  together and asserts the defect polynomial is identically zero.
* `numeric_order_check` substitutes random matrices, compares matrix
  exponentials at several step sizes t, and estimates the convergence
  order of the residual, which must be K + 1 when the product carries
  W_2..W_K.

All exact checks are zero-tolerance; the numeric check accepts an
observed order within +-0.5 of K + 1 and reports "inconclusive" (not
failure) when the residuals sit at round-off level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .freealg import (
    AlgebraCtx,
    AssocPoly,
    exp_trunc,
    format_fraction,
    generators,
    log_trunc,
    poly_sum,
)

#: Residual norms below this multiple of machine epsilon carry no order
#: information; the check reports inconclusive instead of pass/fail.
ROUNDOFF_FACTOR = 100.0


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification run.

    For exact modes `residuals` holds a single (None, Fraction) pair:
    the maximum |coefficient| of the defect polynomial (expected 0).
    For numeric mode it holds (t, float) pairs in the order checked, and
    `observed_order` is the log-ratio estimate from the two smallest t.
    """

    mode: str
    passed: bool
    residuals: tuple[tuple[float | None, Fraction | float], ...] = ()
    observed_order: float | None = None
    inconclusive: bool = False
    detail: str = ""

    def to_json_dict(self) -> dict:
        def norm_value(v: Fraction | float) -> str | float:
            return format_fraction(v) if isinstance(v, Fraction) else v

        return {
            "mode": self.mode,
            "pass": self.passed,
            "residuals": [
                {"t": t, "norm": norm_value(norm)} for t, norm in self.residuals
            ],
            "observedOrder": self.observed_order,
            "inconclusive": self.inconclusive,
            "detail": self.detail,
        }


def peel_oracle(n: int, max_degree: int) -> list[AssocPoly]:
    """W_2 .. W_max_degree extracted order by order from the product itself.

    R := e^(-Xn) ... e^(-X1) e^(X1+...+Xn) equals e^(W2) e^(W3) ...
    through the truncation degree; the degree-m part of log R is W_m
    because every later factor only contributes in higher degrees.
    """
    ctx = AlgebraCtx(n, max_degree)
    gens = generators(ctx)
    residue = exp_trunc(poly_sum(ctx, gens))
    for g in gens:
        residue = exp_trunc(-g) * residue
    out: list[AssocPoly] = []
    for m in range(2, max_degree + 1):
        w_m = log_trunc(residue).degree_component(m)
        out.append(w_m)
        residue = exp_trunc(-w_m) * residue
    return out


def exact_identity_check(
    n: int, max_degree: int, ws: Sequence[AssocPoly]
) -> VerificationReport:
    """Zero-tolerance check of e^(sum X) = e^(X1)...e^(Xn) e^(W2)...e^(WK).

    `ws` must be W_2..W_max_degree in order (empty when max_degree < 2).
    The defect is the difference of the two sides as truncated
    polynomials; the check passes iff it is identically zero.
    """
    ctx = AlgebraCtx(n, max_degree)
    expected = max(0, max_degree - 1)
    if len(ws) != expected:
        raise ValueError(f"need W_2..W_{max_degree} ({expected} terms), got {len(ws)}")
    gens = generators(ctx)
    lhs = exp_trunc(poly_sum(ctx, gens))
    rhs = AssocPoly.one(ctx)
    for g in gens:
        rhs = rhs * exp_trunc(g)
    for m, w in enumerate(ws, start=2):
        if w.ctx != ctx:
            raise ValueError(f"W_{m} belongs to context {w.ctx}, expected {ctx}")
        if not w.is_zero and w.homogeneous_degree() != m:
            raise ValueError(f"W_{m} is not homogeneous of degree {m}")
        rhs = rhs * exp_trunc(w)
    defect = lhs - rhs
    worst = defect.max_abs_coeff()
    return VerificationReport(
        mode="exact",
        passed=defect.is_zero,
        residuals=((None, worst),),
        detail=f"defect max |coeff| = {format_fraction(worst)} at n={n}, K={max_degree}",
    )


def oracle_equivalence_check(
    n: int, max_degree: int, ws: Sequence[AssocPoly]
) -> VerificationReport:
    """Term-by-term comparison of `ws` (engine output) against `peel_oracle`."""
    reference = peel_oracle(n, max_degree)
    expected = max(0, max_degree - 1)
    if len(ws) != expected:
        raise ValueError(f"need W_2..W_{max_degree} ({expected} terms), got {len(ws)}")
    mismatches = [m for m, (a, b) in enumerate(zip(ws, reference), start=2) if a != b]
    worst = Fraction(0)
    for m in mismatches:
        worst = max(worst, (ws[m - 2] - reference[m - 2]).max_abs_coeff())
    detail = (
        f"all W_2..W_{max_degree} match the peel-off oracle at n={n}"
        if not mismatches
        else f"mismatch at m={mismatches} (n={n}, K={max_degree})"
    )
    return VerificationReport(
        mode="oracle",
        passed=not mismatches,
        residuals=((None, worst),),
        detail=detail,
    )


def random_matrices(n: int, dim: int, seed: int) -> list[np.ndarray]:
    """n deterministic dim x dim matrices with entries uniform in [-1/2, 1/2]."""
    rng = np.random.default_rng(seed)
    return [rng.uniform(-0.5, 0.5, size=(dim, dim)) for _ in range(n)]


def substitute(poly: AssocPoly, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate a polynomial on concrete matrices (X_i -> mats[i-1])."""
    if len(mats) != poly.ctx.n:
        raise ValueError(f"need {poly.ctx.n} matrices, got {len(mats)}")
    dim = mats[0].shape[0]
    out = np.zeros((dim, dim))
    for word, coeff in poly.terms():
        acc = np.eye(dim)
        for letter in word:
            acc = acc @ mats[letter - 1]
        out += float(coeff) * acc
    return out


def splitting_residual(
    mats: Sequence[np.ndarray], t: float, ws: Sequence[AssocPoly]
) -> float:
    """Operator-norm distance between e^(t sum X) and the ordered product at t."""
    dim = mats[0].shape[0]
    scaled = [t * m for m in mats]
    lhs = expm(sum(scaled, np.zeros((dim, dim))))
    rhs = np.eye(dim)
    for m in scaled:
        rhs = rhs @ expm(m)
    for w in ws:
        rhs = rhs @ expm(substitute(w, scaled))
    return float(np.linalg.norm(lhs - rhs, 2))


def numeric_order_check(
    n: int,
    max_degree: int,
    dim: int,
    seed: int,
    t_values: Sequence[float],
    ws: Sequence[AssocPoly] | None = None,
    mats: Sequence[np.ndarray] | None = None,
) -> VerificationReport:
    """Estimate the convergence order of the residual and compare to K + 1.

    With W_2..W_K included, the first uncancelled term of the defect has
    degree K + 1, so residual(t) = O(t^(K+1)).  The observed order is
    log(r_coarse / r_fine) / log(t_coarse / t_fine) over the two
    smallest t values; pass iff it lies within +-0.5 of K + 1.  When the
    residuals are at round-off level there is no order to measure: the
    report is inconclusive and counts as a pass.

    `ws` defaults to the peel-off oracle output (keeping this check
    independent of the engine); `mats` defaults to `random_matrices`.
    """
    if len(t_values) < 2:
        raise ValueError("need at least two t values to estimate an order")
    if any(t <= 0 for t in t_values):
        raise ValueError("t values must be positive")
    if len(set(t_values)) != len(t_values):
        raise ValueError("t values must be distinct")
    if ws is None:
        ws = peel_oracle(n, max_degree) if max_degree >= 2 else []
    if mats is None:
        mats = random_matrices(n, dim, seed)
    norms = [(float(t), splitting_residual(mats, t, ws)) for t in t_values]
    fine, coarse = sorted(norms)[:2]  # two smallest t, ascending
    threshold = ROUNDOFF_FACTOR * np.finfo(float).eps
    target = max_degree + 1
    if fine[1] < threshold or coarse[1] < threshold:
        return VerificationReport(
            mode="numeric",
            passed=True,
            residuals=tuple(norms),
            observed_order=None,
            inconclusive=True,
            detail=f"residuals at round-off level (< {threshold:.2e}); order not measurable",
        )
    observed = math.log(coarse[1] / fine[1]) / math.log(coarse[0] / fine[0])
    passed = abs(observed - target) <= 0.5
    return VerificationReport(
        mode="numeric",
        passed=passed,
        residuals=tuple(norms),
        observed_order=observed,
        detail=f"observed order {observed:.3f}, expected {target} +- 0.5",
    )
