"""Recursive computation of the exponents W_m in the ordered splitting

    e^(X1 + ... + Xn) = e^(X1) e^(X2) ... e^(Xn) e^(W2) e^(W3) ...

Each W_m is a homogeneous Lie polynomial of degree m in the generators.
The engine works with the auxiliary family f[m, k] (the t^k coefficient
of the logarithmic derivative of the m-th residual factor of the
splitting, a homogeneous Lie polynomial of degree k + 1):

    f[1, k]  has a closed form as a sum of nested ad-operators applied
             to the generators (`f1k_direct`), and an equivalent closed
             form as a sum of long commutators indexed by integer
             compositions of k (`f1k_comm`);
    f[m, k]  = sum_{j=0}^{floor(k/m)-1} (-1)^j/j! * ad_{W_m}^j f[m-1, k-m*j]
             for m >= 2 (`EngineCtx.fmk`);
    W_2      = f[1,1]/2,  W_3 = f[1,2]/3,  W_4 = f[1,3]/4,
    W_m      = f[floor((m-1)/2), m-1] / m  for m >= 5 (`EngineCtx.w_term`).

`EngineCtx.w_term_expanded` evaluates the same W_m through fully
unrolled formulas (the recursion applied until every residual index
reaches its base family), which exercises a different code path; the
two must agree exactly, and `series(..., path="both")` asserts that.

All values are exact; the memo caches inside `EngineCtx` are filled once
per key and never mutated afterwards, so concurrent readers are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .freealg import (
    AlgebraCtx,
    AssocPoly,
    ad_pow,
    bracket,
    generators,
    poly_sum,
)
from .lieform import CommTerm, Composition, LieExpr, compositions


class PathDisagreementError(RuntimeError):
    """The generic recursion and the expanded formulas produced different values.

    This can only happen through an implementation bug (or a corrupted
    cache); it is surfaced, never swallowed.
    """


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for c in cuts:
            comp.append(c - prev - 1)
            prev = c
        comp.append(total + parts - 2 - prev)
        yield tuple(comp)


def f1k_direct(k: int, ctx: AlgebraCtx) -> AssocPoly:
    """f[1, k] from its nested-ad closed form.

    (-1)^k * sum over i in 2..n and over (j1..jn) >= 0 with j1+...+jn = k
    and j1+...+j(i-1) >= 1 of  ad_{Xn}^{jn} ... ad_{X1}^{j1} X_i / (j1! ... jn!).

    Homogeneous of degree k + 1; identically zero when n = 1.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k + 1 > ctx.max_degree:
        raise ValueError(
            f"f[1,{k}] has degree {k + 1} > max_degree {ctx.max_degree}"
        )
    gens = generators(ctx)
    sign = (-1) ** k
    pieces: list[AssocPoly] = []
    for jt in _weak_compositions(k, ctx.n):
        denom = 1
        for j in jt:
            denom *= factorial(j)
        # Apply ad_{X1}^{j1} innermost, then ad_{X2}^{j2}, etc.
        for i in range(2, ctx.n + 1):
            if sum(jt[: i - 1]) < 1:
                continue
            v = gens[i - 1]
            for letter_idx, power in enumerate(jt):
                v = ad_pow(gens[letter_idx], power, v)
                if v.is_zero:
                    break
            if not v.is_zero:
                pieces.append(v.scaled(Fraction(sign, denom)))
    return poly_sum(ctx, pieces)


def f1k_comm_grouped(k: int, n: int) -> list[tuple[Composition, LieExpr]]:
    """f[1, k] in long-commutator form, grouped by composition.

    For each composition (k1..kl) of k, the group is

        1/(k1! ... kl!) * sum [X_j X_{i1}^{k1} ... X_{il}^{kl}]

    over index tuples with i1 < j <= n and i1 < i2 < ... < il <= n
    (j is unconstrained relative to i2..il).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    groups: list[tuple[Composition, LieExpr]] = []
    for comp in compositions(k):
        l = len(comp)
        denom = 1
        for part in comp:
            denom *= factorial(part)
        coeff = Fraction(1, denom)
        terms: list[CommTerm] = []
        for idx_tuple in itertools.combinations(range(1, n + 1), l):
            i1 = idx_tuple[0]
            for j in range(i1 + 1, n + 1):
                terms.append(CommTerm(coeff, j, tuple(zip(idx_tuple, comp))))
        groups.append((comp, LieExpr(terms)))
    return groups


def f1k_comm(k: int, n: int) -> LieExpr:
    """f[1, k] as a single LieExpr (all composition groups combined)."""
    out = LieExpr()
    for _, group in f1k_comm_grouped(k, n):
        out = out + group
    return out


class EngineCtx:
    """Computation context: an algebra plus memo caches for f[m, k] and W_m.

    Memo entries are immutable once inserted (insert-if-absent), so the
    caches are safe for concurrent readers; caches are never shared
    across different (n, max_degree) contexts.
    """

    def __init__(self, alg: AlgebraCtx):
        self.alg = alg
        self._f_memo: dict[tuple[int, int], AssocPoly] = {}
        self._w_memo: dict[int, AssocPoly] = {}

    def fmk(self, m: int, k: int) -> AssocPoly:
        """f[m, k]; delegates to f1k_direct at m = 1, else applies the recursion."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        if k < m:
            raise ValueError(f"f[{m},{k}] is undefined (k < m)")
        if k + 1 > self.alg.max_degree:
            raise ValueError(
                f"f[{m},{k}] has degree {k + 1} > max_degree {self.alg.max_degree}"
            )
        key = (m, k)
        cached = self._f_memo.get(key)
        if cached is not None:
            return cached
        if m == 1:
            value = f1k_direct(k, self.alg)
        else:
            w_m = self.w_term(m)
            pieces = [self.fmk(m - 1, k)]
            for j in range(1, k // m):
                term = ad_pow(w_m, j, self.fmk(m - 1, k - m * j))
                pieces.append(term.scaled(Fraction((-1) ** j, factorial(j))))
            value = poly_sum(self.alg, pieces)
        return self._f_memo.setdefault(key, value)

    def w_term(self, m: int) -> AssocPoly:
        """W_m through the generic rule; homogeneous of degree m."""
        if m < 2:
            raise ValueError(f"the splitting exponents start at W_2, got m={m}")
        if m > self.alg.max_degree:
            raise ValueError(f"W_{m} has degree {m} > max_degree {self.alg.max_degree}")
        cached = self._w_memo.get(m)
        if cached is not None:
            return cached
        if m <= 4:
            value = self.fmk(1, m - 1).scaled(Fraction(1, m))
        else:
            value = self.fmk((m - 1) // 2, m - 1).scaled(Fraction(1, m))
        return self._w_memo.setdefault(m, value)

    def w_term_expanded(self, m: int) -> AssocPoly:
        """W_m through the fully unrolled formula for its residue class.

        Must equal `w_term(m)` exactly; kept as an independent code path
        so the two can be cross-checked.
        """
        if m < 5:
            raise ValueError(f"the expanded formulas start at m=5, got m={m}")
        if m > self.alg.max_degree:
            raise ValueError(f"W_{m} has degree {m} > max_degree {self.alg.max_degree}")
        pieces: list[AssocPoly] = []
        for coeff, ad_ws, (mp, kp) in _expanded_formula(m):
            v = self.fmk(mp, kp)
            for w_idx in reversed(ad_ws):
                v = bracket(self.w_term(w_idx), v)
            pieces.append(v.scaled(coeff))
        return poly_sum(self.alg, pieces).scaled(Fraction(1, m))


# One unrolled formula per degree: a list of (coefficient, ad-operator
# indices applied left to right, (m', k') of the base-family value).
# `(1, (3, 2, 2), (1, 4))` reads as  ad_{W3} ad_{W2}^2 f[1, 4].
_FormulaTerm = tuple[Fraction, tuple[int, ...], tuple[int, int]]

_F = Fraction
_EXPLICIT_FORMULAS: dict[int, list[_FormulaTerm]] = {
    5: [(_F(1), (), (1, 4)), (_F(-1), (2,), (1, 2))],
    6: [(_F(1), (), (1, 5)), (_F(-1), (2,), (1, 3))],
    7: [
        (_F(1), (), (1, 6)),
        (_F(-1), (2,), (1, 4)),
        (_F(1, 2), (2, 2), (1, 2)),
        (_F(-1), (3,), (1, 3)),
    ],
    8: [
        (_F(1), (), (1, 7)),
        (_F(-1), (2,), (1, 5)),
        (_F(1, 2), (2, 2), (1, 3)),
        (_F(-1), (3,), (1, 4)),
        (_F(1), (3, 2), (1, 2)),
    ],
    9: [
        (_F(1), (), (1, 8)),
        (_F(-1), (2,), (1, 6)),
        (_F(1, 2), (2, 2), (1, 4)),
        (_F(-1, 6), (2, 2, 2), (1, 2)),
        (_F(-1), (3,), (1, 5)),
        (_F(1), (3, 2), (1, 3)),
        (_F(-1), (4,), (1, 4)),
        (_F(1), (4, 2), (1, 2)),
    ],
    10: [
        (_F(1), (), (1, 9)),
        (_F(-1), (2,), (1, 7)),
        (_F(1, 2), (2, 2), (1, 5)),
        (_F(-1, 6), (2, 2, 2), (1, 3)),
        (_F(-1), (3,), (1, 6)),
        (_F(1), (3, 2), (1, 4)),
        (_F(-1, 2), (3, 2, 2), (1, 2)),
        (_F(1, 2), (3, 3), (1, 3)),
        (_F(-1), (4,), (1, 5)),
        (_F(1), (4, 2), (1, 3)),
    ],
}


def _expanded_formula(m: int) -> list[_FormulaTerm]:
    """Term list of the unrolled formula for W_m (without the leading 1/m)."""
    if m in _EXPLICIT_FORMULAS:
        return _EXPLICIT_FORMULAS[m]
    k, i = divmod(m, 6)
    # The residue-class formulas below are stated for k >= 2 except the
    # 6k+5 class, whose k = 1 instance (m = 11) unrolls identically.
    if m < 11:
        raise ValueError(f"no expanded formula for m={m}")
    terms: list[_FormulaTerm] = []
    if i == 0:
        base = 2 * k - 2
        terms = [
            (_F(1), (), (base, 6 * k - 1)),
            (_F(-1), (2 * k - 1,), (base, 4 * k)),
            (_F(1, 2), (2 * k - 1, 2 * k - 1), (base, 2 * k + 1)),
            (_F(-1), (2 * k,), (base, 4 * k - 1)),
            (_F(1), (2 * k, 2 * k - 1), (base, 2 * k)),
            (_F(-1), (2 * k + 1,), (base, 4 * k - 2)),
            (_F(1), (2 * k + 1, 2 * k - 1), (base, 2 * k - 1)),
        ]
        run = range(2 * k + 2, 3 * k)
        top = 6 * k - 1
    elif i == 1:
        base = 2 * k - 1
        terms = [
            (_F(1), (), (base, 6 * k)),
            (_F(-1), (2 * k,), (base, 4 * k)),
            (_F(1, 2), (2 * k, 2 * k), (base, 2 * k)),
        ]
        run = range(2 * k + 1, 3 * k + 1)
        top = 6 * k
    elif i == 2:
        base = 2 * k - 1
        terms = [
            (_F(1), (), (base, 6 * k + 1)),
            (_F(-1), (2 * k,), (base, 4 * k + 1)),
            (_F(1, 2), (2 * k, 2 * k), (base, 2 * k + 1)),
            (_F(-1), (2 * k + 1,), (base, 4 * k)),
            (_F(1), (2 * k + 1, 2 * k), (base, 2 * k)),
        ]
        run = range(2 * k + 2, 3 * k + 1)
        top = 6 * k + 1
    elif i == 3:
        base = 2 * k - 1
        terms = [
            (_F(1), (), (base, 6 * k + 2)),
            (_F(-1), (2 * k,), (base, 4 * k + 2)),
            (_F(1, 2), (2 * k, 2 * k), (base, 2 * k + 2)),
            (_F(-1), (2 * k + 1,), (base, 4 * k + 1)),
            (_F(1), (2 * k + 1, 2 * k), (base, 2 * k + 1)),
            (_F(-1), (2 * k + 2,), (base, 4 * k)),
            (_F(1), (2 * k + 2, 2 * k), (base, 2 * k)),
        ]
        run = range(2 * k + 3, 3 * k + 2)
        top = 6 * k + 2
    elif i == 4:
        base = 2 * k
        terms = [
            (_F(1), (), (base, 6 * k + 3)),
            (_F(-1), (2 * k + 1,), (base, 4 * k + 2)),
            (_F(1, 2), (2 * k + 1, 2 * k + 1), (base, 2 * k + 1)),
        ]
        run = range(2 * k + 2, 3 * k + 2)
        top = 6 * k + 3
    else:  # i == 5
        base = 2 * k
        terms = [
            (_F(1), (), (base, 6 * k + 4)),
            (_F(-1), (2 * k + 1,), (base, 4 * k + 3)),
            (_F(1, 2), (2 * k + 1, 2 * k + 1), (base, 2 * k + 2)),
            (_F(-1), (2 * k + 2,), (base, 4 * k + 2)),
            (_F(1), (2 * k + 2, 2 * k + 1), (base, 2 * k + 1)),
        ]
        run = range(2 * k + 3, 3 * k + 3)
        top = 6 * k + 4
    for s in run:
        terms.append((_F(-1), (s,), (base, top - s)))
    return terms


@dataclass(frozen=True)
class SeriesTerm:
    """One exponent of the splitting, tagged with the path that computed it."""

    m: int
    poly: AssocPoly
    path: str
    comm: LieExpr | None = None


@dataclass(frozen=True)
class ZassenhausSeries:
    """The exponents W_2 .. W_K for a fixed number of generators."""

    n: int
    max_degree: int
    path: str
    terms: tuple[SeriesTerm, ...] = field(default_factory=tuple)

    def term(self, m: int) -> SeriesTerm:
        if not 2 <= m <= self.max_degree:
            raise ValueError(f"series holds W_2..W_{self.max_degree}, got m={m}")
        return self.terms[m - 2]

    def polys(self) -> list[AssocPoly]:
        return [t.poly for t in self.terms]

    def __iter__(self) -> Iterator[SeriesTerm]:
        return iter(self.terms)


_PATHS = ("generic", "expanded", "both")


def series(n: int, max_degree: int, path: str = "generic", ectx: EngineCtx | None = None) -> ZassenhausSeries:
    """Compute W_2 .. W_max_degree.

    path="generic" uses the recursion, path="expanded" the unrolled
    formulas (identical to generic below degree 5), and path="both"
    computes both and raises PathDisagreementError if they ever differ.
    Terms of degree <= 4 also carry their closed commutator form.
    """
    if path not in _PATHS:
        raise ValueError(f"path must be one of {_PATHS}, got {path!r}")
    if max_degree < 2:
        raise ValueError(f"max_degree must be >= 2, got {max_degree}")
    if ectx is None:
        ectx = EngineCtx(AlgebraCtx(n, max_degree))
    elif ectx.alg != AlgebraCtx(n, max_degree):
        raise ValueError("engine context does not match requested (n, max_degree)")
    out: list[SeriesTerm] = []
    for m in range(2, max_degree + 1):
        generic = ectx.w_term(m) if path in ("generic", "both") or m < 5 else None
        expanded = ectx.w_term_expanded(m) if path in ("expanded", "both") and m >= 5 else None
        if path == "both" and m >= 5 and generic != expanded:
            raise PathDisagreementError(
                f"W_{m}: generic recursion and expanded formula disagree"
            )
        poly = generic if generic is not None else expanded
        comm = f1k_comm(m - 1, n).scaled(Fraction(1, m)) if m <= 4 else None
        out.append(SeriesTerm(m=m, poly=poly, path=path, comm=comm))
    return ZassenhausSeries(n=n, max_degree=max_degree, path=path, terms=tuple(out))
