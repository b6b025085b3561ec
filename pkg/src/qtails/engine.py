"""The finite sum-of-tails engine and its infinite limit.

For a coefficient sequence ``g_n`` with ``g(x) = sum g_n x^n`` the engine
builds both sides of

    sum_{n>=0} g_n [ (aq^N)_n (t)_n / ((tq^N)_n (a)_n) - (t)_N/(a)_N ]
      = (t)_N/(a)_N sum_{n>=1} B_n(a, t) g(q^n) / (q)_n

with ``B_n = sum_k [n,k] (aq^N/t)^k (q^-N)_k (q^N)_{n-k} t^n``.  Each term of
``B_n`` is evaluated as ``a^k t^(n-k) prod_{j<k}(q^N - q^j) (q^N)_{n-k}`` so
that no negative powers of q ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import comb
from typing import Sequence

from .series import (
    DEFAULT_GUARD,
    Monomial,
    TruncatedSeries,
    _norm,
    as_monomial,
    div_free_product,
    div_product,
    eval_at_monomial,
    gaussian_binomial,
    one,
    rising_power_product,
    sum_formal,
    valuation_of,
    zero,
)

G_CHOICES = ("geometric", "eta-ratio", "q-exponential-alt", "binomial-negative")

# parameter values used when a named g is picked without explicit constants
G_DEFAULTS = {
    "geometric": {"c": Fraction(1, 2)},
    "eta-ratio": {},
    "q-exponential-alt": {"b": Fraction(1, 2), "c": Fraction(-1, 3)},
    "binomial-negative": {"k": 2, "c": Fraction(1, 2)},
}


def mono(x) -> Monomial:
    m = as_monomial(x)
    if m is None:
        raise TypeError(f"expected a rational or monomial, got {x!r}")
    return m


def times_power(s: TruncatedSeries, x, k: int) -> TruncatedSeries:
    """``s * x^k`` for a rational or monomial ``x``."""
    m = mono(x) ** k
    return s.shift(m.exp).scale(m.coef)


def vmul(n: int, v: float) -> float:
    return 0 if n == 0 else n * v


@dataclass(frozen=True)
class GFunction:
    """A choice of ``g``: its coefficients ``g_n`` and its values ``g(q^n)`` for n >= 1."""

    name: str
    params: dict = field(default_factory=dict)
    coeffs: tuple = ()

    def __post_init__(self):
        if self.name != "finite" and self.name not in G_CHOICES:
            raise ValueError(f"unknown g {self.name!r}; expected one of {', '.join(G_CHOICES)}")
        if self.name in G_DEFAULTS:
            merged = dict(G_DEFAULTS[self.name])
            merged.update(self.params)
            object.__setattr__(self, "params", merged)

    @classmethod
    def finite(cls, coeffs: Sequence) -> GFunction:
        return cls("finite", coeffs=tuple(_norm(c) for c in coeffs))

    def coeff(self, n: int, order: int) -> TruncatedSeries:
        """``g_n`` as a series (constant except for ``eta-ratio``)."""
        p = self.params
        if self.name == "finite":
            v = self.coeffs[n] if n < len(self.coeffs) else 0
            return one(order).scale(v)
        if self.name == "geometric":
            return times_power(one(order), p["c"], n)
        if self.name == "eta-ratio":
            # (q)_inf / (q)_n = (q^{n+1})_inf
            return div_free_product(one(order), 1, n + 1, 1, None)
        if self.name == "q-exponential-alt":
            # (c/b)_n b^n / (q)_n = prod_{j<n} (b - c q^j) / (q)_n
            s = one(order)
            b, c = mono(p["b"]), mono(p["c"])
            for j in range(n):
                s = s.mul_poly(_merge({b.exp: b.coef}, {c.exp + j: -c.coef}))
            return div_product(s, 1, 1, 1, n)
        k, c = p["k"], p["c"]
        return times_power(one(order), c, n).scale(comb(k + n - 1, n))

    def at_qn(self, n: int, order: int) -> TruncatedSeries:
        """``g(q^n)`` in closed form, ``n >= 1``."""
        p = self.params
        if self.name == "finite":
            return eval_at_monomial(self.coeffs, 1, n, order)
        if self.name == "geometric":
            c = mono(p["c"])
            return div_product(one(order), c.coef, c.exp + n, 1, 1)
        if self.name == "eta-ratio":
            return div_free_product(one(order), 1, 1, 1, n - 1)
        if self.name == "q-exponential-alt":
            b, c = mono(p["b"]), mono(p["c"])
            num = div_free_product(one(order), c.coef, c.exp + n, 1, None)
            return div_product(num, b.coef, b.exp + n, 1, None)
        c = mono(p["c"])
        s = one(order)
        for _ in range(p["k"]):
            s = div_product(s, c.coef, c.exp + n, 1, 1)
        return s

    def coeff_valuation(self, n: int) -> float:
        """A lower bound for the valuation of ``g_n``."""
        if self.name == "geometric":
            return vmul(n, valuation_of(self.params["c"]))
        if self.name == "binomial-negative":
            return vmul(n, valuation_of(self.params["c"]))
        return 0


def _merge(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, r in b.items():
        out[e] = out.get(e, 0) + r
    return out


def make_g(g) -> GFunction:
    if isinstance(g, GFunction):
        return g
    if isinstance(g, str):
        return GFunction(g)
    return GFunction.finite(g)


@lru_cache(maxsize=None)
def _rpp(big_n: int, k: int, order: int) -> TruncatedSeries:
    return rising_power_product(big_n, k, order)


@lru_cache(maxsize=None)
def _poch_qn(big_n: int, j: int, order: int) -> TruncatedSeries:
    # (q^N)_j
    return div_free_product(one(order), 1, big_n, 1, j)


def _ratio_bracket(a: Monomial, t: Monomial, big_n: int | None, n: int, order: int) -> TruncatedSeries:
    """``(aq^N)_n (t)_n / ((tq^N)_n (a)_n)``; ``big_n=None`` drops the ``q^N`` factors."""
    s = div_free_product(one(order), t.coef, t.exp, 1, n)
    s = div_product(s, a.coef, a.exp, 1, n)
    if big_n is not None:
        s = div_free_product(s, a.coef, a.exp + big_n, 1, n)
        s = div_product(s, t.coef, t.exp + big_n, 1, n)
    return s


def theorem1_engine(g, a, t, big_n: int, order: int, *, guard: int = DEFAULT_GUARD) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the finite sum-of-tails identity for the given ``g``.

    ``g`` is a finite coefficient list, a name from :data:`G_CHOICES` or a
    :class:`GFunction`.  ``t`` needs positive valuation for the right-hand
    sum to converge; ``(a)_n`` must stay invertible.
    """
    if big_n < 1:
        raise ValueError("N must be positive")
    g = make_g(g)
    am, tm = mono(a), mono(t)
    va, vt = am.valuation, tm.valuation
    ratio = div_product(div_free_product(one(order), tm.coef, tm.exp, 1, big_n), am.coef, am.exp, 1, big_n)

    def lhs_terms():
        for n in range(order + 2):
            br = _ratio_bracket(am, tm, big_n, n, order) - ratio
            yield g.coeff(n, order) * br

    # the bracket at n is 1 + O(q^(n + min(va, vt))) away from its limit
    lhs = sum_formal(lhs_terms(), order, bound=lambda n: g.coeff_valuation(n) + n + min(va, vt), guard=guard)

    def inner(n: int) -> TruncatedSeries:
        s = zero(order)
        for k in range(min(n, big_n) + 1):
            coef = Monomial(am.coef, am.exp) ** k * (Monomial(tm.coef, tm.exp) ** (n - k))
            if coef.exp > order or not coef.coef:
                continue
            part = gaussian_binomial(n, k, order) * _rpp(big_n, k, order) * _poch_qn(big_n, n - k, order)
            s = s + part.shift(coef.exp).scale(coef.coef)
        return s

    def rhs_bound(n: int) -> float:
        return min(vmul(k, va) + vmul(n - k, vt) + k * (k - 1) // 2 for k in range(min(n, big_n) + 1))

    def rhs_terms():
        for n in count(1):
            yield div_product(inner(n) * g.at_qn(n, order), 1, 1, 1, n)

    rhs = sum_formal(rhs_terms(), order, start=1, bound=rhs_bound, guard=guard) * ratio
    return lhs, rhs


def andrews_freitas_sides(g, a, t, order: int, *, guard: int = DEFAULT_GUARD) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the ``N -> infinity`` limit of :func:`theorem1_engine`.

    ``sum g_n [(t)_n/(a)_n - (t)_inf/(a)_inf] = (t)_inf/(a)_inf sum_{n>=1} (a/t)_n t^n g(q^n)/(q)_n``
    with ``(a/t)_n t^n = prod_{j<n} (t - a q^j)``.
    """
    g = make_g(g)
    am, tm = mono(a), mono(t)
    va, vt = am.valuation, tm.valuation
    limit = div_product(div_free_product(one(order), tm.coef, tm.exp, 1, None), am.coef, am.exp, 1, None)

    def lhs_terms():
        for n in range(order + 2):
            yield g.coeff(n, order) * (_ratio_bracket(am, tm, None, n, order) - limit)

    lhs = sum_formal(lhs_terms(), order, bound=lambda n: g.coeff_valuation(n) + n + min(va, vt), guard=guard)

    def rhs_terms():
        prod_ = one(order)
        for n in count(1):
            prod_ = prod_.mul_poly(_merge({tm.exp: tm.coef}, {am.exp + n - 1: -am.coef}))
            yield div_product(prod_ * g.at_qn(n, order), 1, 1, 1, n)

    def rhs_bound(n: int) -> float:
        return sum(min(vt, va + j) for j in range(n))

    rhs = sum_formal(rhs_terms(), order, start=1, bound=rhs_bound, guard=guard) * limit
    return lhs, rhs


__all__ = ["G_CHOICES", "GFunction", "theorem1_engine", "andrews_freitas_sides", "make_g"]
