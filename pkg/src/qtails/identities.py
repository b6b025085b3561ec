"""Builders for every catalog identity.

Each side is assembled from the primitives in :mod:`qtails.series` (or,
for oracle sides, from enumeration in :mod:`qtails.partitions`) without
reusing the other side's construction.  Infinite sums always pass an
explicit valuation bound to :func:`~qtails.series.sum_formal`; stopping at
the first zero term would be wrong for sums such as ``sum (1 - c^n) ...``
at ``c = -1``.

Notation in comments: ``(x)_n = (x; q)_n``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from math import comb
from typing import Iterator, Mapping

from .descriptors import Env, IdentityDescriptor, Side, Slot
from .engine import G_CHOICES, andrews_freitas_sides, mono, theorem1_engine, times_power, vmul
from .partitions import (
    ClassSpec,
    crank_moment,
    d_distinct,
    enumerate_partitions,
    ffw,
    l_odd,
    lpt,
    s_odd,
    sigma_prime,
    spt,
    t_sum,
    weighted_sum,
)
from .series import (
    Monomial,
    TruncatedSeries,
    div_free_product,
    div_product,
    eval_at_monomial,
    gaussian_binomial,
    lambert_sum,
    make,
    one,
    sum_formal,
    valuation_of,
    zero,
)

# ---------------------------------------------------------------------------
# small helpers


def P(x, n: int | None, o: int, shift: int = 0, step: int = 1) -> TruncatedSeries:
    """``(x q^shift; q^step)_n``; ``n=None`` is the infinite product."""
    m = mono(x)
    return div_free_product(one(o), m.coef, m.exp + shift, step, n)


def mulP(s: TruncatedSeries, x, n: int | None, shift: int = 0, step: int = 1) -> TruncatedSeries:
    m = mono(x)
    return div_free_product(s, m.coef, m.exp + shift, step, n)


def divP(s: TruncatedSeries, x, n: int | None, shift: int = 0, step: int = 1) -> TruncatedSeries:
    m = mono(x)
    return div_product(s, m.coef, m.exp + shift, step, n)


def tails(terms: Iterator[TruncatedSeries], e: Env, bound, start: int = 0) -> TruncatedSeries:
    return sum_formal(terms, e.order, start=start, bound=bound, guard=e.guard)


def shifted_factor(s: TruncatedSeries, b, c, j: int) -> TruncatedSeries:
    """``s * (b - c q^j)`` for rational or monomial ``b``, ``c``."""
    bm, cm = mono(b), mono(c)
    poly = {bm.exp: bm.coef}
    poly[cm.exp + j] = poly.get(cm.exp + j, 0) - cm.coef
    return s.mul_poly(poly)


def factor_valuation(b, c, j: int) -> float:
    """A lower bound for the valuation of ``b - c q^j``."""
    return min(valuation_of(b), valuation_of(c) + j)


def tri(n: int) -> int:
    return n * (n + 1) // 2


def sigma_series(o: int) -> TruncatedSeries:
    """``sum_{n>=0} q^{n(n+1)/2} / (-q)_n``."""

    def terms():
        d = one(o)
        for n in count():
            yield d.shift(tri(n))
            d = d.div_binomial(-1, n + 1)

    return sum_formal(terms(), o, bound=tri)


def delta_series(o: int, start: int = 1) -> TruncatedSeries:
    """``sum_{n>=start} q^{n^2} / (-q; q^2)_n``."""

    def terms():
        d = one(o)
        for n in count():
            if n >= start:
                yield d.shift(n * n)
            d = d.div_binomial(-1, 2 * n + 1)

    return sum_formal(terms(), o, start=start, bound=lambda n: n * n)


def oracle_series(e: Env, coeff) -> TruncatedSeries:
    """``sum_{n>=1} coeff(n) q^n`` with ``coeff`` computed by enumeration."""
    return make(e.order, [0] + [coeff(n) for n in range(1, e.order + 1)])


def weighted(cls: str, expr: str, params: Mapping | None = None, k: int = 0):
    def coeff(n: int, e: Env):
        return weighted_sum(ClassSpec(cls, n, k), expr, params, budget=e.budget)

    return coeff


def binom_c(k: int, n: int) -> int:
    return comb(k + n - 1, n)


# ---------------------------------------------------------------------------
# slots

A = Slot("a", "either")
A_MONO = Slot("a", "monomial")
B_MONO = Slot("b", "monomial")
C_RAT = Slot("c", "rational")
C_EITHER = Slot("c", "either")
T_MONO = Slot("t", "monomial")
T_RAT = Slot("t", "rational")
T_EITHER = Slot("t", "either")
ALPHA = Slot("alpha", "monomial")
BETA = Slot("beta", "either")
N = Slot("N", "integer")
K = Slot("k", "integer")
G = Slot("g", "choice", values=G_CHOICES)

ENTRIES: list[IdentityDescriptor] = []


def entry(id: str, anchor: str, slots=(), sides=(), **kw) -> None:
    ENTRIES.append(IdentityDescriptor(id, anchor, tuple(slots), tuple(sides), **kw))


def side(label: str, oracle: bool = False):
    def wrap(fn):
        return Side(label, fn, oracle)

    return wrap


# ---------------------------------------------------------------------------
# the lost-notebook identity and Zagier's eta(24z) identity


@side("sum_{n>=0} [(-q)_inf - (-q)_n]")
def _rln_lhs(p, e):
    o = e.order

    def terms():
        full = P(-1, None, o, 1)
        part = one(o)
        for n in count():
            yield full - part
            part = part.mul_binomial(-1, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("(-q)_inf (-1/2 + sum q^n/(1-q^n)) + sigma(q)/2")
def _rln_rhs(p, e):
    o = e.order
    return P(-1, None, o, 1) * (lambert_sum("minus", o) - Fraction(1, 2)) + sigma_series(o).scale(Fraction(1, 2))


entry("ramanujan-lost-notebook", "Lost-notebook sum of tails for (-q)_inf", sides=(_rln_lhs, _rln_rhs))


def eta24(o: int) -> TruncatedSeries:
    """``q (q^24; q^24)_inf``, the q-expansion of eta(24z)."""
    return div_free_product(one(o).shift(1), 1, 24, 24, None)


@side("sum_{n>=0} [eta(24z) - q (q^24; q^24)_n]")
def _zag_lhs(p, e):
    o = e.order

    def terms():
        eta = eta24(o)
        part = one(o).shift(1)
        for n in count():
            yield eta - part
            part = part.mul_binomial(1, 24 * (n + 1))

    return tails(terms(), e, lambda n: 1 + 24 * (n + 1))


def chi12(n: int) -> int:
    r = n % 12
    return 1 if r in (1, 11) else -1 if r in (5, 7) else 0


@side("eta(24z) D(q^24) + (1/2) sum n chi(n) q^{n^2}")
def _zag_rhs(p, e):
    o = e.order
    d = lambert_sum("minus", o // 24) - Fraction(1, 2)
    big_e = [0] * (o + 1)
    for n in count(1):
        if n * n > o:
            break
        big_e[n * n] = Fraction(n * chi12(n), 2)
    return eta24(o) * eval_at_monomial(d, 1, 24, o) + make(o, big_e)


entry(
    "zagier-eta24",
    "Zagier's sum of tails for eta(24z), written in integer powers of q",
    sides=(_zag_lhs, _zag_rhs),
    default_order=240,
    note="summed from n = 0 with D(x) = -1/2 + sum x^n/(1-x^n) taken at x = q^24",
)

# ---------------------------------------------------------------------------
# the c-parameter family around (q^n)_N


def _tail_qn(p, e, limit: bool):
    o = e.order
    c = p.get("c", -1)
    sign_c = "c" in p

    def terms():
        for n in count(1):
            t = P(1, None if limit else p["N"], o, n) - 1
            yield times_power(t, c, n - 1) if sign_c else t.scale((-1) ** (n - 1))

    return tails(terms(), e, lambda n: n + vmul(n - 1, valuation_of(c)), start=1)


@side("sum_{n>=1} (-1)^{n-1} [(q^n)_N - 1]")
def _dems_lhs(p, e):
    return _tail_qn(p, e, False)


@side("((q)_N/(-q)_N - 1)/2")
def _dems_rhs(p, e):
    o = e.order
    return (divP(P(1, p["N"], o, 1), -1, p["N"], 1) - 1).scale(Fraction(1, 2))


entry("dems-finite", "Alternating finite tails of (q^n)_N", slots=(N,), sides=(_dems_lhs, _dems_rhs))


@side("sum_{n>=1} (-1)^{n-1} [(q^n)_inf - 1]")
def _demsl_lhs(p, e):
    return _tail_qn(p, e, True)


@side("((q)_inf/(-q)_inf - 1)/2")
def _demsl_rhs(p, e):
    o = e.order
    return (divP(P(1, None, o, 1), -1, None, 1) - 1).scale(Fraction(1, 2))


entry("dems-limit", "Alternating tails of (q^n)_inf", sides=(_demsl_lhs, _demsl_rhs))


@side("sum_{n=1}^N [N,n] (-1)^n q^{n(n+1)/2} / (1 - c q^n)")
def _yf_sum(p, e):
    o, big_n = e.order, p["N"]
    s = zero(o)
    for n in range(1, big_n + 1):
        s = s + divP(gaussian_binomial(big_n, n, o).shift(tri(n)).scale((-1) ** n), p["c"], 1, n)
    return s


@side("((q)_N/(cq)_N - 1)/(1 - c)")
def _yf_closed(p, e):
    o, big_n, c = e.order, p["N"], p["c"]
    return divP(divP(P(1, big_n, o, 1), c, big_n, 1) - 1, c, 1)


@side("sum_{n>=1} c^{n-1} [(q^n)_N - 1]")
def _halfc_lhs(p, e):
    return _tail_qn(p, e, False)


entry("yan-fu", "Finite Gaussian-binomial sum with 1/(1 - c q^n)", slots=(C_RAT, N), sides=(_yf_sum, _yf_closed), excludes=(("c", 1),))
entry("half-c-finite", "Weighted finite tails against the Gaussian sum", slots=(C_RAT, N), sides=(_halfc_lhs, _yf_sum))
entry(
    "c-chain-finite",
    "Three-way chain for the c-weighted finite tails",
    slots=(C_RAT, N),
    sides=(_halfc_lhs, _yf_sum, _yf_closed),
    excludes=(("c", 1),),
)


@side("sum_{n>=1} c^{n-1} [(q^n)_inf - 1]")
def _aglc_tails(p, e):
    return _tail_qn(p, e, True)


@side("sum_{n>=1} (-1)^n q^{n(n+1)/2} / ((q)_n (1 - c q^n))")
def _aglc_mid(p, e):
    o, c = e.order, p["c"]

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield divP(d.shift(tri(n)).scale((-1) ** n), c, 1, n)

    return tails(terms(), e, tri, start=1)


@side("((q)_inf/(cq)_inf - 1)/(1 - c)")
def _aglc_closed(p, e):
    o, c = e.order, p["c"]
    return divP(divP(P(1, None, o, 1), c, None, 1) - 1, c, 1)


entry(
    "agl-c-chain",
    "Three-way chain for the c-weighted tails of (q^n)_inf",
    slots=(C_RAT,),
    sides=(_aglc_tails, _aglc_mid, _aglc_closed),
    excludes=(("c", 1),),
)

# ---------------------------------------------------------------------------
# the general engine, its limit and Heine


@side("sum g_n [(aq^N)_n (t)_n / ((tq^N)_n (a)_n) - (t)_N/(a)_N]")
def _eng_lhs(p, e):
    return theorem1_engine(p["g"], p["a"], p["t"], p["N"], e.order, guard=e.guard)[0]


@side("(t)_N/(a)_N sum_{n>=1} B_n g(q^n)/(q)_n")
def _eng_rhs(p, e):
    return theorem1_engine(p["g"], p["a"], p["t"], p["N"], e.order, guard=e.guard)[1]


entry(
    "thm-1-1-engine",
    "Finite sum-of-tails engine with a general g",
    slots=(A_MONO, T_MONO, N, G),
    sides=(_eng_lhs, _eng_rhs),
    distinct=(("a", "t"),),
    default_order=30,
)


@side("sum g_n [(t)_n/(a)_n - (t)_inf/(a)_inf]")
def _af_lhs(p, e):
    return andrews_freitas_sides(p["g"], p["a"], p["t"], e.order, guard=e.guard)[0]


@side("(t)_inf/(a)_inf sum_{n>=1} (a/t)_n t^n g(q^n)/(q)_n")
def _af_rhs(p, e):
    return andrews_freitas_sides(p["g"], p["a"], p["t"], e.order, guard=e.guard)[1]


entry(
    "andrews-freitas-gen",
    "Infinite sum-of-tails identity with a general g",
    slots=(A_MONO, T_MONO, G),
    sides=(_af_lhs, _af_rhs),
    distinct=(("a", "t"),),
    default_order=30,
)


def _cb_product(s: TruncatedSeries, b, c, n: int) -> TruncatedSeries:
    """``s * (c/b)_n b^n = s * prod_{j<n} (b - c q^j)``."""
    for j in range(n):
        s = shifted_factor(s, b, c, j)
    return s


def _cb_bound(b, c, n: int) -> float:
    return sum(factor_valuation(b, c, j) for j in range(n))


@side("sum (c/b)_n (t)_n (atq^N)_n b^n / ((q)_n (at)_n (tq^N)_n)")
def _fh_lhs(p, e):
    o, a, b, c, t, big_n = e.order, p["a"], p["b"], p["c"], p["t"], p["N"]
    at = mono(a) * mono(t)

    def terms():
        for n in count():
            s = _cb_product(one(o), b, c, n)
            s = mulP(s, t, n)
            s = mulP(s, at, n, big_n)
            s = divP(s, at, n)
            s = divP(s, t, n, big_n)
            yield divP(s, 1, n, 1)

    return tails(terms(), e, lambda n: _cb_bound(b, c, n))


def _heine_inner(a, big_n: int, n: int, o: int) -> TruncatedSeries:
    """``sum_k [n,k] (aq^N)^k (q^-N)_k (q^N)_{n-k}`` without negative powers."""
    s = zero(o)
    for k in range(min(n, big_n) + 1):
        part = gaussian_binomial(n, k, o) * P(1, n - k, o, big_n)
        for j in range(k):
            part = part.mul_poly({big_n: 1, j: -1})
        s = s + times_power(part, a, k)
    return s


@side("(t)_N (c)_inf / ((at)_N (b)_inf) sum {inner_n} (b)_n t^n / ((c)_n (q)_n)")
def _fh_rhs(p, e):
    o, a, b, c, t, big_n = e.order, p["a"], p["b"], p["c"], p["t"], p["N"]
    at = mono(a) * mono(t)
    va, vt = valuation_of(a), valuation_of(t)

    def terms():
        for n in count():
            s = _heine_inner(a, big_n, n, o)
            s = divP(mulP(s, b, n), c, n)
            yield times_power(divP(s, 1, n, 1), t, n)

    def bound(n):
        return vmul(n, vt) + min(vmul(k, va) + k * (k - 1) // 2 for k in range(min(n, big_n) + 1))

    total = tails(terms(), e, bound)
    pre = divP(divP(mulP(P(t, big_n, o), c, None), at, big_n), b, None)
    return pre * total


entry(
    "finite-heine",
    "Finite analogue of Heine's transformation",
    slots=(A, B_MONO, C_EITHER, T_MONO, N),
    sides=(_fh_lhs, _fh_rhs),
    excludes=(("c", 1),),
    default_order=30,
)


@side("sum (a)_n (b)_n t^n / ((c)_n (q)_n)")
def _heine_lhs(p, e):
    o, a, b, c, t = e.order, p["a"], p["b"], p["c"], p["t"]

    def terms():
        for n in count():
            s = mulP(mulP(one(o), a, n), b, n)
            s = divP(divP(s, c, n), 1, n, 1)
            yield times_power(s, t, n)

    return tails(terms(), e, lambda n: vmul(n, valuation_of(t)))


@side("(at)_inf (b)_inf / ((t)_inf (c)_inf) sum (c/b)_n (t)_n b^n / ((at)_n (q)_n)")
def _heine_rhs(p, e):
    o, a, b, c, t = e.order, p["a"], p["b"], p["c"], p["t"]
    at = mono(a) * mono(t)

    def terms():
        for n in count():
            s = _cb_product(one(o), b, c, n)
            s = divP(divP(mulP(s, t, n), at, n), 1, n, 1)
            yield s

    total = tails(terms(), e, lambda n: _cb_bound(b, c, n))
    pre = divP(divP(mulP(P(at, None, o), b, None), t, None), c, None)
    return pre * total


entry(
    "heine",
    "Heine's first transformation",
    slots=(A, B_MONO, C_EITHER, T_MONO),
    sides=(_heine_lhs, _heine_rhs),
    excludes=(("c", 1),),
)

# ---------------------------------------------------------------------------
# sigma(q) and its finite analogue


@side("sum_{n>=0} q^{n(n+1)/2} / (-q)_n")
def _sigma(p, e):
    return sigma_series(e.order)


@side("1 + sum_{n>=1} (-1)^{n-1} q^n (q)_{n-1}")
def _sigma_alt(p, e):
    o = e.order

    def terms():
        s = one(o)
        for n in count(1):
            yield s.shift(n).scale((-1) ** (n - 1))
            s = s.mul_binomial(1, n)

    return one(o) + tails(terms(), e, lambda n: n, start=1)


entry("sigma-two-forms", "Two expansions of sigma(q)", sides=(_sigma, _sigma_alt), default_order=60)


@side("sum_{n=0}^N [N,n] (q)_n q^{n(n+1)/2} / (-q)_n")
def _sigf_lhs(p, e):
    o, big_n = e.order, p["N"]
    s = zero(o)
    for n in range(big_n + 1):
        t = gaussian_binomial(big_n, n, o).shift(tri(n))
        s = s + divP(mulP(t, 1, n, 1), -1, n, 1)
    return s


@side("(q)_inf/(-q^{N+1})_inf + 2 sum q^n/(1+q^n) (q^{n+1})_inf/(-q^{N+n+1})_inf")
def _sigf_rhs(p, e):
    o, big_n = e.order, p["N"]

    def terms():
        for n in count(1):
            s = divP(P(1, None, o, n + 1), -1, None, big_n + n + 1)
            yield s.shift(n).div_binomial(-1, n).scale(2)

    head = divP(P(1, None, o, 1), -1, None, big_n + 1)
    return head + tails(terms(), e, lambda n: n, start=1)


entry("sigma-finite", "Finite analogue of sigma(q)", slots=(N,), sides=(_sigf_lhs, _sigf_rhs), default_order=60)


def _sigma_new_sum(o: int, e: Env) -> TruncatedSeries:
    """``sum_{n>=1} q^n/(1+q^n) (q^{n+1})_inf``."""

    def terms():
        tail = P(1, None, o, 1)
        for n in count(1):
            tail = tail.div_binomial(1, n)
            yield tail.shift(n).div_binomial(-1, n)

    return tails(terms(), e, lambda n: n, start=1)


@side("(q)_inf + 2 sum q^n/(1+q^n) (q^{n+1})_inf")
def _sigma_new(p, e):
    o = e.order
    return P(1, None, o, 1) + _sigma_new_sum(o, e).scale(2)


entry("sigma-new-rep", "sigma(q) through the tails of (q)_inf", sides=(_sigma, _sigma_new), default_order=60)


@side("(q)_inf - sigma(q)")
def _sigc_series(p, e):
    o = e.order
    return P(1, None, o, 1) - sigma_series(o)


@side("sum over D(n) of (-1)^#pi - (-1)^rank", oracle=True)
def _sigc_d(p, e):
    f = weighted("D", "(-1)^num_parts - (-1)^rank")
    return oracle_series(e, lambda n: f(n, e))


@side("2 * sum over B(n) of (-1)^#pi", oracle=True)
def _sigc_b(p, e):
    f = weighted("B", "2*(-1)^num_parts")
    return oracle_series(e, lambda n: f(n, e))


entry(
    "sigma-combinatorial",
    "Signed distinct-part counts against B-partitions",
    sides=(_sigc_series, _sigc_d, _sigc_b),
)


@side("sum_{n>=1} q^n/(1-q^n) (-q^{n+1})_inf")
def _nr1_lhs(p, e):
    o = e.order

    def terms():
        tail = P(-1, None, o, 1)
        for n in count(1):
            tail = tail.div_binomial(-1, n)
            yield tail.shift(n).div_binomial(1, n)

    return tails(terms(), e, lambda n: n, start=1)


@side("(-q)_inf (1/2 + sum q^n/(1+q^n)) - sigma(q)/2")
def _nr1_rhs(p, e):
    o = e.order
    return P(-1, None, o, 1) * (lambert_sum("plus", o) + Fraction(1, 2)) - sigma_series(o).scale(Fraction(1, 2))


entry("new-ramanujan-i", "sigma(q) against smallest-part Lambert weights", sides=(_nr1_lhs, _nr1_rhs), default_order=60)


@side("sum_{n>=1} q^{2n}/(1-q^{2n}) (-q^{2n+1}; q^2)_inf")
def _nr2_lhs(p, e):
    o = e.order

    def terms():
        for n in count(1):
            yield P(-1, None, o, 2 * n + 1, 2).shift(2 * n).div_binomial(1, 2 * n)

    return tails(terms(), e, lambda n: 2 * n, start=1)


@side("(-q; q^2)_inf sum q^{2n-1}/(1+q^{2n-1}) - delta(q)")
def _nr2_rhs(p, e):
    o = e.order
    return P(-1, None, o, 1, 2) * lambert_sum("odd-plus", o) - delta_series(o)


entry("new-ramanujan-ii", "delta(q) against odd Lambert weights", sides=(_nr2_lhs, _nr2_rhs), default_order=60)

# ---------------------------------------------------------------------------
# delta(q), its t-deformation and the third-order mock theta functions


def _odd_quotient_sum(o: int, e: Env, base, start: int = 0) -> TruncatedSeries:
    """``sum_{n>=start} q^{n^2} / (base q; q^2)_n``."""

    def terms():
        d = one(o)
        for n in count():
            if n >= start:
                yield d.shift(n * n)
            d = divP(d, base, 1, 2 * n + 1)

    return tails(terms(), e, lambda n: n * n, start=start)


@side("sum_{n>=0} q^{n^2} / (tq; q^2)_n")
def _delta_lhs(p, e):
    return _odd_quotient_sum(e.order, e, p["t"])


@side("1 + sum_{n>=1} q^n prod_{j=1}^{n-1} (t + q^{2j})")
def _delta_rhs(p, e):
    o, t = e.order, p["t"]
    tm = mono(t)

    def terms():
        s = one(o)
        for n in count(1):
            yield s.shift(n)
            poly = {tm.exp: tm.coef}
            poly[2 * n] = poly.get(2 * n, 0) + 1
            s = s.mul_poly(poly)

    return one(o) + tails(terms(), e, lambda n: n, start=1)


entry("delta-general", "t-deformation of delta(q)", slots=(T_RAT,), sides=(_delta_lhs, _delta_rhs), default_order=60)


def delta_two_ways(o: int, guard: int | None = None) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``1 + delta(q)`` as a quotient sum and as a product sum."""
    e = Env(o) if guard is None else Env(o, guard)
    lhs = _odd_quotient_sum(o, e, -1)

    def terms():
        s = one(o)
        for n in count(1):
            yield s.shift(n).scale((-1) ** (n - 1))
            s = s.mul_binomial(1, 2 * n)

    return lhs, one(o) + tails(terms(), e, lambda n: n, start=1)


@side("sum_{n>=0} q^{n^2} / (-q; q^2)_n")
def _dm1_lhs(p, e):
    return _odd_quotient_sum(e.order, e, -1)


@side("1 + sum_{n>=1} (-1)^{n-1} q^n (q^2; q^2)_{n-1}")
def _dm1_rhs(p, e):
    return delta_two_ways(e.order, e.guard)[1]


entry("delta-at-minus1", "Two expansions of delta(q)", sides=(_dm1_lhs, _dm1_rhs), default_order=60)


@side("sum_{n>=0} q^{n^2} / (-q^2; q^2)_n")
def _phi_lhs(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count():
            yield d.shift(n * n)
            d = d.div_binomial(-1, 2 * n + 2)

    return tails(terms(), e, lambda n: n * n)


@side("1 + sum_{n>=1} (-1)^{n-1} q^{2n-1} (q; q^2)_{n-1}")
def _phi_rhs(p, e):
    o = e.order

    def terms():
        s = one(o)
        for n in count(1):
            yield s.shift(2 * n - 1).scale((-1) ** (n - 1))
            s = s.mul_binomial(1, 2 * n - 1)

    return one(o) + tails(terms(), e, lambda n: 2 * n - 1, start=1)


entry("mock-phi", "Third-order mock theta phi(q)", sides=(_phi_lhs, _phi_rhs), default_order=60)


@side("sum_{n>=0} q^{n^2} / (q; q^2)_n")
def _psi_lhs(p, e):
    return _odd_quotient_sum(e.order, e, 1)


@side("1 + sum_{n>=1} q^n (-q^2; q^2)_{n-1}")
def _psi_rhs(p, e):
    o = e.order

    def terms():
        s = one(o)
        for n in count(1):
            yield s.shift(n)
            s = s.mul_binomial(-1, 2 * n)

    return one(o) + tails(terms(), e, lambda n: n, start=1)


entry("mock-psi", "Third-order mock theta psi(q)", sides=(_psi_lhs, _psi_rhs), default_order=60)

# ---------------------------------------------------------------------------
# tails of (t)_n with an extra parameter c


def _ct_tails(p, e) -> TruncatedSeries:
    """``sum_{n>=0} c^n [(t)_n - (t)_inf]`` (``c = 1`` when unbound)."""
    o, t = e.order, p["t"]
    c = p.get("c", 1)

    def terms():
        full = P(t, None, o)
        part = one(o)
        for n in count():
            yield times_power(part - full, c, n)
            part = mulP(part, t, 1, n)

    return tails(terms(), e, lambda n: vmul(n, valuation_of(c)) + n + valuation_of(t))


def _t_over_qn_sum(p, e, c=None) -> TruncatedSeries:
    """``sum_{n>=1} t^n / ((q)_n (1 - c q^n))`` (``c = 1`` when omitted)."""
    o, t = e.order, p["t"]
    c = 1 if c is None else c

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield times_power(divP(d, c, 1, n), t, n)

    return tails(terms(), e, lambda n: vmul(n, valuation_of(t)), start=1)


@side("sum_{n>=0} [(t)_n - (t)_inf]")
def _aft_lhs(p, e):
    return _ct_tails(p, e)


@side("(t)_inf sum_{n>=1} t^n / ((q)_n (1 - q^n))")
def _aft_rhs(p, e):
    return P(p["t"], None, e.order) * _t_over_qn_sum(p, e)


entry("af-tails", "Tails of (t)_n", slots=(T_MONO,), sides=(_aft_lhs, _aft_rhs))


@side("sum_{n>=0} c^n [(t)_n/(t)_{N+n} - 1]")
def _t18_lhs(p, e):
    o, c, t, big_n = e.order, p["c"], p["t"], p["N"]

    def terms():
        for n in count():
            yield times_power(divP(one(o), t, big_n, n) - 1, c, n)

    return tails(terms(), e, lambda n: vmul(n, valuation_of(c)) + n + valuation_of(t))


@side("sum_{n>=1} (q^N)_n t^n / ((q)_n (1 - c q^n))")
def _t18_rhs(p, e):
    o, c, t, big_n = e.order, p["c"], p["t"], p["N"]

    def terms():
        for n in count(1):
            s = divP(P(1, n, o, big_n), 1, n, 1)
            yield times_power(divP(s, c, 1, n), t, n)

    return tails(terms(), e, lambda n: vmul(n, valuation_of(t)), start=1)


entry(
    "thm-1-8-finite",
    "Finite c-weighted tails of 1/(tq^n)_N",
    slots=(C_RAT, T_MONO, N),
    sides=(_t18_lhs, _t18_rhs),
    note="the exclusion c != q^-n cannot be met by a rational or a monomial with positive exponent",
)


@side("sum_{n>=0} c^n [(t)_n - (t)_inf]")
def _opz_lhs(p, e):
    return _ct_tails(p, e)


@side("(t)_inf sum_{n>=1} t^n / ((q)_n (1 - c q^n))")
def _opza_rhs(p, e):
    return P(p["t"], None, e.order) * _t_over_qn_sum(p, e, p["c"])


entry("one-param-zagier-a", "c-weighted tails of (t)_n, product form", slots=(C_RAT, T_MONO), sides=(_opz_lhs, _opza_rhs))


@side("sum_{n=0}^{N-1} c^n [(t)_n - (t)_N]")
def _zfi_lhs(p, e):
    o, c, t, big_n = e.order, p["c"], p["t"], p["N"]
    full = P(t, big_n, o)
    return sum((times_power(P(t, n, o) - full, c, n) for n in range(big_n)), zero(o))


@side("t sum_{n=1}^N (1 + c + ... + c^{n-1}) (t)_{n-1} q^{n-1}")
def _zfi_mid(p, e):
    o, c, t, big_n = e.order, p["c"], p["t"], p["N"]
    s = zero(o)
    for n in range(1, big_n + 1):
        geo = sum((times_power(one(o), c, j) for j in range(n)), zero(o))
        s = s + geo * P(t, n - 1, o).shift(n - 1)
    return times_power(s, t, 1)


@side("t/(1-c) sum_{n=1}^N (1 - c^n) (t)_{n-1} q^{n-1}")
def _zfi_closed(p, e):
    o, c, t, big_n = e.order, p["c"], p["t"], p["N"]
    s = zero(o)
    for n in range(1, big_n + 1):
        s = s + (P(t, n - 1, o) - times_power(P(t, n - 1, o), c, n)).shift(n - 1)
    return divP(times_power(s, t, 1), c, 1)


entry(
    "zagier-finite-induction",
    "Finite c-weighted tails of (t)_n",
    slots=(C_RAT, T_EITHER, N),
    sides=(_zfi_lhs, _zfi_mid, _zfi_closed),
    excludes=(("c", 1),),
    note="geometric factor runs 1 + c + ... + c^(n-1)",
)


def _one_minus_cn_sum(p, e, inner) -> TruncatedSeries:
    """``t/(1-c) sum_{n>=1} (1 - c^n) inner(n) q^{n-1}``."""
    o, c, t = e.order, p["c"], p["t"]

    def terms():
        for n in count(1):
            s = inner(n).shift(n - 1)
            yield s - times_power(s, c, n)

    total = tails(terms(), e, lambda n: n - 1, start=1)
    return divP(times_power(total, t, 1), c, 1)


@side("t/(1-c) sum_{n>=1} (1 - c^n) (t)_{n-1} q^{n-1}")
def _opzb_rhs(p, e):
    o, t = e.order, p["t"]
    return _one_minus_cn_sum(p, e, lambda n: P(t, n - 1, o))


entry(
    "one-param-zagier-b",
    "c-weighted tails of (t)_n, geometric form",
    slots=(C_RAT, T_MONO),
    sides=(_opz_lhs, _opzb_rhs),
    excludes=(("c", 1),),
)


@side("sum_{n>=1} t^n / ((q)_n (1 - c q^n))")
def _rb_lhs(p, e):
    return _t_over_qn_sum(p, e, p["c"])


@side("t/(1-c) sum_{n>=1} (1 - c^n) q^{n-1} / (tq^{n-1})_inf")
def _rb_rhs(p, e):
    o, t = e.order, p["t"]
    return _one_minus_cn_sum(p, e, lambda n: divP(one(o), t, None, n - 1))


entry(
    "remark1-bridge",
    "Bridge between the two c-weighted forms",
    slots=(C_RAT, T_MONO),
    sides=(_rb_lhs, _rb_rhs),
    excludes=(("c", 1),),
)

# ---------------------------------------------------------------------------
# crank moments and the (alpha, beta) generalisation


@side("sum_{n>=0} [(q)_n - (q)_inf] / (q)_n^2")
def _crank_tails(p, e):
    o = e.order

    def terms():
        full = P(1, None, o, 1)
        d = one(o)
        for n in count():
            yield d * (one(o) - full * d)
            d = d.div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("sum_{n>=1} n q^{n^2} / (q)_n^2")
def _crank_sum(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n).div_binomial(1, n)
            yield d.shift(n * n).scale(n)

    return tails(terms(), e, lambda n: n * n, start=1)


@side("q + sum_{n>=2} sum_{m>=1} m M(m, n) q^n", oracle=True)
def _crank_oracle(p, e):
    return oracle_series(e, lambda n: 1 if n == 1 else crank_moment(n, e.budget))


entry("agl-crank", "Positive crank moment as a sum of tails", sides=(_crank_tails, _crank_sum, _crank_oracle))


def _lerch_sum(o: int, e: Env, beta) -> TruncatedSeries:
    """``sum_{n>=1} n beta^n q^{n^2} / ((beta q)_n (q)_n)``."""

    def terms():
        d = one(o)
        for n in count(1):
            d = divP(d.div_binomial(1, n), beta, 1, n)
            yield times_power(d.shift(n * n).scale(n), beta, n)

    return tails(terms(), e, lambda n: n * n + vmul(n, valuation_of(beta)), start=1)


@side("sum_{n>=0} [(alpha)_n - (alpha)_inf] / ((beta q)_n (q)_n)")
def _gagl_lhs(p, e):
    o, al, be = e.order, p["alpha"], p["beta"]

    def terms():
        full = P(al, None, o)
        part = one(o)
        d = one(o)
        for n in count():
            yield (part - full) * d
            part = mulP(part, al, 1, n)
            d = divP(d.div_binomial(1, n + 1), be, 1, n + 1)

    return tails(terms(), e, lambda n: n + valuation_of(al))


@side("(alpha)_inf/(q)_inf [lerch(beta) + 1/(beta q)_inf sum (beta q/alpha)_n alpha^n / (1 - q^n)]")
def _gagl_rhs(p, e):
    o, al, be = e.order, p["alpha"], p["beta"]

    def terms():
        s = one(o)
        for n in count(1):
            s = shifted_factor(s, al, be, n)
            yield s.div_binomial(1, n)

    second = tails(terms(), e, lambda n: sum(factor_valuation(al, be, j + 1) for j in range(n)), start=1)
    inner = _lerch_sum(o, e, be) + divP(second, be, None, 1)
    return divP(P(al, None, o) * inner, 1, None, 1)


entry(
    "gen-agl",
    "Two-parameter generalisation of the crank sum of tails",
    slots=(ALPHA, BETA),
    sides=(_gagl_lhs, _gagl_rhs),
)


@side("sum_{n>=1} (-beta)^n q^{n(n+1)/2} / (1 - q^n)")
def _lerch_lhs(p, e):
    o, be = e.order, p["beta"]
    neg = mono(be) * -1

    def terms():
        for n in count(1):
            yield times_power(one(o).shift(tri(n)).div_binomial(1, n), neg, n)

    return tails(terms(), e, lambda n: tri(n) + vmul(n, valuation_of(be)), start=1)


@side("-(beta q)_inf sum_{n>=1} n beta^n q^{n^2} / ((beta q)_n (q)_n)")
def _lerch_rhs(p, e):
    o, be = e.order, p["beta"]
    return -(P(be, None, o, 1) * _lerch_sum(o, e, be))


entry("lerch-half-beta", "Half Lerch sum with a parameter", slots=(BETA,), sides=(_lerch_lhs, _lerch_rhs))


def _half_lerch(o: int, e: Env) -> TruncatedSeries:
    """``sum_{n>=1} q^{n(n+1)/2} / (1 - q^n)``."""
    return tails((one(o).shift(tri(n)).div_binomial(1, n) for n in count(1)), e, tri, start=1)


def _mixed_tails(o: int, e: Env, inner_sign: int) -> TruncatedSeries:
    """``sum_{n>=0} (1 - (s q^{n+1})_inf) (-s q^{n+1})_inf`` with ``s = inner_sign``."""

    def terms():
        for n in count():
            yield (one(o) - P(inner_sign, None, o, n + 1)) * P(-inner_sign, None, o, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("sum_{n>=0} (1 - (-q^{n+1})_inf) (q^{n+1})_inf")
def _amq_tails(p, e):
    return _mixed_tails(e.order, e, -1)


@side("sum_{n>=1} n (-1)^n q^{n^2} (-q^{n+1})_inf / (q)_n")
def _amq_mid(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield (d * P(-1, None, o, n + 1)).shift(n * n).scale(n * (-1) ** n)

    return tails(terms(), e, lambda n: n * n, start=1)


@side("-sum_{n>=1} q^{n(n+1)/2} / (1 - q^n)")
def _amq_lerch(p, e):
    return -_half_lerch(e.order, e)


entry("agl-alpha-minus-q", "Crank-type tails at alpha = -q", sides=(_amq_tails, _amq_mid, _amq_lerch))


def _pm_sum(o: int, e: Env) -> TruncatedSeries:
    """``sum_{n>=1} (-q)_n q^n / (1 - q^{2n})``."""

    def terms():
        s = one(o)
        for n in count(1):
            s = s.mul_binomial(-1, n)
            yield s.shift(n).div_binomial(1, 2 * n)

    return tails(terms(), e, lambda n: n, start=1)


@side("sum_{n>=0} (1 - (q^{n+1})_inf) (-q^{n+1})_inf")
def _aq_tails(p, e):
    return _mixed_tails(e.order, e, 1)


@side("2 sum (-q)_n q^n/(1 - q^{2n}) - sum q^{n(n+1)/2}/(1 - q^n)")
def _aq_rhs(p, e):
    o = e.order
    return _pm_sum(o, e).scale(2) - _half_lerch(o, e)


entry("agl-alpha-q", "Crank-type tails at alpha = q", sides=(_aq_tails, _aq_rhs))


@side("sum_{n>=0} [(-q^{n+1})_inf - (q^{n+1})_inf]")
def _ps_lhs(p, e):
    o = e.order
    return tails((P(-1, None, o, n + 1) - P(1, None, o, n + 1) for n in count()), e, lambda n: n + 1)


@side("2 sum (-q)_n q^n / (1 - q^{2n})")
def _ps_rhs(p, e):
    return _pm_sum(e.order, e).scale(2)


entry("product-subtraction", "Difference of the two mixed tails", sides=(_ps_lhs, _ps_rhs))


@side("sum_{n>=0} [(q^{2n+2}; q^2)_inf - (q^{2n+1}; q)_inf]")
def _q2_tails(p, e):
    o = e.order
    return tails((P(1, None, o, 2 * n + 2, 2) - P(1, None, o, 2 * n + 1) for n in count()), e, lambda n: 2 * n + 1)


@side("(q; q^2)_inf sum_{n>=1} n q^{n(2n-1)} / (q)_{2n}")
def _q2_mid(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, 2 * n - 1).div_binomial(1, 2 * n)
            yield d.shift(n * (2 * n - 1)).scale(n)

    return P(1, None, o, 1, 2) * tails(terms(), e, lambda n: n * (2 * n - 1), start=1)


@side("sum_{n>=1} (-1)^{n-1} q^{n^2} / (1 - q^{2n})")
def _q2_rhs(p, e):
    o = e.order
    return tails((one(o).shift(n * n).div_binomial(1, 2 * n).scale((-1) ** (n - 1)) for n in count(1)), e, lambda n: n * n, start=1)


entry("q-to-q2", "Crank-type tails with q replaced by q^2", sides=(_q2_tails, _q2_mid, _q2_rhs))

# ---------------------------------------------------------------------------
# FFW_c, divisors, spt and the Crippa-type sums


@side("sum FFW_c(n) q^n", oracle=True)
def _ffw_oracle(p, e):
    c = p["c"]
    return oracle_series(e, lambda n: ffw(n, c))


@side("-sum_{n>=1} (-c)^n q^{n(n+1)/2} / ((q)_n (1 - q^n))")
def _ffw_mid(p, e):
    o, c = e.order, p["c"]
    neg = mono(c) * -1

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield -times_power(d.shift(tri(n)).div_binomial(1, n), neg, n)

    return tails(terms(), e, lambda n: tri(n) + vmul(n, valuation_of(c)), start=1)


@side("sum q^n/(1-q^n) - sum (c)_n q^n/(1-q^n)")
def _ffw_lambert(p, e):
    o, c = e.order, p["c"]

    def terms():
        s = one(o)
        for n in count(1):
            s = mulP(s, c, 1, n - 1)
            yield s.shift(n).div_binomial(1, n)

    return lambert_sum("minus", o) - tails(terms(), e, lambda n: n, start=1)


entry("ffw-c-gen", "Generating function of FFW_c", slots=(C_RAT,), sides=(_ffw_oracle, _ffw_mid, _ffw_lambert))


def ffw_divisor_sum(o: int, e: Env | None = None) -> TruncatedSeries:
    """``sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - q^n))``."""
    e = e or Env(o)

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield d.shift(tri(n)).div_binomial(1, n).scale((-1) ** (n - 1))

    return tails(terms(), e, tri, start=1)


@side("sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - q^n))")
def _ffwd_lhs(p, e):
    return ffw_divisor_sum(e.order, e)


@side("sum q^n / (1 - q^n)")
def _ffwd_rhs(p, e):
    return lambert_sum("minus", e.order)


entry("ffw-divisor", "Divisor generating function as an alternating sum", sides=(_ffwd_lhs, _ffwd_rhs))


def spt_derivative_form(o: int, e: Env | None = None) -> TruncatedSeries:
    """``1/(q)_inf sum_{n>=1} n (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - q^n))``."""
    e = e or Env(o)

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield d.shift(tri(n)).div_binomial(1, n).scale(n * (-1) ** (n - 1))

    return divP(tails(terms(), e, tri, start=1), 1, None, 1)


def spt_smallest_form(o: int, e: Env | None = None) -> TruncatedSeries:
    """``sum_{n>=1} q^n / ((1 - q^n)^2 (q^{n+1})_inf)``."""
    e = e or Env(o)

    def terms():
        w = divP(one(o), 1, None, 1)  # 1/(q^n)_inf at n = 1
        for n in count(1):
            yield w.shift(n).div_binomial(1, n)
            w = w.mul_binomial(1, n)

    return tails(terms(), e, lambda n: n, start=1)


@side("1/(q)_inf sum n (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - q^n))")
def _spt_deriv(p, e):
    return spt_derivative_form(e.order, e)


@side("sum q^n / ((1 - q^n)^2 (q^{n+1})_inf)")
def _spt_small(p, e):
    return spt_smallest_form(e.order, e)


@side("sum spt(n) q^n", oracle=True)
def _spt_oracle(p, e):
    return oracle_series(e, lambda n: spt(n, e.budget))


entry("spt-rep", "Generating function of spt(n)", sides=(_spt_deriv, _spt_small, _spt_oracle))


def _crippa_sum(o: int, e: Env, k: int, c=1) -> TruncatedSeries:
    """``sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - c q^n)^k)``."""

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            s = d.shift(tri(n)).scale((-1) ** (n - 1))
            for _ in range(k):
                s = divP(s, c, 1, n)
            yield s

    return tails(terms(), e, tri, start=1)


@side("sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - q^n)^k)")
def _crippa_lhs(p, e):
    return _crippa_sum(e.order, e, p["k"])


def _binom_q_sum(o: int, e: Env, k: int) -> TruncatedSeries:
    """``sum_{n>=0} binom(k+n-1, k) q^n / (q)_n``."""

    def terms():
        d = one(o)
        for n in count():
            yield d.shift(n).scale(comb(k + n - 1, k))
            d = d.div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: n)


@side("(q)_inf sum_{n>=0} binom(k+n-1, k) q^n / (q)_n")
def _crippa_rhs(p, e):
    o = e.order
    return P(1, None, o, 1) * _binom_q_sum(o, e, p["k"])


entry("crippa", "Higher-power Fine-type sum", slots=(K,), sides=(_crippa_lhs, _crippa_rhs))


@side("sum_{n>=0} c^n binom(k+n-1, n) [(aq^n)_N - 1]")
def _t116_lhs(p, e):
    o, a, c, k, big_n = e.order, p["a"], p["c"], p["k"], p["N"]

    def terms():
        for n in count():
            yield times_power(P(a, big_n, o, n) - 1, c, n).scale(binom_c(k, n))

    return tails(terms(), e, lambda n: n + valuation_of(a) + vmul(n, valuation_of(c)))


@side("sum_{n=1}^N (-a)^n q^{n(n-1)/2} (q^{N-n+1})_n / ((q)_n (1 - c q^n)^k)")
def _t116_rhs(p, e):
    o, a, c, k, big_n = e.order, p["a"], p["c"], p["k"], p["N"]
    neg = mono(a) * -1
    s = zero(o)
    for n in range(1, big_n + 1):
        t = divP(P(1, n, o, big_n - n + 1), 1, n, 1).shift(n * (n - 1) // 2)
        for _ in range(k):
            t = divP(t, c, 1, n)
        s = s + times_power(t, neg, n)
    return s


entry("thm-1-16", "Finite sum of tails for the Crippa-type sum", slots=(A, C_RAT, K, N), sides=(_t116_lhs, _t116_rhs))


@side("sum_{n>=0} c^n binom(k+n-1, n) [1 - (q^{n+1})_inf]")
def _cl_lhs(p, e):
    o, c, k = e.order, p["c"], p["k"]

    def terms():
        for n in count():
            yield times_power(one(o) - P(1, None, o, n + 1), c, n).scale(binom_c(k, n))

    return tails(terms(), e, lambda n: n + 1 + vmul(n, valuation_of(c)))


@side("sum_{n>=1} (-1)^{n-1} q^{n(n+1)/2} / ((q)_n (1 - c q^n)^k)")
def _cl_rhs(p, e):
    return _crippa_sum(e.order, e, p["k"], p["c"])


entry(
    "crippa-limit",
    "Infinite sum of tails for the Crippa-type sum",
    slots=(C_RAT, K),
    sides=(_cl_lhs, _cl_rhs),
    note="the tail sum starts at n = 0",
)


@side("sum_{n>=0} binom(k+n-1, n) [1/(q)_inf - 1/(q)_n]")
def _cr_lhs(p, e):
    o, k = e.order, p["k"]

    def terms():
        full = divP(one(o), 1, None, 1)
        d = one(o)
        for n in count():
            yield (full - d).scale(binom_c(k, n))
            d = d.div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("sum_{n>=0} binom(k+n-1, k) q^n / (q)_n")
def _cr_rhs(p, e):
    return _binom_q_sum(e.order, e, p["k"])


entry("crippa-remark", "Tails of 1/(q)_n with binomial weights", slots=(K,), sides=(_cr_lhs, _cr_rhs))

# ---------------------------------------------------------------------------
# special cases of the bridge identity and their partition meaning


@side("1/(t)_inf")
def _ra_lhs(p, e):
    return divP(one(e.order), p["t"], None)


@side("1 + sum_{n>=1} t q^{n-1} / (tq^{n-1})_inf")
def _ra_rhs(p, e):
    o, t = e.order, p["t"]

    def terms():
        for n in count(1):
            yield times_power(divP(one(o), t, None, n - 1).shift(n - 1), t, 1)

    return one(o) + tails(terms(), e, lambda n: n - 1 + valuation_of(t), start=1)


entry("remark1-a", "Reciprocal of (t)_inf as a sum", slots=(T_MONO,), sides=(_ra_lhs, _ra_rhs))


def _bridge_lhs(o: int, e: Env, sign: int, plus: bool) -> TruncatedSeries:
    """``sum_{n>=1} sign^{n+1} q^n / ((q)_n (1 -/+ q^n))``."""

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n)
            yield d.shift(n).div_binomial(-1 if plus else 1, n).scale(sign ** (n + 1))

    return tails(terms(), e, lambda n: n, start=1)


@side("sum_{n>=1} q^n / ((q)_{n-1} (1 - q^n)^2)")
def _rbb_lhs(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count(1):
            yield d.shift(n).div_binomial(1, n).div_binomial(1, n)
            d = d.div_binomial(1, n)

    return tails(terms(), e, lambda n: n, start=1)


def _weighted_smallest_sum(o: int, e: Env, sign: int, odd: bool) -> TruncatedSeries:
    """``sum_n w(n) q^n / (s q^n)_inf`` with ``s = -sign`` and ``w(n) = n`` (or odd n only, weight 1)."""

    def terms():
        for n in count(1):
            if odd and n % 2 == 0:
                yield zero(o)
                continue
            yield divP(one(o), sign, None, n).shift(n).scale(1 if odd else n)

    return tails(terms(), e, lambda n: n, start=1)


@side("sum_{n>=1} n q^n / (q^n)_inf")
def _rbb_rhs(p, e):
    return _weighted_smallest_sum(e.order, e, 1, False)


@side("sum t(n) q^n, t(n) = total of smallest parts", oracle=True)
def _rbb_oracle(p, e):
    return oracle_series(e, lambda n: t_sum(n, e.budget))


entry("remark1-b", "Special case t = q, c = 1", sides=(_rbb_lhs, _rbb_rhs, _rbb_oracle))


@side("sum_{n>=1} q^n / ((q)_n (1 + q^n))")
def _rbc_lhs(p, e):
    return _bridge_lhs(e.order, e, 1, True)


@side("sum_{n>=1} q^{2n-1} / (q^{2n-1})_inf")
def _rbc_rhs(p, e):
    return _weighted_smallest_sum(e.order, e, 1, True)


@side("sum s(n) q^n, s(n) = partitions with odd smallest part", oracle=True)
def _rbc_oracle(p, e):
    return oracle_series(e, lambda n: s_odd(n, e.budget))


entry("remark1-c", "Special case t = q, c = -1", sides=(_rbc_lhs, _rbc_rhs, _rbc_oracle))


@side("sum_{n>=1} (-1)^{n+1} q^n / ((q)_n (1 - q^n))")
def _rbd_lhs(p, e):
    return _bridge_lhs(e.order, e, -1, False)


@side("sum_{n>=1} n q^n / (-q^n)_inf")
def _rbd_rhs(p, e):
    return _weighted_smallest_sum(e.order, e, -1, False)


@side("sum over P(n) of s(pi) (-1)^{#pi - 1}", oracle=True)
def _rbd_oracle(p, e):
    f = weighted("P", "smallest*(-1)^(num_parts-1)")
    return oracle_series(e, lambda n: f(n, e))


entry("remark1-d", "Special case t = -q, c = 1", sides=(_rbd_lhs, _rbd_rhs, _rbd_oracle))


@side("sum_{n>=1} (-1)^{n+1} q^n / ((q)_n (1 + q^n))")
def _rbe_lhs(p, e):
    return _bridge_lhs(e.order, e, -1, True)


@side("sum_{n>=1} q^{2n-1} / (-q^{2n-1})_inf")
def _rbe_rhs(p, e):
    return _weighted_smallest_sum(e.order, e, -1, True)


@side("sum over P(n) with odd smallest part of (-1)^{#pi - 1}", oracle=True)
def _rbe_oracle(p, e):
    f = weighted("P", "(1 - (-1)^smallest)/2*(-1)^(num_parts-1)")
    return oracle_series(e, lambda n: f(n, e))


entry("remark1-e", "Special case t = -q, c = -1", sides=(_rbe_lhs, _rbe_rhs, _rbe_oracle))


@side("sum lpt(n) q^n", oracle=True)
def _lpt_oracle(p, e):
    return oracle_series(e, lambda n: lpt(n, e.budget))


@side("sum l_o(n) q^n", oracle=True)
def _lodd_oracle(p, e):
    return oracle_series(e, lambda n: l_odd(n, e.budget))


entry("lpt-equals-t", "Largest-part appearances against smallest-part totals", sides=(_lpt_oracle, _rbb_oracle))
entry("lodd-equals-s", "Odd largest-part multiplicity against odd smallest part", sides=(_lodd_oracle, _rbc_oracle))

# ---------------------------------------------------------------------------
# finite analogues obtained from the engine with t -> 0


@side("sum_{n>=0} (q)_inf/(q)_n [(q^{n+1})_N - 1]")
def _afiv_lhs(p, e):
    o, big_n = e.order, p["N"]

    def terms():
        tail = P(1, None, o, 1)
        for n in count():
            yield tail * (P(1, big_n, o, n + 1) - 1)
            tail = tail.div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("sum_{n=1}^N [N,n] (-1)^n q^{n(n+1)/2} (q)_n / (1 - q^n)")
def _afiv_rhs(p, e):
    o, big_n = e.order, p["N"]
    s = zero(o)
    for n in range(1, big_n + 1):
        s = s + (gaussian_binomial(big_n, n, o) * P(1, n - 1, o, 1)).shift(tri(n)).scale((-1) ** n)
    return s


entry("af-finite-iv", "Finite tails weighted by (q^{n+1})_inf", slots=(N,), sides=(_afiv_lhs, _afiv_rhs))


@side("sum_{n>=0} [((q^{N+1})_n/(q)_n)^2 - 1/(q)_N^2]")
def _afvii_lhs(p, e):
    o, big_n = e.order, p["N"]
    limit = divP(divP(one(o), 1, big_n, 1), 1, big_n, 1)

    def terms():
        r = one(o)
        for n in count():
            yield r * r - limit
            r = r.mul_binomial(1, big_n + n + 1).div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: n + 1)


@side("1/(q)_N^2 sum_{n=1}^N [N,n] (-1)^n q^{n(n+1)/2}/(1-q^n) ((q)_N/(q^{n+1})_N + 1)")
def _afvii_rhs(p, e):
    o, big_n = e.order, p["N"]
    qn = P(1, big_n, o, 1)
    s = zero(o)
    for n in range(1, big_n + 1):
        bracket = divP(qn, 1, big_n, n + 1) + 1
        t = gaussian_binomial(big_n, n, o).shift(tri(n)).div_binomial(1, n).scale((-1) ** n)
        s = s + t * bracket
    return divP(divP(s, 1, big_n, 1), 1, big_n, 1)


entry("af-finite-vii", "Finite tails of the squared quotient", slots=(N,), sides=(_afvii_lhs, _afvii_rhs))


@side("1/((q)_N (q)_inf) sum_{n>=0} [(q)_n/(q^{N+1})_n - (q)_N] (-1)^n q^{n(n+1)/2}/(q)_n")
def _afixa_lhs(p, e):
    o, big_n = e.order, p["N"]
    qn = P(1, big_n, o, 1)

    def terms():
        inv = one(o)  # 1/(q^{N+1})_n
        d = one(o)  # 1/(q)_n
        for n in count():
            yield (inv - qn * d).shift(tri(n)).scale((-1) ** n)
            inv = inv.div_binomial(1, big_n + n + 1)
            d = d.div_binomial(1, n + 1)

    total = tails(terms(), e, tri)
    return divP(divP(total, 1, big_n, 1), 1, None, 1)


@side("sum_{n>=1} [N+n-1, n] q^n / (q)_n")
def _afixa_rhs(p, e):
    o, big_n = e.order, p["N"]

    def terms():
        for n in count(1):
            yield divP(gaussian_binomial(big_n + n - 1, n, o).shift(n), 1, n, 1)

    return tails(terms(), e, lambda n: n, start=1)


entry("af-finite-ix-a", "Finite analogue with t = q, a = 0", slots=(N,), sides=(_afixa_lhs, _afixa_rhs))


@side("(q)_N/(q)_inf sum_{n>=0} [(q^{N+1})_n/(q)_n - 1/(q)_N] (-1)^n q^{n(n+1)/2}/(q)_n")
def _afixb_lhs(p, e):
    o, big_n = e.order, p["N"]
    inv_qn = divP(one(o), 1, big_n, 1)

    def terms():
        r = one(o)  # (q^{N+1})_n/(q)_n
        d = one(o)  # 1/(q)_n
        for n in count():
            yield ((r - inv_qn) * d).shift(tri(n)).scale((-1) ** n)
            r = r.mul_binomial(1, big_n + n + 1).div_binomial(1, n + 1)
            d = d.div_binomial(1, n + 1)

    total = tails(terms(), e, lambda n: tri(n) + n + 1)
    return divP(P(1, big_n, o, 1) * total, 1, None, 1)


def gaussian_quotient_sum(o: int, e: Env, big_n: int, top_shift: bool) -> TruncatedSeries:
    """``sum_{n>=1} [M, n] (-1)^n q^{n(n+1)/2} / (q)_n`` with ``M = N + n - 1`` or ``M = N``."""

    def terms():
        for n in count(1):
            top = big_n + n - 1 if top_shift else big_n
            yield divP(gaussian_binomial(top, n, o).shift(tri(n)).scale((-1) ** n), 1, n, 1)

    return tails(terms(), e, tri, start=1)


@side("sum_{n=1}^N [N, n] (-1)^n q^{n(n+1)/2} / (q)_n")
def _afixb_rhs(p, e):
    return gaussian_quotient_sum(e.order, e, p["N"], False)


entry(
    "af-finite-ix-b",
    "Finite analogue with a = q, t -> 0",
    slots=(N,),
    sides=(_afixb_lhs, _afixb_rhs),
    note="the Gaussian factor is [N, n]; the shifted top N + n - 1 does not hold",
)


@side("sum_{n>=0} [1/(q)_n - 1/(q)_inf] (-1)^n q^{n(n+1)/2} / (q)_n")
def _afl_lhs(p, e):
    o = e.order

    def terms():
        full = divP(one(o), 1, None, 1)
        d = one(o)
        for n in count():
            yield ((d - full) * d).shift(tri(n)).scale((-1) ** n)
            d = d.div_binomial(1, n + 1)

    return tails(terms(), e, lambda n: tri(n) + n + 1)


@side("sum_{n>=1} (-1)^n q^{n(n+1)/2} / (q)_n^2")
def _afl_rhs(p, e):
    o = e.order

    def terms():
        d = one(o)
        for n in count(1):
            d = d.div_binomial(1, n).div_binomial(1, n)
            yield d.shift(tri(n)).scale((-1) ** n)

    return tails(terms(), e, tri, start=1)


entry("af-limit-identity", "Limit of the a = q finite analogue", sides=(_afl_lhs, _afl_rhs))

# ---------------------------------------------------------------------------
# weighted partition identities


@side("sigma(q) - (-q)_inf")
def _spw_series(p, e):
    o = e.order
    return sigma_series(o) - P(-1, None, o, 1)


@side("sum over D(n) of (-1)^rank, minus the number of distinct-part partitions", oracle=True)
def _spw_left(p, e):
    f = weighted("D", "(-1)^rank - 1")
    return oracle_series(e, lambda n: f(n, e))


def sigma_prime_convolution(n: int, upper: int) -> Fraction | int:
    """``sum_{k=0}^{upper} d(k) sigma'(n-k)`` with d counting distinct-part partitions."""
    total = sum(Fraction(d_distinct(k)) * sigma_prime(n - k) for k in range(upper + 1))
    return total.numerator if total.denominator == 1 else total


def b_count(n: int) -> int:
    return sum(1 for _ in enumerate_partitions(ClassSpec("B", n)))


@side("2 (sum_{k<n} d(k) sigma'(n-k) - |B(n)|)", oracle=True)
def _spw_right(p, e):
    return oracle_series(e, lambda n: 2 * (sigma_prime_convolution(n, n - 1) - b_count(n)))


entry(
    "sigma-prime-weighted",
    "Rank-signed distinct partitions against B-partitions and sigma'",
    sides=(_spw_series, _spw_left, _spw_right),
)


def agl_weighted_left(n: int, c, budget: int | None = None):
    """``sum_k c^k sum (-1)^{#pi + 1}`` over distinct-part partitions of n with a part larger than k."""
    total = Fraction(0)
    for parts in enumerate_partitions(ClassSpec("D", n)):
        if not parts:
            continue
        sign = -((-1) ** len(parts))
        total += sign * sum(Fraction(c) ** k for k in range(parts[0]))
    return total.numerator if total.denominator == 1 else total


def agl_weighted_right(n: int, c):
    """``sum over B(n) of c^(#s - 1) (-1)^(#pi - #s)``."""
    return weighted_sum(ClassSpec("B", n), "c^(smallest_mult-1)*(-1)^(num_parts-smallest_mult)", {"c": c})


@side("sum_{n>=0} c^n [(q)_n - (q)_inf]")
def _aglw_series(p, e):
    return _ct_tails({"t": Monomial(1, 1), "c": p["c"]}, e)


@side("sum_k c^k sum over D(n) with largest part > k of (-1)^{#pi+1}", oracle=True)
def _aglw_left(p, e):
    return oracle_series(e, lambda n: agl_weighted_left(n, p["c"]))


@side("sum over B(n) of c^{#s-1} (-1)^{#pi - #s}", oracle=True)
def _aglw_right(p, e):
    return oracle_series(e, lambda n: agl_weighted_right(n, p["c"]))


entry(
    "agl-weighted",
    "c-weighted distinct partitions against B-partitions",
    slots=(C_RAT,),
    sides=(_aglw_series, _aglw_left, _aglw_right),
    default_order=30,
    note="left classes need a part larger than k; right weight is c^(#s-1) (-1)^(#pi-#s)",
)


@side("sum_{n>=1} (1 + c + ... + c^{n-1}) (q)_{n-1} q^n")
def _nz_rhs(p, e):
    o, c = e.order, p["c"]

    def terms():
        s = one(o)
        geo = zero(o)
        for n in count(1):
            geo = geo + times_power(one(o), c, n - 1)
            yield (geo * s).shift(n)
            s = s.mul_binomial(1, n)

    return tails(terms(), e, lambda n: n, start=1)


@side("sum_{n>=0} c^n [(q)_n - (q)_inf]")
def _nz_lhs(p, e):
    return _ct_tails({"t": Monomial(1, 1), "c": p["c"]}, e)


entry("new-zagier", "c-weighted tails of (q)_n", slots=(C_RAT,), sides=(_nz_lhs, _nz_rhs))
