"""Exact truncated power series in q over the rationals.

A :class:`TruncatedSeries` tracks the coefficients of ``q^0 .. q^order``.
Coefficients are Python ``int`` or :class:`fractions.Fraction`; integer
series stay integer through every ring operation, which keeps the large
order computations cheap.

Binary operations truncate to the smaller of the two orders and never
extend a series silently.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, count
from numbers import Rational
from operator import add as _add, sub as _sub
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import (
    ArityError,
    BindingError,
    NonConvergentSum,
    NotAUnit,
    PoleError,
    SubstitutionError,
)

ABOVE_TRUNCATION = math.inf
DEFAULT_GUARD = 50

Scalar = Union[int, Fraction]


def _norm(x) -> Scalar:
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


def _reciprocal(x: Scalar) -> Scalar:
    if x == 1 or x == -1:
        return int(x)
    return _norm(Fraction(1) / x)


# ---------------------------------------------------------------------------
# monomials and parameter bindings


@dataclass(frozen=True)
class Monomial:
    """The scalar multiple ``coef * q**exp`` (``exp >= 0``)."""

    coef: Scalar
    exp: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coef", _norm(self.coef))
        if self.exp < 0:
            raise ValueError("negative exponents are not representable")

    @property
    def valuation(self) -> float:
        return self.exp if self.coef else ABOVE_TRUNCATION

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coef * other.coef, self.exp + other.exp)
        if isinstance(other, Rational):
            return Monomial(self.coef * other, self.exp)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> Monomial:
        return Monomial(-self.coef, self.exp)

    def shift(self, e: int) -> Monomial:
        return Monomial(self.coef, self.exp + e)

    def __pow__(self, n: int) -> Monomial:
        return Monomial(self.coef**n, self.exp * n)

    def series(self, order: int) -> TruncatedSeries:
        return monomial_series(self.coef, self.exp, order)

    def __str__(self) -> str:
        c = "" if self.coef == 1 else "-" if self.coef == -1 else f"{self.coef}*"
        e = "q" if self.exp == 1 else f"q^{self.exp}"
        return f"{c}{e}" if self.exp else str(self.coef)


ParamValue = Union[int, Fraction, Monomial]

PARAM_NAMES = ("a", "b", "c", "t", "alpha", "beta", "gamma")

_VALUE_RE = re.compile(
    r"""^\s*(?:(?P<coef>[+-]?\d+(?:/\d+)?)\s*\*?\s*)?
        (?:(?P<sign>[+-])?\s*q(?:\s*\^\s*(?P<exp>\d+))?)?\s*$""",
    re.VERBOSE,
)


def parse_value(text: str) -> ParamValue:
    """Parse ``p/q`` into a Fraction and ``p/q*q^m`` (or ``q``, ``-q^2``) into a Monomial."""
    m = _VALUE_RE.match(text)
    if not m or (m.group("coef") is None and "q" not in text):
        raise BindingError(f"cannot parse parameter value {text!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if "q" not in text:
        return _norm(coef)
    if m.group("sign") == "-":
        coef = -coef
    exp = int(m.group("exp")) if m.group("exp") else 1
    if exp < 1:
        raise BindingError("monomial parameters need an exponent >= 1")
    return Monomial(coef, exp)


def format_value(value) -> str:
    if isinstance(value, Monomial):
        return str(value)
    if isinstance(value, Rational):
        return str(_norm(value))
    return str(value)


@dataclass(frozen=True)
class ParamBinding:
    """A named parameter bound to a rational constant or to ``r*q^m`` with ``m >= 1``."""

    name: str
    value: ParamValue

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise BindingError(f"unknown parameter name {self.name!r}")
        if isinstance(self.value, Monomial):
            if self.value.exp < 1:
                raise BindingError("monomial bindings need an exponent >= 1")
        else:
            object.__setattr__(self, "value", _norm(self.value))

    @classmethod
    def parse(cls, text: str) -> ParamBinding:
        name, sep, rhs = text.partition("=")
        if not sep:
            raise BindingError(f"expected name=value, got {text!r}")
        return cls(name.strip(), parse_value(rhs))


def binding_set(bindings: Iterable[ParamBinding]) -> dict[str, ParamValue]:
    out: dict[str, ParamValue] = {}
    for b in bindings:
        if b.name in out:
            raise BindingError(f"parameter {b.name!r} bound twice")
        out[b.name] = b.value
    return out


def as_monomial(x) -> Monomial | None:
    """View a scalar, Monomial or single-term series as a Monomial (None otherwise)."""
    if isinstance(x, Monomial):
        return x
    if isinstance(x, Rational):
        return Monomial(x, 0)
    if isinstance(x, TruncatedSeries):
        nz = [(i, c) for i, c in enumerate(x.coeffs) if c]
        if not nz:
            return Monomial(0, 0)
        if len(nz) == 1:
            return Monomial(nz[0][1], nz[0][0])
        return None
    raise TypeError(f"cannot interpret {x!r} as a q-monomial")


def valuation_of(x) -> float:
    """Valuation of a parameter value; rational constants have valuation 0 (or inf when zero)."""
    m = as_monomial(x)
    if m is None:
        return x.valuation()
    return m.valuation


# ---------------------------------------------------------------------------
# the series type


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients of ``q^0 .. q^order``; immutable."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ArityError("coefficient count must equal order + 1")

    # -- inspection --------------------------------------------------------

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.coeffs)

    def valuation(self) -> float:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return ABOVE_TRUNCATION

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else "q" if i == 1 else f"q^{i}"
            if i and c == 1:
                terms.append(mono)
            elif i and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(q^{self.order + 1})"

    # -- ring structure ----------------------------------------------------

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ArityError("cannot extend a truncated series")
        if order == self.order:
            return self
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(n, tuple(map(_add, self.coeffs[: n + 1], other.coeffs[: n + 1])))
        if isinstance(other, Rational):
            return TruncatedSeries(self.order, (_norm(self.coeffs[0] + other),) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(n, tuple(map(_sub, self.coeffs[: n + 1], other.coeffs[: n + 1])))
        if isinstance(other, Rational):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(n, _convolve(self.coeffs, other.coeffs, n))
        if isinstance(other, Monomial):
            return self.shift(other.exp).scale(other.coef)
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, r) -> TruncatedSeries:
        r = _norm(r)
        if r == 1:
            return self
        return TruncatedSeries(self.order, tuple(c * r for c in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * invert(other)
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(_reciprocal(_norm(other)))
        return NotImplemented

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            return invert(self) ** (-n)
        result = one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, m: int) -> TruncatedSeries:
        """Multiply by ``q^m``."""
        if m == 0:
            return self
        if m > self.order:
            return zero(self.order)
        return TruncatedSeries(self.order, (0,) * m + self.coeffs[: self.order + 1 - m])

    # -- sparse factors, O(order) each ---------------------------------------

    def mul_binomial(self, r, e: int) -> TruncatedSeries:
        """Multiply by ``1 - r*q^e``."""
        r = _norm(r)
        if not r or e > self.order:
            return self
        c = self.coeffs
        if e == 0:
            return self.scale(1 - r)
        if r == 1:
            tail = tuple(map(_sub, c[e:], c))
        else:
            tail = tuple(x - r * y for x, y in zip(c[e:], c))
        return TruncatedSeries(self.order, c[:e] + tail)

    def div_binomial(self, r, e: int) -> TruncatedSeries:
        """Divide by ``1 - r*q^e``."""
        r = _norm(r)
        if not r or e > self.order:
            return self
        if e == 0:
            if r == 1:
                raise PoleError("division by 1 - 1")
            return self.scale(_reciprocal(1 - r))
        out = list(self.coeffs)
        if r == 1:
            for rho in range(e):
                out[rho::e] = accumulate(out[rho::e])
        else:
            for rho in range(e):
                out[rho::e] = accumulate(out[rho::e], lambda acc, x: x + r * acc)
        return TruncatedSeries(self.order, tuple(out))

    def mul_poly(self, poly: dict[int, Scalar]) -> TruncatedSeries:
        """Multiply by a sparse polynomial given as ``{exponent: coefficient}``."""
        n = self.order
        out = [0] * (n + 1)
        c = self.coeffs
        for e, r in poly.items():
            if not r or e > n:
                continue
            if r == 1:
                out[e:] = map(_add, out[e:], c)
            elif r == -1:
                out[e:] = map(_sub, out[e:], c)
            else:
                out[e:] = [x + r * y for x, y in zip(out[e:], c)]
        return TruncatedSeries(n, tuple(out))


def _convolve(a: Sequence, b: Sequence, n: int) -> tuple:
    a = a[: n + 1]
    b = b[: n + 1]
    # outer loop over the sparser operand
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        seg = b[: n + 1 - i]
        if ai == 1:
            out[i:] = map(_add, out[i:], seg)
        elif ai == -1:
            out[i:] = map(_sub, out[i:], seg)
        else:
            out[i:] = [x + ai * y for x, y in zip(out[i:], seg)]
    return tuple(out)


# ---------------------------------------------------------------------------
# constructors


def make(order: int, coeffs: Sequence = ()) -> TruncatedSeries:
    """Series of the given order; missing trailing coefficients are zero."""
    if order < 0:
        raise ArityError("order must be nonnegative")
    if len(coeffs) > order + 1:
        raise ArityError(f"{len(coeffs)} coefficients do not fit order {order}")
    vals = tuple(_norm(c) for c in coeffs)
    return TruncatedSeries(order, vals + (0,) * (order + 1 - len(vals)))


def zero(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, (0,) * (order + 1))


def one(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, (1,) + (0,) * order)


def monomial_series(r, e: int, order: int) -> TruncatedSeries:
    """``r * q^e`` as a series."""
    if e > order or not r:
        return zero(order)
    vals = [0] * (order + 1)
    vals[e] = _norm(r)
    return TruncatedSeries(order, tuple(vals))


def q(order: int) -> TruncatedSeries:
    return monomial_series(1, 1, order)


def as_series(x, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x.truncate(min(order, x.order))
    m = as_monomial(x)
    return monomial_series(m.coef, m.exp, order)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a - b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def neg(a: TruncatedSeries) -> TruncatedSeries:
    return -a


def scale(s: TruncatedSeries, r) -> TruncatedSeries:
    return s.scale(r)


def invert(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    c = s.coeffs
    if not c[0]:
        raise NotAUnit("constant term is zero")
    n = s.order
    nz = [(k, ck) for k, ck in enumerate(c) if k and ck]
    # sparse divisors go through the binomial recurrences
    if len(nz) == 1:
        k, ck = nz[0]
        return one(n).div_binomial(-_norm(Fraction(ck) / c[0]), k).scale(_reciprocal(c[0]))
    inv0 = _reciprocal(c[0])
    b = [0] * (n + 1)
    b[0] = inv0
    for m in range(1, n + 1):
        acc = 0
        for k, ck in nz:
            if k > m:
                break
            bk = b[m - k]
            if bk:
                acc += ck * bk
        b[m] = _norm(-acc * inv0) if acc else 0
    return TruncatedSeries(n, tuple(b))


# ---------------------------------------------------------------------------
# q-series building blocks


def pochhammer(a, step: int, n: int, order: int | None = None) -> TruncatedSeries:
    """``(a; q^step)_n``, the product of ``1 - a*q^(step*j)`` for ``0 <= j < n``.

    ``a`` may be a rational, a :class:`Monomial` or a general series; ``order``
    defaults to the order of ``a`` when it is a series.
    """
    if step < 1 or n < 0:
        raise ValueError("need step >= 1 and n >= 0")
    if order is None:
        if not isinstance(a, TruncatedSeries):
            raise TypeError("order is required for scalar or monomial bases")
        order = a.order
    m = as_monomial(a)
    if m is None:
        out = one(order)
        base = a.truncate(order)
        for j in range(n):
            if base.valuation() + step * j > order:
                break
            out = out - out * base.shift(step * j)
        return out
    return div_free_product(one(order), m.coef, m.exp, step, n)


def div_free_product(s: TruncatedSeries, r, e: int, step: int, n: int | None) -> TruncatedSeries:
    """Multiply ``s`` by the product of ``1 - r*q^(e + step*j)`` over ``j < n`` (``n=None``: all j)."""
    if not r:
        return s
    for j in count() if n is None else range(n):
        ex = e + step * j
        if ex > s.order:
            break
        s = s.mul_binomial(r, ex)
        if ex == 0 and r == 1:
            return zero(s.order)
    return s


def div_product(s: TruncatedSeries, r, e: int, step: int, n: int | None) -> TruncatedSeries:
    """Divide ``s`` by the product of ``1 - r*q^(e + step*j)`` over ``j < n`` (``n=None``: all j)."""
    if not r:
        return s
    for j in count() if n is None else range(n):
        ex = e + step * j
        if ex > s.order:
            break
        s = s.div_binomial(r, ex)
    return s


def poch(a, n: int, order: int, step: int = 1) -> TruncatedSeries:
    """Shorthand for ``(a; q^step)_n`` with a monomial or rational base."""
    m = as_monomial(a)
    return div_free_product(one(order), m.coef, m.exp, step, n)


def poch_inf(a, order: int, step: int = 1) -> TruncatedSeries:
    m = as_monomial(a)
    if m.exp == 0 and step == 0:
        raise ValueError("infinite product with constant factors")
    return div_free_product(one(order), m.coef, m.exp, step, None)


def inv_poch(a, n: int | None, order: int, step: int = 1, s: TruncatedSeries | None = None) -> TruncatedSeries:
    """``s / (a; q^step)_n`` (``n=None`` for the infinite product); ``s`` defaults to 1."""
    m = as_monomial(a)
    return div_product(one(order) if s is None else s, m.coef, m.exp, step, n)


def pochhammer_inf(a, step: int, order: int) -> TruncatedSeries:
    """``(a; q^step)_inf``, cut where every omitted factor is ``1 + O(q^(order+1))``."""
    if step < 1:
        raise ValueError("step must be positive")
    m = as_monomial(a)
    if m is None:
        v = a.valuation()
        out = one(order)
        base = a.truncate(min(order, a.order))
        for j in count():
            if v + step * j > order:
                break
            out = out - out * base.shift(step * j)
        return out
    return div_free_product(one(order), m.coef, m.exp, step, None)


_GAUSS_ROWS: dict[int, list[list[tuple]]] = {}


def _gauss_row(big_n: int, order: int) -> list[tuple]:
    rows = _GAUSS_ROWS.setdefault(order, [[(1,) + (0,) * order]])
    while len(rows) <= big_n:
        m = len(rows)
        prev = rows[-1]
        row = [prev[0]]
        for j in range(1, m):
            # [m, j] = [m-1, j-1] + q^j [m-1, j]
            shifted = (0,) * j + prev[j][: order + 1 - j] if j <= order else (0,) * (order + 1)
            row.append(tuple(map(_add, prev[j - 1], shifted)))
        row.append(row[0])
        rows.append(row)
    return rows[big_n]


def gaussian_binomial(big_n: int, n: int, order: int) -> TruncatedSeries:
    """The q-binomial coefficient ``[big_n, n]`` via the Pascal recurrence (0 unless 0 <= n <= big_n)."""
    if n < 0 or n > big_n or big_n < 0:
        return zero(order)
    return TruncatedSeries(order, _gauss_row(big_n, order)[n])


def rising_power_product(big_n: int, k: int, order: int) -> TruncatedSeries:
    """The polynomial ``prod_{j<k} (q^big_n - q^j)``, i.e. ``(q^-big_n)_k * q^(big_n*k)`` without Laurent terms."""
    out = one(order)
    for j in range(k):
        if j == big_n:
            return zero(order)
        out = out.mul_poly({big_n: 1, j: -1})
    return out


def geometric_fraction(c, m: int, order: int) -> TruncatedSeries:
    """``1/(1 - c*q^m)`` for a rational or monomial ``c``."""
    mono = as_monomial(c)
    if mono.exp + m == 0 and mono.coef == 1:
        raise PoleError("1/(1 - c) with c = 1")
    return one(order).div_binomial(mono.coef, mono.exp + m)


LAMBERT_FLAVORS = ("minus", "plus", "odd-plus", "odd-minus")


def lambert_sum(flavor: str, order: int, *, start: int = 1) -> TruncatedSeries:
    """Lambert series.

    ``minus``: sum q^n/(1-q^n); ``plus``: sum q^n/(1+q^n); ``odd-plus`` and
    ``odd-minus`` restrict to odd exponents.  ``start`` gives the first n
    (``start=0`` with ``plus`` contributes the constant 1/2).
    """
    if flavor not in LAMBERT_FLAVORS:
        raise ValueError(f"unknown Lambert flavor {flavor!r}")
    sign = 1 if flavor.endswith("minus") else -1
    odd = flavor.startswith("odd")
    out = [0] * (order + 1)
    n = start
    if n == 0:
        if not odd:
            if sign == 1:
                raise PoleError("n = 0 term of sum q^n/(1 - q^n)")
            out[0] = Fraction(1, 2)
        n = 1
    for n in range(n, order + 1):
        e = 2 * n - 1 if odd else n
        if e > order:
            break
        coef = 1
        for ex in range(e, order + 1, e):
            out[ex] += coef
            coef *= sign
    return make(order, out)


def eval_at_monomial(s: TruncatedSeries | Sequence, r, m: int, order: int) -> TruncatedSeries:
    """Substitute ``x -> r*q^m`` into the coefficient sequence of ``s``."""
    if m < 1:
        raise SubstitutionError("substitution needs a positive exponent")
    coeffs = s.coeffs if isinstance(s, TruncatedSeries) else tuple(s)
    r = _norm(r)
    out = [0] * (order + 1)
    power = 1
    for j, c in enumerate(coeffs):
        if m * j > order:
            break
        out[m * j] = _norm(c * power)
        power *= r
    if isinstance(s, TruncatedSeries) and m * (s.order + 1) <= order:
        raise ArityError("source series is too short for the requested order")
    return make(order, out)


# ---------------------------------------------------------------------------
# formal infinite sums


TermSource = Union[Callable[[int], TruncatedSeries], Iterable[TruncatedSeries]]


def sum_formal(
    terms: TermSource,
    order: int,
    *,
    start: int = 0,
    bound: Callable[[int], float] | None = None,
    guard: int = DEFAULT_GUARD,
) -> TruncatedSeries:
    """Sum of ``term(start) + term(start+1) + ...`` exact to ``order``.

    With ``bound`` (a lower bound on the valuation of term n) the sum stops
    as soon as ``bound(n) > order`` and every computed term is checked
    against the bound.  Without it the sum stops at the first term whose
    valuation exceeds ``order``.  Either way, ``guard`` consecutive terms that
    fail to raise the best valuation (or bound) seen so far abort with
    :class:`NonConvergentSum`.
    """
    it = map(terms, count(start)) if callable(terms) else iter(terms)
    total = zero(order)
    best = -math.inf
    stalled = 0
    for n in count(start):
        if bound is not None:
            lo = bound(n)
            if lo > order:
                break
            progress = lo
        try:
            term = next(it)
        except StopIteration:
            break
        if term.order < order:
            raise ArityError("term truncated below the requested order")
        v = term.truncate(order).valuation()
        if bound is None:
            if v > order:
                break
            progress = v
        elif v < lo:
            raise AssertionError(f"term {n} has valuation {v} below its bound {lo}")
        if progress > best:
            best = progress
            stalled = 0
        else:
            stalled += 1
            if stalled >= guard:
                raise NonConvergentSum(f"{guard} consecutive terms did not gain valuation (last n={n})")
        total = total + term.truncate(order)
    return total
