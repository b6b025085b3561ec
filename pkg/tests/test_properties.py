from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qtails.series import (
    Monomial,
    eval_at_monomial,
    gaussian_binomial,
    invert,
    make,
    one,
    pochhammer,
    pochhammer_inf,
    rising_power_product,
    sum_formal,
    zero,
)

CASES = settings(max_examples=1000, derandomize=True, deadline=None)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
nonzero = rationals.filter(bool)


@st.composite
def series(draw, order=None):
    n = draw(st.integers(0, 8)) if order is None else order
    return make(n, draw(st.lists(rationals, min_size=0, max_size=n + 1)))


@st.composite
def monomials(draw, max_exp=3):
    return Monomial(draw(nonzero), draw(st.integers(1, max_exp)))


def times_mono(s, x: Monomial, k: int = 1):
    m = x**k
    return s.shift(m.exp).scale(m.coef)


# -- ring laws


@CASES
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == zero(a.order)
    assert (a * b).order == min(a.order, b.order)


@CASES
@given(nonzero, series())
def test_inverse(c0, tail):
    s = make(tail.order, [c0] + list(tail)[1:])
    assert s * invert(s) == one(s.order)


# -- finite q-binomial expansions


@CASES
@given(st.integers(0, 8), monomials())
def test_finite_q_binomial(big_n, x):
    order = 40
    rhs = zero(order)
    for j in range(big_n + 1):
        rhs = rhs + times_mono(gaussian_binomial(big_n, j, order).shift(j * (j - 1) // 2).scale((-1) ** j), x, j)
    assert pochhammer(x, 1, big_n, order) == rhs


@CASES
@given(st.integers(0, 8), monomials())
def test_reciprocal_q_binomial(big_n, x):
    order = 40
    rhs = zero(order)
    for j in range(order // x.exp + 1):
        rhs = rhs + times_mono(gaussian_binomial(big_n + j - 1, j, order) if big_n else one(order).scale(int(j == 0)), x, j)
    assert invert(pochhammer(x, 1, big_n, order)) == rhs


@CASES
@given(st.one_of(rationals, monomials()), monomials())
def test_q_binomial_theorem(alpha, z):
    order = 40

    a = alpha if isinstance(alpha, Monomial) else Monomial(alpha, 0)

    def terms():
        s = one(order)  # (alpha)_n / (q)_n
        n = 0
        while True:
            yield times_mono(s, z, n)
            s = s.mul_binomial(a.coef, a.exp + n).div_binomial(1, n + 1)
            n += 1

    lhs = sum_formal(terms(), order, bound=lambda n: n * z.exp)
    az = alpha * z if isinstance(alpha, Monomial) else Monomial(alpha * z.coef, z.exp)
    rhs = pochhammer_inf(az, 1, order) * invert(pochhammer_inf(z, 1, order))
    assert lhs == rhs


# -- Pochhammer shifts and the Laurent-free product


@CASES
@given(st.integers(0, 6), st.integers(0, 6), monomials())
def test_shifted_pochhammer(big_n, n, x):
    # (x q^n)_N (x)_n = (x)_N (x q^N)_n
    order = 40
    lhs = pochhammer(x.shift(n), 1, big_n, order) * pochhammer(x, 1, n, order)
    rhs = pochhammer(x, 1, big_n, order) * pochhammer(x.shift(big_n), 1, n, order)
    assert lhs == rhs


@CASES
@given(st.integers(1, 8), st.data())
def test_rising_power_product(big_n, data):
    k = data.draw(st.integers(0, big_n))
    order = 80
    want = pochhammer(Monomial(1, big_n - k + 1), 1, k, order).shift(k * (k - 1) // 2).scale((-1) ** k)
    assert rising_power_product(big_n, k, order) == want


# -- Gaussian binomials


@CASES
@given(st.integers(0, 12), st.data())
def test_gaussian_binomial_shape(big_n, data):
    n = data.draw(st.integers(0, big_n))
    deg = n * (big_n - n)
    g = gaussian_binomial(big_n, n, deg + 3)
    coeffs = list(g)
    assert all(type(c) is int and c >= 0 for c in coeffs)
    assert coeffs[deg] > 0 and not any(coeffs[deg + 1 :])
    assert coeffs[: deg + 1] == coeffs[: deg + 1][::-1]
    q_ = Monomial(1, 1)
    quot = pochhammer(q_, 1, big_n, deg + 3) * invert(pochhammer(q_, 1, n, deg + 3) * pochhammer(q_, 1, big_n - n, deg + 3))
    assert g == quot


# -- swapping a double sum


@CASES
@given(st.lists(rationals, min_size=1, max_size=7), st.lists(rationals, min_size=1, max_size=7))
def test_swap_lemma(f, g):
    # sum_n f_n g(q^n) q^n = sum_n g_n f(q^(n+1))
    order = 40
    lhs = make(order, [f[0] * sum(g)])
    for n in range(1, len(f)):
        lhs = lhs + eval_at_monomial(g, 1, n, order).shift(n).scale(f[n])
    rhs = zero(order)
    for n in range(len(g)):
        rhs = rhs + eval_at_monomial(f, 1, n + 1, order).scale(g[n])
    assert lhs == rhs
    assert isinstance(lhs[0], (int, Fraction))
