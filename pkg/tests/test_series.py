from __future__ import annotations

from fractions import Fraction
from itertools import count

import pytest

from qtails.errors import ArityError, BindingError, NonConvergentSum, NotAUnit, PoleError, SubstitutionError
from qtails.series import (
    Monomial,
    ParamBinding,
    binding_set,
    eval_at_monomial,
    gaussian_binomial,
    geometric_fraction,
    invert,
    lambert_sum,
    make,
    mul,
    one,
    parse_value,
    pochhammer,
    pochhammer_inf,
    q,
    rising_power_product,
    scale,
    sum_formal,
    zero,
)

F = Fraction


def expand(factors: list[dict[int, int]], order: int) -> list:
    """Multiply sparse polynomials {exp: coef} by hand; an oracle independent of the series type."""
    out = {0: 1}
    for f in factors:
        nxt: dict[int, int] = {}
        for e1, c1 in out.items():
            for e2, c2 in f.items():
                if e1 + e2 <= order:
                    nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
        out = nxt
    return [out.get(i, 0) for i in range(order + 1)]


# -- construction and ring operations


def test_make_pads_with_zeros():
    assert list(make(3, [1])) == [1, 0, 0, 0]
    assert make(2, [0, 1]) == q(2)


def test_make_rejects_too_many_coefficients():
    with pytest.raises(ArityError):
        make(1, [1, 1, 1])


def test_difference_of_squares():
    assert make(3, [1, 1]) * make(3, [1, -1]) == make(3, [1, 0, -1])


def test_scale_and_min_order():
    assert scale(q(3), F(1, 2)) == make(3, [0, F(1, 2)])
    assert mul(make(2, [1, 1]), make(5, [1, 1])).order == 2


def test_coefficients_stay_exact():
    s = make(2, [F(2, 4), 3])
    assert s[0] == F(1, 2) and isinstance(s[0], Fraction)
    assert type(s[1]) is int


def test_valuation():
    assert make(4, [0, 0, 3]).valuation() == 2
    assert zero(4).valuation() > 4


def test_invert_examples():
    assert invert(make(3, [1, -1])) == make(3, [1, 1, 1, 1])
    with pytest.raises(NotAUnit):
        invert(q(3))
    # (1+q)(1+q^2) = 1 + q + q^2 + q^3
    assert invert(make(5, [1, 1, 1, 1])) == make(5, [1, -1, 0, 0, 1, -1])


def test_division_operator_matches_invert():
    a, b = make(6, [2, 1, 0, 5]), make(6, [3, -1, F(1, 2)])
    assert a / b == a * invert(b)


# -- parameters


def test_parse_value_forms():
    assert parse_value("3/4") == F(3, 4)
    assert parse_value("-2") == -2
    assert parse_value("q") == Monomial(1, 1)
    assert parse_value("-q^2") == Monomial(-1, 2)
    assert parse_value("1/2*q^3") == Monomial(F(1, 2), 3)
    with pytest.raises(BindingError):
        parse_value("q^0")
    with pytest.raises(BindingError):
        parse_value("x")


def test_binding_rules():
    assert ParamBinding.parse("c=1/2").value == F(1, 2)
    with pytest.raises(BindingError):
        ParamBinding("z", 1)
    with pytest.raises(BindingError):
        binding_set([ParamBinding("a", 1), ParamBinding("a", 2)])


# -- Pochhammer symbols


def test_pochhammer_empty_product():
    assert pochhammer(F(3, 7), 1, 0, 5) == one(5)


def test_pochhammer_q_three():
    assert list(pochhammer(Monomial(1, 1), 1, 3, 6)) == [1, -1, -1, 0, 1, 1, -1]


def test_pochhammer_step_two():
    # (-q; q^2)_2 = (1 + q)(1 + q^3)
    assert list(pochhammer(Monomial(-1, 1), 2, 2, 6)) == expand([{0: 1, 1: 1}, {0: 1, 3: 1}], 6)


def test_pochhammer_accepts_series_base():
    base = make(8, [0, 1])
    assert pochhammer(base, 1, 3) == pochhammer(Monomial(1, 1), 1, 3, 8)


def pentagonal(order: int) -> list[int]:
    out = [0] * (order + 1)
    for k in count(0):
        hit = False
        for j in {k, -k}:
            e = j * (3 * j - 1) // 2
            if e <= order:
                out[e] = (-1) ** k
                hit = True
        if not hit:
            return out


def test_euler_product_is_pentagonal():
    assert list(pochhammer_inf(Monomial(1, 1), 1, 60)) == pentagonal(60)


def test_pochhammer_inf_trivial_and_doubled():
    assert pochhammer_inf(0, 1, 5) == one(5)
    assert list(pochhammer_inf(-1, 1, 5)) == [2 * x for x in expand([{0: 1, j: 1} for j in range(1, 6)], 5)]


# -- Gaussian binomials and the rising power product


def test_gaussian_binomial_examples():
    assert gaussian_binomial(7, 0, 10) == one(10)
    assert list(gaussian_binomial(4, 2, 6)) == [1, 1, 2, 1, 1, 0, 0]
    assert gaussian_binomial(2, 3, 6).is_zero()


def test_gaussian_binomial_is_quotient():
    order = 30
    for big_n in range(9):
        for n in range(big_n + 1):
            quot = pochhammer(Monomial(1, 1), 1, big_n, order) / (
                pochhammer(Monomial(1, 1), 1, n, order) * pochhammer(Monomial(1, 1), 1, big_n - n, order)
            )
            assert gaussian_binomial(big_n, n, order) == quot


def test_rising_power_product_examples():
    assert rising_power_product(4, 0, 10) == one(10)
    assert list(rising_power_product(2, 1, 3)) == [-1, 0, 1, 0]
    # (q^3 - 1)(q^3 - q) = q - q^3 - q^4 + q^6
    assert list(rising_power_product(3, 2, 7)) == [0, 1, 0, -1, -1, 0, 1, 0]
    assert rising_power_product(3, 4, 20).is_zero()


# -- geometric fractions, Lambert series and substitution


def test_geometric_fraction_examples():
    assert geometric_fraction(1, 1, 3) == make(3, [1, 1, 1, 1])
    with pytest.raises(PoleError):
        geometric_fraction(1, 0, 3)
    assert geometric_fraction(F(-1, 2), 2, 4) == make(4, [1, 0, F(-1, 2), 0, F(1, 4)])


def test_lambert_flavors():
    assert list(lambert_sum("minus", 6)) == [0, 1, 2, 2, 3, 2, 4]
    assert lambert_sum("plus", 6)[1] == 1
    assert lambert_sum("minus", 0).is_zero()
    # sum q^(2n-1)/(1 + q^(2n-1)) at q^3: from n=1 (+1 at q^3) and n=2 (+1 at q^3)
    assert lambert_sum("odd-plus", 6)[3] == 2


def test_lambert_is_divisor_count():
    s = lambert_sum("minus", 200)
    for n in range(1, 201):
        assert s[n] == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_eval_at_monomial_examples():
    assert eval_at_monomial([1] * 11, 1, 2, 10) == make(10, [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1])
    assert eval_at_monomial([0, 1], F(3, 2), 1, 4) == make(4, [0, F(3, 2)])
    c = F(2, 3)
    assert eval_at_monomial([c**j for j in range(20)], 1, 3, 15) == geometric_fraction(c, 3, 15)
    with pytest.raises(SubstitutionError):
        eval_at_monomial([1, 1], 1, 0, 4)


# -- formal sums


def test_sum_formal_geometric():
    s = sum_formal((q(10).shift(n - 1) for n in count(1)), 10, start=1)
    assert s == make(10, [0] + [1] * 10)


def test_sum_formal_tail_terms_stop_by_bound():
    order = 12
    seen = []

    def terms():
        for n in count(1):
            seen.append(n)
            yield pochhammer_inf(Monomial(1, n), 1, order) - 1

    sum_formal(terms(), order, start=1, bound=lambda n: n)
    assert max(seen) == order


def test_sum_formal_guard_fires_on_constant_terms():
    with pytest.raises(NonConvergentSum):
        sum_formal((one(5) for _ in count()), 5)
    with pytest.raises(NonConvergentSum):
        sum_formal((one(5) for _ in count()), 5, guard=3)


def test_sum_formal_bound_keeps_exact_zero_terms():
    # terms (1 - (-1)^n) q^n vanish at even n; stopping at the first zero term would lose q^3, q^5
    def terms():
        for n in count(1):
            yield q(8).shift(n - 1).scale(1 - (-1) ** n)

    s = sum_formal(terms(), 8, start=1, bound=lambda n: n)
    assert list(s) == [0, 2, 0, 2, 0, 2, 0, 2, 0]


def test_sum_formal_rejects_short_terms():
    with pytest.raises(ArityError):
        sum_formal(iter([one(3)]), 5)
