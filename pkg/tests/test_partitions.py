from __future__ import annotations

from fractions import Fraction

import pytest

from qtails.errors import BudgetExceeded, WeightSpecError
from qtails.partitions import (
    ClassSpec,
    Partition,
    compile_weight,
    crank,
    crank_counts,
    crank_moment,
    d_distinct,
    d_divisors,
    enumerate_partitions,
    ffw,
    generating_series,
    l_odd,
    lpt,
    partition_count,
    s_odd,
    sigma_prime,
    spt,
    stats,
    t_sum,
    weighted_sum,
)
from qtails.series import Monomial, div_free_product, div_product, one, pochhammer_inf, sum_formal


def naive(n: int, top: int | None = None) -> list[tuple]:
    """All partitions of n with parts <= top, by plain recursion."""
    top = n if top is None else top
    if n == 0:
        return [()]
    out = []
    for p in range(min(n, top), 0, -1):
        out += [(p,) + rest for rest in naive(n - p, p)]
    return out


def b_member(parts: tuple) -> bool:
    if not parts:
        return True
    s = parts[-1]
    rest = [p for p in parts if p != s]
    return len(set(rest)) == len(rest)


def bprime_member(parts: tuple) -> bool:
    if not parts:
        return True
    l = parts[0]
    rest = [p for p in parts if p != l]
    return len(set(rest)) == len(rest)


# -- enumeration


def test_small_classes():
    assert list(enumerate_partitions(ClassSpec("D", 3))) == [(3,), (2, 1)]
    assert list(enumerate_partitions(ClassSpec("B", 3))) == [(3,), (2, 1), (1, 1, 1)]
    assert list(enumerate_partitions(ClassSpec("D_k", 4, 1))) == [(4,)]
    assert list(enumerate_partitions(ClassSpec("P", 0))) == [()]


@pytest.mark.parametrize("n", range(0, 19))
def test_enumeration_matches_naive_filter(n):
    everything = naive(n)
    assert list(enumerate_partitions(ClassSpec("P", n))) == everything
    assert list(enumerate_partitions(ClassSpec("D", n))) == [p for p in everything if len(set(p)) == len(p)]
    assert list(enumerate_partitions(ClassSpec("D_k", n, 2))) == [p for p in everything if len(set(p)) == len(p) and all(x > 2 for x in p)]
    assert list(enumerate_partitions(ClassSpec("B", n))) == [p for p in everything if b_member(p)]
    assert list(enumerate_partitions(ClassSpec("B'", n))) == [p for p in everything if bprime_member(p)]


def test_partition_counts_match_euler_product():
    order = 40
    inv = div_product(one(order), 1, 1, 1, None)
    for n in range(order + 1):
        assert sum(1 for _ in enumerate_partitions(ClassSpec("P", n))) == inv[n] == partition_count(n)


def test_distinct_counts_match_product():
    order = 40
    prod = div_free_product(one(order), -1, 1, 1, None)
    for n in range(order + 1):
        assert d_distinct(n) == prod[n] == sum(1 for _ in enumerate_partitions(ClassSpec("D", n)))


def test_b_counts_match_series():
    # |B(n)| is the q^n coefficient of sum_m q^m/(1-q^m) prod_{j>m}(1+q^j)
    order = 40

    def terms():
        m = 1
        while True:
            yield div_free_product(one(order), -1, m + 1, 1, None).shift(m).div_binomial(1, m)
            m += 1

    s = sum_formal(terms(), order, start=1, bound=lambda m: m)
    for n in range(1, order + 1):
        assert sum(1 for _ in enumerate_partitions(ClassSpec("B", n))) == s[n]


def test_partition_rejects_bad_parts():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((0,))
    with pytest.raises(ValueError):
        ClassSpec("X", 3)


# -- statistics


def test_stats_examples():
    assert stats((2, 1)).rank == 0
    s = stats((1, 1, 1))
    assert s.smallest_mult == 3 and s.largest_mult == 3
    s = stats((5, 3, 3, 1))
    assert s.rank == 1 and s.smallest_mult == 1 and s.num_distinct == 3
    assert stats(()) == (0,) * 7


def test_crank_examples():
    assert crank((2, 2)) == 2
    assert crank((3, 1)) == 0
    assert crank((1, 1, 1, 1)) == -4
    assert sorted(crank(p) for p in naive(4)) == [-4, -2, 0, 2, 4]


@pytest.mark.parametrize("n", range(2, 31))
def test_crank_counts_sum_to_p(n):
    counts = crank_counts(n)
    assert sum(counts.values()) == partition_count(n)
    assert crank_moment(n) == sum(m * c for m, c in counts.items() if m > 0)


def test_crank_symmetry():
    for n in range(2, 25):
        counts = crank_counts(n)
        assert all(counts.get(-m) == c for m, c in counts.items())


def test_crank_moment_at_one_uses_convention():
    assert crank_moment(1) == 1
    with pytest.raises(ValueError):
        crank_counts(1)


# -- counting functions


def brute(n: int, fn) -> int:
    return sum(fn(p) for p in naive(n))


@pytest.mark.parametrize("n", range(1, 21))
def test_counting_functions_against_brute_force(n):
    assert spt(n) == brute(n, lambda p: p.count(p[-1]))
    assert lpt(n) == brute(n, lambda p: p.count(p[0]))
    assert t_sum(n) == brute(n, lambda p: p[-1])
    assert l_odd(n) == brute(n, lambda p: p.count(p[0]) % 2)
    assert s_odd(n) == brute(n, lambda p: p[-1] % 2)


def test_counting_examples():
    assert lpt(4) == 9 == t_sum(4)
    assert l_odd(3) == 3 == s_odd(3)
    assert spt(1) == 1


def test_divisor_functions():
    assert d_divisors(6) == 4
    assert d_distinct(6) == 4
    assert sigma_prime(0) == Fraction(1, 2)
    assert sigma_prime(4) == -1
    assert [d_divisors(n) for n in range(1, 13)] == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]


def test_ffw_examples():
    assert ffw(6, 1) == 4
    assert ffw(4, 1) == 3
    # a global minus keeps ffw(n, 1) = d(n); the single partition 1 contributes c
    assert ffw(1, Fraction(2, 3)) == Fraction(2, 3)


@pytest.mark.parametrize("c", [1, -1, Fraction(1, 2), 2])
def test_ffw_against_brute_force(c):
    for n in range(1, 19):
        want = -sum(Fraction(-c) ** len(p) * p[-1] for p in naive(n) if len(set(p)) == len(p))
        assert ffw(n, c) == want


# -- weights


def test_weighted_sum_examples():
    assert weighted_sum(ClassSpec("D", 3), "(-1)^num_parts - (-1)^rank") == -2
    assert weighted_sum(ClassSpec("B", 3), "2*(-1)^num_parts") == -2
    assert weighted_sum(ClassSpec("D", 1), "(-1)^num_parts") == -1
    assert weighted_sum(ClassSpec("B", 3), "(-c)^(smallest_mult-1)", {"c": 2}) == 6


def test_weighted_sum_accepts_callables_and_skips_empty():
    assert weighted_sum(ClassSpec("P", 0), "1") == 0
    assert weighted_sum(ClassSpec("P", 5), lambda parts: len(parts)) == sum(len(p) for p in naive(5))


def test_weight_language_rejects_other_syntax():
    for bad in ("__import__('os')", "num_parts % 2", "foo + 1", "abs(rank)", "1.5*rank", "rank^(1/2)"):
        with pytest.raises(WeightSpecError):
            w = compile_weight(bad)
            w((3, 1))


def test_weight_crank_and_size():
    assert weighted_sum(ClassSpec("P", 4), "crank") == 0
    assert weighted_sum(ClassSpec("P", 4), "size") == 20


# -- generating series


def test_generating_series_examples():
    assert list(generating_series("class-count", 6, cls="D")) == [1, 1, 1, 2, 2, 3, 4]
    assert generating_series("crank-moment", 4)[4] == 6
    assert list(generating_series("spt", 3)) == [0, 1, 3, 5]


def test_generating_series_ffw_matches_divisors():
    s = generating_series("ffw_c", 30)
    assert [s[n] for n in range(1, 31)] == [d_divisors(n) for n in range(1, 31)]


def test_budget():
    with pytest.raises(BudgetExceeded):
        spt(30, budget=1000)
    with pytest.raises(BudgetExceeded):
        generating_series("spt", 30, budget=1000)


def test_pentagonal_sanity():
    # enumeration-free cross-check of the series used as an oracle above
    assert list(pochhammer_inf(Monomial(1, 1), 1, 7)) == [1, -1, -1, 0, 0, 1, 0, 1]
