"""Brute-force partition enumeration and partition statistics.

Everything here is computed by walking actual partitions, never from a
generating function, so it can serve as an independent oracle for the
series side of an identity.

Partitions are weakly decreasing tuples of positive integers.  Enumeration
order is lexicographically descending, e.g. ``(3,), (2, 1), (1, 1, 1)``.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple

from .errors import BudgetExceeded, WeightSpecError
from .series import TruncatedSeries, make

CLASSES = ("P", "D", "D_k", "B", "B'")
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ClassSpec:
    """A partition class of ``n``.

    ``P`` all partitions, ``D`` distinct parts, ``D_k`` distinct parts each
    greater than ``k``, ``B`` only the smallest part may repeat, ``B'`` only
    the largest part may repeat.
    """

    kind: str
    n: int
    k: int = 0

    def __post_init__(self):
        if self.kind not in CLASSES:
            raise ValueError(f"unknown partition class {self.kind!r}")
        if self.n < 0 or self.k < 0:
            raise ValueError("n and k must be nonnegative")


class Stats(NamedTuple):
    smallest: int
    largest: int
    num_parts: int
    rank: int
    smallest_mult: int
    largest_mult: int
    num_distinct: int


STAT_FIELDS = Stats._fields + ("crank", "size")


class Partition(tuple):
    """A weakly decreasing tuple of positive parts."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(parts)
        if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def stats(self) -> Stats:
        return stats(self)

    def crank(self) -> int:
        return crank(self)

    def __repr__(self) -> str:
        return "+".join(map(str, self)) or "()"


def stats(parts) -> Stats:
    """Smallest/largest part, part count, rank and multiplicities.

    The empty partition has every statistic equal to 0.
    """
    if not parts:
        return Stats(0, 0, 0, 0, 0, 0, 0)
    s, l, k = parts[-1], parts[0], len(parts)
    return Stats(s, l, k, l - k, parts.count(s), parts.count(l), len(set(parts)))


def crank(parts) -> int:
    """Andrews-Garvan crank: the largest part if there are no ones, else
    (number of parts exceeding the number of ones) - (number of ones).

    For the partition ``1`` this gives -1; the conventional n = 1 values
    are handled in :func:`crank_moment`.
    """
    if not parts:
        return 0
    ones = parts.count(1)
    if ones == 0:
        return parts[0]
    return sum(1 for p in parts if p > ones) - ones


# ---------------------------------------------------------------------------
# generators


def _all_partitions(n: int) -> Iterator[tuple]:
    # Zoghbi-Stojmenovic ZS1, reverse lexicographic order
    if n == 0:
        yield ()
        return
    x = [1] * n
    x[0] = n
    m = h = 1
    yield (n,)
    while x[0] != 1:
        if x[h - 1] == 2:
            m += 1
            x[h - 1] = 1
            h -= 1
        else:
            r = x[h - 1] - 1
            t = m - h + 1
            x[h - 1] = r
            while t >= r:
                h += 1
                x[h - 1] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h - 1] = t
        yield tuple(x[:m])


def _distinct(n: int, max_part: int, min_part: int = 1, prefix: tuple = ()) -> Iterator[tuple]:
    if n == 0:
        yield prefix
        return
    for p in range(min(n, max_part), min_part - 1, -1):
        rest = n - p
        top = p - 1
        # the remaining parts are distinct and lie in [min_part, p-1]
        if rest and (top < min_part or (top + min_part) * (top - min_part + 1) // 2 < rest):
            continue
        yield from _distinct(rest, top, min_part, prefix + (p,))


def _smallest_repeats(n: int, prev: int, prefix: tuple) -> Iterator[tuple]:
    if n == 0:
        yield prefix
        return
    if prefix and n % prev == 0:
        yield prefix + (prev,) * (n // prev)
    for p in range(min(n, prev - 1), 0, -1):
        yield from _smallest_repeats(n - p, p, prefix + (p,))


def _largest_repeats(n: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for top in range(n, 0, -1):
        for mult in range(n // top, 0, -1):
            head = (top,) * mult
            yield from _distinct(n - top * mult, top - 1, 1, head)


def enumerate_partitions(spec: ClassSpec) -> Iterator[Partition]:
    """Yield every partition in the class once, lexicographically descending."""
    n = spec.n
    if spec.kind == "P":
        raw = _all_partitions(n)
    elif spec.kind == "D":
        raw = _distinct(n, n)
    elif spec.kind == "D_k":
        raw = _distinct(n, n, spec.k + 1)
    elif spec.kind == "B":
        raw = _smallest_repeats(n, n + 1, ()) if n else iter([()])
    else:
        raw = _largest_repeats(n)
    for parts in raw:
        yield tuple.__new__(Partition, parts)


# ---------------------------------------------------------------------------
# budgets


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the standard coin-change recurrence (used only for budgeting)."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def _check_budget(n: int, budget: int) -> None:
    if partition_count(n) > budget:
        raise BudgetExceeded(f"p({n}) = {partition_count(n)} exceeds the budget {budget}")


# ---------------------------------------------------------------------------
# statistics over all partitions of n


class PTable(NamedTuple):
    count: int
    spt: int
    lpt: int
    t_sum: int
    l_odd: int
    s_odd: int
    crank_moment: int


@lru_cache(maxsize=256)
def _p_table(n: int) -> PTable:
    # ZS1 again, inlined: x[:h] holds the parts > 1 and x[h:m] the ones,
    # so every statistic is read off without building a tuple
    x = [1] * n
    x[0] = n
    m = h = 1
    spt = lpt = t_sum = l_odd = s_odd = moment = 0
    count = 0
    while True:
        count += 1
        top = x[0]
        if top == 1:
            # all ones (h is stale here)
            h = 0
            lm = m
        else:
            lm = 1
            while lm < h and x[lm] == top:
                lm += 1
        ones = m - h
        if ones:
            sm, s = ones, 1
            mu = 0
            while mu < h and x[mu] > ones:
                mu += 1
            cr = mu - ones
        else:
            s = x[h - 1]
            sm = 1
            while sm < h and x[h - 1 - sm] == s:
                sm += 1
            cr = top
        spt += sm
        lpt += lm
        t_sum += s
        l_odd += lm & 1
        s_odd += s & 1
        if cr > 0:
            moment += cr
        if top == 1:
            break
        if x[h - 1] == 2:
            m += 1
            x[h - 1] = 1
            h -= 1
        else:
            r = x[h - 1] - 1
            t = m - h + 1
            x[h - 1] = r
            while t >= r:
                h += 1
                x[h - 1] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h - 1] = t
    return PTable(count, spt, lpt, t_sum, l_odd, s_odd, moment)


def _table(n: int, budget: int) -> PTable:
    if n < 1:
        raise ValueError("n must be positive")
    _check_budget(n, budget)
    return _p_table(n)


def spt(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Total number of appearances of the smallest part over all partitions of n."""
    return _table(n, budget).spt


def lpt(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Total number of appearances of the largest part over all partitions of n."""
    return _table(n, budget).lpt


def t_sum(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Sum of the smallest parts (each counted once) over all partitions of n."""
    return _table(n, budget).t_sum


def l_odd(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Partitions of n whose largest part appears an odd number of times."""
    return _table(n, budget).l_odd


def s_odd(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Partitions of n whose smallest part is odd."""
    return _table(n, budget).s_odd


def crank_moment(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """``sum_{m >= 1} m * M(m, n)``; n = 1 uses the convention M(1, 1) = 1."""
    if n == 1:
        return 1
    return _table(n, budget).crank_moment


def crank_counts(n: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """``{m: M(m, n)}`` for n >= 2."""
    if n < 2:
        raise ValueError("crank counts are taken for n >= 2")
    _check_budget(n, budget)
    out: dict[int, int] = {}
    for parts in _all_partitions(n):
        m = crank(parts)
        out[m] = out.get(m, 0) + 1
    return out


# ---------------------------------------------------------------------------
# divisor-type functions


def d_divisors(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(2 if d * d != n else 1 for d in range(1, math.isqrt(n) + 1) if n % d == 0)


def d_distinct(n: int) -> int:
    """Number of partitions of n into distinct parts (1 for n = 0)."""
    return sum(1 for _ in _distinct(n, n))


def sigma_prime(k: int) -> Fraction | int:
    """``sum_{d | k} (-1)^(d-1)`` for k >= 1, and 1/2 at k = 0."""
    if k == 0:
        return Fraction(1, 2)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sum(1 if d % 2 else -1 for d in range(1, k + 1) if k % d == 0)


def _distinct_profile(n: int, min_part: int = 1) -> dict[tuple[int, int], int]:
    """Count distinct-part partitions of n by (number of parts, smallest part)."""
    prof: dict[tuple[int, int], int] = {}

    def walk(rest: int, top: int, k: int, last: int) -> None:
        if rest == 0:
            key = (k, last)
            prof[key] = prof.get(key, 0) + 1
            return
        for p in range(min(rest, top), min_part - 1, -1):
            r = rest - p
            # what is left must fit into distinct parts in [min_part, p-1]
            if r and (p - 1 + min_part) * (p - min_part) // 2 < r:
                break
            walk(r, p - 1, k + 1, p)

    if n:
        walk(n, n, 0, 0)
    return prof


def ffw(n: int, c=1) -> Fraction | int:
    """Weighted count over distinct-part partitions of n: ``-(-c)^#parts * smallest``.

    The overall minus makes ``ffw(n, 1)`` the divisor count d(n).
    """
    if n < 1:
        raise ValueError("n must be positive")
    c = Fraction(c)
    total = Fraction(0)
    for (k, s), cnt in _distinct_profile(n).items():
        total -= cnt * s * (-c) ** k
    return total.numerator if total.denominator == 1 else total


# ---------------------------------------------------------------------------
# weighted sums


_ALLOWED_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div}


def compile_weight(expr: str, params: dict | None = None) -> Callable[[tuple], Fraction]:
    """Compile a weight such as ``(-1)^num_parts - (-1)^rank`` or ``(-c)^(smallest_mult-1)``.

    Names are partition statistics (see ``STAT_FIELDS``) or parameters
    supplied in ``params``; ``^`` is exponentiation and exponents must
    evaluate to integers.
    """
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise WeightSpecError(f"malformed weight {expr!r}") from exc

    def check(node):
        if isinstance(node, ast.Expression):
            return check(node.body)
        if isinstance(node, ast.BinOp) and type(node.op) in _ALLOWED_BINOPS:
            return check(node.left) and check(node.right)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            return check(node.operand)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return True
        if isinstance(node, ast.Name):
            if node.id in STAT_FIELDS or node.id in params:
                return True
            raise WeightSpecError(f"unknown name {node.id!r} in weight {expr!r}")
        raise WeightSpecError(f"unsupported construct in weight {expr!r}")

    check(tree)

    def ev(node, env):
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return env[node.id]
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand, env)
            return -v if isinstance(node.op, ast.USub) else v
        left, right = ev(node.left, env), ev(node.right, env)
        op = type(node.op)
        if op is ast.Add:
            return left + right
        if op is ast.Sub:
            return left - right
        if op is ast.Mult:
            return left * right
        if op is ast.Div:
            return left / right
        if right.denominator != 1:
            raise WeightSpecError(f"non-integer exponent in weight {expr!r}")
        return left ** int(right)

    body = tree.body

    def weight(parts) -> Fraction:
        env = dict(zip(Stats._fields, stats(parts)))
        env["crank"] = crank(parts)
        env["size"] = sum(parts)
        env.update(params)
        return ev(body, env)

    return weight


def weighted_sum(spec: ClassSpec, weight, params: dict | None = None, budget: int = DEFAULT_BUDGET):
    """Sum of ``weight(pi)`` over the nonempty partitions in ``spec``.

    ``weight`` is an expression string (see :func:`compile_weight`) or a
    callable on the part tuple.
    """
    _check_budget(spec.n, budget)
    fn = compile_weight(weight, params) if isinstance(weight, str) else weight
    total = Fraction(0)
    for parts in enumerate_partitions(spec):
        if parts:
            total += fn(parts)
    return total.numerator if total.denominator == 1 else total


# ---------------------------------------------------------------------------
# generating series by enumeration


GENERATING_STATS = ("ffw_c", "spt", "lpt", "t_sum", "l_odd", "s_odd", "crank-moment", "class-count")


def generating_series(
    stat: str,
    order: int,
    *,
    c=None,
    cls: str = "P",
    k: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> TruncatedSeries:
    """``sum_n stat(n) q^n`` to ``order``, computed purely by enumeration.

    ``class-count`` counts the partitions in class ``cls`` (the empty
    partition included, so the constant term is 1); the other statistics
    have constant term 0.
    """
    if stat not in GENERATING_STATS:
        raise ValueError(f"unknown statistic {stat!r}")
    _check_budget(order, budget)
    coeffs: list = [0] * (order + 1)
    if stat == "class-count":
        for n in range(order + 1):
            coeffs[n] = sum(1 for _ in enumerate_partitions(ClassSpec(cls, n, k)))
        return make(order, coeffs)
    fns = {
        "ffw_c": lambda n: ffw(n, 1 if c is None else c),
        "spt": spt,
        "lpt": lpt,
        "t_sum": t_sum,
        "l_odd": l_odd,
        "s_odd": s_odd,
        "crank-moment": crank_moment,
    }
    fn = fns[stat]
    for n in range(1, order + 1):
        coeffs[n] = fn(n)
    return make(order, coeffs)
