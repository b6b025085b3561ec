"""Catalog entry types: parameter slots, sides and default grids."""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Callable, Mapping

from .errors import BindingError
from .partitions import DEFAULT_BUDGET
from .series import DEFAULT_GUARD, Monomial, TruncatedSeries, format_value

RATIONAL_GRID = (-2, -1, Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 2)
MONOMIAL_GRID = (Monomial(1, 1), Monomial(1, 2), Monomial(-1, 1), Monomial(Fraction(1, 2), 1))
N_GRID = (1, 2, 3, 5, 8)
K_GRID = (1, 2, 3)
GRID_CAP = 40

SLOT_KINDS = ("rational", "monomial", "either", "integer", "choice")


@dataclass(frozen=True)
class Env:
    """Per-run knobs handed to every side builder."""

    order: int
    guard: int = DEFAULT_GUARD
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class Slot:
    """A named parameter and the kind of value its default grid draws from.

    ``rational``, ``monomial`` and ``either`` slots accept any rational or
    monomial when bound explicitly (a constant where a monomial is expected
    simply makes the formal sums diverge); ``integer`` and ``choice`` slots
    are validated strictly.
    """

    name: str
    kind: str
    values: tuple = ()
    minimum: int = 1

    def __post_init__(self):
        if self.kind not in SLOT_KINDS:
            raise ValueError(f"unknown slot kind {self.kind!r}")

    def grid(self) -> tuple:
        if self.values:
            return self.values
        if self.kind == "rational":
            return RATIONAL_GRID
        if self.kind == "monomial":
            return MONOMIAL_GRID
        if self.kind == "either":
            return RATIONAL_GRID + MONOMIAL_GRID
        if self.kind == "integer":
            return N_GRID if self.name == "N" else K_GRID
        raise ValueError(f"choice slot {self.name!r} has no values")

    def coerce(self, value):
        if self.kind == "integer":
            if isinstance(value, str):
                try:
                    value = int(value)
                except ValueError:
                    raise BindingError(f"{self.name} needs an integer, got {value!r}") from None
            if isinstance(value, Fraction) and value.denominator == 1:
                value = int(value)
            if type(value) is not int or value < self.minimum:
                raise BindingError(f"{self.name} needs an integer >= {self.minimum}, got {value!r}")
            return value
        if self.kind == "choice":
            if value not in self.grid():
                raise BindingError(f"{self.name} must be one of {', '.join(map(str, self.grid()))}")
            return value
        if isinstance(value, Monomial):
            return value
        if isinstance(value, Rational):
            value = Fraction(value)
            return value.numerator if value.denominator == 1 else value
        raise BindingError(f"{self.name} needs a rational or a monomial, got {value!r}")


Builder = Callable[[Mapping, Env], TruncatedSeries]


@dataclass(frozen=True)
class Side:
    label: str
    build: Builder
    oracle: bool = False


@dataclass(frozen=True)
class IdentityDescriptor:
    """One catalog entry: two or three independently built sides that must agree."""

    id: str
    anchor: str
    slots: tuple[Slot, ...]
    sides: tuple[Side, ...]
    default_order: int = 40
    excludes: tuple[tuple[str, object], ...] = ()
    note: str = ""
    distinct: tuple[tuple[str, str], ...] = ()  # slot pairs kept unequal in the default grid
    grid_override: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.sides) not in (2, 3):
            raise ValueError(f"{self.id}: an identity needs two or three sides")
        names = [s.name for s in self.slots]
        if len(set(names)) != len(names):
            raise ValueError(f"{self.id}: duplicate slot names")

    @property
    def oracle_sides(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sides) if s.oracle)

    def slot(self, name: str) -> Slot:
        for s in self.slots:
            if s.name == name:
                return s
        raise BindingError(f"{self.id} has no parameter {name!r}")

    def pole(self, bindings: Mapping) -> str | None:
        """Reason string when ``bindings`` hits an excluded value, else None."""
        for name, bad in self.excludes:
            if name in bindings and bindings[name] == bad and type(bindings[name]) is not Monomial:
                return f"{name} = {format_value(bad)}"
        return None

    def bind(self, bindings: Mapping) -> dict:
        """Validate a full binding set against the slots."""
        extra = set(bindings) - {s.name for s in self.slots}
        if extra:
            raise BindingError(f"{self.id} has no parameter(s) {', '.join(sorted(extra))}")
        out = {}
        for s in self.slots:
            if s.name not in bindings:
                raise BindingError(f"{self.id}: parameter {s.name!r} is unbound")
            out[s.name] = s.coerce(bindings[s.name])
        return out

    def default_grid(self) -> list[dict]:
        if self.grid_override is not None:
            return [dict(b) for b in self.grid_override]
        axes = []
        for s in self.slots:
            bad = {v for n, v in self.excludes if n == s.name}
            axes.append([v for v in s.grid() if not (v in bad and type(v) is not Monomial)])
        names = [s.name for s in self.slots]
        pairs = [(names.index(x), names.index(y)) for x, y in self.distinct]
        keep = lambda combo: all(combo[i] != combo[j] for i, j in pairs)
        return [dict(zip(names, combo)) for combo in subsample(axes, GRID_CAP, self.id, keep)]


def subsample(axes: list[list], cap: int, seed_key: str, keep: Callable[[tuple], bool] | None = None) -> list[tuple]:
    """Cartesian product of ``axes``, cut to ``cap`` combinations deterministically.

    The cut keeps a diagonal that visits every value of every axis (axis
    ``i`` is offset by ``i`` so equal axes do not pair up), then
    fills up with a seeded random sample; the original product order is
    preserved.
    """
    combos = [c for c in product(*axes) if keep is None or keep(c)]
    if len(combos) <= cap:
        return combos
    index = {c: i for i, c in enumerate(combos)}
    chosen = set()
    for j in range(max(len(a) for a in axes)):
        combo = tuple(a[(j + i) % len(a)] for i, a in enumerate(axes))
        if combo in index:
            chosen.add(index[combo])
    rng = random.Random(zlib.crc32(seed_key.encode()))
    rest = [i for i in range(len(combos)) if i not in chosen]
    chosen.update(rng.sample(rest, max(0, cap - len(chosen))))
    return [combos[i] for i in sorted(chosen)]


def binding_key(bindings: Mapping) -> tuple:
    return tuple((k, format_value(v)) for k, v in sorted(bindings.items()))


def binding_text(bindings: Mapping) -> str:
    return ";".join(f"{k}={v}" for k, v in binding_key(bindings))
