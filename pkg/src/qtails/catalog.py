"""The identity catalog and the verification driver."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .descriptors import Env, IdentityDescriptor, binding_key, binding_text
from .engine import theorem1_engine
from .errors import BindingError, NonConvergentSum, NotAUnit, PoleError
from .partitions import DEFAULT_BUDGET
from .series import DEFAULT_GUARD, TruncatedSeries, format_value

STATUSES = ("pass", "fail", "skipped-pole", "non-convergent")


@lru_cache(maxsize=None)
def _entries() -> dict[str, IdentityDescriptor]:
    from .identities import ENTRIES

    out = {}
    for d in ENTRIES:
        if d.id in out:
            raise ValueError(f"duplicate catalog id {d.id!r}")
        out[d.id] = d
    return out


def catalog() -> dict[str, IdentityDescriptor]:
    """All entries keyed by id (a fresh dict; the descriptors are shared)."""
    return dict(_entries())


def get(id: str) -> IdentityDescriptor:
    try:
        return _entries()[id]
    except KeyError:
        raise BindingError(f"unknown identity {id!r}") from None


def default_grid(id: str) -> list[dict]:
    return get(id).default_grid()


def side_index(d: IdentityDescriptor, side: int | str) -> int:
    """``side`` as a 0-based index; ``"lhs"``, ``"mid"`` and ``"rhs"`` name the first, second and last."""
    if isinstance(side, str):
        names = {"lhs": 0, "rhs": len(d.sides) - 1}
        if len(d.sides) == 3:
            names["mid"] = 1
        if side not in names:
            raise IndexError(f"{d.id} has no side {side!r}")
        return names[side]
    return side


def build_side(id: str, side: int | str, bindings: Mapping, order: int, *, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET) -> TruncatedSeries:
    d = get(id)
    side = side_index(d, side)
    if not 0 <= side < len(d.sides):
        raise IndexError(f"{id} has {len(d.sides)} sides")
    return d.sides[side].build(d.bind(bindings), Env(order, guard, budget))


@dataclass
class VerificationReport:
    id: str
    bindings: dict
    order: int
    status: str
    first_mismatch: tuple | None = None  # (exponent, side 0 coefficient, other side coefficient)
    detail: str = ""
    elapsed_ms: float = 0.0
    sides: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skipped-pole")

    def as_dict(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            exp, lhs, rhs = self.first_mismatch
            mm = {"exp": exp, "lhs": format_value(lhs), "rhs": format_value(rhs)}
        return {
            "id": self.id,
            "status": self.status,
            "bindings": {k: format_value(v) for k, v in sorted(self.bindings.items())},
            "first_mismatch": mm,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries, order: int) -> tuple | None:
    for i in range(order + 1):
        x, y = a[i], b[i]
        if x != y:
            return (i, x, y)
    return None


def verify(id: str, bindings: Mapping | None = None, order: int | None = None, *, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Build every side of ``id`` at ``bindings`` and compare through ``q^order``."""
    d = get(id)
    bindings = d.bind(bindings or {})
    order = d.default_order if order is None else order
    start = time.perf_counter()
    report = VerificationReport(id, bindings, order, "pass")
    reason = d.pole(bindings)
    if reason is not None:
        report.status, report.detail = "skipped-pole", reason
    else:
        env = Env(order, guard, budget)
        try:
            built = [s.build(bindings, env) for s in d.sides]
        except (PoleError, NotAUnit) as exc:
            report.status, report.detail = "skipped-pole", str(exc)
        except NonConvergentSum as exc:
            report.status, report.detail = "non-convergent", str(exc)
        else:
            report.sides = built
            for other in built[1:]:
                mm = first_mismatch(built[0], other, order)
                if mm is not None:
                    report.status, report.first_mismatch = "fail", mm
                    break
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def verify_grid(id: str, grid: Iterable[Mapping] | None = None, order: int | None = None, **kw) -> list[VerificationReport]:
    grid = default_grid(id) if grid is None else grid
    reports = [verify(id, b, order, **kw) for b in grid]
    return sorted(reports, key=lambda r: binding_key(r.bindings))


def _verify_job(job):
    id, bindings, order, kw = job
    return verify(id, bindings, order, **kw)


def verify_all(
    order: int | None = None,
    grid_override: Mapping[str, list] | None = None,
    *,
    ids: Iterable[str] | None = None,
    threads: int = 1,
    **kw,
) -> list[VerificationReport]:
    """Verify entries on their default grids (or ``grid_override[id]``); sorted by id then bindings."""
    grid_override = grid_override or {}
    ids = sorted(ids if ids is not None else _entries())
    jobs = [(i, b, order, kw) for i in ids for b in grid_override.get(i, default_grid(i))]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(threads) as pool:
            reports = list(pool.map(_verify_job, jobs, chunksize=4))
    else:
        reports = [_verify_job(j) for j in jobs]
    return sorted(reports, key=lambda r: (r.id, binding_key(r.bindings)))


def grid_hash(ids: Iterable[str] | None = None, order: int | None = None, grids: Mapping[str, list] | None = None) -> str:
    """A stable digest of the ids, their grids (default or given) and the order in force."""
    ids = sorted(ids if ids is not None else (grids if grids is not None else _entries()))
    payload = []
    for i in ids:
        grid = grids[i] if grids is not None else default_grid(i)
        payload.append([i, order if order is not None else get(i).default_order, sorted(binding_text(b) for b in grid)])
    return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()[:16]


__all__ = [
    "STATUSES",
    "VerificationReport",
    "build_side",
    "catalog",
    "default_grid",
    "get",
    "grid_hash",
    "theorem1_engine",
    "verify",
    "verify_all",
    "verify_grid",
]
