"""Command-line front end: ``qtails {list,expand,verify,table}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from typing import Callable, Sequence

from .catalog import build_side, catalog, default_grid, get, grid_hash, verify_all
from .descriptors import binding_key, binding_text
from .errors import BindingError, BudgetExceeded, QTailsError, WeightSpecError
from .identities import delta_series, eta24, sigma_series, spt_smallest_form
from .partitions import DEFAULT_BUDGET, GENERATING_STATS, d_distinct, d_divisors, generating_series, partition_count
from .series import DEFAULT_GUARD, PARAM_NAMES, ParamBinding, TruncatedSeries, div_free_product, format_value, lambert_sum, one

FORMATS = ("text", "json", "csv")


def _side(id: str, side: int | str = 0) -> Callable[[int, dict], TruncatedSeries]:
    return lambda order, params: build_side(id, side, params, order)


# named series for ``expand --series``
NAMED_SERIES: dict[str, Callable[[int, dict], TruncatedSeries]] = {
    "sigma": lambda o, p: sigma_series(o),
    "delta": lambda o, p: delta_series(o),
    "phi": _side("mock-phi"),
    "psi": _side("mock-psi"),
    "eta24": lambda o, p: eta24(o),
    "euler": lambda o, p: div_free_product(one(o), 1, 1, 1, None),
    "divisors": lambda o, p: lambert_sum("minus", o),
    "spt": lambda o, p: spt_smallest_form(o),
}

# columns available to ``table``
TABLE_STATS: dict[str, Callable[[int, int], object]] = {
    "p": lambda n, budget: partition_count(n),
    "d": lambda n, budget: d_divisors(n) if n else 0,
    "d_distinct": lambda n, budget: d_distinct(n),
}
TABLE_STATS.update({s: None for s in GENERATING_STATS if s != "class-count"})


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="qtails", description="Exact q-series expansion and sum-of-tails identity checks.")
    sub = p.add_subparsers(dest="verb", required=True)

    sub.add_parser("list", parents=[common], help="list catalog identities")

    ex = sub.add_parser("expand", parents=[common], help="print the coefficients of a series")
    target = ex.add_mutually_exclusive_group(required=True)
    target.add_argument("--series", choices=sorted(NAMED_SERIES))
    target.add_argument("--id", help="catalog identity; pick the side with --side")
    target.add_argument("--stat", choices=GENERATING_STATS, help="generating function of a partition statistic")
    ex.add_argument("--side", default="1", help="1-based side number, or lhs/mid/rhs (default 1)")
    ex.add_argument("--order", type=int, required=True)
    ex.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    ex.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    ex.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    ve = sub.add_parser("verify", parents=[common], help="verify identities")
    which = ve.add_mutually_exclusive_group(required=True)
    which.add_argument("--id")
    which.add_argument("--all", action="store_true")
    ve.add_argument("--order", type=int, help="truncation order (default: each entry's own)")
    ve.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    ve.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    ve.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    ta = sub.add_parser("table", parents=[common], help="tabulate partition statistics for n = 0..order")
    ta.add_argument("--stat", action="append", choices=sorted(TABLE_STATS), help="column (repeatable; default all)")
    ta.add_argument("--order", type=int, required=True)
    ta.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="c for ffw_c")
    ta.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def parse_params(items: Sequence[str]) -> dict:
    """``name=value`` strings to a binding dict; integer and choice slots keep their raw text."""
    out: dict = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise BindingError(f"expected name=value, got {item!r}")
        if name in out:
            raise BindingError(f"parameter {name!r} bound twice")
        out[name] = ParamBinding.parse(item).value if name in PARAM_NAMES else value.strip()
    return out


def overlay_grid(id: str, params: dict) -> list[dict]:
    """The bindings to verify: ``params`` laid over each default-grid point, deduplicated."""
    d = get(id)
    for name in params:
        d.slot(name)
    if all(s.name in params for s in d.slots):
        return [dict(params)]
    seen, out = set(), []
    for b in d.default_grid():
        merged = d.bind({**b, **params})
        key = binding_key(merged)
        if key not in seen:
            seen.add(key)
            out.append(merged)
    return out


# -- rendering ----------------------------------------------------------------


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _aligned(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def render_reports(reports: list, fmt: str, order: int | None, grid_hash: str, timestamp: str | None = None) -> str:
    reports = sorted(reports, key=lambda r: (r.id, binding_key(r.bindings)))
    if fmt == "json":
        stamp = timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        doc = {"run": {"order": order, "grid_hash": grid_hash, "timestamp": stamp}, "results": [r.as_dict() for r in reports]}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        rows = [["id", "status", "bindings", "first_mismatch_exp"]]
        for r in reports:
            rows.append([r.id, r.status, binding_text(r.bindings), "" if r.first_mismatch is None else r.first_mismatch[0]])
        return _csv(rows)
    rows = [["id", "status", "bindings", "first mismatch"]]
    for r in reports:
        mm = "" if r.first_mismatch is None else "q^{}: {} vs {}".format(*map(format_value, r.first_mismatch))
        rows.append([r.id, r.status, binding_text(r.bindings) or "-", mm or r.detail])
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    summary = ", ".join(f"{k} {v}" for k, v in sorted(counts.items())) or "no results"
    return _aligned(rows) + f"\n{len(reports)} checks: {summary} (grid {grid_hash})\n"


def render_series(name: str, s: TruncatedSeries, fmt: str, params: dict) -> str:
    coeffs = [format_value(c) for c in s.coeffs]
    if fmt == "json":
        doc = {"target": name, "order": s.order, "bindings": {k: format_value(v) for k, v in sorted(params.items())}, "coeffs": coeffs}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return _csv([["exp", "coeff"]] + [[i, c] for i, c in enumerate(coeffs)])
    return _aligned([["exp", "coeff"]] + [[str(i), c] for i, c in enumerate(coeffs)])


def render_table(columns: list[str], rows: list[list], fmt: str) -> str:
    text_rows = [[format_value(x) for x in r] for r in rows]
    if fmt == "json":
        return json.dumps([dict(zip(["n"] + columns, r)) for r in text_rows], indent=2) + "\n"
    if fmt == "csv":
        return _csv([["n"] + columns] + text_rows)
    return _aligned([["n"] + columns] + text_rows)


def render_list(fmt: str) -> str:
    entries = sorted(catalog().values(), key=lambda d: d.id)

    def slots(d):
        return [f"{s.name}:{s.kind}" for s in d.slots]

    if fmt == "json":
        return json.dumps([{"id": d.id, "anchor": d.anchor, "slots": slots(d), "sides": len(d.sides)} for d in entries], indent=2) + "\n"
    if fmt == "csv":
        return _csv([["id", "anchor", "slots", "sides"]] + [[d.id, d.anchor, " ".join(slots(d)), len(d.sides)] for d in entries])
    return _aligned([[d.id, d.anchor, " ".join(slots(d)) or "-"] for d in entries])


# -- verbs --------------------------------------------------------------------


def _threads() -> int:
    raw = os.environ.get("QTAILS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"QTAILS_THREADS must be an integer, got {raw!r}") from None


def cmd_verify(args) -> tuple[str, int]:
    params = parse_params(args.param)
    kw = {"guard": args.guard, "budget": args.budget}
    if args.all:
        if params:
            raise UsageError("--param needs --id")
        ids = sorted(catalog())
        grids = {i: default_grid(i) for i in ids}
    else:
        ids = [args.id]
        grids = {args.id: overlay_grid(args.id, params)}
    reports = verify_all(args.order, grids, ids=ids, threads=_threads(), **kw)
    code = 1 if any(r.status in ("fail", "non-convergent") for r in reports) else 0
    return render_reports(reports, args.format, args.order, grid_hash(ids, args.order, grids)), code


def cmd_expand(args) -> tuple[str, int]:
    params = parse_params(args.param)
    if args.series:
        if params:
            raise UsageError(f"series {args.series!r} takes no parameters")
        name, s = args.series, NAMED_SERIES[args.series](args.order, {})
    elif args.stat:
        extra = set(params) - {"c"}
        if extra:
            raise UsageError(f"--stat only accepts c, got {', '.join(sorted(extra))}")
        name, s = args.stat, generating_series(args.stat, args.order, c=params.get("c"), budget=args.budget)
    else:
        side = args.side
        side = int(side) - 1 if side.isdigit() else side
        if isinstance(side, int) and side < 0:
            raise UsageError("--side counts from 1")
        name = f"{args.id}[{args.side}]"
        s = build_side(args.id, side, params, args.order, guard=args.guard, budget=args.budget)
    return render_series(name, s, args.format, params), 0


def cmd_table(args) -> tuple[str, int]:
    params = parse_params(args.param)
    extra = set(params) - {"c"}
    if extra:
        raise UsageError(f"table only accepts c, got {', '.join(sorted(extra))}")
    columns = args.stat or list(TABLE_STATS)
    data = {}
    for col in columns:
        fn = TABLE_STATS[col]
        if fn is None:
            s = generating_series(col, args.order, c=params.get("c"), budget=args.budget)
            data[col] = list(s.coeffs)
        else:
            data[col] = [fn(n, args.budget) for n in range(args.order + 1)]
    rows = [[n] + [data[c][n] for c in columns] for n in range(args.order + 1)]
    return render_table(columns, rows, args.format), 0


def _message(exc: Exception) -> str:
    # KeyError subclasses would otherwise print their message quoted
    return str(exc.args[0]) if len(exc.args) == 1 else str(exc)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "order", None) is not None and args.order < 0:
        print("qtails: --order must be >= 0", file=stderr)
        return 2
    try:
        if args.verb == "list":
            text, code = render_list(args.format), 0
        elif args.verb == "verify":
            text, code = cmd_verify(args)
        elif args.verb == "expand":
            text, code = cmd_expand(args)
        else:
            text, code = cmd_table(args)
    except (UsageError, BindingError, WeightSpecError, BudgetExceeded, IndexError, ValueError) as exc:
        print(f"qtails: {_message(exc)}", file=stderr)
        return 2
    except (QTailsError, ArithmeticError) as exc:
        print(f"qtails: {type(exc).__name__}: {_message(exc)}", file=stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"qtails: cannot write {args.out}: {exc}", file=stderr)
            return 2
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
