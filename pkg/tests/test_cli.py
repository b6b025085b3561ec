from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

import pytest

from qtails.catalog import _entries, build_side, catalog, default_grid
from qtails.cli import overlay_grid, parse_params, render_reports, run
from qtails.descriptors import IdentityDescriptor, Side
from qtails.series import make, parse_value


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def failing_double(monkeypatch):
    good = Side("good", lambda p, e: make(e.order, [1, 0, 5]))
    bad = Side("bad", lambda p, e: make(e.order, [1, 0, Fraction(11, 2)]))
    monkeypatch.setitem(_entries(), "zz-double", IdentityDescriptor("zz-double", "test double", (), (good, bad)))
    return "zz-double"


# -- the worked examples


def test_verify_ffw_divisor_exits_zero():
    code, out, _ = call("verify", "--id", "ffw-divisor", "--order", "100")
    assert code == 0 and "pass" in out


def test_expand_sigma_csv():
    code, out, _ = call("expand", "--series", "sigma", "--order", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["exp,coeff", "0,1", "1,1", "2,-1", "3,2", "4,-2", "5,1"]


def test_pole_skip_is_not_a_failure():
    code, out, _ = call("verify", "--id", "c-chain-finite", "--order", "40", "--param", "c=1", "--format", "json")
    assert code == 0
    statuses = {r["status"] for r in json.loads(out)["results"]}
    assert statuses == {"skipped-pole"}


def test_list():
    code, out, _ = call("list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 45
    assert any(line.startswith("agl-crank ") for line in lines)
    assert len(lines) == len(catalog())


def test_list_json_has_slots():
    code, out, _ = call("list", "--format", "json")
    rows = {r["id"]: r for r in json.loads(out)}
    assert rows["c-chain-finite"]["slots"] == ["c:rational", "N:integer"]
    assert rows["agl-crank"]["sides"] == 3


# -- reports


def test_json_schema():
    code, out, _ = call("verify", "--id", "yan-fu", "--order", "12", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"run", "results"}
    assert set(doc["run"]) == {"order", "grid_hash", "timestamp"} and doc["run"]["order"] == 12
    assert len(doc["results"]) == len(default_grid("yan-fu"))
    for r in doc["results"]:
        assert set(r) == {"id", "status", "bindings", "first_mismatch", "elapsed_ms"}
        assert r["first_mismatch"] is None
        assert all(isinstance(v, str) for v in r["bindings"].values())


def test_empty_report_is_valid_json():
    doc = json.loads(render_reports([], "json", 10, "0" * 16))
    assert doc["results"] == []


def test_failing_double_reports_mismatch(failing_double):
    code, out, _ = call("verify", "--id", failing_double, "--order", "4", "--format", "json")
    assert code == 1
    (r,) = json.loads(out)["results"]
    assert r["status"] == "fail"
    assert r["first_mismatch"] == {"exp": 2, "lhs": "5", "rhs": "11/2"}


def test_failing_double_text_and_csv(failing_double):
    code, out, _ = call("verify", "--id", failing_double, "--order", "4")
    assert code == 1 and "q^2: 5 vs 11/2" in out and "fail 1" in out
    code, out, _ = call("verify", "--id", failing_double, "--order", "4", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["id", "status", "bindings", "first_mismatch_exp"], [failing_double, "fail", "", "2"]]


def test_json_is_deterministic():
    def clean(text):
        doc = json.loads(text)
        doc["run"].pop("timestamp")
        for r in doc["results"]:
            r.pop("elapsed_ms")
        return json.dumps(doc, indent=2)

    argv = ("verify", "--id", "half-c-finite", "--order", "15", "--format", "json")
    assert clean(call(*argv)[1]) == clean(call(*argv)[1])


def test_results_sorted_by_binding():
    _, out, _ = call("verify", "--id", "c-chain-finite", "--order", "10", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == len(default_grid("c-chain-finite"))
    assert all(r["id"] == "c-chain-finite" for r in rows)


def test_threads_give_same_output(monkeypatch):
    argv = ("verify", "--id", "dems-finite", "--order", "12", "--format", "csv")
    serial = call(*argv)
    monkeypatch.setenv("QTAILS_THREADS", "3")
    assert call(*argv) == serial
    monkeypatch.setenv("QTAILS_THREADS", "many")
    assert call(*argv)[0] == 2


def test_out_file(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call("verify", "--id", "ffw-divisor", "--order", "10", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["results"][0]["status"] == "pass"


def test_unwritable_out_exits_two(tmp_path):
    code, _, err = call("list", "--out", str(tmp_path / "missing" / "x.txt"))
    assert code == 2 and "cannot write" in err


# -- usage errors


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("verify", "--id", "no-such-id"),
        ("verify", "--id", "ffw-divisor", "--order", "-1"),
        ("verify", "--id", "ffw-divisor", "--order", "ten"),
        ("verify", "--all", "--id", "ffw-divisor"),
        ("verify", "--id", "yan-fu", "--param", "c"),
        ("verify", "--id", "yan-fu", "--param", "c=x"),
        ("verify", "--id", "yan-fu", "--param", "z=1"),
        ("expand", "--series", "sigma"),
        ("expand", "--series", "nope", "--order", "3"),
        ("expand", "--id", "yan-fu", "--side", "9", "--order", "3", "--param", "c=1/2", "--param", "N=2"),
        ("expand", "--id", "yan-fu", "--side", "1", "--order", "3"),
        ("table", "--stat", "p", "--order", "3", "--param", "t=q"),
        ("expand", "--stat", "spt", "--order", "40", "--budget", "10"),
    ],
)
def test_usage_errors_exit_two(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert "Traceback" not in err


def test_non_convergent_exits_one():
    code, out, _ = call("verify", "--id", "af-tails", "--order", "10", "--param", "t=1/2")
    assert code == 1 and "non-convergent" in out


# -- expand and table


def test_expand_round_trips_rationals():
    params = {"c": Fraction(1, 2), "t": parse_value("q"), "N": 3}
    code, out, _ = call("expand", "--id", "thm-1-8-finite", "--side", "lhs", "--order", "12", "--format", "json", "--param", "c=1/2", "--param", "t=q", "--param", "N=3")
    assert code == 0
    doc = json.loads(out)
    want = build_side("thm-1-8-finite", 0, params, 12)
    assert len(doc["coeffs"]) == 13
    assert [Fraction(c) for c in doc["coeffs"]] == list(want)
    assert any("/" in c for c in doc["coeffs"])


def test_expand_side_numbers_count_from_one():
    a = call("expand", "--id", "mock-phi", "--side", "1", "--order", "6")[1]
    b = call("expand", "--id", "mock-phi", "--side", "lhs", "--order", "6")[1]
    assert a == b


def test_expand_stat_and_monomial_param():
    code, out, _ = call("expand", "--stat", "spt", "--order", "4", "--format", "csv")
    assert out.splitlines()[1:] == ["0,0", "1,1", "2,3", "3,5", "4,10"]
    code, out, _ = call("expand", "--id", "heine", "--order", "3", "--format", "csv", "--param", "a=q", "--param", "b=-q", "--param", "c=q^2", "--param", "t=1/2*q")
    assert code == 0 and len(out.splitlines()) == 5


def test_table():
    code, out, _ = call("table", "--stat", "p", "--stat", "spt", "--order", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,p,spt", "0,1,0", "1,1,1", "2,2,3", "3,3,5", "4,5,10", "5,7,14"]
    code, out, _ = call("table", "--order", "3")
    assert code == 0 and out.splitlines()[0].split()[:2] == ["n", "p"]


def test_table_ffw_with_c():
    code, out, _ = call("table", "--stat", "ffw_c", "--order", "2", "--param", "c=1/2", "--format", "json")
    assert json.loads(out) == [{"n": "0", "ffw_c": "0"}, {"n": "1", "ffw_c": "1/2"}, {"n": "2", "ffw_c": "1"}]


# -- parameter overlay


def test_parse_params_keeps_integer_slots_raw():
    p = parse_params(["c=1/2", "N=3", "t=-q^2"])
    assert p["c"] == Fraction(1, 2) and p["N"] == "3" and p["t"] == parse_value("-q^2")


def test_overlay_grid():
    grid = overlay_grid("c-chain-finite", {"c": Fraction(1, 2)})
    assert grid and all(b["c"] == Fraction(1, 2) for b in grid)
    assert len({tuple(sorted(map(str, b.items()))) for b in grid}) == len(grid)
    assert overlay_grid("c-chain-finite", {"c": 2, "N": "3"}) == [{"c": 2, "N": "3"}]


def test_text_summary_line():
    _, out, _ = call("verify", "--id", "dems-finite", "--order", "10")
    assert re.search(r"\d+ checks: pass \d+ \(grid [0-9a-f]{16}\)", out)
