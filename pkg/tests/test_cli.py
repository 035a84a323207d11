import csv
import io
import json
import subprocess
import sys
from math import prod

import pytest

from abelbasis.bench import CSV_COLUMNS, parse_ladder, run_bench
from abelbasis.cli import main
from abelbasis.groups import format_table, make_table_group

from conftest import KLEIN


@pytest.fixture
def klein_file(tmp_path):
    path = tmp_path / "klein.tbl"
    path.write_text(format_table(make_table_group(KLEIN)))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def orders_in(out):
    """{prime: [orders]} parsed from text output lines "p^a: generator=... order=q"."""
    res = {}
    for line in out.splitlines():
        if ": generator=" in line:
            head, _, rest = line.partition(":")
            p = int(head.split("^")[0])
            res.setdefault(p, []).append(int(rest.rsplit("order=", 1)[1]))
    return res


def test_basis_product(capsys):
    code, out, _ = run(capsys, "basis", "--product", "Z4x2", "--algo", "basis1")
    assert code == 0
    assert orders_in(out) == {2: [4, 2]}
    assert "product-of-orders=8" in out


def test_basis_cyclic_mode(capsys):
    code, out, _ = run(capsys, "basis", "--product", "Z12", "--gens", "3,8", "--algo", "basis3")
    assert code == 0
    assert orders_in(out) == {2: [4], 3: [3]}
    assert "2^2: generator=3 order=4" in out
    assert "3^1: generator=8 order=3" in out


def test_basis_table(capsys, klein_file):
    code, out, _ = run(capsys, "basis", "--table", str(klein_file))
    assert code == 0
    assert orders_in(out) == {2: [2, 2]}
    code, out, _ = run(capsys, "basis", "--table", str(klein_file), "--validate")
    assert code == 0


def test_basis_generators_tuple_syntax(capsys):
    for gens in ("(1,0),(1,1)", "1,0;1,1"):
        code, out, _ = run(capsys, "basis", "--product", "Z2xZ2", "--gens", gens)
        assert code == 0
        assert "algorithm=basis2" in out
        assert orders_in(out) == {2: [2, 2]}


def test_basis_units(capsys):
    code, out, _ = run(capsys, "basis", "--units", "15", "--phi-factorization", "2^3")
    assert code == 0
    assert orders_in(out) == {2: [4, 2]}
    code, out, _ = run(capsys, "basis", "--units", "15", "--phi-factorization", "2^3", "--gens", "2,14")
    assert code == 0
    assert orders_in(out) == {2: [4, 2]}
    code, _, err = run(capsys, "basis", "--units", "15", "--phi-factorization", "2^3", "--algo", "basis1", "--gens", "2")
    assert code == 2


def test_structured_roundtrip(capsys):
    code, out, _ = run(capsys, "basis", "--product", "Z4xZ2xZ9", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["N"] == 72
    assert doc["factorization"] == [[2, 3], [3, 2]]
    orders = [g["order"] for comp in doc["components"] for g in comp["generators"]]
    assert prod(orders) == doc["N"]
    assert doc["op_report"]["total"]["add"] > 0


def test_output_is_byte_identical(capsys):
    argv = ["basis", "--product", "Z8xZ4xZ3", "--format", "structured", "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


@pytest.mark.parametrize(
    "argv, code",
    [
        (["basis", "--product", "Z1"], 2),
        (["basis", "--product", "Zfoo"], 2),
        (["basis"], 2),
        (["basis", "--product", "Z4", "--algo", "basis3"], 2),
        (["basis", "--units", "15"], 2),
        (["basis", "--table", "/nonexistent/file.tbl"], 2),
        (["basis", "--product", "Z2xZ2", "--gens", "(1,1)"], 3),
        (["basis", "--product", "Z2xZ2", "--gens", "(1,0),(0,1)", "--algo", "basis3"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:")


def test_bad_table_file(capsys, tmp_path):
    path = tmp_path / "bad.tbl"
    path.write_text("2 2\n0 1\n1 1\n")
    code, _, err = run(capsys, "basis", "--table", str(path))
    assert code == 2
    assert "NotGroup" in err


def test_iso(capsys, klein_file):
    assert run(capsys, "iso", "Z6", "Z2x3")[0] == 0
    code, out, _ = run(capsys, "iso", "Z8", "Z4x2")
    assert code == 1
    assert "not isomorphic" in out
    assert "Z8" in out and "Z4 x Z2" in out
    assert run(capsys, "iso", str(klein_file), "Z2x2")[0] == 0
    assert run(capsys, "iso", f"table:{klein_file}", "product:Z4")[0] == 1
    assert run(capsys, "iso", "units:15:2^3", "Z4x2")[0] == 0
    assert run(capsys, "iso", "Z0", "Z2")[0] == 2


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--bench-ladder", "cyclic:2:4..12")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == 9
    for r in rows:
        n = int(r["N"])
        assert int(r["sum_Gj"]) <= 2 * n
        assert float(r["ops_per_N"]) == pytest.approx(int(r["group_ops"]) / n, abs=1e-6)


def test_bench_elementary_ranks():
    rows = run_bench(parse_ladder("elementary:2:2..8"), "basis1")
    assert [r.invariants.as_dict() for r in rows] == [{2: [2] * t} for t in range(2, 9)]


def test_bench_empty_ladder(capsys):
    code, out, _ = run(capsys, "bench")
    assert code == 0
    assert out == ",".join(CSV_COLUMNS) + "\n"


def test_bench_generator_modes(capsys):
    for algo in ("basis2", "basis3"):
        code, out, _ = run(capsys, "bench", "--bench-ladder", "Z12;Z16", "--algo", algo, "--no-timing")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["algorithm"] for r in rows] == [algo, algo]
        assert all(int(r["M"]) >= 1 for r in rows)


def test_bench_reproducible_and_ordered(capsys):
    argv = ["bench", "--bench-ladder", "elementary:3:1..4;Z12xZ2", "--no-timing", "--seed", "3"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--jobs", "2")
    assert a == b


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "abelbasis", "iso", "Z6", "Z2x3"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.strip().endswith("isomorphic")
