import io
import json
import subprocess
import sys

import pytest

from z2contract.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_good_gens_json():
    code, out = run("verify", "--suite", "good-gens", "--family", "so", "--n", "4", "--m", "1",
                    "--format", "json", "--deterministic")
    assert code == 0
    reports = json.loads(out)
    first = reports[0]
    assert first["check_id"] == "good-gens/so(4,1)/EVEN_COEFFS_PLUS_PFAFFIAN"
    assert first["computed"]["bidegrees"] == [[0, 2], [2, 2]]
    assert all(r["elapsed_ms"] == 0 for r in reports)
    assert {r["status"] for r in reports} == {"PASS"}


def test_deterministic_output_is_reproducible():
    args = ("verify", "--suite", "good-gens", "--family", "gl", "--n", "2", "--m", "1",
            "--format", "json", "--deterministic")
    assert run(*args)[1] == run(*args)[1]


def test_parallel_matches_serial():
    args = ("verify", "--suite", "tables", "--format", "json", "--deterministic", "--cap", "so=4", "--cap", "gl=2")
    assert run(*args)[1] == run(*args, "--parallel")[1]


def test_heisenberg_index_note():
    code, out = run("verify", "--suite", "index", "--family", "heisenberg")
    assert code == 0
    assert '"index": 1' in out and "codim-2 property absent" in out


def test_f4_suite_reports_failure():
    code, out = run("verify", "--suite", "f4", "--format", "json", "--deterministic")
    reports = json.loads(out)
    assert code == 1
    statuses = {r["check_id"]: r["status"] for r in reports}
    assert statuses["f4/highest-components"] == "FAIL"
    assert statuses["f4/invariance"] == statuses["f4/independence"] == statuses["f4/bidegrees"] == "PASS"


def test_sp_is_conjectural(capsys):
    code, _ = run("verify", "--suite", "good-gens", "--family", "sp", "--n", "2", "--m", "1")
    assert code == 3
    assert "conjectural" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ("verify", "--suite", "good-gens", "--family", "gl", "--n", "1", "--m", "2"),
    ("verify", "--suite", "good-gens", "--family", "gl", "--n", "0", "--m", "0"),
    ("verify", "--suite", "good-gens", "--family", "xx", "--n", "2", "--m", "1"),
    ("verify", "--suite", "nregular", "--n", "9"),
    ("dump", "--family", "gl"),
    ("dump", "--family", "gl", "--n", "2", "--contracted"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2


def test_dump_heisenberg():
    code, out = run("dump", "--family", "heisenberg")
    assert code == 0
    assert out.splitlines() == ["# a b h", "0 1 2 1"]


def test_dump_contracted_pair_has_no_g1_brackets():
    from z2contract.exactpoly import Part
    from z2contract.liealg import build_symmetric_pair, contract
    code, out = run("dump", "--family", "gl", "--n", "2", "--m", "1", "--contracted")
    assert code == 0
    L = contract(build_symmetric_pair("GL", 2, 1)).algebra
    assert out.splitlines()[0] == "# " + " ".join(L.labels)
    lines = out.splitlines()[1:]
    assert lines
    for line in lines:
        i, j, k, c = line.split()
        assert int(i) < int(j) and c != "0"
        assert not (L.parts[int(i)] is Part.ONE and L.parts[int(j)] is Part.ONE)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "z2contract", "dump", "--family", "heisenberg"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("# a b h")
