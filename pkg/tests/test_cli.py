import csv
import io
import json
import os
import subprocess
import sys

import pytest

from duomap.cli import main
from duomap.instances import CSV_FIELDS, TIMING_FIELDS


@pytest.fixture
def sample_file(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text("mpsm\nxyzabcb\nabbcxyz\n")
    return str(p)


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_solve_sample(run, sample_file):
    code, out, _ = run("solve", sample_file)
    assert code == 0
    data = json.loads(out)
    assert data["algorithm"] == "approx267"
    assert data["size"] == 3
    assert data["guarantee"] == "8/3"
    assert data["edges"] == [[1, 5], [2, 6], [4, 1]]
    assert data["pieces"] == 4
    assert data["mapping"] == [5, 6, 7, 1, 2, 4, 3]


def test_solve_csv(run, sample_file):
    code, out, _ = run("solve", sample_file, "--algorithm", "approx4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert rows[0]["size"] == "3"
    assert rows[0]["algorithm"] == "approx4"
    assert list(rows[0]) == CSV_FIELDS


def test_solve_eps(run, sample_file):
    code, out, _ = run("solve", sample_file, "--algorithm", "eps", "--epsilon", "0.5")
    assert code == 0
    data = json.loads(out)
    assert data["params"] == {"k": 4, "t": 9, "epsilon": "1/2"}
    assert data["epsilon"] == 0.5


def test_solve_empty_graph(run, tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("mcbm 3 3 0\n")
    code, out, _ = run("solve", str(p))
    assert code == 0
    assert json.loads(out)["size"] == 0


def test_eps_without_epsilon(run, sample_file):
    code, _, err = run("solve", sample_file, "--algorithm", "eps")
    assert code == 2
    assert "epsilon" in err


def test_bad_epsilon(sample_file):
    with pytest.raises(SystemExit) as exc:
        main(["solve", sample_file, "--algorithm", "eps", "--epsilon", "-1"])
    assert exc.value.code == 2


def test_size_guard_exit(run, tmp_path):
    edges = [(i, j) for i in range(1, 11) for j in range(1, 11) if (i * j) % 3 == 0]
    p = tmp_path / "dense.txt"
    p.write_text(f"mcbm 10 10 {len(edges)}\n" + "".join(f"{i} {j}\n" for i, j in edges))
    code, _, err = run("solve", str(p), "--algorithm", "eps", "--epsilon", "0.5", "--budget", "1000")
    assert code == 4
    assert "budget" in err


def test_exact_sample(run, sample_file):
    code, out, _ = run("exact", sample_file)
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 3
    assert data["edges"] == [[1, 5], [2, 6], [4, 1]]


def test_exact_too_large(run, tmp_path):
    p = tmp_path / "big.txt"
    p.write_text("mcbm 25 25 25\n" + "".join(f"{i} {i}\n" for i in range(1, 26)))
    code, _, err = run("exact", str(p))
    assert code == 3
    assert "cap" in err
    code, out, _ = run("exact", str(p), "--oracle-cap", "25", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].split(",")[2] == "25"


def test_missing_and_malformed_files(run, tmp_path):
    code, _, _ = run("solve", str(tmp_path / "nope.txt"))
    assert code == 1
    p = tmp_path / "bad.txt"
    p.write_text("mcbm 2 2 1\n5 5\n")
    code, _, err = run("solve", str(p))
    assert code == 1
    assert "out of range" in err


def test_convert_sample(run, sample_file):
    code, out, _ = run("convert", sample_file, "--algorithm", "exact")
    assert code == 0
    data = json.loads(out)
    assert data["duos"] == 3
    assert data["pieces"] == 4
    assert data["identity_holds"] is True
    code, out, _ = run("convert", sample_file)
    assert json.loads(out)["duos"] == 3


def test_convert_rejects_graph_input(run, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("mcbm 2 2 1\n1 1\n")
    code, _, err = run("convert", str(p))
    assert code == 1
    assert "mpsm" in err


def test_gen_round_trip(run, tmp_path):
    out_path = tmp_path / "inst.txt"
    code, _, _ = run("gen", "--generator", "mcsp", "--n", "9", "--seed", "4", "--output", str(out_path))
    assert code == 0
    assert out_path.read_text().startswith("mpsm\n")
    code, out, _ = run("solve", str(out_path))
    assert code == 0
    code, out, _ = run("gen", "--generator", "random", "--n", "5", "--p", "0.5")
    assert out.startswith("mcbm 5 5 ")


def _strip_timing(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        for f in TIMING_FIELDS:
            row.pop(f)
    return rows


def test_bench_deterministic(run):
    args = ["bench", "--count", "4", "--n", "10", "--seed", "3", "--algorithm", "approx4,approx267", "--algorithm", "eps", "--epsilon", "1"]
    _, first, _ = run(*args)
    _, second, _ = run(*args)
    a, b = _strip_timing(first), _strip_timing(second)
    assert a == b
    assert len(a) == 12
    assert all(r["within_guarantee"] == "True" for r in a)
    assert {r["algorithm"] for r in a} == {"approx4", "approx267", "eps"}


def test_bench_empty_algorithm_list(run):
    code, out, _ = run("bench", "--algorithm", "")
    assert code == 0
    assert out == ",".join(CSV_FIELDS) + "\n"


def test_bench_unknown_algorithm():
    with pytest.raises(SystemExit):
        main(["bench", "--algorithm", "nope"])


def test_bench_parallel_matches_serial():
    args = [sys.executable, "-m", "duomap", "bench", "--count", "3", "--generator", "random", "--n", "6", "--p", "0.3"]
    serial = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    env = {**os.environ, "DUOMAP_THREADS": "2"}
    parallel = subprocess.run(args, capture_output=True, text=True, check=True, env=env).stdout
    assert _strip_timing(serial) == _strip_timing(parallel)
