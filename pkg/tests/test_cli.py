import json
import shutil
import subprocess

import pytest

from symspread.cli import EXIT_CAP, EXIT_FINDING, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, _status_code, main

TRIANGLE = "x*y, y*z, z*x"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--ideal", "x^2, x*y")
    assert code == EXIT_OK
    assert json.loads(out) == [
        {"radical": ["x"], "generators": ["x"]},
        {"radical": ["x", "y"], "generators": ["y", "x^2"]},
    ]


@pytest.mark.parametrize("kind", ["irreducible", "minimal-primes"])
def test_decompose_kinds(capsys, kind):
    code, out, _ = run(capsys, "decompose", "--ideal", TRIANGLE, "--kind", kind)
    assert code == EXIT_OK and len(json.loads(out)) == 3


def test_decompose_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "decompose", "--ideal", "x^2, x*y")
    assert out.splitlines()[0] == "radical,generators"


def test_symb_pow_text(capsys):
    code, out, _ = run(capsys, "symb-pow", "--ideal", TRIANGLE, "--n", "2")
    assert code == EXIT_OK
    assert out == "x*y*z, x^2*y^2, x^2*z^2, y^2*z^2\n"


def test_symb_pow_flavors(capsys):
    _, out, _ = run(capsys, "symb-pow", "--ideal", "x^2, x*y", "--n", "2", "--flavor", "wrt-J", "--J", "x, y",
                    "--format", "json")
    assert json.loads(out) == {"generators": ["x^2"], "mu": 1}
    code, _, err = run(capsys, "symb-pow", "--ideal", "x^2, x*y", "--n", "2", "--flavor", "wrt-J")
    assert code == EXIT_USAGE and "J" in err


def test_growth_csv_and_plot(capsys, tmp_path):
    plot = tmp_path / "tri.dat"
    code, out, _ = run(capsys, "growth", "--ideal", TRIANGLE, "--N", "6", "--format", "csv", "--plot-data", str(plot))
    assert code == EXIT_OK
    assert out.splitlines() == ["n,mu", "1,3", "2,4", "3,6", "4,7", "5,9", "6,10"]
    assert plot.read_text().splitlines()[-1] == "6 10"


def test_spread(capsys):
    _, out, _ = run(capsys, "spread", "--ideal", TRIANGLE)
    data = json.loads(out)
    assert data["value"] == 2 and data["method"] == "veronese-exact" and data["certificate"]["c"] == 2
    _, out, _ = run(capsys, "spread", "--ideal", TRIANGLE, "--kind", "ordinary")
    assert json.loads(out)["value"] == 3


def test_resolve_with_characteristic(capsys):
    rp2 = "a*b*c, a*b*d, a*c*e, b*d*e, c*d*e, b*c*f, a*d*f, c*d*f, a*e*f, b*e*f"
    _, out, _ = run(capsys, "resolve", "--ideal", rp2, "--char", "2")
    data = json.loads(out)
    assert data["betti"] == [1, 10, 15, 7, 1] and data["depth"] == 2 and data["field_char"] == 2
    code, _, _ = run(capsys, "resolve", "--ideal", rp2, "--char", "4")
    assert code == EXIT_USAGE


def test_bounds_with_cover(capsys):
    code, out, _ = run(capsys, "bounds", "--ideal", TRIANGLE, "--n-max", "2", "--cover")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["verdicts"]["thm41"]["equality"] is True
    assert [c["status"] for c in data["s_phi_cover"]] == ["holds", "holds"]


def test_explicit_ring_and_dim(capsys):
    _, out, _ = run(capsys, "--ring", "z,y,x", "symb-pow", "--ideal", "x*y", "--n", "2")
    assert out == "y^2*x^2\n"
    _, out, _ = run(capsys, "symb-pow", "--dim", "3", "--ideal", "x1*x3", "--n", "1")
    assert out == "x1*x3\n"


@pytest.mark.parametrize("argv", [
    ("symb-pow", "--ideal", "x*", "--n", "2"),
    ("symb-pow", "--ring", "x,y", "--ideal", "x*q", "--n", "2"),
    ("resolve", "--ideal", "0"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == EXIT_USAGE


def test_cap_exit(capsys):
    code, out, _ = run(capsys, "bounds", "--dim", "2", "--ideal", f"x1^{2**59}, x2", "--n-max", "1")
    assert code == EXIT_CAP
    assert json.loads(out)["error"]


def test_status_codes():
    for status, code in (("violated", EXIT_VIOLATION), ("finding", EXIT_FINDING), ("holds", EXIT_OK)):
        assert _status_code([{"verdicts": {"q52": {"status": status}}}]) == code


def test_corpus_gen_and_run(capsys, tmp_path):
    corpus_file = tmp_path / "corpus.json"
    code, _, _ = run(capsys, "corpus", "gen", "--generator", "random-squarefree", "--d", "3:4", "--gen-degree", "2",
                     "--density", "0.6", "--size", "3", "--seed", "9", "--out", str(corpus_file))
    assert code == EXIT_OK
    corpus = json.loads(corpus_file.read_text())
    assert len(corpus["ideals"]) == 3 and corpus["prng"]["seed"] == 9

    manifest = tmp_path / "run.json"
    plots = tmp_path / "plots"
    code, _, _ = run(capsys, "corpus", "run", "--corpus", str(corpus_file), "--n-max", "2", "--N", "6",
                     "--out", str(manifest), "--plot-data", str(plots))
    assert code in (EXIT_OK, EXIT_FINDING)
    data = json.loads(manifest.read_text())
    assert data["summary"]["ideals"] == 3
    assert len(list(plots.iterdir())) == 3

    code, out, _ = run(capsys, "corpus", "run", "--corpus", str(corpus_file), "--n-max", "1", "--N", "5",
                       "--format", "csv")
    assert out.startswith("row_type,index,ideal")


def test_corpus_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"generator": "edge-ideal", "params": {"d": 3, "edges": [[1, 2], [2, 3], [1, 3]]},
                                "seed": 0, "size": 1}))
    _, out, _ = run(capsys, "corpus", "gen", "--spec", str(spec))
    assert json.loads(out)["ideals"][0]["generators"] == "x1*x2, x1*x3, x2*x3"
    _, out, _ = run(capsys, "corpus", "gen", "--generator", "cover-ideal", "--d", "3", "--edges", "1-2,2-3")
    assert json.loads(out)["ideals"][0]["generators"] == "x2, x1*x3"


@pytest.mark.skipif(shutil.which("symspread") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["symspread", "symb-pow", "--ideal", "x^2, x*y", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "x^3\n"
