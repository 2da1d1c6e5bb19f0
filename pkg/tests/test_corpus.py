import json

import pytest

from symspread import ConfigurationError, MonomialIdeal, Ring, parse_ideal
from symspread.bounds import BOUND_NAMES, BoundParams
from symspread.corpus import (
    CSV_COLUMNS,
    Corpus,
    CorpusSpec,
    RunManifest,
    cover_ideal,
    edge_ideal,
    emit,
    generate_corpus,
    read_csv,
    run_batch,
    to_csv,
    write_plot_data,
)

FAST = BoundParams(N=6, n_max=2)
TRIANGLE = [(0, 1), (1, 2), (0, 2)]

# (x1^B, x2) with B = 2^59: the fourth power overflows the exponent limit
POISON = MonomialIdeal(Ring.of_dim(2), [(2**59, 0), (0, 1)])


def squarefree_spec(seed=42, size=10):
    return CorpusSpec("random-squarefree", {"d": 4, "gen_degree": 2, "density": 0.5}, seed, size)


def test_seeded_corpus_is_reproducible():
    a, b = generate_corpus(squarefree_spec()), generate_corpus(squarefree_spec())
    assert [str(i) for i in a.ideals] == [str(i) for i in b.ideals]
    assert len(a.ideals) == 10
    assert all(i.is_squarefree and not i.is_zero for i in a.ideals)
    assert [str(i) for i in generate_corpus(squarefree_spec(seed=7)).ideals] != [str(i) for i in a.ideals]


def test_ranges_are_drawn_per_ideal():
    spec = CorpusSpec("random-squarefree", {"d": [3, 6], "gen_degree": [2, 3], "density": 0.5}, 1, 30)
    dims = {i.dim for i in generate_corpus(spec).ideals}
    assert dims <= {3, 4, 5, 6} and len(dims) > 1


def test_random_monomial_respects_bounds():
    spec = CorpusSpec("random-monomial", {"d": [2, 4], "max_deg": 3, "count": [1, 4]}, 5, 40)
    for ideal in generate_corpus(spec).ideals:
        assert ideal.dim <= 4 and max(ideal.max_exponents) <= 3
        assert not ideal.is_zero and not ideal.is_unit


def test_triangle_edge_and_cover_ideals():
    expected = parse_ideal("x1*x2, x2*x3, x1*x3", Ring.of_dim(3))
    assert edge_ideal(3, TRIANGLE) == expected
    assert cover_ideal(3, TRIANGLE) == expected
    edges = [[1, 2], [2, 3], [1, 3]]
    assert generate_corpus(CorpusSpec("edge-ideal", {"d": 3, "edges": edges}, 0, 1)).ideals == [expected]
    assert generate_corpus(CorpusSpec("cover-ideal", {"d": 3, "edges": edges}, 0, 1)).ideals == [expected]


def test_path_cover_ideal():
    # covers of the path 1-2-3 are {2} and {1,3}
    assert cover_ideal(3, [(0, 1), (1, 2)]) == parse_ideal("x2, x1*x3", Ring.of_dim(3))


def test_random_graphs():
    corpus = generate_corpus(CorpusSpec("edge-ideal", {"d": 5, "p": 0.4}, 3, 8))
    assert all(max(sum(g) for g in i.gens) == 2 for i in corpus.ideals)


def test_infeasible_specs_rejected():
    with pytest.raises(ConfigurationError):
        generate_corpus(CorpusSpec("random-squarefree", {"d": 4, "gen_degree": 2, "density": 0}, 0, 3))
    with pytest.raises(ConfigurationError):
        generate_corpus(CorpusSpec("edge-ideal", {"d": 3, "edges": []}, 0, 1))
    with pytest.raises(ConfigurationError):
        CorpusSpec("lattice")
    with pytest.raises(ConfigurationError):
        CorpusSpec("random-squarefree", seed=-1)


def test_degenerate_draws_are_counted():
    spec = CorpusSpec("random-squarefree", {"d": 3, "gen_degree": 3, "density": 0.3}, 11, 5)
    corpus = generate_corpus(spec)
    assert len(corpus.ideals) == 5 and corpus.redraws > 0
    assert corpus.to_dict()["redraws"] == corpus.redraws


def test_explicit_list(tmp_path):
    path = tmp_path / "ideals.txt"
    path.write_text("# comment\nx,y,z | x*y, y*z, z*x\n\na,b | a^2, a*b\n")
    corpus = generate_corpus(CorpusSpec("explicit-list", {"path": str(path)}, 0, 0))
    assert [str(i) for i in corpus.ideals] == ["x*y, x*z, y*z", "a^2, a*b"]
    bare = tmp_path / "bare.txt"
    bare.write_text("x*y\n")
    with pytest.raises(ConfigurationError):
        generate_corpus(CorpusSpec("explicit-list", {"path": str(bare)}, 0, 0))
    corpus = generate_corpus(CorpusSpec("explicit-list", {"path": str(bare), "ring": "x,y"}, 0, 0))
    assert corpus.ideals[0].ring.var_names == ("x", "y")


def test_corpus_file_round_trip():
    corpus = generate_corpus(squarefree_spec(size=4))
    again = Corpus.from_dict(json.loads(json.dumps(corpus.to_dict())))
    assert again.ideals == corpus.ideals and again.spec == corpus.spec
    assert corpus.to_dict()["prng"] == {"algorithm": "PCG64", "seed": 42}


# -- batches ---------------------------------------------------------------------


def toy_corpus():
    return [edge_ideal(3, TRIANGLE), parse_ideal("x^2, x*y", Ring.from_names("x,y")), edge_ideal(4, [(0, 1), (2, 3)])]


def test_toy_batch_tallies():
    manifest = run_batch(toy_corpus(), FAST)
    assert len(manifest.reports) == 3
    for bound in BOUND_NAMES:
        assert sum(manifest.summary["tallies"][bound].values()) == 3
    tri = manifest.reports[0]
    assert tri["verdicts"]["thm41"]["equality"] is True


def test_batch_is_deterministic_and_ordered():
    corpus = generate_corpus(squarefree_spec(size=6))
    one = run_batch(corpus, FAST, workers=1)
    two = run_batch(corpus, FAST, workers=2)
    assert one.to_json(timestamp=False) == two.to_json(timestamp=False)
    assert [r["ideal"] for r in one.reports] == [str(i) for i in corpus.ideals]
    assert "timestamp" in json.loads(one.to_json())


def test_poisoned_ideal_is_isolated():
    clean = run_batch(toy_corpus(), FAST)
    mixed = run_batch(toy_corpus()[:1] + [POISON] + toy_corpus()[1:], FAST)
    assert mixed.reports[1]["error"]
    assert all(v["status"] == "inconclusive" for v in mixed.reports[1]["verdicts"].values())
    assert [mixed.reports[k] for k in (0, 2, 3)] == clean.reports
    assert mixed.summary["errors"] == 1


def test_manifest_round_trip():
    manifest = run_batch(toy_corpus(), FAST)
    again = RunManifest.from_dict(json.loads(manifest.to_json()))
    assert again.to_json() == manifest.to_json()


# -- output ----------------------------------------------------------------------


def test_csv_round_trip_preserves_verdicts():
    manifest = run_batch(toy_corpus(), FAST)
    back = read_csv(to_csv(manifest))
    assert len(back) == 3
    for rep, orig in zip(back, manifest.reports):
        assert rep["verdicts"] == orig["verdicts"]
        assert rep["mu_symbolic"] == orig["mu_symbolic"]
        assert rep["ideal"] == orig["ideal"]


def test_empty_manifest_is_headers_only():
    manifest = run_batch([], FAST)
    assert to_csv(manifest) == ",".join(CSV_COLUMNS) + "\n"
    assert manifest.summary["ideals"] == 0


def test_triangle_plot_rows(tmp_path):
    manifest = run_batch([edge_ideal(3, TRIANGLE)], FAST)
    (path,) = write_plot_data(manifest, tmp_path)
    rows = [tuple(map(int, line.split())) for line in path.read_text().splitlines() if not line.startswith("#")]
    assert rows == [(1, 3), (2, 4), (3, 6), (4, 7), (5, 9), (6, 10)]


def test_emit_writes_files(tmp_path):
    manifest = run_batch(toy_corpus()[:1], FAST)
    out = tmp_path / "m.csv"
    text = emit(manifest, "csv", out, plot_data=tmp_path / "plots")
    assert out.read_text() == text
    assert (tmp_path / "plots" / "ideal_0000.dat").exists()
    with pytest.raises(ConfigurationError):
        emit(manifest, "xml")
    with pytest.raises(OSError):
        emit(manifest, "json", tmp_path / "missing" / "m.json")
