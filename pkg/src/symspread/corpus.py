"""Seeded ideal corpora, batch runs over them, and manifest output.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64) and is
drawn sequentially before any work is dispatched, so the worker count never
changes a result.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from symspread import __version__
from symspread.bounds import BOUND_NAMES, BoundParams, Verdict, build_report
from symspread.errors import ConfigurationError
from symspread.monomial import MonomialIdeal, Ring, intersect_all, parse_ideal

GENERATORS = ("random-squarefree", "random-monomial", "edge-ideal", "cover-ideal", "explicit-list")
PRNG_ALGORITHM = "PCG64"
MAX_REDRAWS = 10_000
CSV_COLUMNS = (
    "row_type", "index", "ideal", "ring", "bound", "status", "kind", "reason",
    "lhs", "rhs", "equality", "windowed", "n", "mu",
)


@dataclass(frozen=True)
class CorpusSpec:
    """``params`` by generator (ranges are ``[lo, hi]`` inclusive):

    * random-squarefree: d, gen_degree, density
    * random-monomial: d, max_deg (largest exponent of any variable), count
    * edge-ideal / cover-ideal: d and either ``edges`` (1-based pairs) or an
      edge probability ``p`` for random graphs
    * explicit-list: path, optional ring
    """

    generator: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    size: int = 1

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ConfigurationError(f"unknown generator {self.generator!r}; expected one of {GENERATORS}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if self.size < 0:
            raise ConfigurationError("size must be non-negative")

    def to_dict(self) -> dict:
        return {"generator": self.generator, "params": dict(self.params), "seed": int(self.seed), "size": self.size}

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusSpec":
        return cls(data["generator"], dict(data.get("params", {})), int(data.get("seed", 0)), int(data.get("size", 1)))


@dataclass
class Corpus:
    spec: CorpusSpec
    ideals: list[MonomialIdeal]
    redraws: int = 0

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "prng": {"algorithm": PRNG_ALGORITHM, "seed": int(self.spec.seed)},
            "redraws": self.redraws,
            "ideals": [{"ring": list(i.ring.var_names), "generators": str(i)} for i in self.ideals],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Corpus":
        ideals = [parse_ideal(e["generators"], Ring(tuple(e["ring"]))) for e in data["ideals"]]
        return cls(CorpusSpec.from_dict(data["spec"]), ideals, int(data.get("redraws", 0)))


def _draw_int(rng: np.random.Generator, value) -> int:
    if isinstance(value, (list, tuple)):
        lo, hi = int(value[0]), int(value[1])
        if lo > hi:
            raise ConfigurationError(f"empty range {value}")
        return int(rng.integers(lo, hi + 1))
    return int(value)


def _upper(value) -> int:
    return int(value[1]) if isinstance(value, (list, tuple)) else int(value)


def _random_squarefree(rng, params) -> MonomialIdeal | None:
    d = _draw_int(rng, params.get("d", 4))
    k = _draw_int(rng, params.get("gen_degree", 2))
    if not 1 <= k <= d:
        raise ConfigurationError(f"generator degree {k} outside 1..{d}")
    combos = list(itertools.combinations(range(d), k))
    pick = rng.random(len(combos)) < float(params.get("density", 0.5))
    if not pick.any():
        return None
    gens = [tuple(1 if i in c else 0 for i in range(d)) for c, p in zip(combos, pick) if p]
    return MonomialIdeal(Ring.of_dim(d), gens)


def _random_monomial(rng, params) -> MonomialIdeal | None:
    d = _draw_int(rng, params.get("d", 3))
    top = _draw_int(rng, params.get("max_deg", 3))
    count = _draw_int(rng, params.get("count", 3))
    gens = rng.integers(0, top + 1, size=(count, d))
    ideal = MonomialIdeal(Ring.of_dim(d), gens)
    if ideal.is_zero or ideal.is_unit:
        return None
    return ideal


def _graph(rng, params) -> tuple[int, list[tuple[int, int]]]:
    d = int(params.get("d", 3))
    if "edges" in params:
        edges = [tuple(sorted((int(a) - 1, int(b) - 1))) for a, b in params["edges"]]
        if any(a == b or not 0 <= a < d or not 0 <= b < d for a, b in edges):
            raise ConfigurationError("edges must join distinct vertices in 1..d")
        return d, sorted(set(edges))
    pairs = list(itertools.combinations(range(d), 2))
    pick = rng.random(len(pairs)) < float(params.get("p", 0.5))
    return d, [e for e, keep in zip(pairs, pick) if keep]


def edge_ideal(d: int, edges) -> MonomialIdeal:
    ring = Ring.of_dim(d)
    gens = []
    for a, b in edges:
        g = [0] * d
        g[a] = g[b] = 1
        gens.append(tuple(g))
    return MonomialIdeal(ring, gens)


def cover_ideal(d: int, edges) -> MonomialIdeal:
    """⋂_{ij ∈ E} (x_i, x_j): generated by the minimal vertex covers."""
    ring = Ring.of_dim(d)
    return intersect_all([MonomialIdeal.prime(ring, e) for e in edges])


def _graph_ideal(rng, params, cover: bool) -> MonomialIdeal | None:
    d, edges = _graph(rng, params)
    if not edges:
        return None
    return cover_ideal(d, edges) if cover else edge_ideal(d, edges)


def _explicit_list(params) -> list[MonomialIdeal]:
    default = params.get("ring")
    out = []
    for lineno, line in enumerate(Path(params["path"]).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "|" in line:
            names, text = (part.strip() for part in line.split("|", 1))
            ring = Ring.from_names(names)
        elif default is not None:
            ring, text = Ring.from_names(default) if isinstance(default, str) else Ring(tuple(default)), line
        else:
            raise ConfigurationError(f"line {lineno}: no ring given")
        out.append(parse_ideal(text, ring))
    return out


def _check_feasible(spec: CorpusSpec) -> None:
    p = spec.params
    if spec.size == 0:
        return
    if spec.generator == "random-squarefree" and float(p.get("density", 0.5)) <= 0:
        raise ConfigurationError("density 0 cannot produce a nonzero ideal")
    if spec.generator in ("edge-ideal", "cover-ideal") and "edges" not in p:
        if float(p.get("p", 0.5)) <= 0 or int(p.get("d", 3)) < 2:
            raise ConfigurationError("random graphs need p > 0 and d >= 2")
    if spec.generator in ("edge-ideal", "cover-ideal") and "edges" in p and not p["edges"]:
        raise ConfigurationError("an empty graph gives a degenerate ideal")
    if spec.generator == "random-monomial" and _upper(p.get("max_deg", 3)) < 1:
        raise ConfigurationError("max_deg must be at least 1")


def generate_corpus(spec: CorpusSpec) -> Corpus:
    """Deterministic corpus for ``spec``; degenerate draws are redrawn and counted."""
    _check_feasible(spec)
    if spec.generator == "explicit-list":
        ideals = _explicit_list(spec.params)
        if spec.size:
            ideals = ideals[: spec.size]
        return Corpus(spec, ideals, 0)
    draw = {
        "random-squarefree": lambda rng: _random_squarefree(rng, spec.params),
        "random-monomial": lambda rng: _random_monomial(rng, spec.params),
        "edge-ideal": lambda rng: _graph_ideal(rng, spec.params, cover=False),
        "cover-ideal": lambda rng: _graph_ideal(rng, spec.params, cover=True),
    }[spec.generator]
    rng = np.random.default_rng(int(spec.seed))
    ideals, redraws = [], 0
    while len(ideals) < spec.size:
        ideal = draw(rng)
        if ideal is None or ideal.is_zero or ideal.is_unit:
            redraws += 1
            if redraws > MAX_REDRAWS:
                raise ConfigurationError("too many degenerate draws; spec looks infeasible")
            continue
        ideals.append(ideal)
    return Corpus(spec, ideals, redraws)


def sharpness_witnesses() -> list[MonomialIdeal]:
    """Ideals where sℓ meets d - floor((d-1)/bght), confirmed by computation
    in the test suite rather than assumed."""
    out = []
    for d in range(2, 6):
        ring = Ring.of_dim(d)
        out.append(MonomialIdeal.maximal(ring))
    out.append(edge_ideal(3, [(0, 1), (1, 2), (0, 2)]))
    out.append(edge_ideal(4, [(0, 2), (0, 3), (1, 2), (1, 3)]))
    out.append(MonomialIdeal(Ring.of_dim(2), [(1, 1)]))
    return out


# --------------------------------------------------------------------------
# batch runs


@dataclass
class RunManifest:
    corpus: dict
    parameters: dict
    reports: list[dict]
    redraws: int = 0
    tool_version: str = __version__
    timestamp: str = ""
    summary: dict = field(default_factory=dict)

    def to_dict(self, *, timestamp: bool = True) -> dict:
        out = {
            "tool": "symspread",
            "tool_version": self.tool_version,
            "ring": "per ideal; generated corpora use x1..xd",
            "corpus": self.corpus,
            "prng": {"algorithm": PRNG_ALGORITHM, "seed": self.corpus.get("seed")},
            "parameters": self.parameters,
            "redraws": self.redraws,
            "reports": self.reports,
            "summary": self.summary,
        }
        if timestamp:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self, *, timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(timestamp=timestamp), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(
            corpus=data.get("corpus", {}),
            parameters=data.get("parameters", {}),
            reports=list(data.get("reports", [])),
            redraws=int(data.get("redraws", 0)),
            tool_version=data.get("tool_version", __version__),
            timestamp=data.get("timestamp", ""),
            summary=data.get("summary", {}),
        )


def _run_one(payload) -> dict:
    names, gens, params = payload
    ring = Ring(tuple(names))
    ideal = MonomialIdeal(ring, gens)
    try:
        report = build_report(ideal, BoundParams(**params)).to_dict()
    except Exception as exc:  # noqa: BLE001 - isolate a bad ideal from the batch
        report = {"ideal": str(ideal), "d": ring.dim, "field_char": params["field_char"],
                  "verdicts": {}, "mu_symbolic": [], "error": f"{type(exc).__name__}: {exc}"}
    report["ring"] = list(names)
    return report


def summarize(reports: list[dict], bounds=BOUND_NAMES) -> dict:
    tallies = {b: {"holds": 0, "violated": 0, "inconclusive": 0, "finding": 0} for b in bounds}
    errors = 0
    for rep in reports:
        if rep.get("error"):
            errors += 1
        for b in bounds:
            v = rep.get("verdicts", {}).get(b)
            tallies[b][v["status"] if v else "inconclusive"] += 1
    total = len(reports)
    rates = {b: (tallies[b]["inconclusive"] / total if total else 0.0) for b in bounds}
    return {"ideals": total, "errors": errors, "tallies": tallies, "inconclusive_rate": rates}


def run_batch(corpus: Corpus | list[MonomialIdeal], params: BoundParams | None = None,
              workers: int = 1) -> RunManifest:
    """One report per ideal, in input order whatever the worker count."""
    params = params or BoundParams()
    if isinstance(corpus, Corpus):
        ideals, spec, redraws = corpus.ideals, corpus.spec.to_dict(), corpus.redraws
    else:
        ideals, spec, redraws = list(corpus), {}, 0
    payloads = [(i.ring.var_names, i.gens, params.to_dict()) for i in ideals]
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, payloads, chunksize=1))
    else:
        reports = [_run_one(p) for p in payloads]
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return RunManifest(spec, params.to_dict(), reports, redraws, timestamp=stamp,
                       summary=summarize(reports))


# --------------------------------------------------------------------------
# output


def _cell(value) -> str:
    return "" if value is None else str(value)


def manifest_rows(manifest: RunManifest) -> list[dict]:
    rows = []
    for k, rep in enumerate(manifest.reports):
        base = {"index": k, "ideal": rep["ideal"], "ring": ",".join(rep.get("ring", []))}
        for name, v in rep.get("verdicts", {}).items():
            rows.append({**base, "row_type": "verdict", "bound": name, **{
                key: _cell(v.get(key)) for key in ("status", "kind", "reason", "lhs", "rhs", "equality", "windowed")
            }})
        for n, mu in enumerate(rep.get("mu_symbolic", []), start=1):
            rows.append({**base, "row_type": "growth", "n": n, "mu": mu})
    return rows


def to_csv(manifest: RunManifest) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(manifest_rows(manifest))
    return buf.getvalue()


def _parse_cell(text: str, kind: str):
    if text == "":
        return None
    if kind == "int":
        return int(text)
    if kind == "bool":
        return text == "True"
    return text


def read_csv(text: str) -> list[dict]:
    """Rebuild per-ideal reports (verdicts and growth samples) from CSV."""
    reports: dict[int, dict] = {}
    for row in csv.DictReader(io.StringIO(text)):
        k = int(row["index"])
        rep = reports.setdefault(k, {"ideal": row["ideal"], "ring": row["ring"].split(",") if row["ring"] else [],
                                     "verdicts": {}, "mu_symbolic": []})
        if row["row_type"] == "verdict":
            rep["verdicts"][row["bound"]] = Verdict(
                status=row["status"],
                kind=row["kind"],
                reason=row["reason"],
                lhs=_parse_cell(row["lhs"], "int"),
                rhs=_parse_cell(row["rhs"], "int"),
                equality=_parse_cell(row["equality"], "bool"),
                windowed=row["windowed"] == "True",
            ).to_dict()
        else:
            rep["mu_symbolic"].append(int(row["mu"]))
    return [reports[k] for k in sorted(reports)]


def write_plot_data(manifest: RunManifest, directory: str | os.PathLike) -> list[Path]:
    """Two-column files ``n mu`` of μ(I^(n)), one per ideal."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, rep in enumerate(manifest.reports):
        path = directory / f"ideal_{k:04d}.dat"
        lines = [f"# {rep['ideal']}", "# n mu"]
        lines += [f"{n} {mu}" for n, mu in enumerate(rep.get("mu_symbolic", []), start=1)]
        path.write_text("\n".join(lines) + "\n")
        paths.append(path)
    return paths


def emit(manifest: RunManifest, fmt: str = "json", out: str | os.PathLike | None = None,
         plot_data: str | os.PathLike | None = None) -> str:
    """Serialize the manifest; writes to ``out`` when given and returns the text."""
    if fmt == "json":
        text = manifest.to_json()
    elif fmt == "csv":
        text = to_csv(manifest)
    else:
        raise ConfigurationError(f"unknown format {fmt!r}")
    if out is not None:
        Path(out).write_text(text)
    if plot_data is not None:
        write_plot_data(manifest, plot_data)
    return text
