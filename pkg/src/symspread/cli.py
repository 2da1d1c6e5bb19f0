"""Command-line entry point: ``symspread <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from symspread.bounds import BoundParams, build_report, s_phi_cover
from symspread.corpus import Corpus, CorpusSpec, emit, generate_corpus, run_batch
from symspread.decomposition import irreducible_decomposition, minimal_primes, primary_decomposition
from symspread.errors import CapExceeded, ExponentOverflow, SymspreadError
from symspread.growth import analytic_spread, mu_sequence, symbolic_spread
from symspread.monomial import Ring, format_ideal, format_monomial, parse_ideal
from symspread.resolution import betti_numbers
from symspread.symbolic import FLAVORS, PowerFlavor, system

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_FINDING, EXIT_CAP = 0, 1, 2, 3, 4
_VAR = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class UsageError(Exception):
    pass


def _ring(args, text: str | None = None) -> Ring:
    if getattr(args, "ring", None):
        return Ring.from_names(args.ring)
    if getattr(args, "dim", None):
        return Ring.of_dim(args.dim)
    if text is None:
        raise UsageError("give --ring or --dim")
    names = list(dict.fromkeys(_VAR.findall(text)))
    if not names:
        raise UsageError("cannot infer variables; give --ring or --dim")
    return Ring(tuple(names))


def _ideal(args, text: str | None = None):
    text = args.ideal if text is None else text
    return parse_ideal(text, _ring(args, text))


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _flavor(args, ring: Ring) -> PowerFlavor:
    j = parse_ideal(args.J, ring) if args.J else None
    return PowerFlavor(args.flavor, j)


def _params(args) -> BoundParams:
    return BoundParams(N=args.N, c_max=args.c_max, n_check=args.n_check, n_max=args.n_max,
                       field_char=args.char)


# --------------------------------------------------------------------------
# commands


def cmd_decompose(args) -> int:
    ideal = _ideal(args)
    if args.kind == "primary":
        data = primary_decomposition(ideal).to_json()
    elif args.kind == "irreducible":
        data = [
            {"radical": c.radical.names(ideal.ring), "generators": format_ideal(c.ideal(ideal.ring)).split(", ")}
            for c in irreducible_decomposition(ideal)
        ]
    else:
        data = [{"radical": p.names(ideal.ring), "height": p.height} for p in minimal_primes(ideal)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radical", "generators"])
        for row in data:
            w.writerow([",".join(row["radical"]), "; ".join(row.get("generators", []))])
        _write(args, buf.getvalue())
    else:
        _write(args, _dump(data))
    return EXIT_OK


def cmd_symb_pow(args) -> int:
    ideal = _ideal(args)
    result = system(ideal, _flavor(args, ideal.ring), args.n)
    if args.format == "json":
        _write(args, _dump({"generators": [format_monomial(g, ideal.ring) for g in result.gens], "mu": result.mu}))
    else:
        _write(args, format_ideal(result) + "\n")
    return EXIT_OK


def cmd_growth(args) -> int:
    ideal = _ideal(args)
    series = mu_sequence(ideal, _flavor(args, ideal.ring), args.N)
    if args.format == "csv":
        lines = ["n,mu"] + [f"{n},{mu}" for n, mu in enumerate(series.values, start=1)]
        _write(args, "\n".join(lines) + "\n")
    else:
        _write(args, _dump(series.to_dict()))
    if args.plot_data:
        rows = "\n".join(f"{n} {mu}" for n, mu in enumerate(series.values, start=1))
        Path(args.plot_data).write_text(f"# {ideal}\n# n mu\n{rows}\n")
    return EXIT_OK


def cmd_spread(args) -> int:
    ideal = _ideal(args)
    if args.kind == "ordinary":
        result = analytic_spread(ideal, args.N)
    else:
        result = symbolic_spread(ideal, args.c_max, args.n_check, args.N)
    _write(args, _dump(result.to_dict()))
    return EXIT_OK


def cmd_resolve(args) -> int:
    ideal = _ideal(args)
    table = betti_numbers(ideal, args.char)
    _write(args, _dump(table.to_json(ideal.ring)))
    return EXIT_OK


def _status_code(reports) -> int:
    statuses = [v["status"] for r in reports for v in r.get("verdicts", {}).values()]
    if "violated" in statuses:
        return EXIT_VIOLATION
    if "finding" in statuses:
        return EXIT_FINDING
    return EXIT_OK


def cmd_bounds(args) -> int:
    ideal = _ideal(args)
    params = _params(args)
    report = build_report(ideal, params).to_dict()
    if args.cover:
        report["s_phi_cover"] = [s_phi_cover(ideal, n).to_dict() for n in range(1, params.n_max + 1)]
    _write(args, _dump(report))
    code = _status_code([report])
    if code == EXIT_OK and report.get("error"):
        return EXIT_CAP
    return code


def _spec_from_args(args) -> CorpusSpec:
    if args.spec:
        data = json.loads(Path(args.spec).read_text())
        if args.seed is not None:
            data["seed"] = args.seed
        return CorpusSpec.from_dict(data)
    params = {}
    for key in ("d", "gen_degree", "density", "max_deg", "count", "p"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = _range_or_number(value)
    if args.edges:
        params["edges"] = [[int(v) for v in e.split("-")] for e in args.edges.split(",")]
    if args.path:
        params["path"] = args.path
        if args.ring:
            params["ring"] = args.ring
    return CorpusSpec(args.generator, params, args.seed or 0, args.size)


def _range_or_number(text: str):
    if ":" in text:
        lo, hi = text.split(":")
        return [int(lo), int(hi)]
    return float(text) if "." in text else int(text)


def cmd_corpus_gen(args) -> int:
    corpus = generate_corpus(_spec_from_args(args))
    _write(args, _dump(corpus.to_dict()))
    return EXIT_OK


def cmd_corpus_run(args) -> int:
    if args.corpus:
        corpus = Corpus.from_dict(json.loads(Path(args.corpus).read_text()))
    else:
        corpus = generate_corpus(_spec_from_args(args))
    manifest = run_batch(corpus, _params(args), workers=args.workers)
    text = emit(manifest, args.format, plot_data=args.plot_data)
    _write(args, text)
    code = _status_code(manifest.reports)
    if code == EXIT_OK and any(r.get("error") for r in manifest.reports):
        return EXIT_CAP
    return code


# --------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--ring", default=default(None), help="comma-separated variable names")
    p.add_argument("--dim", type=int, default=default(None), help="use variables x1..xd")
    p.add_argument("--char", type=int, default=default(0), help="field characteristic (0 or a prime)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=default(None))
    p.add_argument("--seed", type=int, default=default(None))
    p.add_argument("--workers", type=int, default=default(1))
    p.add_argument("--out", default=default(None), help="write output here instead of stdout")


def _add_spread_opts(p) -> None:
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--c-max", dest="c_max", type=int, default=6)
    p.add_argument("--n-check", dest="n_check", type=int, default=3)


def _add_corpus_opts(p) -> None:
    p.add_argument("--spec", help="CorpusSpec JSON file")
    p.add_argument("--generator", default="random-squarefree")
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--d")
    p.add_argument("--gen-degree", dest="gen_degree")
    p.add_argument("--density")
    p.add_argument("--max-deg", dest="max_deg")
    p.add_argument("--count")
    p.add_argument("--p", help="edge probability for random graphs")
    p.add_argument("--edges", help="graph edges as 1-2,2-3,...")
    p.add_argument("--path", help="file for explicit-list corpora")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symspread", description="Symbolic powers and spreads of monomial ideals.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = command("decompose", cmd_decompose, "primary or irreducible decomposition")
    p.add_argument("--ideal", required=True)
    p.add_argument("--kind", choices=("primary", "irreducible", "minimal-primes"), default="primary")

    p = command("symb-pow", cmd_symb_pow, "n-th power of the chosen flavor")
    p.add_argument("--ideal", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=FLAVORS, default="symbolic")
    p.add_argument("--J")

    p = command("growth", cmd_growth, "generator counts mu(I_n) for n = 1..N")
    p.add_argument("--ideal", required=True)
    p.add_argument("--flavor", choices=FLAVORS, default="symbolic")
    p.add_argument("--J")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--plot-data", dest="plot_data")

    p = command("spread", cmd_spread, "analytic or symbolic analytic spread")
    p.add_argument("--ideal", required=True)
    p.add_argument("--kind", choices=("symbolic", "ordinary"), default="symbolic")
    _add_spread_opts(p)

    p = command("resolve", cmd_resolve, "Betti numbers, pd and depth of R/I")
    p.add_argument("--ideal", required=True)

    p = command("bounds", cmd_bounds, "check every bound on one ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--n-max", dest="n_max", type=int, default=4)
    p.add_argument("--cover", action="store_true", help="include S_phi cover reports")
    _add_spread_opts(p)

    corpus = sub.add_parser("corpus", help="corpus generation and batch runs")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)
    p = csub.add_parser("gen", help="generate a corpus file")
    _add_common(p, suppress=True)
    _add_corpus_opts(p)
    p.set_defaults(func=cmd_corpus_gen)
    p = csub.add_parser("run", help="run every check over a corpus")
    _add_common(p, suppress=True)
    _add_corpus_opts(p)
    p.add_argument("--corpus", help="corpus JSON written by corpus gen")
    p.add_argument("--n-max", dest="n_max", type=int, default=3)
    p.add_argument("--plot-data", dest="plot_data", help="directory for per-ideal plot files")
    _add_spread_opts(p)
    p.set_defaults(func=cmd_corpus_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.func is cmd_symb_pow else "json"
    try:
        return args.func(args)
    except (CapExceeded, ExponentOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SymspreadError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
