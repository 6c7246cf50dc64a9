"""Command-line entry point: ``graphspec <command> [options]``.

Commands: ``spectrum``, ``construct``, ``verify``, ``search``, ``phi`` and
``amplify``. Each run starts with a reproducibility header (tool version,
command, configuration echo, seed and tolerance constants): a ``{"header": ...}``
JSON line for JSON output, ``#`` comment lines otherwise.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage,
input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import constructions, search, spectra, verify
from .errors import BudgetExceededError, ConvergenceError, GraphFormatError, OrderTooSmallError
from .formats import from_graph6, read_graph, to_graph6
from .functional import PRESETS, FamilyPredicate, LinearForm, preset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("spectrum", "construct", "verify", "search", "phi", "amplify")


@dataclass
class RunConfig:
    command: str
    form: dict | None = None
    family: str = "all"
    seed: int = 0
    output: str = "json"
    in_path: str | None = None
    graph6: str | None = None
    out_dir: str | None = None
    exhaustive_cap: int = search.EXHAUSTIVE_CAP
    solver_budget: int = constructions.SOLVER_BUDGET
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.exhaustive_cap < 1 or self.solver_budget < 1:
            raise ValueError("caps must be positive")


def tolerance_constants() -> dict:
    return {
        "jacobi_offdiag_per_n": spectra.OFFDIAG_TOL,
        "trace_per_n": spectra.TRACE_TOL,
        "energy_per_n2": spectra.ENERGY_TOL,
        "check_slack_floor": verify.SLACK_FLOOR,
        "blowup_multiset_per_tn": verify.BLOWUP_TOL,
        "search_improve": search.IMPROVE_TOL,
        "search_tie": search.TIE_TOL,
    }


def header(config: RunConfig) -> dict:
    return {
        "tool": "graphspec",
        "version": __version__,
        "command": config.command,
        "seed": config.seed,
        "config": asdict(config),
        "tolerances": tolerance_constants(),
    }


class _Emitter:
    def __init__(self, config: RunConfig, stream):
        self.config = config
        self.stream = stream

    def header(self):
        h = header(self.config)
        if self.config.output == "json":
            self.json({"header": h})
        else:
            self.line(f"# graphspec {h['version']} command={h['command']} seed={h['seed']}")
            self.line("# config " + json.dumps(h["config"], sort_keys=True))
            self.line("# tolerances " + json.dumps(h["tolerances"]))

    def json(self, obj):
        self.line(json.dumps(obj))

    def line(self, text: str):
        self.stream.write(text + "\n")


def _load_form(config: RunConfig) -> LinearForm:
    f = config.form or {"preset": "mu1+mu2"}
    if "preset" in f:
        return preset(f["preset"], f.get("i"))
    if "file" in f:
        return LinearForm.from_json(Path(f["file"]).read_text())
    return LinearForm.from_dict(f)


def _load_graph(config: RunConfig):
    if config.graph6 is not None:
        return from_graph6(config.graph6)
    if config.in_path is None:
        raise ValueError("no input graph: pass --in FILE or --graph6 STRING")
    return read_graph(config.in_path, config.options.get("format"))


def _out_dir(config: RunConfig) -> Path | None:
    if config.out_dir is None:
        return None
    d = Path(config.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _check_budget(n: int, config: RunConfig):
    if n > config.solver_budget:
        raise BudgetExceededError(f"order {n} exceeds the solver budget of {config.solver_budget}")


# --- commands -----------------------------------------------------------------------

def _cmd_spectrum(config: RunConfig, out: _Emitter) -> int:
    G = _load_graph(config)
    _check_budget(G.n, config)
    spec = spectra.eigenvalues(G)
    if config.output == "json":
        out.json({"n": G.n, "m": G.edge_count, "values": [float(x) for x in spec.values], "tol": spec.tol})
    else:
        out.line(json.dumps(spec.to_list()))
    return EXIT_OK


def _cmd_construct(config: RunConfig, out: _Emitter) -> int:
    k = config.options["k"]
    n = config.options.get("n") or 21 * k
    _check_budget(n, config)
    p = constructions.GernertParams(k, n)
    G = constructions.gernert_graph(p)
    report = constructions.gernert_certificate(k, n)
    cert = report.to_dict()
    cert["witness_graph6"] = to_graph6(G)
    out.json(cert)
    d = _out_dir(config)
    if d is not None:
        (d / "witness.g6").write_text(cert["witness_graph6"] + "\n")
        (d / "certificate.json").write_text(json.dumps(cert, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_verify(config: RunConfig, out: _Emitter) -> int:
    suite = config.options.get("suite", "all")
    trials = config.options.get("trials", 100)
    details = config.options.get("details", False)
    reports = verify.run_suite(suite, trials, config.seed)
    lines = []
    for r in reports:
        d = r.to_dict() if isinstance(r, verify.AmplificationReport) else r.to_dict(details=details)
        lines.append(json.dumps(d))
        out.line(lines[-1])
    passed = sum(1 for r in reports if r.passed)
    summary = f"PASS {passed}/{len(reports)}" if passed == len(reports) else f"FAIL {passed}/{len(reports)}"
    out.line(summary)
    d = _out_dir(config)
    if d is not None:
        (d / "verify.jsonl").write_text("\n".join(lines) + "\n")
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def _cmd_search(config: RunConfig, out: _Emitter) -> int:
    F = _load_form(config)
    P = FamilyPredicate.parse(config.family)
    o = config.options
    n = o["n"]
    method = o.get("method") or ("exhaustive" if n <= config.exhaustive_cap else "stochastic")
    if method == "exhaustive":
        rec = search.exhaustive(n, F, P, cap=config.exhaustive_cap)
    else:
        initial = None
        if o.get("seed_gernert"):
            initial = constructions.gernert_graph(constructions.GernertParams.for_order(n))
        rec = search.stochastic(n, F, P, config.seed, o.get("restarts", 16), o.get("steps", 10_000), initial)
    search.validate_record(rec)
    if config.output == "csv":
        out.stream.write(search.write_csv([rec]))
    else:
        out.json(rec.to_dict())
    d = _out_dir(config)
    if d is not None:
        (d / "record.json").write_text(json.dumps(rec.to_dict(), indent=2) + "\n")
        (d / "witness.g6").write_text(to_graph6(rec.witness) + "\n")
    return EXIT_OK


def _cmd_phi(config: RunConfig, out: _Emitter) -> int:
    F = _load_form(config)
    P = FamilyPredicate.parse(config.family)
    o = config.options
    policy = search.SearchPolicy(
        exhaustive_cap=config.exhaustive_cap,
        restarts=o.get("restarts", 16),
        steps=o.get("steps", 10_000),
        seed=config.seed,
        seed_with_gernert=bool(o.get("seed_gernert")),
    )
    records = search.phi_table(F, P, o["n_range"], policy)
    if config.output == "json":
        for rec in records:
            out.json(rec.to_dict())
    else:
        out.stream.write(search.write_csv(records))
    d = _out_dir(config)
    if d is not None:
        (d / "phi.csv").write_text(search.write_csv(records))
    return EXIT_OK


def _cmd_amplify(config: RunConfig, out: _Emitter) -> int:
    G = _load_graph(config)
    F = _load_form(config)
    P = FamilyPredicate.parse(config.family)
    o = config.options
    _check_budget(o["N"], config)
    report = verify.amplify(G, F, P, o["N"], o.get("c_ref", 0.0), o.get("eps", 0.0))
    out.json(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "phi": _cmd_phi,
    "amplify": _cmd_amplify,
}


def run(config: RunConfig, stream=None) -> int:
    """Execute one command; returns the exit status."""
    stream = sys.stdout if stream is None else stream
    out = _Emitter(config, stream)
    try:
        out.header()
        return _DISPATCH[config.command](config, out)
    except GraphFormatError as exc:
        print(f"graphspec: malformed graph input: {exc}", file=sys.stderr)
    except (BudgetExceededError, OrderTooSmallError, ConvergenceError) as exc:
        print(f"graphspec: {exc}", file=sys.stderr)
    except (ValueError, IndexError, OSError, KeyError) as exc:
        print(f"graphspec: {exc}", file=sys.stderr)
    return EXIT_USAGE


# --- argument parsing -------------------------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _n_range(text: str) -> list[int]:
    """``3..7`` (inclusive) or ``21,42,63``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}") from None


def _add_form_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("linear form (default: preset mu1+mu2)")
    g.add_argument("--form", choices=PRESETS, help="named objective")
    g.add_argument("--i", type=int, help="index for the mui+cmui preset")
    g.add_argument("--form-file", help="JSON file {k, alpha, beta, gamma, delta}")
    for name in ("alpha", "beta", "gamma", "delta"):
        g.add_argument(f"--{name}", type=_floats, help=f"comma-separated {name} coefficients")


def _add_graph_args(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="in_path", help="graph file (.g6 for graph6, else edge list)")
    p.add_argument("--format", choices=("graph6", "edgelist"), help="override input format detection")
    p.add_argument("--graph6", help="graph given inline as a graph6 string")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphspec", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"graphspec {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="single source of randomness (default 0)")
    common.add_argument("--output", choices=("json", "csv", "text"), help="report format")
    common.add_argument("--out", dest="out_dir", help="directory for artifacts")
    common.add_argument("--exhaustive-cap", type=int, default=search.EXHAUSTIVE_CAP)
    common.add_argument("--solver-budget", type=int, default=constructions.SOLVER_BUDGET)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="adjacency spectrum of a graph")
    _add_graph_args(p)

    p = sub.add_parser("construct", parents=[common], help="K_5k + 2K_8k witness and certificate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="total order (default 21k)")

    p = sub.add_parser("verify", parents=[common], help="run seeded certificate suites")
    p.add_argument("--suite", default="all", choices=("all", *verify.SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--details", action="store_true", help="include every sub-inequality")

    p = sub.add_parser("search", parents=[common], help="maximize a form at one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default="all", help="all, krfree:R or rpartite:R")
    p.add_argument("--method", choices=("exhaustive", "stochastic"))
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--seed-gernert", action="store_true", help="first restart from the construction")
    _add_form_args(p)

    p = sub.add_parser("phi", parents=[common], help="table of max F(G)/n over a range of orders")
    p.add_argument("--n-range", type=_n_range, required=True, help="e.g. 3..7 or 21,42,63")
    p.add_argument("--family", default="all")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--seed-gernert", action="store_true")
    _add_form_args(p)

    p = sub.add_parser("amplify", parents=[common], help="blow-up amplification report")
    _add_graph_args(p)
    p.add_argument("--family", default="all")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--c-ref", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=0.0)
    _add_form_args(p)
    return parser


_DEFAULT_OUTPUT = {"spectrum": "text", "phi": "csv"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    form = None
    if getattr(args, "form_file", None):
        form = {"file": args.form_file}
    elif getattr(args, "form", None):
        form = {"preset": args.form, "i": args.i}
    elif any(getattr(args, f, None) for f in ("alpha", "beta", "gamma", "delta")):
        form = {f: getattr(args, f) or [] for f in ("alpha", "beta", "gamma", "delta")}
    skip = {"command", "seed", "output", "out_dir", "exhaustive_cap", "solver_budget", "in_path",
            "graph6", "family", "form", "form_file", "i", "alpha", "beta", "gamma", "delta"}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        command=args.command,
        form=form,
        family=getattr(args, "family", "all"),
        seed=args.seed,
        output=args.output or _DEFAULT_OUTPUT.get(args.command, "json"),
        in_path=getattr(args, "in_path", None),
        graph6=getattr(args, "graph6", None),
        out_dir=args.out_dir,
        exhaustive_cap=args.exhaustive_cap,
        solver_budget=args.solver_budget,
        options=options,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"graphspec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
