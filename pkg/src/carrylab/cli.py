"""Command-line front end.

    carrylab analyze q=9 m=3 A=8,0,1
    carrylab search q=25 m=5 --stat c2 --exhaustive
    carrylab verify thm22 --p 3 --alpha 1 --beta 2
    carrylab bounds 3 9 27 81

Exit codes: 0 success, 1 violations found, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .bounds import mu_table, mu_table_csv
from .carry import carry_report, layered_size, profile_sum, rep_function
from .errors import CarrylabError
from .extremal import (
    DEFAULT_BUDGET,
    REPORT_SCHEMA,
    THEOREMS,
    EnumerationPlan,
    Exhaustive,
    HillClimb,
    Random,
    classify_structure,
    jsonify,
    min_c1,
    min_c2,
    verify_theorem,
)
from .ring import parse_set_literal
from .sweep import ShardRunner

log = logging.getLogger("carrylab")

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2
DEFAULT_SHARDS = 64
DEFAULT_SAMPLES = 100_000
PAIR_THEOREMS = ("thm22", "thm23")


@dataclass
class RunConfig:
    command: str
    target: dict = field(default_factory=dict)
    mode: dict = field(default_factory=dict)
    seed: int = 0
    workers: int = 1
    format: str = "json"
    checkpoint: Optional[str] = None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _human_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator} (≈ {float(v):.6f})"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_human_value(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_human_value(x) for x in v) + "]"
    return str(v)


def _csv_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(jsonify(v), sort_keys=True)
    return "" if v is None else str(v)


def _emit(payload: dict, flat: list[tuple[str, object]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(jsonify(payload), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["field", "value"])
        for key, value in flat:
            writer.writerow([key, _csv_value(value)])
        return out.getvalue()
    width = max((len(k) for k, _ in flat), default=0)
    return "".join(f"{k.ljust(width)} : {_human_value(v)}\n" for k, v in flat)


def _envelope(kind: str, config: RunConfig, body: dict) -> dict:
    out = {"schema": REPORT_SCHEMA, "kind": kind, "carrylab_version": __version__, "config": asdict(config)}
    out.update(body)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    literal = " ".join(args.literal)
    config = RunConfig("analyze", {"literal": literal}, format=args.format)
    A = parse_set_literal(literal)
    rep = carry_report(A)
    profile = rep_function(A, A)
    layers = [layered_size(profile, i) for i in range(1, profile.max_count + 1)]
    sums = [profile_sum(profile, t) for t in range(1, A.m + 1)]
    s1 = classify_structure(A, "c1")
    s2 = classify_structure(A, "c2")
    body = {
        "carry_report": rep.to_json(),
        "profile": dict(profile.to_json(), layered_sizes=layers, pollard_sums=sums),
        "structure": {"c1": s1.to_json(), "c2": s2.to_json()},
    }
    flat = [
        ("set", literal), ("carry_set", sorted(rep.carry_set)), ("c1", rep.c1),
        ("carry_count", rep.carry_count), ("c2", rep.c2),
        ("sumset_size", layers[0] if layers else 0), ("layered_sizes", layers),
        ("pollard_sums", sums), ("structure_c1", str(s1)), ("structure_c2", str(s2)),
    ]
    sys.stdout.write(_emit(_envelope("analyze", config, body), flat, args.format))
    return EXIT_OK


def _parse_params(tokens: list[str]) -> dict:
    params = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in ("q", "m"):
            raise CarrylabError(f"expected q=<int> or m=<int>, got {tok!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise CarrylabError(f"not an integer in {tok!r}") from None
    if set(params) != {"q", "m"}:
        raise CarrylabError("search needs both q=<int> and m=<int>")
    return params


def _mode(args, space: int):
    if args.hill_climb:
        return HillClimb(args.hill_climb, args.seed)
    if args.samples and not args.exhaustive:
        return Random(args.samples, args.seed)
    if space > args.budget:
        if not args.force_sample:
            raise CarrylabError(f"{space} candidates exceed the budget {args.budget}; use --force-sample")
        log.warning("space of %d exceeds budget; sampling instead", space)
        return Random(args.samples or DEFAULT_SAMPLES, args.seed)
    return Exhaustive()


def cmd_search(args) -> int:
    params = _parse_params(args.params)
    q, m = params["q"], params["m"]
    if q % m:
        raise CarrylabError(f"m={m} does not divide q={q}")
    reduction = "fix-zero" if args.stat == "c1" else "none"
    mode = _mode(args, EnumerationPlan(q, m, reduction).raw_size)
    config = RunConfig("search", params, {"stat": args.stat, "mode": mode.name, **asdict(mode),
                                          "budget": args.budget},
                       args.seed, args.workers, args.format, args.checkpoint)
    runner = ShardRunner(args.workers, args.checkpoint)
    shards = args.shards or DEFAULT_SHARDS
    start = time.perf_counter()
    search = min_c2 if args.stat == "c2" else min_c1
    result = search(q, m, mode, args.budget, shards=shards, runner=runner)
    elapsed = round(time.perf_counter() - start, 6)
    purpose = args.stat
    classes = [str(classify_structure(w, purpose, q=q, m=m)) for w in result.witnesses]
    body = {"result": result.to_json(), "witness_structure": classes, "elapsed": elapsed}
    flat = [
        ("statistic", args.stat), ("q", q), ("m", m), ("mode", result.mode),
        ("minimum", result.minimum), ("certified", result.certified),
        ("examined", result.examined), ("space_size", result.space_size),
        ("witnesses", [list(w) for w in result.witnesses]), ("witness_structure", classes),
        ("elapsed", elapsed),
    ]
    sys.stdout.write(_emit(_envelope("search", config, body), flat, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {k: getattr(args, k) for k in ("p", "alpha", "beta", "q", "m", "window")}
    params = {k: v for k, v in params.items() if v is not None}
    samples = None
    if args.samples and not args.exhaustive:
        samples = args.samples
    config = RunConfig("verify", {"theorem": args.theorem, **params},
                       {"exhaustive": samples is None, "samples": samples, "budget": args.budget},
                       args.seed, args.workers, args.format, args.checkpoint)
    runner = ShardRunner(args.workers, args.checkpoint)
    try:
        report = verify_theorem(args.theorem, params, args.budget, args.seed, samples,
                                runner=runner, shards=args.shards or DEFAULT_SHARDS)
    except CarrylabError as exc:
        if args.force_sample and args.theorem in PAIR_THEOREMS and samples is None:
            log.warning("%s; sampling %d pairs instead", exc, DEFAULT_SAMPLES)
            config.mode.update(exhaustive=False, samples=DEFAULT_SAMPLES)
            report = verify_theorem(args.theorem, params, args.budget, args.seed, DEFAULT_SAMPLES,
                                    runner=runner, shards=args.shards or DEFAULT_SHARDS)
        else:
            raise
    payload = report.to_json()
    payload["config"] = asdict(config)
    payload["carrylab_version"] = __version__
    flat = [
        ("theorem", report.theorem_id), ("parameters", report.parameters),
        ("candidates_examined", report.candidates_examined),
        ("violations", report.violation_count), ("equality_cases", report.equality_count),
        ("min_observed", report.min_observed), ("passed", report.passed),
        ("elapsed", report.elapsed),
    ]
    flat += [(f"note.{k}", v) for k, v in report.notes.items()]
    sys.stdout.write(_emit(payload, flat, args.format))
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def cmd_bounds(args) -> int:
    if any(m < 2 for m in args.ms):
        raise CarrylabError("every m must be at least 2")
    if args.format == "csv":
        sys.stdout.write(mu_table_csv(args.ms))
        return EXIT_OK
    rows = mu_table(args.ms)
    if args.format == "json":
        config = RunConfig("bounds", {"ms": list(args.ms)}, format=args.format)
        body = {"rows": [{"m": m, "mu": mu, "interval_c2": ic, "gap": gap} for m, mu, ic, gap in rows]}
        sys.stdout.write(json.dumps(jsonify(_envelope("bounds", config, body)), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    for m, mu, ic, gap in rows:
        sys.stdout.write(f"m={m}  mu={_human_value(mu)}  interval={_human_value(ic)}  gap={_human_value(gap)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--exhaustive", action="store_true", help="enumerate the whole space (default)")
    p.add_argument("--samples", type=int, default=None, help="number of random samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shards", type=int, default=None, help=f"enumeration shards (default {DEFAULT_SHARDS})")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--force-sample", action="store_true", help="sample when the space exceeds the budget")
    p.add_argument("--checkpoint", default=None, metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carrylab", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"carrylab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--format", choices=("json", "csv", "human"), default="human" if name != "bounds" else "csv")
        return p

    p = add("analyze", help="carry statistics of one digital set")
    p.add_argument("literal", nargs="+", help="q=<int> m=<int> A=a,b,... or Z m=<int> A=...")
    p.set_defaults(func=cmd_analyze)

    p = add("search", help="minimize C1 or C2 over digital sets")
    p.add_argument("params", nargs="+", help="q=<int> m=<int>")
    p.add_argument("--stat", choices=("c1", "c2"), default="c2")
    p.add_argument("--hill-climb", type=int, default=None, metavar="RESTARTS")
    _sweep_flags(p)
    p.set_defaults(func=cmd_search)

    p = add("verify", help="sweep a theorem over a finite parameter space")
    p.add_argument("theorem", choices=sorted(THEOREMS))
    for name in ("p", "alpha", "beta", "q", "m", "window"):
        p.add_argument(f"--{name}", type=int, default=None)
    _sweep_flags(p)
    p.set_defaults(func=cmd_verify)

    p = add("bounds", help="table of mu(m) against 1/4")
    p.add_argument("ms", nargs="+", type=int)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    try:
        return args.func(args)
    except (CarrylabError, ValueError) as exc:
        sys.stderr.write(f"carrylab: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
