"""Batch command-line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed,
2 bad input or configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from a1tk.a1 import a1_constant, a1_constant_bruteforce, power_a1_constant, verify_theorem1
from a1tk.errors import A1Error
from a1tk.generators import DEFAULT_T0, GenSpec, generate
from a1tk.rearrange import decreasing_rearrangement, is_equimeasurable, value_levels
from a1tk.reverse_holder import (
    extremal_weight,
    lemma1_residual,
    midpoint_exponent,
    p_sweep,
    sharpness_gap,
    verify_hy_monotone,
    verify_theorem2,
)
from a1tk.serialization import dumps, dumps_weight, format_float, load_weight, save_weight
from a1tk.weights import PowerWeight, StepWeight, Weight

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
SEED_ENV = "A1TK_SEED"
COMMANDS = ("rearrange", "a1", "verify", "sweep", "lemma1", "gen")

LEMMA1_RTOL = 1e-8
SHARPNESS_TOL = 1e-12
HY_SAMPLES = 100


class ConfigError(A1Error, ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    gen_spec: Optional[GenSpec] = None
    count: int = 1
    p: Optional[float] = None
    c: Optional[float] = None
    delta: Optional[float] = None
    tol: float = 1e-9
    seed: Optional[int] = None
    output_format: str = "text"
    output_path: Optional[str] = None
    oracle_grid: Optional[int] = None
    skew: float = 1.0
    points: int = 50
    margin: float = 1e-3
    p_max: float = 4.0


def _parse_oracle(text: str) -> int:
    key, _, value = text.partition("=")
    if key.strip() != "grid" or not value:
        raise argparse.ArgumentTypeError(f"expected grid=N, got {text!r}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="weight file (JSON)")
    src.add_argument("--gen", metavar="KIND,n,param", help="generate the weight(s) instead")
    common.add_argument("--seed", type=int, help=f"generator seed (overridden by ${SEED_ENV})")
    common.add_argument("--count", type=int, default=1, help="corpus size for --gen (seeds seed, seed+1, ...)")
    common.add_argument("--t0", type=float, default=DEFAULT_T0, help="truncation point for extremal_discretized")
    common.add_argument("--p", type=float)
    common.add_argument("--c", type=float, help="use the extremal weight with this A_1 constant")
    common.add_argument("--delta", type=float)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"))
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--oracle", type=_parse_oracle, metavar="grid=N")
    common.add_argument("--skew", type=float, default=1.0, help=argparse.SUPPRESS)
    common.add_argument("--points", type=int, default=50, help="sweep: number of exponents")
    common.add_argument("--margin", type=float, default=1e-3, help="sweep: stop this far below p_critical")
    common.add_argument("--p-max", type=float, default=4.0, help="sweep: top exponent when c = 1")

    parser = argparse.ArgumentParser(prog="a1tk", description="A_1 weights on the unit interval")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rearrange", parents=[common], help="decreasing rearrangement of a weight")
    sub.add_parser("a1", parents=[common], help="exact A_1 constant")
    sub.add_parser("verify", parents=[common], help="run every check on a weight or corpus")
    sub.add_parser("sweep", parents=[common], help="CSV of the reverse Hölder ratio over p")
    sub.add_parser("lemma1", parents=[common], help="running-average identity residual")
    sub.add_parser("gen", parents=[common], help="write generated weight file(s)")
    return parser


def config_from_args(ns: argparse.Namespace, environ=os.environ) -> RunConfig:
    seed = ns.seed
    if environ.get(SEED_ENV):
        try:
            seed = int(environ[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    gen = GenSpec.parse(ns.gen, seed or 0, ns.t0) if ns.gen else None
    default_format = "csv" if ns.command == "sweep" else "text"
    return RunConfig(
        command=ns.command,
        input_path=ns.input,
        gen_spec=gen,
        count=ns.count,
        p=ns.p,
        c=ns.c,
        delta=ns.delta,
        tol=ns.tol,
        seed=seed,
        output_format=ns.output_format or default_format,
        output_path=ns.output,
        oracle_grid=ns.oracle,
        skew=ns.skew,
        points=ns.points,
        margin=ns.margin,
        p_max=ns.p_max,
    )


def load_weights(config: RunConfig) -> List[Tuple[str, Weight]]:
    if config.input_path:
        return [(config.input_path, load_weight(config.input_path))]
    if config.gen_spec:
        spec = config.gen_spec
        if config.count < 1:
            raise ConfigError("--count must be >= 1")
        specs = [GenSpec(spec.kind, spec.n, spec.parameter, spec.seed + k, spec.t0) for k in range(config.count)]
        return [(f"{s.kind},{s.n},{format_float(s.parameter)},seed={s.seed}", generate(s)) for s in specs]
    if config.c is not None:
        return [(f"extremal,c={format_float(config.c)}", extremal_weight(config.c))]
    raise ConfigError("one of --input, --gen or --c is required")


def _single(config: RunConfig) -> Tuple[str, Weight]:
    weights = load_weights(config)
    if len(weights) != 1:
        raise ConfigError(f"{config.command} works on a single weight")
    return weights[0]


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_lines(records: List[dict]) -> str:
    out = []
    for r in records:
        fields = " ".join(f"{k}={_plain(r[k])}" for k in sorted(r) if k not in ("check", "holds", "index"))
        status = "PASS" if r["holds"] else "FAIL"
        out.append(f"[{status}] #{r['index']} {r['check']} {fields}")
    return "\n".join(out) + "\n"


def _plain(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format_float(x).strip('"')
    if isinstance(x, dict):
        return "(" + ",".join(_plain(val) for val in x.values()) + ")"
    return str(x)


def cmd_rearrange(config: RunConfig) -> int:
    label, w = _single(config)
    ws = decreasing_rearrangement(w)
    if isinstance(w, StepWeight):
        ok = is_equimeasurable(w, ws, value_levels(w)) and ws.is_nonincreasing()
    else:
        ok = ws == w
    _emit(config, dumps_weight(ws))
    print(f"{label}: equimeasurable={'yes' if ok else 'NO'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_a1(config: RunConfig) -> int:
    results = []
    for k, (label, w) in enumerate(load_weights(config)):
        if isinstance(w, PowerWeight):
            rec = {"index": k, "weight": label, "constant": power_a1_constant(w), "closed_form": True}
        else:
            rec = {"index": k, "weight": label, **a1_constant(w).to_dict()}
            if config.oracle_grid:
                oracle = a1_constant_bruteforce(w, config.oracle_grid)
                rec.update(oracle_grid=config.oracle_grid, oracle=oracle, oracle_gap=rec["constant"] - oracle)
        results.append(rec)
    if config.output_format == "json":
        _emit(config, dumps({"command": "a1", "results": results}) + "\n")
    elif config.output_format == "csv":
        _emit(config, _csv(results))
    else:
        lines = [" ".join(f"{key}={_plain(r[key])}" for key in r) for r in results]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


def _csv(records: List[dict]) -> str:
    buf = io.StringIO()
    keys = list(records[0]) if records else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys)
    for r in records:
        writer.writerow([_plain(r.get(key, "")) for key in keys])
    return buf.getvalue()


def verify_weight(w: Weight, index: int, config: RunConfig) -> List[dict]:
    """The five checks for one weight, as report records."""
    c = power_a1_constant(w) if isinstance(w, PowerWeight) else a1_constant(w).constant
    p = config.p if config.p is not None else midpoint_exponent(c)
    q = p if p > 1.0 else 2.0
    delta = config.delta if config.delta is not None else 1.0
    records = []

    t1 = verify_theorem1(w)
    records.append({"index": index, "check": "theorem1", **t1.to_dict()})

    t2 = verify_theorem2(w, p, tol=config.tol, skew=config.skew)
    records.append({"index": index, "check": "theorem2", **t2.to_dict()})

    lem = lemma1_residual(decreasing_rearrangement(w), q, delta)
    records.append({"index": index, "check": "lemma1", "holds": lem.residual < LEMMA1_RTOL, **lem.to_dict()})

    if c > 1.0:
        gap = sharpness_gap(c, p, skew=config.skew)
        records.append({"index": index, "check": "sharpness", "applicable": True, "c": c, "p": p, "gap": gap, "holds": gap < SHARPNESS_TOL})
    else:
        records.append({"index": index, "check": "sharpness", "applicable": False, "c": c, "p": p, "holds": True})

    y = w.a if isinstance(w, PowerWeight) else min(w.values)
    records.append({"index": index, "check": "hy", "y": y, "c": c, "p": q, "holds": verify_hy_monotone(y, c, q, HY_SAMPLES)})
    return records


def cmd_verify(config: RunConfig) -> int:
    records = []
    labels = []
    for k, (label, w) in enumerate(load_weights(config)):
        labels.append(label)
        records.extend(verify_weight(w, k, config))
    all_hold = all(r["holds"] for r in records)
    if config.output_format == "json":
        _emit(config, dumps({"command": "verify", "weights": labels, "checks": records, "all_hold": all_hold}) + "\n")
    elif config.output_format == "csv":
        rows = [{"index": r["index"], "check": r["check"], "holds": r["holds"]} for r in records]
        _emit(config, _csv(rows))
    else:
        failed = [f"#{r['index']} {r['check']}" for r in records if not r["holds"]]
        summary = f"{len(records)} checks, {len(failed)} failed" + (": " + ", ".join(failed) if failed else "")
        _emit(config, _text_lines(records) + summary + "\n")
    return EXIT_OK if all_hold else EXIT_FAILED


def cmd_sweep(config: RunConfig) -> int:
    _, w = _single(config)
    rows = p_sweep(w, points=config.points, margin=config.margin, p_max=config.p_max, tol=config.tol)
    records = [{"p": p, "lhs": lhs, "rhs": rhs, "ratio": ratio, "holds": ok} for p, lhs, rhs, ratio, ok in rows]
    if config.output_format == "json":
        _emit(config, dumps({"command": "sweep", "rows": records}) + "\n")
    else:
        _emit(config, _csv(records))
    return EXIT_OK if all(r["holds"] for r in records) else EXIT_FAILED


def cmd_lemma1(config: RunConfig) -> int:
    results = []
    for k, (label, w) in enumerate(load_weights(config)):
        rep = lemma1_residual(w, config.p if config.p is not None else 2.0, config.delta if config.delta is not None else 1.0)
        results.append({"index": k, "weight": label, "holds": rep.residual < LEMMA1_RTOL, **rep.to_dict()})
    if config.output_format == "json":
        _emit(config, dumps({"command": "lemma1", "results": results}) + "\n")
    elif config.output_format == "csv":
        _emit(config, _csv(results))
    else:
        _emit(config, "\n".join(" ".join(f"{key}={_plain(r[key])}" for key in r) for r in results) + "\n")
    return EXIT_OK if all(r["holds"] for r in results) else EXIT_FAILED


def cmd_gen(config: RunConfig) -> int:
    if config.gen_spec is None:
        raise ConfigError("gen requires --gen KIND,n,param")
    weights = load_weights(config)
    if len(weights) == 1:
        _emit(config, dumps_weight(weights[0][1]))
        return EXIT_OK
    if not config.output_path:
        raise ConfigError("--count > 1 needs --output DIR")
    os.makedirs(config.output_path, exist_ok=True)
    for k, (_, w) in enumerate(weights):
        save_weight(w, os.path.join(config.output_path, f"weight_{config.gen_spec.seed + k}.json"))
    return EXIT_OK


HANDLERS = {
    "rearrange": cmd_rearrange,
    "a1": cmd_a1,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "lemma1": cmd_lemma1,
    "gen": cmd_gen,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        config = config_from_args(ns)
        return HANDLERS[config.command](config)
    except (A1Error, ValueError, OSError) as exc:
        print(f"a1tk: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
