"""Batch command-line front end.

Each subcommand reads one input file (one datum per line, ``#`` comments
allowed), runs the corresponding pipeline per line, and writes a JSON
array (or CSV) of reports.  Lines are processed independently — fan-out
across threads is controlled by the PILLOWTILED_THREADS variable — and
reports keep input order, so output is deterministic for a given (input,
seed).

Exit codes: 0 all lines complete and no verdict failed; 2 parse error;
3 a resource cap was hit; 4 a certificate contradiction or failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .coverings import (
    CyclicCoverSpec,
    check_bounds,
    cover_report,
    cyclic_to_pillow,
    is_determinant_locus,
    locus_metadata,
)
from .cylinders import ekz_for_cover
from .formats import (
    ParseError,
    iter_input_lines,
    json_ready,
    parse_locus_line,
    parse_origami_line,
    parse_pillow_line,
    parse_surface_line,
)
from .lyapunov import certify_degenerate, run_monte_carlo
from .orbit import OrbitCapExceeded, enumerate_orbit, enumerate_state_orbit
from .permsurf import orientation_double_cover

__all__ = ["RunConfig", "run", "main"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_CONTRADICTION = 4

DISC_POINTS = (0.3, 0.2 + 0.7j)


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    steps: int = 100_000
    seeds: tuple[int, ...] = (1, 2, 3, 4, 5)
    epsilon: float = 0.02
    orbit_cap: int = 10_000
    out: str | None = None
    format: str = "json"
    trace: str | None = None

    def __post_init__(self):
        if self.command not in _HANDLERS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.steps <= 0 or self.orbit_cap <= 0:
            raise ValueError("steps and orbit cap must be positive")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if not 0.0 < self.epsilon < 0.1:
            raise ValueError("epsilon must lie in (0, 0.1)")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.format!r}")


def _spec_key(s: CyclicCoverSpec) -> list[int]:
    return [s.N, *s.a]


def _cmd_construct(line: str, cfg: RunConfig):
    from .formats import parse_cyclic_line

    s = parse_cyclic_line(line)
    rep = cover_report(s)
    return {"spec": _spec_key(s), **json_ready(rep)}, EXIT_OK


def _cmd_certify(line: str, cfg: RunConfig):
    target = parse_surface_line(line)
    cert = certify_degenerate(
        target,
        cfg.epsilon,
        steps=cfg.steps,
        seeds=cfg.seeds,
        orbit_cap=cfg.orbit_cap,
    )
    record = {
        "input": line,
        "criterion": cert.criterion_degenerate,
        "exponents": [list(e.lambda_plus) for e in cert.estimates],
        "stderr": [list(e.stderr_plus) for e in cert.estimates],
        "exact_sum": json_ready(cert.exact_sum),
        "verdict": cert.verdict,
        "contradiction": cert.contradiction,
        "epsilon": cert.epsilon,
        "max_lambda_plus": cert.max_lambda_plus,
        "report": cert.report,
    }
    return record, EXIT_CONTRADICTION if cert.contradiction else EXIT_OK


def _cmd_orbit(line: str, cfg: RunConfig):
    if line.count(";") == 4:
        cover = parse_pillow_line(line)
        o, iota = orientation_double_cover(cover)
        graph = enumerate_state_orbit(o, iota, cap=cfg.orbit_cap)
    else:
        o = parse_origami_line(line)
        graph = enumerate_orbit(o, cap=cfg.orbit_cap)
    record = {
        "input": line,
        "d": graph.d,
        "size": graph.size,
        "vertices": [[list(p) for p in w] for w in graph.vertices],
        "edges": [[a, g, b] for a, g, b in sorted(graph.edges)],
    }
    return record, EXIT_OK


def _cmd_ekz(line: str, cfg: RunConfig):
    from .formats import parse_cyclic_line

    s = parse_cyclic_line(line)
    rep = ekz_for_cover(cyclic_to_pillow(s), orbit_cap=cfg.orbit_cap)
    return {"spec": _spec_key(s), **json_ready(rep)}, EXIT_OK


def _cmd_lyapunov(line: str, cfg: RunConfig):
    target = parse_surface_line(line)
    cover = cyclic_to_pillow(target) if isinstance(target, CyclicCoverSpec) else target
    estimates = [
        run_monte_carlo(cover, cfg.steps, seed) for seed in cfg.seeds
    ]
    record = {"input": line, "estimates": json_ready(estimates)}
    return record, EXIT_OK


def _cmd_bform(line: str, cfg: RunConfig):
    from .bform import SuperellipticCurve, pairing_matrices
    from .coverings import sample_base_differential
    from .formats import parse_cyclic_line

    s = parse_cyclic_line(line)
    reports = []
    for t in DISC_POINTS:
        curve = SuperellipticCurve(s.N, (0.0, 1.0, t), s.a[:3])
        q = sample_base_differential((), 4, zeros=(), poles=(t,))
        rep = pairing_matrices(curve, q)
        reports.append(
            {
                "curve": {
                    "N": s.N,
                    "branch": [json_ready(complex(z)) for z in curve.branch],
                    "a": list(curve.a),
                },
                "q": {"poles": [0.0, 1.0, json_ready(complex(t)), "inf"]},
                "B": json_ready([list(row) for row in rep.B]),
                "H": json_ready([list(row) for row in rep.H]),
                "theta": list(rep.theta),
                "quad_error": rep.quad_error,
                "gap": rep.gap,
            }
        )
    return {"spec": _spec_key(s), "reports": reports}, EXIT_OK


def _cmd_bounds(line: str, cfg: RunConfig):
    from .formats import parse_cyclic_line

    s = parse_cyclic_line(line)
    rep = cover_report(s)
    verdicts = check_bounds(rep, degenerate=bool(is_determinant_locus(s)))
    checks = [
        {"name": v.name, "pass": v.status != "fail", "status": v.status,
         "lhs": v.lhs, "rhs": v.rhs}
        for v in verdicts
    ]
    record = {
        "spec": _spec_key(s),
        "genus": rep.genus,
        "stratum": json_ready(rep.stratum),
        "n": rep.n,
        "checks": checks,
    }
    failed = any(v.status == "fail" for v in verdicts)
    return record, EXIT_CONTRADICTION if failed else EXIT_OK


def _cmd_locus(line: str, cfg: RunConfig):
    L = parse_locus_line(line)
    meta = locus_metadata(L)
    record = {
        "orders": list(L.m),
        "k": L.k,
        "degree": L.degree,
        "dim": meta.dim,
        "n": meta.n,
        "target_stratum": json_ready(meta.target_stratum),
        "genus_y": meta.genus_y,
    }
    return record, EXIT_OK


_HANDLERS = {
    "construct": _cmd_construct,
    "certify": _cmd_certify,
    "orbit": _cmd_orbit,
    "ekz": _cmd_ekz,
    "lyapunov": _cmd_lyapunov,
    "bform": _cmd_bform,
    "bounds": _cmd_bounds,
    "locus": _cmd_locus,
}


def _write_csv(records: list[dict], stream) -> None:
    if not records:
        return
    keys: list[str] = []
    for rec in records:
        for k in rec:
            if k not in keys:
                keys.append(k)
    writer = csv.DictWriter(stream, fieldnames=keys)
    writer.writeheader()
    for rec in records:
        flat = {
            k: json.dumps(v) if isinstance(v, (list, dict)) else v
            for k, v in rec.items()
        }
        writer.writerow(flat)


def _write_trace(estimative_records: list[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["line", "seed", "block", "slope"])
        for rec in estimative_records:
            for est in rec.get("estimates", []):
                for blk, slope in enumerate(est["block_slopes"]):
                    writer.writerow([rec["input"], est["seed"], blk, slope])


def run(config: RunConfig) -> int:
    """Process every line of the input file; return the exit status."""
    try:
        text = Path(config.input_path).read_text()
    except OSError as exc:
        print(f"cannot read {config.input_path}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    handler = _HANDLERS[config.command]
    lines = list(iter_input_lines(text))

    def work(item):
        lineno, line = item
        return lineno, line, handler(line, config)

    threads = int(os.environ.get("PILLOWTILED_THREADS", "1"))
    records: list[dict] = []
    worst = EXIT_OK
    try:
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(work, lines))
        else:
            results = [work(item) for item in lines]
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OrbitCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"bad arguments: {exc}", file=sys.stderr)
        return EXIT_PARSE

    for _, _, (record, status) in results:
        records.append(record)
        if status == EXIT_CONTRADICTION:
            worst = EXIT_CONTRADICTION
        elif status == EXIT_RESOURCE and worst != EXIT_CONTRADICTION:
            worst = EXIT_RESOURCE

    if config.format == "csv":
        buf = io.StringIO()
        _write_csv(records, buf)
        payload = buf.getvalue()
    else:
        payload = json.dumps(records, indent=2, sort_keys=True) + "\n"

    if config.out:
        Path(config.out).write_text(payload)
    else:
        sys.stdout.write(payload)

    if config.trace and config.command == "lyapunov":
        _write_trace(records, config.trace)

    return worst


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pillowtiled",
        description="Exact and numerical checks for pillow-tiled covers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("construct", "cover reports for cyclic data"),
        ("certify", "two-channel degeneracy certificates"),
        ("orbit", "dump the S,T orbit graph"),
        ("ekz", "exact sum-rule reports"),
        ("lyapunov", "Monte-Carlo exponent estimates"),
        ("bform", "pairing matrices at the disc sample points"),
        ("bounds", "pole-count/degree/unbranched-pole checks"),
        ("locus", "metadata for branched-cover loci"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="input file, one datum per line")
        p.add_argument("--steps", type=int, default=100_000)
        p.add_argument("--seeds", default="1,2,3,4,5",
                       help="comma-separated seed list")
        p.add_argument("--epsilon", type=float, default=0.02)
        p.add_argument("--orbit-cap", type=int, default=10_000)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--trace", default=None,
                       help="CSV of per-block slopes (lyapunov only)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        seeds = tuple(int(s) for s in str(args.seeds).split(",") if s.strip())
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            steps=args.steps,
            seeds=seeds,
            epsilon=args.epsilon,
            orbit_cap=args.orbit_cap,
            out=args.out,
            format=args.format,
            trace=args.trace,
        )
    except ValueError as exc:
        print(f"bad arguments: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
