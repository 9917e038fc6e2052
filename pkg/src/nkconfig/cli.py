"""Command-line front end: file I/O, batch orchestration, and the canned
reproduction runs for the 15_4 and 16_4 nonexistence results.

Exit codes: 0 success (for `orientable`: Orientable; for `iso`:
isomorphic), 1 negative outcome, 2 malformed input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__
from .census import classify_orientability, enumerate_configurations
from .chirotope import Outcome, orientability
from .eulergate import Verdict, euler_counts, feasibility_gate
from .incidence import (ConfigFormatError, dualize, generalize, read_config)
from .matroid import are_isomorphic, canonical_code, poincare_polynomial
from .wiring import (WiringFormatError, cell_counts, read_wiring, realizes,
                     render_svg, validate_wiring)


@dataclass
class RunManifest:
    """Provenance record for batch commands; identical inputs reproduce an
    identical result summary (elapsed time is informational only)."""

    command: str
    parameters: dict
    version: str
    input_digests: dict
    elapsed_seconds: float
    result_summary: dict


def _atomic_write(path, text):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _emit_manifest(manifest: RunManifest, outdir):
    text = json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n"
    if outdir:
        _atomic_write(os.path.join(outdir, "manifest.json"), text)
    else:
        print(text, end="")


def _write_census(outdir, n, k, entries, summary=None):
    os.makedirs(outdir, exist_ok=True)
    codes = []
    for entry in entries:
        code_hex = entry.code.hex()
        codes.append(code_hex)
        _atomic_write(os.path.join(outdir, f"{code_hex}.json"),
                      entry.configuration.to_json_text() + "\n")
    doc = {"n": n, "k": k, "count": len(entries), "classes": codes}
    if summary is not None:
        doc["orientability"] = {
            entry.code.hex(): entry.orientability.outcome.value for entry in entries}
        doc["summary"] = summary
    _atomic_write(os.path.join(outdir, "census.json"),
                  json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _load_config(path):
    try:
        return read_config(path)
    except (OSError, ConfigFormatError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _load_wiring(path):
    try:
        return read_wiring(path)
    except (OSError, WiringFormatError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _cmd_euler_gate(args):
    gate = feasibility_gate(args.n, args.k)
    counts = euler_counts(args.n, args.k)
    if args.json:
        print(json.dumps({
            "n": args.n, "k": args.k, "verdict": gate.verdict.value,
            "expression_value": gate.expression_value, "threshold": gate.threshold,
            "f0": counts.f0, "f1": counts.f1, "f2": counts.f2,
            "digon_slack": counts.digon_slack}, sort_keys=True))
    else:
        print(f"n={args.n} k={args.k}: {gate.verdict.value}")
        print(f"  threshold n > {gate.threshold}; expression value {gate.expression_value}")
        print(f"  f0={counts.f0} f1={counts.f1} f2={counts.f2} "
              f"digon slack {counts.digon_slack}")
    return 0


def _cmd_enumerate(args):
    t0 = time.perf_counter()
    entries = enumerate_configurations(args.n, args.k, workers=args.workers,
                                       force=args.force)
    elapsed = time.perf_counter() - t0
    summary = {"n": args.n, "k": args.k, "classes": len(entries)}
    if args.out:
        _write_census(args.out, args.n, args.k, entries)
    manifest = RunManifest(
        command="enumerate",
        parameters={"n": args.n, "k": args.k, "workers": args.workers},
        version=__version__, input_digests={}, elapsed_seconds=elapsed,
        result_summary=summary)
    if args.out:
        _emit_manifest(manifest, args.out)
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        print(f"{len(entries)} isomorphism classes of {args.n}_{args.k} configurations "
              f"({elapsed:.2f}s)")
        for entry in entries:
            print(f"  {entry.code.hex()}")
    return 0


def _summary_table(entries, summary):
    rows = [("class", "verdict", "nodes")]
    for entry in entries:
        res = entry.orientability
        rows.append((entry.code.hex()[:16] + "...", res.outcome.value,
                     str(res.stats.nodes)))
    widths = [max(len(r[c]) for r in rows) for c in range(3)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row))
             for row in rows]
    lines.append(f"total: {summary['orientable']} orientable, "
                 f"{summary['non_orientable']} non-orientable, "
                 f"{summary['budget_exceeded']} budget-exceeded")
    return "\n".join(lines)


def _cmd_classify(args):
    t0 = time.perf_counter()
    entries, summary = classify_orientability(args.n, args.k, budget=args.budget,
                                              workers=args.workers, force=args.force)
    elapsed = time.perf_counter() - t0
    result = {"n": args.n, "k": args.k, "classes": len(entries), **summary}
    if args.out:
        _write_census(args.out, args.n, args.k, entries, summary=summary)
        _emit_manifest(RunManifest(
            command="classify",
            parameters={"n": args.n, "k": args.k, "workers": args.workers,
                        "budget": args.budget},
            version=__version__, input_digests={}, elapsed_seconds=elapsed,
            result_summary=result), args.out)
    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        print(_summary_table(entries, summary))
    if summary["budget_exceeded"]:
        return 3
    return 0


def _cmd_orientable(args):
    cfg = _load_config(args.config)
    matroid = generalize(cfg)
    result = orientability(matroid, budget=args.budget)
    stats = result.stats
    if args.json:
        print(json.dumps({"outcome": result.outcome.value, "nodes": stats.nodes,
                          "propagations": stats.propagations,
                          "elapsed_seconds": stats.elapsed_s}, sort_keys=True))
    else:
        print(f"{result.outcome.value} (nodes {stats.nodes}, "
              f"propagations {stats.propagations}, {stats.elapsed_s:.3f}s)")
    if result.outcome is Outcome.ORIENTABLE:
        if args.witness:
            _atomic_write(args.witness, result.witness.to_text())
        return 0
    if result.outcome is Outcome.NON_ORIENTABLE:
        return 1
    return 3


def _cmd_canon(args):
    cfg = _load_config(args.config)
    print(canonical_code(cfg).hex())
    return 0


def _cmd_iso(args):
    a = _load_config(args.config_a)
    b = _load_config(args.config_b)
    flag, witness = are_isomorphic(a, b)
    if flag:
        print(" ".join(str(x) for x in witness))
        return 0
    print("not isomorphic")
    return 1


def _cmd_dual(args):
    cfg = _load_config(args.config)
    text = dualize(cfg).to_json_text()
    if args.output:
        _atomic_write(args.output, text + "\n")
    else:
        print(text)
    return 0


def _cmd_poincare(args):
    cfg = _load_config(args.config)
    poly = poincare_polynomial(cfg)
    if args.json:
        print(json.dumps({"b0": poly.b0, "b1": poly.b1, "b2": poly.b2}, sort_keys=True))
    else:
        print(f"1 + {poly.b1}*t + {poly.b2}*t^2")
    return 0


def _cmd_verify_wiring(args):
    diagram, wire_to_line = _load_wiring(args.wiring)
    report = validate_wiring(diagram)
    if not report.valid:
        print("invalid wiring diagram:")
        for rule, detail, _ in report.violations[:10]:
            print(f"  [{rule}] {detail}")
        return 1
    counts = cell_counts(diagram)
    print(f"valid: {diagram.n} wires, {len(diagram.events)} events, "
          f"f0={counts.f0} f1={counts.f1} f2={counts.f2} "
          f"digon slack {counts.digon_slack}")
    if args.config:
        cfg = _load_config(args.config)
        ok, mapping = realizes(diagram, cfg, wire_to_line)
        if not ok:
            print("does not realize the configuration")
            return 1
        pairs = " ".join(f"{p}->{e}" for p, e in sorted(mapping.items()))
        print(f"realizes the configuration: point->event {pairs}")
    return 0


def _cmd_render(args):
    diagram, _ = _load_wiring(args.wiring)
    _atomic_write(args.output, render_svg(diagram))
    print(f"wrote {args.output}")
    return 0


def _cmd_reproduce(args):
    n, k = {"15_4": (15, 4), "16_4": (16, 4)}[args.target]
    t0 = time.perf_counter()
    gate = feasibility_gate(n, k)
    print(f"counting gate at ({n},{k}): {gate.verdict.value} "
          f"(threshold n > {gate.threshold})")
    entries, summary = classify_orientability(n, k, budget=args.budget,
                                              workers=args.workers)
    elapsed = time.perf_counter() - t0
    print(f"{len(entries)} classes, {summary['non_orientable']} non-orientable, "
          f"{summary['orientable']} orientable")

    ok = (summary["orientable"] == 0 and summary["budget_exceeded"] == 0
          and summary["non_orientable"] == len(entries))
    if args.target == "15_4":
        ok = ok and gate.verdict is Verdict.IMPOSSIBLE
    else:
        ok = ok and gate.verdict is Verdict.UNRESOLVED and len(entries) == 19

    result = {"n": n, "k": k, "gate": gate.verdict.value,
              "classes": len(entries), **summary, "expected": ok}
    if args.out:
        _write_census(args.out, n, k, entries, summary=summary)
        _emit_manifest(RunManifest(
            command=f"reproduce {args.target}",
            parameters={"n": n, "k": k, "workers": args.workers,
                        "budget": args.budget},
            version=__version__, input_digests={}, elapsed_seconds=elapsed,
            result_summary=result), args.out)
    if args.json:
        print(json.dumps(result, sort_keys=True))
    if not ok:
        print("MISMATCH with the expected classification", file=sys.stderr)
        return 1
    print(f"no {n}_{k} configuration admits a (pseudo)line realization "
          f"({elapsed:.1f}s)")
    return 0


def _default_workers():
    return min(os.cpu_count() or 1, 8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nkconfig",
        description="n_k point-line configurations: counting gate, census, "
                    "orientability, wiring diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euler-gate", help="counting-gate verdict for (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_euler_gate)

    p = sub.add_parser("enumerate", help="isomorph-free census of n_k configurations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="directory for per-class files and the census manifest")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--force", action="store_true",
                   help="override the n*k size guard")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("classify", help="census plus orientability verdicts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--force", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("orientable", help="decide orientability of one configuration")
    p.add_argument("config")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--witness", help="write the chirotope witness here if orientable")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_orientable)

    p = sub.add_parser("canon", help="print the canonical code of a configuration")
    p.add_argument("config")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("iso", help="test two configurations for isomorphism")
    p.add_argument("config_a")
    p.add_argument("config_b")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("dual", help="swap the roles of points and lines")
    p.add_argument("config")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("poincare", help="Poincare polynomial of a configuration")
    p.add_argument("config")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_poincare)

    p = sub.add_parser("verify-wiring", help="validate a wiring diagram file")
    p.add_argument("wiring")
    p.add_argument("--config", help="also check that the diagram realizes this configuration")
    p.set_defaults(func=_cmd_verify_wiring)

    p = sub.add_parser("render", help="render a wiring diagram to SVG")
    p.add_argument("wiring")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("reproduce", help="re-run a canned nonexistence computation")
    p.add_argument("target", choices=("15_4", "16_4"))
    p.add_argument("--out")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
