"""Command-line entry point: ``bct blocks|extension|verify|group-algebra-case``."""

from __future__ import annotations

import argparse
import sys

from . import clifford as cl
from . import verify as vf
from .errors import ConstructionError, UnsupportedError
from .scenario import load

EXIT_PASS, EXIT_FAIL, EXIT_CONSTRUCTION = 0, 1, 2


def _block_arg(value: str):
    return "all" if value == "all" else int(value)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bct", description="Blocks, Brauer quotients and Clifford extensions over GF(p).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, block=True):
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=None, help="overrides the scenario seed")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-stability)")
        if block:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--block", type=_block_arg, default=None, help="block index, or 'all'")
            g.add_argument("--all", dest="block", action="store_const", const="all")

    common(sub.add_parser("blocks", help="list blocks and their defect groups"), block=False)
    ext = sub.add_parser("extension", help="extension descriptors for one block")
    common(ext)
    common(sub.add_parser("verify", help="run every check on the selected blocks"))
    common(sub.add_parser("group-algebra-case", help="verify plus the Brauer-correspondent comparison"))
    return ap


def _blocks_report(s) -> dict:
    ctx = vf.prepare(s)
    rows = []
    for b in ctx.blocks:
        row = {"index": b.index, "idempotent": [int(v) for v in b.idempotent], "usable": b.usable}
        if b.usable:
            dc = cl.defect_groups(ctx.interior, b.idempotent)
            row["residue_dim"] = b.locality.residue_dim
            row["defect_group"] = list(dc.representative.elements)
            row["defect_order"] = dc.representative.order
        else:
            row["skip_reason"] = b.skip_reason
        rows.append(row)
    return {"scenario": s.echo(), "blocks": rows, "status": "pass"}


def _text_blocks(r: dict) -> str:
    lines = [f"scenario {r['scenario']['name'] or '-'}  p={r['scenario']['p']}  |H|={r['scenario']['order_H']}"]
    for b in r["blocks"]:
        if b["usable"]:
            lines.append(f"block {b['index']}  defect order {b['defect_order']}  residue dim {b['residue_dim']}  b={b['idempotent']}")
        else:
            lines.append(f"block {b['index']}  skipped: {b['skip_reason']}")
    return "\n".join(lines) + "\n"


def _extension_report(s, block, seed) -> dict:
    if block in (None, "all"):
        raise ConstructionError("extension needs --block i")
    r = vf.run_scenario(s, block=block, seed=seed)
    out = {"scenario": r["scenario"], "status": r["status"], "skipped": r["skipped"]}
    if r["blocks"]:
        b = r["blocks"][0]
        out["block"] = {k: b[k] for k in ("index", "idempotent", "defect_group", "support_subgroups", "extensions", "residue_dims", "unit_groups") if k in b}
    return out


def _text_extension(r: dict) -> str:
    b = r.get("block")
    if b is None:
        return "".join(f"skipped block {sk['block']}: {sk['reason']}\n" for sk in r["skipped"])
    lines = [f"block {b['index']}  defect group {b.get('defect_group')}"]
    for label, e in sorted(b.get("extensions", {}).items()):
        lines.append(
            f"  {label}: grading {e['grading_group']}  residue dim {e['residue_dim']}  hU order {e.get('hU_order')}"
        )
    lines.append(f"status: {r['status']}")
    return "\n".join(lines) + "\n"


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = _parser().parse_args(argv)
    try:
        s = load(args.scenario)
        if args.command == "blocks":
            report = _blocks_report(s)
            text = vf.emit_report(report, "json") if args.format == "json" else _text_blocks(report)
        elif args.command == "extension":
            report = _extension_report(s, args.block, args.seed)
            text = vf.emit_report(report, "json") if args.format == "json" else _text_extension(report)
        else:
            fn = vf.run_scenario if args.command == "verify" else vf.run_group_algebra_case
            report = fn(s, block=args.block, seed=args.seed, timings=args.timings)
            text = vf.emit_report(report, args.format)
    except (ConstructionError, UnsupportedError) as exc:
        err.write(f"bct: construction error: {exc}\n")
        return EXIT_CONSTRUCTION
    out.write(text)
    return EXIT_PASS if report.get("status") == "pass" else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
