"""Command-line front end: single computations, small-table regeneration,
range cross-checks, and value-table cache management.

Exit codes: 0 success, 1 cross-check found mismatching cells, 2 invalid
arguments or size caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .alliance import column_profile
from .closed_form import (
    formula_value_table,
    gamma,
    gamma_min_of_four,
    gamma_small,
)
from .errors import GdaLexError, InputError
from .graphs import FactorSpec, ProductSpec, factor
from .oracle import (
    GammaResult,
    SUBSETS_VERTEX_CAP,
    ValueTable,
    cached_value_table,
    compute_value_table,
    min_gda_columns,
    min_gda_subsets,
)
from .seqdp import SequenceValueContext, min_sequence_value, paper_max_part

METHODS = ("auto", "closed", "sequence-dp", "column-dp", "subsets")


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise InputError(f"expected 'A..B', got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc
    if a > b:
        raise InputError(f"empty range {text!r}")
    return range(a, b + 1)


def _kind_only(text: str) -> str:
    if text not in ("path", "cycle"):
        raise InputError(f"expected 'path' or 'cycle', got {text!r}")
    return text


def _table_for(g2: FactorSpec, cache: str | None) -> ValueTable:
    if cache and os.path.exists(cache):
        table = ValueTable.load(cache)
        if table.g2 == g2:
            return table
    return cached_value_table(g2.kind, g2.order)


def _compute_one(spec: ProductSpec, method: str, cache: str | None) -> GammaResult:
    if method == "closed":
        return gamma(spec)
    if method == "column-dp":
        return min_gda_columns(spec)
    if method == "subsets":
        return min_gda_subsets(spec)
    if method == "sequence-dp":
        table = _table_for(spec.g2, cache)
        ctx = SequenceValueContext(spec.g1.kind, spec.n, table)
        return min_sequence_value(ctx, min(paper_max_part(spec.m), table.k_max))
    # auto: dispatcher, with a cheap sanity check when a table is cached
    res = gamma(spec)
    if cache and os.path.exists(cache) and spec.n >= 8:
        try:
            table = ValueTable.load(cache)
        except GdaLexError:
            table = None
        if table is not None and table.g2 == spec.g2:
            ctx = SequenceValueContext(spec.g1.kind, spec.n, table)
            check = min_sequence_value(ctx, min(paper_max_part(spec.m), table.k_max))
            if check.value != res.value:
                print(
                    f"warning: dispatcher gives {res.value} but sequence-dp "
                    f"gives {check.value} for {spec}",
                    file=sys.stderr,
                )
    return res


def _result_json(spec: ProductSpec, res: GammaResult) -> dict:
    return {
        "g1": {"kind": spec.g1.kind, "order": spec.g1.order},
        "g2": {"kind": spec.g2.kind, "order": spec.g2.order},
        "gamma": res.value,
        "method": res.method,
        "sequence": list(res.sequence.parts) if res.sequence else None,
        "witness_profile": list(column_profile(res.witness)) if res.witness else None,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args: argparse.Namespace) -> int:
    spec = ProductSpec(factor(args.g1), factor(args.g2))
    method = args.method
    res = _compute_one(spec, method, args.cache)
    if args.json:
        _emit(json.dumps(_result_json(spec, res), indent=2) + "\n", args.out)
        return 0
    lines = [f"gamma_a({spec.g1} o {spec.g2}) = {res.value}   [{res.method}]"]
    if res.note:
        lines.append(f"note: {res.note}")
    if res.sequence:
        lines.append(f"sequence: {res.sequence} = {res.sequence.compact()}")
    if args.witness:
        if res.witness is None and method in ("column-dp",):
            res = min_gda_columns(spec, want_witness=True)
        if res.witness is not None:
            lines.append(f"witness profile: {column_profile(res.witness)}")
            lines.append(f"witness masks:   {res.witness.masks}")
        else:
            lines.append("witness: not available for this method")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cells(args: argparse.Namespace):
    kinds1 = [args.g1] if args.g1 else ["path", "cycle"]
    kinds2 = [args.g2] if args.g2 else ["path", "cycle"]
    for k1 in kinds1:
        for k2 in kinds2:
            for n in args.n_range:
                if k1 == "cycle" and n < 3:
                    continue
                for m in args.m_range:
                    yield ProductSpec(FactorSpec(k1, n), FactorSpec(k2, m))


def _render_rows(rows: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(json.dumps(rows, indent=1) + "\n", out)
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=["n", "m", "g1_kind", "g2_kind", "gamma", "method"], lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), out)
        return
    header = ["n", "m", "g1_kind", "g2_kind", "gamma", "method"]
    widths = [max(len(h), *(len(str(r[h])) for r in rows)) for h in header] if rows else None
    lines = []
    if fmt == "md":
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join("---" for _ in header) + "|")
        for r in rows:
            lines.append("| " + " | ".join(str(r[h]) for h in header) + " |")
    else:
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths or [])))
        for r in rows:
            lines.append("  ".join(str(r[h]).ljust(w) for h, w in zip(header, widths or [])))
    _emit("\n".join(lines) + "\n", out)


def _guess_format(args: argparse.Namespace) -> str:
    if args.json:
        return "json"
    if getattr(args, "format", None):
        return args.format
    if args.out:
        ext = os.path.splitext(args.out)[1].lstrip(".").lower()
        if ext in ("csv", "md", "json"):
            return ext
    return "text"


def _cmd_table(args: argparse.Namespace) -> int:
    k1 = _kind_only(args.g1)
    k2 = _kind_only(args.g2)
    low = 2 if k1 == "path" else 3
    if args.n_range.start < low or args.n_range[-1] > 7:
        raise InputError(f"table rows must lie within {low}..7 for a {k1} first factor")
    rows = []
    for n in args.n_range:
        for m in args.m_range:
            spec = ProductSpec(FactorSpec(k1, n), FactorSpec(k2, m))
            rows.append(
                {"n": n, "m": m, "g1_kind": k1, "g2_kind": k2,
                 "gamma": gamma_small(spec), "method": "closed-form"}
            )
    _render_rows(rows, _guess_format(args), args.out)
    return 0


def _crosscheck_value(spec: ProductSpec, method: str, cache: str | None) -> int | None:
    """Value of one cell, or None when the cell exceeds the method's caps."""
    if method == "subsets" and spec.n * spec.m > SUBSETS_VERTEX_CAP:
        return None
    try:
        return _compute_one(spec, method, cache).value
    except GdaLexError:
        return None


def _cmd_crosscheck(args: argparse.Namespace) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise InputError("crosscheck needs at least two methods")
    for m in methods:
        if m not in METHODS:
            raise InputError(f"unknown method {m!r}; choose from {METHODS}")
    t0 = time.time()
    cells = sorted(_cells(args), key=lambda s: (s.g1.kind, s.g2.kind, s.n, s.m))
    mismatches = []
    rows = []
    examined = 0
    for spec in cells:
        values = {meth: _crosscheck_value(spec, meth, args.cache) for meth in methods}
        present = {meth: v for meth, v in values.items() if v is not None}
        if len(present) < 2:
            continue
        examined += 1
        for meth, v in present.items():
            rows.append(
                {"n": spec.n, "m": spec.m, "g1_kind": spec.g1.kind,
                 "g2_kind": spec.g2.kind, "gamma": v, "method": meth}
            )
        if len(set(present.values())) > 1:
            mismatches.append({"g1": str(spec.g1), "g2": str(spec.g2), "values": present})
    wall = time.time() - t0
    report = {
        "cells_examined": examined,
        "methods": methods,
        "mismatches": mismatches,
        "wall_time_s": round(wall, 3),
    }
    fmt = _guess_format(args)
    if fmt == "csv":
        _render_rows(rows, "csv", args.out)
    else:
        _emit(json.dumps(report, indent=1) + "\n", args.out)
    if mismatches:
        for mm in mismatches:
            print(f"MISMATCH {mm['g1']} o {mm['g2']}: {mm['values']}", file=sys.stderr)
        return 1
    return 0


def _cmd_valtable(args: argparse.Namespace) -> int:
    g2 = factor(args.g2)
    table = None
    if args.cache and os.path.exists(args.cache):
        try:
            loaded = ValueTable.load(args.cache)
            if loaded.g2 == g2 and loaded.k_max >= args.k_max:
                table = loaded
        except GdaLexError as exc:
            raise InputError(f"cache file {args.cache} is unusable: {exc}") from exc
    if table is None:
        table = compute_value_table(g2, args.k_max)
        if args.cache:
            table.save(args.cache)
    payload = table.to_json_dict()
    if args.json:
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
    else:
        ks = range(2, table.k_max + 1)
        lines = [f"value table for G2 = {g2} (k_max={table.k_max})",
                 "k:     " + " ".join(f"{k:4d}" for k in ks),
                 "val_I: " + " ".join(f"{table.val_I[k]:4d}" for k in ks),
                 "val_E: " + " ".join(f"{table.val_E[k]:4d}" for k in ks)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gda-lex",
        description="Exact global defensive alliance numbers of lexicographic "
        "products of paths and cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="gamma_a of a single product")
    p_compute.add_argument("--g1", required=True, help="first factor, e.g. path:20")
    p_compute.add_argument("--g2", required=True, help="second factor, e.g. cycle:15")
    p_compute.add_argument("--method", default="auto", choices=METHODS)
    p_compute.add_argument("--witness", action="store_true", help="print witness profile/masks")
    p_compute.add_argument("--json", action="store_true")
    p_compute.add_argument("--out", default=None)
    p_compute.add_argument("--cache", default=None, help="value-table cache file")
    p_compute.set_defaults(func=_cmd_compute)

    p_table = sub.add_parser("table", help="regenerate the small-order tables")
    p_table.add_argument("--g1", required=True, help="first factor kind: path|cycle")
    p_table.add_argument("--g2", required=True, help="second factor kind: path|cycle")
    p_table.add_argument("--n-range", type=_parse_range, default=None)
    p_table.add_argument("--m-range", type=_parse_range, required=True)
    p_table.add_argument("--format", choices=("text", "csv", "md", "json"), default=None)
    p_table.add_argument("--json", action="store_true")
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=_cmd_table)

    p_cross = sub.add_parser("crosscheck", help="compare methods over a range")
    p_cross.add_argument("--methods", required=True, help="comma list, e.g. closed,column-dp")
    p_cross.add_argument("--g1", choices=("path", "cycle"), default=None)
    p_cross.add_argument("--g2", choices=("path", "cycle"), default=None)
    p_cross.add_argument("--n-range", type=_parse_range, required=True)
    p_cross.add_argument("--m-range", type=_parse_range, required=True)
    p_cross.add_argument("--format", choices=("text", "csv", "md", "json"), default=None)
    p_cross.add_argument("--json", action="store_true")
    p_cross.add_argument("--out", default=None)
    p_cross.add_argument("--cache", default=None)
    p_cross.set_defaults(func=_cmd_crosscheck)

    p_val = sub.add_parser("valtable", help="compute or load a value table")
    p_val.add_argument("--g2", required=True, help="second factor, e.g. cycle:15")
    p_val.add_argument("--k-max", type=int, default=9)
    p_val.add_argument("--json", action="store_true")
    p_val.add_argument("--out", default=None)
    p_val.add_argument("--cache", default=None)
    p_val.set_defaults(func=_cmd_valtable)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "n_range", None) is None and args.command == "table":
        args.n_range = range(2 if args.g1 == "path" else 3, 8)
    try:
        return args.func(args)
    except GdaLexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
