"""Command-line front end: ``capcalc <subcommand> ...``.

Exit codes: 0 success, 1 parse or validation error, 2 class outside the
admissible cone, 3 uncertified result under ``--certify-strict``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .capacity import capacity_fk
from .cremona import reduce
from .errors import NotInConeError, ParseError, UncertifiedError
from .lattice import CohomClass
from .toric import (
    Polygon,
    WeightSequence,
    capacities_of_polygon,
    delzant_corpus,
    ech_capacity,
    weights_to_class,
)
from .tropical import minimizer_set

EXIT_OK, EXIT_PARSE, EXIT_CONE, EXIT_UNCERTIFIED = 0, 1, 2, 3


def parse_k_range(text: str) -> list[int]:
    """``"6"``, ``"1..8"`` or ``"1,3,5"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            ks = list(range(int(lo), int(hi) + 1))
        else:
            ks = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"malformed k range {text!r}") from exc
    if not ks:
        raise ParseError(f"empty k range {text!r}")
    if min(ks) < 1:
        raise ParseError("k must be at least 1")
    return ks


def thread_count() -> int:
    raw = os.environ.get("CAPCALC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ParseError(f"CAPCALC_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise ParseError(f"CAPCALC_THREADS must be a positive integer, got {raw!r}")
    return n


def _emit(payload, fmt: str, rows: list[dict] | None, pretty: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        if not rows:
            rows = [payload] if isinstance(payload, dict) else payload
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write(pretty.rstrip("\n") + "\n")


def cmd_fk(args, out) -> int:
    w = CohomClass.parse(args.omega)
    ks = parse_k_range(args.k)
    results = []
    for k in ks:
        res = capacity_fk(w, k)
        inv = res.trace.inverse()
        item = res.to_json()
        item["witnesses_input_frame"] = [inv.apply_class(A).to_text() for A in res.witnesses]
        item["boundary"] = res.boundary
        results.append(item)
    payload = {"omega": w.to_text(), "results": results}
    rows = [{"k": r["k"], "value": r["value"], "witnesses": " ".join(r["witnesses"])} for r in results]
    pretty = "\n".join(f"f_{r['k']} = {r['value']}   [{', '.join(r['witnesses'])}]" for r in results)
    _emit(payload, args.format, rows, pretty, out)
    return EXIT_OK


def cmd_tropical(args, out) -> int:
    if args.n < 0:
        raise ParseError("n must be non-negative")
    ks = parse_k_range(args.k)
    reports, rows, lines = [], [], []
    certified = True
    for k in ks:
        tp = minimizer_set(args.n, k, budget=args.budget)
        certified &= tp.certified
        reports.append(tp.to_json())
        rows.append({"k": k, "certified": tp.certified, "terms": " ".join(t.to_text() for t in tp.terms)})
        tag = "" if tp.certified else "   (uncertified)"
        lines.append(f"f_{k} = {tp.pretty()}{tag}")
    payload = reports[0] if len(reports) == 1 else reports
    _emit(payload, args.format, rows, "\n".join(lines), out)
    if args.certify_strict and not certified:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _reduction_report(w: CohomClass) -> dict:
    red = reduce(w)
    return {
        "input": w.to_text(),
        "reduced": red.omega.to_text(),
        "boundary": red.boundary,
        "trace": red.trace.to_json(),
    }


def _trace_text(trace: list[dict]) -> str:
    parts = []
    for s in trace:
        if s["op"] == "sort":
            parts.append("sort" + str(tuple(s["perm"])))
        else:
            parts.append("cremona" + str(tuple(s["ijk"])))
    return " -> ".join(parts) if parts else "(already reduced)"


def cmd_reduce(args, out) -> int:
    rep = _reduction_report(CohomClass.parse(args.omega))
    pretty = rep["reduced"] + "\n" + "trace: " + _trace_text(rep["trace"])
    if rep["boundary"]:
        pretty += "\nboundary: yes"
    _emit(rep, args.format, None, pretty, out)
    return EXIT_OK


def _load_polygon(path: str) -> Polygon:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return Polygon.from_json(text)


def _rows_json(rows: list[dict]) -> list[dict]:
    return [{k: (str(v) if isinstance(v, Fraction) else v) for k, v in r.items()} for r in rows]


def cmd_polygon(args, out) -> int:
    p = _load_polygon(args.file)
    ks = parse_k_range(args.k)
    rows = _rows_json(capacities_of_polygon(p, ks, crosscheck=args.crosscheck))
    payload = {"polygon": p.to_json()["vertices"], "rows": rows}
    lines = []
    for r in rows:
        line = f"k={r['k']}  c_k={r['ech']}"
        if args.crosscheck:
            line += f"  f_k={r['fk']}  equal={r['equal']}"
        lines.append(line)
    _emit(payload, args.format, rows, "\n".join(lines), out)
    if args.crosscheck and not all(r["equal"] for r in rows):
        return EXIT_PARSE
    return EXIT_OK


def cmd_weights(args, out) -> int:
    ws = WeightSequence.parse(args.weights)
    red = weights_to_class(ws)
    payload = {
        "weights": ws.to_text(),
        "reduced": red.omega.to_text(),
        "boundary": red.boundary,
        "trace": red.trace.to_json(),
    }
    lines = [f"class {red.omega.to_text()}" + ("  (boundary)" if red.boundary else "")]
    rows = []
    if args.k:
        for k in parse_k_range(args.k):
            row = {"k": k, "ech": str(ech_capacity(ws, k))}
            if args.crosscheck:
                row["fk"] = str(capacity_fk(red.omega, k).value)
                row["equal"] = row["fk"] == row["ech"]
            rows.append(row)
            lines.append("  ".join(f"{key}={val}" for key, val in row.items()))
        payload["rows"] = rows
    _emit(payload, args.format, rows or None, "\n".join(lines), out)
    if args.crosscheck and not all(r.get("equal", True) for r in rows):
        return EXIT_PARSE
    return EXIT_OK


def plot_table(ks: list[int], samples: int) -> tuple[list[Fraction], list[list[Fraction]], set[Fraction]]:
    """Exact values of f_k(1 | x) on a uniform grid in (0, 1) plus every breakpoint."""
    if samples < 2:
        raise ParseError("need at least 2 samples")
    polys = [minimizer_set(1, k) for k in ks]
    breaks = {x for tp in polys for x in tp.breakpoints()}
    xs = sorted({Fraction(i, samples) for i in range(1, samples)} | breaks)
    table = [[tp.eval(CohomClass(1, (x,))) for tp in polys] for x in xs]
    return xs, table, breaks


def _svg(ks: list[int], xs: list[Fraction], table: list[list[Fraction]]) -> str:
    W, H, pad = 640, 420, 40
    ymax = max(max(r) for r in table)
    colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]

    def px(x):
        return pad + float(x) * (W - 2 * pad)

    def py(y):
        return H - pad - float(y) / float(ymax) * (H - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>',
        f'<text x="{W - pad}" y="{H - pad + 25}" font-size="12">x</text>',
    ]
    for j, k in enumerate(ks):
        pts = " ".join(f"{px(x):.2f},{py(row[j]):.2f}" for x, row in zip(xs, table))
        c = colors[j % len(colors)]
        parts.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{W - pad + 4}" y="{py(table[-1][j]):.2f}" font-size="11" fill="{c}">f{k}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(args, out) -> int:
    if args.n != 1:
        raise ParseError("plot is only available for n = 1")
    ks = parse_k_range(args.k)
    xs, table, breaks = plot_table(ks, args.samples)
    if args.format == "svg":
        text = _svg(ks, xs, table)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", *(f"f{k}" for k in ks), "breakpoint"])
        for x, row in zip(xs, table):
            w.writerow([str(x), *map(str, row), "1" if x in breaks else "0"])
        text = buf.getvalue()
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise ParseError(f"cannot write {args.out}: {exc}") from exc
    else:
        out.write(text)
    return EXIT_OK


def _verify_one(item: tuple[str, dict, list[int]]) -> dict:
    name, data, ks = item
    rows = capacities_of_polygon(Polygon.from_json(data), ks, crosscheck=True)
    bad = [r["k"] for r in rows if not r["equal"]]
    return {"polygon": name, "ks": f"{ks[0]}..{ks[-1]}", "ok": not bad, "mismatch_k": bad}


def cmd_verify(args, out) -> int:
    ks = parse_k_range(args.k)
    if args.dir:
        files = sorted(Path(args.dir).glob("*.json"))
        if not files:
            raise ParseError(f"no polygon JSON files in {args.dir}")
        items = [(f.name, json.loads(f.read_text()), ks) for f in files]
    else:
        items = [(name, p.to_json(), ks) for name, p in delzant_corpus().items()]
    threads = thread_count()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(_verify_one, items))
    else:
        reports = [_verify_one(it) for it in items]
    ok = all(r["ok"] for r in reports)
    pretty = "\n".join(f"{'ok  ' if r['ok'] else 'FAIL'} {r['polygon']}" for r in reports)
    pretty += f"\n{sum(r['ok'] for r in reports)}/{len(reports)} polygons agree for k in {ks[0]}..{ks[-1]}"
    rows = [{**r, "mismatch_k": " ".join(map(str, r["mismatch_k"]))} for r in reports]
    _emit({"ok": ok, "polygons": reports}, args.format, rows, pretty, out)
    return EXIT_OK if ok else EXIT_PARSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="capcalc", description="Capacities of rational surfaces and toric domains.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    fmt = dict(choices=["json", "csv", "pretty"], default="json")

    p = sub.add_parser("fk", help="f_k of a symplectic class 'x0;x1,...,xn'")
    p.add_argument("--omega", required=True)
    p.add_argument("--k", required=True, help="k, a..b or comma list")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("tropical", help="minimizer set of f_k over the c1-nef cone")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--budget", type=int, default=None, help="fallback bound on a when no practical certificate exists")
    p.add_argument("--certify-strict", action="store_true", help="exit 3 if any result is uncertified")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_tropical)

    p = sub.add_parser("reduce", help="Cremona-reduce a class")
    p.add_argument("--omega", required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("polygon", help="ECH capacities of a toric domain from polygon JSON")
    p.add_argument("--file", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--crosscheck", action="store_true")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("weights", help="class and capacities of a weight sequence 'head;b1,..;c1,..'")
    p.add_argument("--weights", required=True)
    p.add_argument("--k", default=None)
    p.add_argument("--crosscheck", action="store_true")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("plot", help="curves f_k(1 | x) for n = 1, as CSV or SVG")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", default="1..8")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="ECH versus f_k crosscheck over a polygon corpus")
    p.add_argument("--dir", default=None, help="directory of polygon JSON files (default: built-in corpus)")
    p.add_argument("--k", default="1..20")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **kw: err.write(f"warning: {msg}\n")
            return args.func(args, out)
    except NotInConeError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONE
    except UncertifiedError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNCERTIFIED if getattr(args, "certify_strict", False) else EXIT_PARSE
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
