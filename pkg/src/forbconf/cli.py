"""Command-line front door.

Exit codes: 0 on success or match, 1 on a verification mismatch, 2 on a
usage or input error.  CACHE_PATH and THREADS in the environment supply
defaults for --cache and --threads.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from datetime import datetime, timezone

from .matrix import (
    MatrixFormatError,
    RMatrix,
    contains_config,
    make_const,
    parse_matrices,
    sym_family,
    to_text,
)

SCHEMA_VERSION = 1
log = logging.getLogger("forbconf")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_matrices(path: str) -> list[RMatrix]:
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    with open(path) as fh:
        text = fh.read()
    try:
        mats = parse_matrices(text)
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not mats:
        raise UsageError(f"{path}: no matrices found")
    return mats


def _read_matrix(path: str) -> RMatrix:
    mats = _read_matrices(path)
    if len(mats) != 1:
        raise UsageError(f"{path}: expected one matrix, found {len(mats)}")
    return mats[0]


def _family(path: str, r: int, sym: bool) -> list[RMatrix]:
    mats = _read_matrices(path)
    if not sym:
        return [F.with_alphabet(r) if F.alphabet < r else F for F in mats]
    out: list[RMatrix] = []
    for F in mats:
        if F.alphabet != 2:
            raise UsageError("--sym expands (0,1)-matrices only")
        out.extend(sym_family(F, r))
    return out


def parse_params(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"parameter {part!r} is not key=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key!r} needs an integer value") from None
    return out


def _need(params: dict, *names: str) -> list[int]:
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(missing)}")
    return [params[n] for n in names]


_GRAPH_NAME = re.compile(r"^(?:(\d+)\.)?([PCSKEcdG])(\d+)$")


def parse_graph_name(name: str):
    """P4, C3, S2, K3, E4 (one edge of multiplicity 4), c2, d2, G3, optionally '2.' prefixed."""
    from . import multigraph as mg
    m = _GRAPH_NAME.match(name.strip())
    if not m:
        raise UsageError(f"unknown graph name {name!r}")
    n = int(m.group(1) or 1)
    kind, size = m.group(2), int(m.group(3))
    makers = {
        "P": lambda: mg.path(size, n), "C": lambda: mg.cycle(size, n),
        "S": lambda: mg.star(size, n), "K": lambda: mg.complete(size, n),
        "E": lambda: mg.multi_edge(size * n), "c": lambda: mg.frak_c(size),
        "d": lambda: mg.frak_d(size), "G": lambda: mg.gamma(size),
    }
    try:
        return makers[kind]()
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad graph {name!r}: {exc}") from None


def _graph_family(spec: str):
    from .multigraph import GraphFamily, Member
    if os.path.exists(spec):
        with open(spec) as fh:
            names = [t for t in re.split(r"[\s,]+", fh.read()) if t and not t.startswith("#")]
    else:
        names = [t for t in spec.split(",") if t.strip()]
    fam = GraphFamily()
    for name in names:
        fam.add(Member(name.strip(), graph=parse_graph_name(name)))
    return fam


# ---------------------------------------------------------------------------
# output


def _emit(args, payload: dict, text: str | None = None, csv_rows: list[dict] | None = None,
          csv_fields: list[str] | None = None) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    if not args.no_timestamp:
        payload["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv":
        rows = csv_rows if csv_rows is not None else [
            {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
        fields = csv_fields or sorted({k for row in rows for k in row})
        if "schema_version" not in fields:
            fields = ["schema_version"] + fields
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({"schema_version": SCHEMA_VERSION, **row})
        sys.stdout.write(buf.getvalue())
    else:
        print(text if text is not None else json.dumps(payload, indent=2, sort_keys=True))


def _open_cache(args):
    from .cache import ForbCache
    path = args.cache or os.environ.get("CACHE_PATH")
    return ForbCache(path, timestamps=not args.no_timestamp) if path else None


def _threads(args) -> int:
    if args.threads is not None:
        t = args.threads
    else:
        try:
            t = int(os.environ.get("THREADS", "1"))
        except ValueError:
            raise UsageError("THREADS must be an integer") from None
    if t < 1:
        raise UsageError("threads must be positive")
    return t


def _check_r(r: int) -> None:
    if r < 2:
        raise UsageError("r must be at least 2")


# ---------------------------------------------------------------------------
# subcommands


def cmd_forb_exact(args) -> int:
    from .solver import BudgetError, exact_forb
    _check_r(args.r)
    if args.m < 0:
        raise UsageError("m must be non-negative")
    if args.budget_nodes is not None and args.budget_nodes <= 0:
        raise UsageError("budget must be positive")
    fam = _family(args.family, args.r, args.sym)
    cache = _open_cache(args)
    try:
        res = exact_forb(args.m, args.r, fam, budget_nodes=args.budget_nodes,
                         time_limit=args.seconds, cache=cache, threads=_threads(args))
    except BudgetError as exc:
        raise UsageError(str(exc)) from None
    witness_path = None
    if args.witness:
        with open(args.witness, "w") as fh:
            fh.write(to_text(res.witness))
        witness_path = args.witness
    if cache is not None:
        cache.save()
    out = {"value": res.value, "status": res.status, "upper": res.upper,
           "witness_path": witness_path, "nodes": res.nodes}
    if not args.no_timestamp:
        out["seconds"] = round(res.seconds, 6)
    text = f"forb({args.m}, {args.r}) = {res.value} [{res.status}]"
    _emit(args, out, text)
    return 0


def _descriptor(kind: str, params: dict, forbid: RMatrix | None):
    from . import constructions as c
    from .solver import exact_forb
    if kind == "multinomial":
        m, r, n = _need(params, "m", "r", "n")
        return c.multinomial_descriptor(m, r, make_const(n, 1, 1))
    if kind == "block-exact":
        return c.block_descriptor(*_need(params, "m", "r", "p", "q"))
    if kind == "s-block":
        return c.s_block_descriptor(*_need(params, "m", "r", "p", "q"))
    if kind == "chain-of-Ks":
        return c.ks_chain_descriptor(*_need(params, "m", "p"))
    if forbid is None:
        raise UsageError(f"--kind {kind} needs --forbid")
    if kind == "identity":
        m, r = _need(params, "m", "r")
        return c.identity_descriptor(m, r, forbid, params.get("diag", 1), params.get("off", 0))
    if kind == "product":
        rows, r = _need(params, "rows", "r")
        A2 = exact_forb(rows, 2, [forbid]).witness
        return c.product_descriptor(A2, forbid, r)
    raise UsageError(f"unknown construction kind {kind!r}")


def cmd_construct(args) -> int:
    from .constructions import ConstructionError, verify_construction
    params = parse_params(args.params)
    forbid = _read_matrix(args.forbid) if args.forbid else None
    try:
        d = _descriptor(args.kind, params, forbid)
        report = verify_construction(d)
        A = d.build()
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None
    sidecar = {"descriptor": d.to_json(), "verification": report.to_json()}
    if args.no_timestamp:
        sidecar["verification"].pop("seconds", None)
    sidecar = {"schema_version": SCHEMA_VERSION, **sidecar}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(to_text(A))
        with open(args.out + ".json", "w") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out} and {args.out}.json ({A.ncols} columns, "
              f"{'pass' if report.passed else 'FAIL'})")
    else:
        sys.stdout.write(to_text(A))
        print()
        print(json.dumps(sidecar, indent=2, sort_keys=True))
    return 0 if report.passed else 1


def cmd_verify_avoid(args) -> int:
    A = _read_matrix(args.matrix)
    r = args.r or A.alphabet
    fam = _family(args.family, r, args.sym)
    hits = [i for i, F in enumerate(fam) if contains_config(F, A.with_alphabet(max(r, A.alphabet)))]
    out = {"avoids": not hits, "rows": A.rows, "columns": A.ncols, "contained_members": hits}
    text = "avoids the family" if not hits else f"contains member(s) {hits}"
    _emit(args, out, text)
    return 0 if not hits else 1


def cmd_bounds(args) -> int:
    from . import solver
    params = parse_params(args.params)
    if args.kind == "block":
        m, r, p, q = _need(params, "m", "r", "p", "q")
        value = solver.block_formula(m, r, p, q)
    elif args.kind == "s-block":
        m, r, p, q = _need(params, "m", "r", "p", "q")
        v = solver.s_block_value(m, r, p, q)
        value = v.value
        if v.suspicious:
            log.warning("%s", v.note)
    elif args.kind == "sauer":
        m, k = _need(params, "m", "k")
        from .combinatorics import sauer_formula
        value = sauer_formula(m, k)
    elif args.kind == "support":
        if not args.forbid:
            raise UsageError("--kind support needs --forbid")
        F = _read_matrix(args.forbid)
        m, r = _need(params, "m", "r")
        fs = params.get("forb_supp")
        if fs is None:
            from .matrix import support
            fs = solver.forb_value(m, r, list(sym_family(support(F), r)))
        value = solver.support_bound(m, r, F, fs)
    else:
        raise UsageError(f"unknown bound {args.kind!r}")
    out = {"kind": args.kind, "params": params, "value": value}
    _emit(args, out, str(value))
    return 0


def cmd_chain(args) -> int:
    from .induction import ch_chain
    if args.n < 1:
        raise UsageError("depth must be at least 1")
    F = _read_matrix(args.F)
    if F.alphabet != 2:
        raise UsageError("ch is defined for (0,1)-matrices")
    levels = ch_chain(F, args.n)
    if args.format == "text":
        parts = []
        for i, level in enumerate(levels, 1):
            parts.append(f"# ch^{i}: {len(level)} member(s)")
            parts.extend(to_text(G) for G in level)
        print("\n".join(parts).rstrip("\n"))
    else:
        out = {"levels": [[to_text(G) for G in level] for level in levels]}
        _emit(args, out)
    return 0


def cmd_turan(args) -> int:
    from .multigraph import EnumerationBudget, ex_q
    if args.n < 1 or args.q < 1:
        raise UsageError("n and q must be positive")
    fam = _graph_family(args.family)
    try:
        ex, G = ex_q(args.n, args.q, fam)
    except (EnumerationBudget, ValueError) as exc:
        raise UsageError(str(exc)) from None
    edges = [[i, j, c] for i, j, c in G.items()]
    out = {"n": args.n, "q": args.q, "family": fam.names(), "ex": ex, "witness_edges": edges}
    text = f"ex_{args.q}({args.n}) = {ex}; witness " + (
        ", ".join(f"{i}-{j}x{c}" for i, j, c in edges) or "empty")
    _emit(args, out, text)
    return 0


def cmd_classify(args) -> int:
    from .exponents import classify
    from .induction import curated_entry
    _check_r(args.r)
    F = _read_matrix(args.F)
    if F.alphabet != 2:
        raise UsageError("classification is defined for (0,1)-matrices")
    bound = classify(F, args.r)
    out = {"r": args.r, "matrix": to_text(F), **bound.to_json()}
    entry = curated_entry(F)
    if entry is not None:
        out["curated"] = entry.name
    text = (f"lower {bound.lower}  upper {bound.upper}  "
            f"{'tight' if bound.tight else 'open'}\n"
            f"  lower: {bound.lower_witness.rule} ({bound.lower_witness.detail})\n"
            + "\n".join(f"  upper {s.exponent}: {s.rule} [{s.basis}] {s.detail}"
                        for s in bound.upper_chain))
    _emit(args, out, text)
    return 0


def cmd_tables(args) -> int:
    from .tables import CSV_FIELDS, format_text, load_expectations, report_rows_csv, table_report
    which = [1, 2, 3, 4] if args.which == "all" else [int(args.which)]
    data = load_expectations(args.expectations)
    rs = [int(x) for x in args.r.split(",")] if args.r else None
    reports = [table_report(t, rs, data) for t in which]
    bad = sum(len(rep.mismatches) for rep in reports)
    out = {"tables": [rep.to_json() for rep in reports], "mismatches": bad}
    text = "\n".join(format_text(rep) for rep in reports) + f"\nmismatches: {bad}"
    _emit(args, out, text, csv_rows=report_rows_csv(reports), csv_fields=CSV_FIELDS)
    return 1 if bad else 0


def cmd_cache(args) -> int:
    from .cache import ForbCache
    path = args.cache or os.environ.get("CACHE_PATH")
    if not path:
        raise UsageError("no cache path: pass --cache or set CACHE_PATH")
    cache = ForbCache(path, timestamps=not args.no_timestamp)
    if args.action == "merge":
        if not args.source or not os.path.exists(args.source):
            raise UsageError("merge needs an existing --source cache")
        other = ForbCache(args.source)
        for e in other.entries.values():
            cache.entries.setdefault((e["m"], e["r"], e["digest"]), e)
            if e.get("method") == "exact":
                cache.entries[(e["m"], e["r"], e["digest"])] = e
        cache.save()
    entries = [dict(e) for _, e in sorted(cache.entries.items())]
    for e in entries:
        e.pop("witness", None)
        if args.no_timestamp:
            e.pop("timestamp", None)
    exact = sum(1 for e in entries if e["method"] == "exact")
    out = {"path": path, "entries": len(entries), "exact": exact,
           "formula": len(entries) - exact}
    if args.action in ("list", "merge"):
        out["items"] = entries
    text = f"{path}: {len(entries)} entries ({exact} exact)"
    if args.action == "list":
        text += "".join(f"\n  m={e['m']} r={e['r']} {e['digest'][:12]} {e['value']} {e['method']}"
                        for e in entries)
    _emit(args, out, text, csv_rows=entries,
          csv_fields=["m", "r", "digest", "value", "method"])
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"],
                        help="output format (default: text for chain, json otherwise)")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit timestamps and timings so reports are reproducible")
    common.add_argument("--cache", help="cache file (default: $CACHE_PATH)")
    common.add_argument("--threads", type=int, help="worker threads (default: $THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="forbconf", description="Forbidden configurations in r-matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("forb-exact", parents=[common], help="exact forb(m, r, F) by search")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--family", required=True, help="matrix file, blank-line separated")
    s.add_argument("--sym", action="store_true", help="expand each (0,1)-member to Sym(F)")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--seconds", type=float, help="time budget")
    s.add_argument("--witness", help="write the witness matrix here")
    s.set_defaults(func=cmd_forb_exact)

    s = sub.add_parser("construct", parents=[common], help="build and verify a construction")
    s.add_argument("--kind", required=True,
                   choices=["product", "multinomial", "block-exact", "identity", "chain-of-Ks", "s-block"])
    s.add_argument("--params", default="", help="k=v,... (product: rows,r; identity: m,r[,diag,off])")
    s.add_argument("--forbid", help="(0,1)-matrix F for product and identity")
    s.add_argument("--out", help="write matrix here and the sidecar to OUT.json")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify-avoid", parents=[common], help="check that a matrix avoids a family")
    s.add_argument("-A", "--matrix", required=True)
    s.add_argument("--family", required=True)
    s.add_argument("-r", type=int)
    s.add_argument("--sym", action="store_true")
    s.set_defaults(func=cmd_verify_avoid)

    s = sub.add_parser("bounds", parents=[common], help="evaluate closed-form bounds")
    s.add_argument("--kind", required=True, choices=["block", "s-block", "sauer", "support"])
    s.add_argument("--params", default="")
    s.add_argument("--forbid")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("chain", parents=[common], help="print ch^i(F) for i <= n")
    s.add_argument("-F", required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_chain, default_format="text")

    s = sub.add_parser("turan", parents=[common], help="ex_q(n, family) with a witness")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-q", type=int, required=True)
    s.add_argument("--family", required=True, help="names like P4,K3,S2 or a file of names")
    s.set_defaults(func=cmd_turan)

    s = sub.add_parser("classify", parents=[common], help="lower and upper exponents of forb(m, r, Sym(F))")
    s.add_argument("-F", required=True)
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("tables", parents=[common], help="regenerate the summary tables and diff")
    s.add_argument("--which", choices=["1", "2", "3", "4", "all"], default="all")
    s.add_argument("--r", help="comma-separated symbol counts (default from the expectations file)")
    s.add_argument("--expectations", help="alternative expectations file")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("cache", parents=[common], help="inspect or merge the result cache")
    s.add_argument("action", choices=["stats", "list", "merge"])
    s.add_argument("--source", help="cache to merge in")
    s.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.format is None:
        # set per subparser: defaults on shared parent actions would leak across commands
        args.format = getattr(args, "default_format", "json")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"forbconf {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, MatrixFormatError) as exc:
        print(f"forbconf {args.command}: {exc}", file=sys.stderr)
        return 2


__all__ = ["main", "build_parser", "parse_params", "parse_graph_name"]
