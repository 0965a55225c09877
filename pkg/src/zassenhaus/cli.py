"""Command line front end: compute, render, cache, and verify the W_m.

Three subcommands:

    terms   print W_2..W_K (associative or commutator form; text, LaTeX,
            or JSON), optionally backed by an on-disk cache
    verify  run the exact / oracle / numeric checks and print a JSON report
    f1k     print the base-family element f[1, k] from either closed form

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant breach (path disagreement, corrupted cache entry).

All output is deterministic for fixed flags (and seed, where one
applies): JSON is dumped with sorted keys and fixed separators, and term
order is canonical everywhere.  The cache layout is

    <root>/<schema-version>/n<n>/K<K>/W<m>.<path>.json

where <root> comes from --cache, or else the ZASSENHAUS_CACHE_DIR
environment variable.  Every entry stores the canonical polynomial
payload together with its SHA-256 digest; a digest mismatch on load is
an integrity failure, never silently recomputed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .engine import EngineCtx, PathDisagreementError, f1k_comm, f1k_direct
from .freealg import AlgebraCtx, AssocPoly
from .lieform import LieExpr, expand, render
from .oracle import (
    exact_identity_check,
    numeric_order_check,
    oracle_equivalence_check,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class CacheCorruptionError(RuntimeError):
    """A cache entry failed its digest or key consistency check."""


def _dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- cache --------------------------------------------------------------------


def cache_root(flag_value: str | None) -> Path | None:
    """Explicit --cache wins; else the environment override; else no cache."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get("ZASSENHAUS_CACHE_DIR")
    return Path(env) if env else None


def _cache_file(root: Path, n: int, max_degree: int, m: int, path: str) -> Path:
    return root / str(SCHEMA_VERSION) / f"n{n}" / f"K{max_degree}" / f"W{m}.{path}.json"


def _cache_key(n: int, max_degree: int, m: int, path: str) -> dict:
    return {"format": SCHEMA_VERSION, "n": n, "K": max_degree, "m": m, "path": path}


def cache_store(root: Path, n: int, max_degree: int, m: int, path: str, poly: AssocPoly) -> Path:
    payload = poly.to_json_dict()
    entry = {
        "digest": hashlib.sha256(_dumps(payload).encode()).hexdigest(),
        "key": _cache_key(n, max_degree, m, path),
        "payload": payload,
    }
    target = _cache_file(root, n, max_degree, m, path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(_dumps(entry) + "\n")
    return target


def cache_load(root: Path, n: int, max_degree: int, m: int, path: str) -> AssocPoly | None:
    """The cached W_m, or None on a clean miss; digest mismatch raises."""
    target = _cache_file(root, n, max_degree, m, path)
    if not target.exists():
        return None
    try:
        entry = json.loads(target.read_text())
    except json.JSONDecodeError as exc:
        raise CacheCorruptionError(f"unreadable cache entry {target}: {exc}") from exc
    if entry.get("key") != _cache_key(n, max_degree, m, path):
        return None  # stale key (e.g. older format version): recompute
    payload = entry.get("payload")
    digest = hashlib.sha256(_dumps(payload).encode()).hexdigest()
    if digest != entry.get("digest"):
        raise CacheCorruptionError(f"digest mismatch in cache entry {target}")
    return AssocPoly.from_json_dict(payload)


# -- terms --------------------------------------------------------------------


def _terms_lines(args: argparse.Namespace) -> str:
    n, K, path = args.n, args.max_degree, args.path
    if K < 2:
        raise ValueError(f"the splitting exponents start at W_2; need --max-degree >= 2, got {K}")
    root = cache_root(args.cache)
    ectx = EngineCtx(AlgebraCtx(n, K))
    rows: list[tuple[int, AssocPoly, LieExpr | None]] = []
    for m in range(2, K + 1):
        poly = cache_load(root, n, K, m, path) if root else None
        if poly is None:
            generic = ectx.w_term(m) if path in ("generic", "both") or m < 5 else None
            expanded = ectx.w_term_expanded(m) if path in ("expanded", "both") and m >= 5 else None
            if path == "both" and m >= 5 and generic != expanded:
                raise PathDisagreementError(
                    f"W_{m}: generic recursion and expanded formula disagree"
                )
            poly = generic if generic is not None else expanded
            if root:
                cache_store(root, n, K, m, path, poly)
        comm = f1k_comm(m - 1, n).scaled(Fraction(1, m)) if args.form == "comm" and m <= 4 else None
        rows.append((m, poly, comm))

    if args.format == "json":
        doc = {
            "version": SCHEMA_VERSION,
            "n": n,
            "maxDegree": K,
            "path": path,
            "form": args.form,
            "terms": [
                {"m": m, "poly": poly.to_json_dict()}
                | ({"comm": render(comm, "text")} if comm is not None else {})
                for m, poly, comm in rows
            ],
        }
        return _dumps(doc) + "\n"

    lines = []
    for m, poly, comm in rows:
        if args.format == "latex":
            body = render(comm, "latex") if comm is not None else poly.latex()
            lines.append(f"W_{{{m}}} = {body}")
        else:
            body = render(comm, "text") if comm is not None else poly.text()
            lines.append(f"W{m} = {body}")
    return "\n".join(lines) + "\n"


def cmd_terms(args: argparse.Namespace) -> int:
    text = _terms_lines(args)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _series_polys(n: int, max_degree: int) -> list[AssocPoly]:
    if max_degree < 2:
        return []
    ectx = EngineCtx(AlgebraCtx(n, max_degree))
    return [ectx.w_term(m) for m in range(2, max_degree + 1)]


def cmd_verify(args: argparse.Namespace) -> int:
    n, K = args.n, args.max_degree
    t_values = [float(part) for part in args.t.split(",") if part.strip()]
    ws = _series_polys(n, K)
    reports = []
    if args.mode in ("exact", "all"):
        reports.append(exact_identity_check(n, K, ws))
    if args.mode in ("oracle", "all"):
        reports.append(oracle_equivalence_check(n, K, ws))
    if args.mode in ("numeric", "all"):
        reports.append(numeric_order_check(n, K, args.dim, args.seed, t_values, ws=ws))
    overall = all(r.passed for r in reports)
    if args.mode == "all":
        doc: object = {"pass": overall, "checks": [r.to_json_dict() for r in reports]}
    else:
        doc = reports[0].to_json_dict()
    sys.stdout.write(_dumps(doc) + "\n")
    return EXIT_OK if overall else EXIT_VERIFY_FAILED


# -- f1k ----------------------------------------------------------------------


def cmd_f1k(args: argparse.Namespace) -> int:
    k, n = args.k, args.n
    ctx = AlgebraCtx(n, k + 1)
    comm = f1k_comm(k, n) if args.path in ("comm", "both") else None
    direct = f1k_direct(k, ctx) if args.path in ("direct", "both") else None
    if args.path == "both" and expand(comm, ctx) != direct:
        raise PathDisagreementError(
            f"f[1,{k}]: commutator form and nested-ad form disagree at n={n}"
        )
    if args.format == "json":
        doc = {"version": SCHEMA_VERSION, "k": k, "n": n, "path": args.path}
        if comm is not None:
            doc["comm"] = render(comm, "text")
        if direct is not None:
            doc["poly"] = direct.to_json_dict()
        sys.stdout.write(_dumps(doc) + "\n")
        return EXIT_OK
    fmt = args.format
    if comm is not None:
        body = render(comm, fmt)
    else:
        body = direct.latex() if fmt == "latex" else direct.text()
    prefix = f"f_{{1,{k}}} = " if fmt == "latex" else f"f[1,{k}] = "
    sys.stdout.write(prefix + body + "\n")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zassenhaus",
        description="Exponents W_m of the ordered splitting "
        "e^(X1+...+Xn) = e^(X1)...e^(Xn) e^(W2) e^(W3) ...",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_terms = sub.add_parser("terms", help="compute and print W_2..W_K")
    p_terms.add_argument("--n", type=int, default=2, help="number of generators (default 2)")
    p_terms.add_argument("--max-degree", type=int, default=6, help="truncation degree K (default 6)")
    p_terms.add_argument("--path", choices=("generic", "expanded", "both"), default="generic")
    p_terms.add_argument("--form", choices=("assoc", "comm"), default="assoc")
    p_terms.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p_terms.add_argument("--out", help="write output to this file instead of stdout")
    p_terms.add_argument("--cache", help="cache directory root (or set ZASSENHAUS_CACHE_DIR)")
    p_terms.set_defaults(func=cmd_terms)

    p_verify = sub.add_parser("verify", help="check the splitting against the oracles")
    p_verify.add_argument("--n", type=int, default=2)
    p_verify.add_argument("--max-degree", type=int, default=6)
    p_verify.add_argument("--mode", choices=("exact", "numeric", "oracle", "all"), default="all")
    p_verify.add_argument("--dim", type=int, default=4, help="matrix dimension for numeric mode")
    p_verify.add_argument("--seed", type=int, default=42, help="RNG seed for numeric mode")
    p_verify.add_argument("--t", default="0.2,0.1", help="comma-separated step sizes for numeric mode")
    p_verify.set_defaults(func=cmd_verify)

    p_f1k = sub.add_parser("f1k", help="print the base-family element f[1,k]")
    p_f1k.add_argument("--k", type=int, required=True)
    p_f1k.add_argument("--n", type=int, default=2)
    p_f1k.add_argument("--path", choices=("comm", "direct", "both"), default="comm")
    p_f1k.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p_f1k.set_defaults(func=cmd_f1k)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PathDisagreementError, CacheCorruptionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
