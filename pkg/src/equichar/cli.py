"""Command-line front end.  JSON is the machine format; text is a pretty-printer over it."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coeffs import AQ, QQ
from .maps import CLI_NAMES, MapError, induced_map
from .presentations import DimensionMismatch, UnsupportedGroup, dims_table, group_id, presentation
from .relations import CACHE_ENV, IndexWindowError, RelationCache, basis, default_cache, relation, relation_set
from .stems import LevelMismatch, parse_stem, stem_group, stem_mul
from .symmetric import NotInvariant, algebra
from .torus import parse_polynomial
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _cache(args):
    if getattr(args, "cache", None):
        return RelationCache(args.cache)
    return default_cache()


def render_presentation(d: dict) -> str:
    lines = [f"{d['group']} over {d['coefficient_ring']}"]
    lines.append("generators:")
    for g in d["generators"]:
        lines.append(f"  {g['name']}  degree {g['degree']}  torus {g['torus_image']}")
    lines.append("relations:")
    lines += [f"  {r}" for r in d["relations"]]
    if d["aliases"]:
        lines.append("aliases:")
        lines += [f"  {k} = {v}" for k, v in sorted(d["aliases"].items())]
    lines.append("restriction:")
    lines += [f"  {k} -> {v}" for k, v in sorted(d["restriction"].items())]
    if not d["relations_complete"]:
        lines.append("relation list is partial")
    return "\n".join(lines)


def render_map(d: dict) -> str:
    tgt = d["target"]
    if "blocks" in tgt:
        target = " (x) ".join(f"{tgt['family']}({b})" for b in tgt["blocks"])
    else:
        target = f"{tgt['family']}({tgt['rank']})"
    src = d["source"]
    lines = [f"{d['kind']}: H({src['family']}({src['rank']})) -> H({target})"]
    lines += [f"  {row['generator']} |-> {row['polynomial']}" for row in d["images"]]
    return "\n".join(lines)


def cmd_decompose(args, out):
    if (args.input is None) == (args.expr is None):
        raise UsageError("give exactly one of --input or --expr")
    text = Path(args.input).read_text(encoding="utf-8") if args.input else args.expr
    ring = AQ if args.ring == "aq" else QQ
    p = parse_polynomial(text, args.n, ring)
    gp = algebra((args.n,), ring).decompose(p)
    if args.json:
        out.write(_dump({"n": args.n, "input": text.strip(), "decomposition": gp.to_json(), "text": str(gp)}) + "\n")
    else:
        out.write(f"{gp}\n")
    return 0


def cmd_relations(args, out):
    cache = _cache(args)
    idx = [args.s, args.i, args.t, args.j]
    if any(v is not None for v in idx):
        if any(v is None for v in idx):
            raise UsageError("--s --i --t --j must be given together")
        entries = [relation(args.s, args.i, args.t, args.j, args.n, cache)]
    else:
        entries = relation_set(args.n, cache)
    if args.json:
        rows = [{"s": e.s, "i": e.i, "t": e.t, "j": e.j, "lhs": str(e.lhs), "rhs": str(e.rhs),
                 "leading_coeff": e.leading_coeff} for e in entries]
        out.write(_dump({"n": args.n, "relations": rows}) + "\n")
    else:
        for e in entries:
            out.write(f"{e}\n")
    return 0


def cmd_presentation(args, out):
    d = presentation(group_id(args.family, args.rank), _cache(args)).to_json()
    out.write((_dump(d) if args.json else render_presentation(d)) + "\n")
    return 0


def cmd_map(args, out):
    d = induced_map(args.kind, args.rank, args.rank2, args.family).to_json()
    out.write((_dump(d) if args.json else render_map(d)) + "\n")
    return 0


def cmd_dims(args, out):
    g = group_id(args.family, args.rank)
    rows = dims_table(g, args.max_degree)
    if args.json:
        out.write(_dump({"group": g.label(), "rows": [{"m": m, "degree": 2 * m, "presentation": a, "oracle": b}
                                                       for m, a, b in rows]}) + "\n")
    else:
        out.write("   m  degree  presentation  oracle\n")
        for m, a, b in rows:
            out.write(f"{m:>4}  {2 * m:>6}  {a:>12}  {b:>6}\n")
    return 0 if all(a == b for _, a, b in rows) else 1


def cmd_basis(args, out):
    alg = algebra((args.n,), AQ)
    elements = basis(args.n, args.degree)
    for b in elements:
        name = alg.format_key(b.key) or "1"
        out.write(f"{name}{'  (and x times it)' if b.is_u_free() else ''}\n")
    return 0


def cmd_stems(args, out):
    if args.mul:
        a, b = (parse_stem(t) for t in args.mul)
        out.write(f"{stem_mul(a, b)}\n")
    elif args.group:
        out.write(f"{stem_group(*args.group)}\n")
    else:
        raise UsageError("give --mul A B or --group K N")
    return 0


def cmd_verify(args, out):
    results = run_suite(args.suite)
    for r in results:
        out.write(r.line() + "\n")
        for label, info in r.failures():
            out.write(f"    failed: {label}" + (f" ({info})" if info else "") + "\n")
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equichar", description="C2-equivariant characteristic classes over A_Q")
    p.add_argument("--cache", help=f"relation cache directory (default: ${CACHE_ENV})")
    sub = p.add_subparsers(dest="verb", required=True)

    d = sub.add_parser("decompose", help="write an invariant torus polynomial in the generators")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--input")
    d.add_argument("--expr")
    d.add_argument("--ring", choices=("q", "aq"), default="q")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decompose)

    r = sub.add_parser("relations", help="the product relations of rank n")
    r.add_argument("--n", type=int, required=True)
    for name in ("s", "i", "t", "j"):
        r.add_argument(f"--{name}", type=int)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_relations)

    pr = sub.add_parser("presentation", help="generators, relations and restriction of a group")
    pr.add_argument("--family", required=True, choices=("u", "sp", "so", "o", "su"))
    pr.add_argument("--rank", type=int, required=True)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_presentation)

    m = sub.add_parser("map", help="images of the generators under an induced map")
    m.add_argument("--kind", required=True, choices=sorted(CLI_NAMES))
    m.add_argument("--rank", type=int, required=True)
    m.add_argument("--rank2", type=int)
    m.add_argument("--family", default="u", choices=("u", "sp", "so"))
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_map)

    di = sub.add_parser("dims", help="graded dimensions, presentation count against the oracle")
    di.add_argument("--family", required=True, choices=("u", "sp", "so", "o", "su"))
    di.add_argument("--rank", type=int, required=True)
    di.add_argument("--max-degree", type=int, required=True, help="largest w-degree (cohomological degree is twice it)")
    di.add_argument("--json", action="store_true")
    di.set_defaults(func=cmd_dims)

    b = sub.add_parser("basis", help="admissible basis of the rank n unitary ring in w-degree d")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--degree", type=int, required=True)
    b.set_defaults(func=cmd_basis)

    s = sub.add_parser("stems", help="products and groups of the rational stable stems")
    s.add_argument("--mul", nargs=2, metavar=("A", "B"))
    s.add_argument("--group", nargs=2, type=int, metavar=("K", "N"))
    s.set_defaults(func=cmd_stems)

    v = sub.add_parser("verify", help="run the acceptance battery")
    v.add_argument("--suite", default="all", choices=sorted(SUITES))
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, UnsupportedGroup, MapError, IndexWindowError, NotInvariant, LevelMismatch,
            ValueError) as exc:
        print(f"equichar: error: {exc}", file=sys.stderr)
        return 2
    except DimensionMismatch as exc:
        print(f"equichar: verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
