"""Command-line front end.

Subcommands: classify (single curve), batch (JSON lines in/out), catalog
(dump the vendored j-map fixture), group-type (permutation group report),
audit-gl2 (the mod-N Galois-image audits), selftest (the acceptance suite).

Exit codes: 0 ok, 1 usage, 2 data error, 3 internal inconsistency (a
violation of the classification contract), 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .catalog import builtin_catalog
from .classifier import InternalInconsistency, NeedsModel, classify_j, classify_model
from .fixtures import parse_record_line
from .groups import (
    CapExceeded,
    NOT_NILPOTENT,
    PermGroup,
    audit_qualifying_subgroups,
    close,
    exponent,
    is_gen_d4_type,
    nilpotency_class,
    parse_perm,
    qualifies_as_image,
    satisfies_prop2,
)
from .numkernel import parse_rational
from .weierstrass import SingularModel, WeierstrassModel

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3
EXIT_CAP = 4


def _parse_ainvs(s: str):
    parts = [p for p in s.replace(";", ",").split(",") if p.strip()]
    if len(parts) != 5:
        raise ValueError("expected five a-invariants a1,a2,a3,a4,a6")
    return [parse_rational(p) for p in parts]


def _classify_record(rec) -> dict:
    if rec.ainvs is not None:
        rep = classify_model(rec.model(), label=rec.label)
    else:
        rep = classify_j(rec.j, label=rec.label)
    return rep.to_json()


def cmd_classify(args) -> int:
    if (args.j is None) == (args.ainvs is None):
        print("classify needs exactly one of --j or --ainvs", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.j is not None:
            rep = classify_j(parse_rational(args.j))
        else:
            rep = classify_model(WeierstrassModel.from_ainvs(_parse_ainvs(args.ainvs)))
    except (NeedsModel, SingularModel, ValueError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(json.dumps(rep.to_json()))
    return EXIT_OK


def _batch_line(line: str) -> dict:
    rec = parse_record_line(line)
    out = _classify_record(rec)
    if rec.expected is not None:
        out["expected"] = [rec.expected.a, rec.expected.b]
        out["matches_expected"] = out["torsion"] == out["expected"]
    return out


def _batch_line_safe(line: str) -> tuple[dict, bool]:
    try:
        return _batch_line(line), True
    except InternalInconsistency as exc:
        raise  # a paper-contract violation must stop the run loudly
    except (NeedsModel, SingularModel, ValueError, TypeError, ZeroDivisionError, KeyError) as exc:
        try:
            label = json.loads(line).get("label")
        except Exception:
            label = None
        return {"label": label, "error": f"{type(exc).__name__}: {exc}"}, False


def cmd_batch(args) -> int:
    try:
        if args.infile == "-":
            lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
        else:
            with open(args.infile, "r", encoding="utf-8") as fh:
                lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    builtin_catalog()  # load once before forking workers
    results: list[tuple[dict, bool]]
    try:
        if args.jobs > 1 and len(lines) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_batch_line_safe, lines))
        else:
            results = [_batch_line_safe(ln) for ln in lines]
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = "".join(json.dumps(rec) + "\n" for rec, _ in results)
    if args.outfile == "-":
        sys.stdout.write(text)
    else:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if all(ok for _, ok in results) else EXIT_DATA


def cmd_catalog(args) -> int:
    text = resources.files("torsion_atlas.data").joinpath("jmaps.json").read_text()
    sys.stdout.write(text)
    return EXIT_OK


def cmd_group_type(args) -> int:
    try:
        gens = [parse_perm(g) for g in args.gens.split(";") if g.strip()]
        if not gens:
            raise ValueError("no generators given")
        deg = max(g.degree for g in gens)
        group = PermGroup.from_cycles([s for s in args.gens.split(";") if s.strip()], degree=deg)
    except ValueError as exc:
        print(f"malformed permutations: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        order = len(close(group))
        exp = exponent(group)
        cls = nilpotency_class(group)
        gd4 = is_gen_d4_type(group)
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(json.dumps({
        "order": order,
        "exponent": exp,
        "class": "NotNilpotent" if cls is NOT_NILPOTENT else cls,
        "gen_d4_type": gd4,
    }))
    return EXIT_OK


def cmd_audit_gl2(args) -> int:
    from .acceptance import H9, H25
    n = args.modulus
    try:
        if n in (3, 5):
            rows = audit_qualifying_subgroups(n)
            for r in rows:
                print(json.dumps({
                    "generators": [repr(g) for g in r.representative.generators],
                    "order": r.order,
                    "contained_in_target": r.contained_in_target,
                }))
            return EXIT_OK if rows and all(r.contained_in_target for r in rows) else EXIT_INTERNAL
        if n in (9, 25):
            grp, p = (H9, 3) if n == 9 else (H25, 5)
            q = qualifies_as_image(grp)
            s = satisfies_prop2(grp, p)
            print(json.dumps({"modulus": n, "qualifies_as_image": q, "satisfies_prop2": s}))
            return EXIT_OK if (q and s) else EXIT_INTERNAL
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(f"unsupported modulus {n} (use 3, 5, 9 or 25)", file=sys.stderr)
    return EXIT_USAGE


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    try:
        results = run_all(sys.stdout)
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    failed = [name for name, ok, _ in results if not ok]
    if not failed:
        print("selftest: all criteria pass")
        return EXIT_OK
    print(f"selftest: {len(failed)} criteria failed: {', '.join(failed)}")
    return EXIT_INTERNAL if any(name.startswith("7") for name in failed) else EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torsion-atlas",
        description="Torsion of rational elliptic curves over the compositum of all D4 extensions of Q",
    )
    ap.add_argument("--max-closure", type=int, default=None,
                    help="cap on group closures (default 2^24; also env TORSION_ATLAS_MAX_CLOSURE)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one curve")
    c.add_argument("--j", help='j-invariant as "p/q"')
    c.add_argument("--ainvs", help='five a-invariants "a1,a2,a3,a4,a6"')
    c.set_defaults(fn=cmd_classify)

    b = sub.add_parser("batch", help="classify JSON-lines records")
    b.add_argument("--in", dest="infile", required=True, help="input JSONL file or -")
    b.add_argument("--out", dest="outfile", default="-", help="output JSONL file or -")
    b.add_argument("--jobs", type=int, default=1, help="parallel workers")
    b.set_defaults(fn=cmd_batch)

    g = sub.add_parser("catalog", help="dump the vendored j-map catalog")
    g.set_defaults(fn=cmd_catalog)

    t = sub.add_parser("group-type", help="analyze a permutation group")
    t.add_argument("--gens", required=True, help='cycle notation, ";"-separated')
    t.set_defaults(fn=cmd_group_type)

    a = sub.add_parser("audit-gl2", help="run a mod-N Galois-image audit")
    a.add_argument("--modulus", type=int, required=True)
    a.set_defaults(fn=cmd_audit_gl2)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_closure is not None:
        if args.max_closure < 1:
            print("--max-closure must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ["TORSION_ATLAS_MAX_CLOSURE"] = str(args.max_closure)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
