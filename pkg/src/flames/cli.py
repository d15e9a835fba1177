"""Command-line front end.

Exit codes: 0 success, 1 a checked property fails, 2 bad input or usage,
3 a certificate bundle fails verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import generators, oracle
from .bubbles import LemmaViolation, entrance, is_bubble, largeness_check, max_bubble, minus_root_edge
from .certs import build_bundle, bundle_problems, dumps, read_bundle
from .digraph import DigraphError, DigraphWarning, RootedDigraph, canonical_json, load, to_dot
from .flame import (
    PREFIX_RELATIVE,
    StreamError,
    construct_large_flame,
    is_flame,
    is_quasi_flame,
    lovasz_trim,
    prefix_construct,
    read_prefix,
)
from .menger import covering_system, local_connectivity, max_system

OK, VIOLATION, INPUT_ERROR, CERT_FAILURE = 0, 1, 2, 3

INFINITE_CLAIMS = (
    "N^out(r) is an Erdős–Menger separation of every v_f (figure6 family): a claim about the "
    "infinite digraph; at truncation level k, |N^out(r)| = k + 1 exceeds the in-degree k of v_f.",
    "Every countable rooted digraph has a D-large spanning flame: a claim about infinite digraphs; "
    "only finite digraphs and finite prefixes (certificates tagged prefix-relative) are checked.",
)

FIGURE6_HELP = (
    "figure6:k=K builds the level-K truncation (1 <= K <= 12, 4K + 2 + 2^K vertices). "
    "Infinite-object claims about this family are NOT verified at truncation: "
    "'N^out(r) in S_D(v_f)' and the countable main theorem are outside desk verification."
)


class UsageError(Exception):
    pass


# -- input -------------------------------------------------------------------------------


def _kv(text: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        if "=" not in part:
            raise UsageError(f"generator parameter {part!r} is not key=value")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"generator parameter {key!r} is required")
        return default
    try:
        return int(params[key])
    except ValueError as exc:
        raise UsageError(f"{key} must be an integer") from exc


def parse_gen(spec: str, seed: int | None = None, exclude_omega: bool = False) -> RootedDigraph:
    """Build a digraph from ``kind:key=value,...``."""
    kind, _, rest = spec.partition(":")
    if kind == "file":
        return _read(Path(rest), False)
    if kind == STREAM_KIND:
        raise UsageError(f"{STREAM_KIND} is infinite; use it with --prefix K")
    params = _kv(rest)
    try:
        if kind == "figure6":
            return generators.figure6(_int(params, "k"), exclude_omega=exclude_omega)
        if kind in ("random", "layered"):
            if "seed" not in params and seed is None:
                raise UsageError(f"{kind} generator needs an explicit seed")
            s = _int(params, "seed", seed)
            if kind == "random":
                n = _int(params, "n")
                if "m" in params:
                    return generators.random_digraph_m(n, _int(params, "m"), s)
                return generators.random_digraph(n, float(params.get("p", "0.2")), s)
            widths = [int(w) for w in params.get("widths", "").split("-") if w]
            return generators.layered(widths, s, float(params.get("p", "0.5")))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown generator kind {kind!r}")


def _read(path: Path, normalize_root: bool, root: str | None = None) -> RootedDigraph:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise UsageError(f"{path}: expected a JSON object")
    if root is not None:
        raw = {**raw, "root": root}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DigraphWarning)
        D = load(raw, normalize_root=normalize_root)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return D


def _digraph(args) -> RootedDigraph:
    if args.input and args.gen:
        raise UsageError("give either --input or --gen, not both")
    if args.input:
        return _read(Path(args.input), args.normalize_root, args.root)
    if args.gen:
        return parse_gen(args.gen, args.seed, args.exclude_omega_edges)
    raise UsageError("an input digraph is required (--input PATH or --gen SPEC)")


STREAM_KIND = "figure6-stream"


def _stream_factory(args):
    """Vertex stream for --prefix: the countable figure6 family or the input digraph."""
    if args.gen and args.gen.partition(":")[0] == STREAM_KIND:
        return lambda: generators.figure6_stream(args.exclude_omega_edges)
    D = _digraph(args)
    order = _order(args, D)
    return lambda: generators.digraph_stream(D, order)


def _prefix(args):
    if args.prefix < 0:
        raise UsageError("--prefix must be non-negative")
    try:
        return prefix_construct(_stream_factory(args), args.prefix)
    except StreamError as exc:
        raise UsageError(str(exc)) from exc


def _order(args, D: RootedDigraph):
    if not args.order:
        return None
    order = [x.strip() for x in args.order.split(",") if x.strip()]
    if sorted(order) != list(D.targets):
        raise UsageError("--order must list every non-root vertex exactly once")
    return order


def _write(path, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _emit(args, result: dict) -> None:
    _write(args.out, canonical_json(result) + "\n")


def _is_figure6(args) -> bool:
    return bool(args.gen) and args.gen.startswith("figure6")


# -- commands ------------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    D = _digraph(args)
    if args.oracle_bound is not None and len(D.vertices) > args.oracle_bound:
        raise UsageError(f"{len(D.vertices)} vertices exceed --oracle-bound {args.oracle_bound}")
    report = is_flame(D)
    rows = []
    print(f"root {D.root}, {len(D.vertices)} vertices, {len(D.edges)} edges")
    print(f"{'vertex':>10} {'indeg':>5} {'kappa':>5}  flame  bubble")
    total = 0
    for rec in report.records:
        bub = max_bubble(D, rec.v)
        ent = entrance(minus_root_edge(D, rec.v), bub.vertices)
        total += rec.kappa
        rows.append({"v": rec.v, "in_degree": rec.in_degree, "kappa": rec.kappa, "status": rec.status,
                     "bubble": sorted(bub.vertices), "entrance": sorted(ent)})
        print(f"{rec.v:>10} {rec.in_degree:>5} {rec.kappa:>5}  {'ok' if rec.status == 'flame-ok' else 'NO':<5}  "
              f"|B|={len(bub.vertices)} ent={sorted(ent)}")
    print(f"sum of kappa = {total} (edges of a minimal large flame)")
    result = {"root": D.root, "vertices": len(D.vertices), "edges": len(D.edges), "flame": report.ok,
              "sum_kappa": total, "per_vertex": rows, "infinite_object_claims": list(INFINITE_CLAIMS)}
    if args.oracle_bound is not None:
        bounds = oracle.OracleBounds(max_vertices=args.oracle_bound)
        agree = all(oracle.brute_kappa(D, r["v"], bounds) == r["kappa"] for r in rows)
        agree = agree and oracle.brute_flame(D, bounds) == report.ok
        result["oracle_agrees"] = agree
        print(f"oracle cross-check: {'agrees' if agree else 'DISAGREES'}")
        if not agree:
            _emit(args, result)
            return VIOLATION
    if _is_figure6(args):
        result["figure6"] = _figure6_facts(D)
        for line in result["figure6"]["lines"]:
            print(line)
    print("infinite-object claims (not verified at finite scale):")
    for claim in INFINITE_CLAIMS:
        print(f"  - {claim}")
    _emit(args, result)
    return OK


def _figure6_facts(D: RootedDigraph) -> dict:
    r = D.root
    out_r = sorted(D.out_neighbors(r))
    lines = [f"figure6 truncation: |N^out(r)| = {len(out_r)}"]
    pairs = {}
    i = 0
    while f"v{i}" in D.vertices:
        vi = f"v{i}"
        I = [(f"v{i}_0", vi), (f"v{i}_1", vi)]
        pairs[vi] = covering_system(D, vi, I).ok
        lines.append(f"  {{v{i}_0 v{i}, v{i}_1 v{i}}} coverable at {vi}: {pairs[vi]}")
        i += 1
    fs = {}
    for v in D.targets:
        if v.startswith("vf_"):
            kappa = local_connectivity(D, v)
            fs[v] = {"kappa": kappa, "in_degree": D.in_degree(v),
                     "out_r_is_separation_here": kappa == len(out_r)}
    kappas = sorted({x["kappa"] for x in fs.values()})
    if all(x["kappa"] < len(out_r) for x in fs.values()):
        lines.append(f"  kappa at the v_f vertices is {kappas} < |N^out(r)|, "
                     "so N^out(r) is not a separation of any v_f at this truncation")
    else:
        lines.append(f"  kappa at the v_f vertices is {kappas}")
    return {"pair_coverable": pairs, "v_f": fs, "out_r": out_r, "lines": lines}


def cmd_lovasz(args) -> int:
    D = _digraph(args)
    E = lovasz_trim(D, _order(args, D))
    bad = [v for v in D.targets
           if not (local_connectivity(E, v) == local_connectivity(D, v) == E.in_degree(v))]
    total = sum(local_connectivity(D, v) for v in D.targets)
    print(f"trimmed to {len(E.edges)} of {len(D.edges)} edges; sum of kappa = {total}")
    _emit(args, {"input_hash": D.digest(), "output_edges": [list(e) for e in E.sorted_edges()],
                 "sum_kappa": total, "violations": bad})
    _write(args.dot, to_dot(D, E.edges))
    if bad or len(E.edges) != total:
        print(f"property violated: kappa/in-degree equality fails at {bad}")
        return VIOLATION
    return OK


def cmd_construct(args) -> int:
    if args.prefix is not None:
        return _construct_prefix(args)
    D = _digraph(args)
    try:
        con = construct_large_flame(D, _order(args, D))
    except LemmaViolation as exc:
        print(f"property violated: {exc.lemma}: {exc.detail}")
        return VIOLATION
    bundle = build_bundle(con)
    print(f"large flame with {len(con.E.edges)} of {len(D.edges)} edges; "
          f"{len(con.steps)} steps, all lemma audits passed")
    _write(args.out, dumps(bundle))
    _write(args.dot, to_dot(D, con.E.edges))
    return OK


def _construct_prefix(args) -> int:
    try:
        report = _prefix(args)
    except LemmaViolation as exc:
        print(f"property violated: {exc.lemma}: {exc.detail}")
        return VIOLATION
    con = report.construction
    bundle = build_bundle(con, tag=report.tag)
    bundle["prefix"] = {"k": report.k, "survived": list(report.survived), "changed": list(report.changed)}
    print(f"prefix of {report.k} vertices: large flame with {len(con.E.edges)} of {len(con.D.edges)} edges "
          f"[{report.tag}: certificates hold for this prefix only, not for the infinite digraph]")
    if report.k > 1:
        print(f"systems unchanged from the previous prefix: {len(report.survived)}, changed: {len(report.changed)}")
    _write(args.out, dumps(bundle))
    _write(args.dot, to_dot(con.D, con.E.edges))
    return OK


def cmd_check_flame(args) -> int:
    D = _digraph(args)
    report = is_flame(D)
    for rec in report.records:
        print(f"{rec.v}: in-degree {rec.in_degree}, kappa {rec.kappa}, {rec.status}")
    result = report.to_dict()
    ok = report.ok
    if args.strict_quasi:
        strict = is_quasi_flame(D, strict=True)
        result["quasi_flame_strict"] = strict
        print(f"quasi-flame (all subsets): {strict}")
        ok = ok and strict
    _emit(args, result)
    if not ok:
        print(f"property violated: not a flame at {report.violations}")
        return VIOLATION
    return OK


def cmd_check_large(args) -> int:
    D = _digraph(args)
    if not args.sub:
        raise UsageError("--sub PATH (the candidate subdigraph L) is required")
    L = _read(Path(args.sub), args.normalize_root, args.root)
    if not L.is_subdigraph_of(D):
        raise UsageError("L is not a spanning subdigraph of D")
    verdict = largeness_check(L, D)
    result = {"large": verdict.large,
              "violation": list(verdict.violation) if verdict.violation else None,
              "certificates": {v: c.to_dict() for v, c in sorted(verdict.certificates.items())}}
    _emit(args, result)
    if not verdict.large:
        print(f"property violated: not large, edge {verdict.violation[0]}->{verdict.violation[1]} "
              "has its tail outside the largest bubble")
        return VIOLATION
    print("large: every missing edge starts inside the largest bubble of its head")
    return OK


def _vertex(args, D):
    if not args.vertex:
        raise UsageError("--vertex is required")
    if args.vertex not in D.vertices or args.vertex == D.root:
        raise UsageError(f"{args.vertex!r} is not a non-root vertex")
    return args.vertex


def cmd_bubble(args) -> int:
    D = _digraph(args)
    v = _vertex(args, D)
    if args.set:
        B = {x.strip() for x in args.set.split(",") if x.strip()}
        if v not in B or D.root in B or not B <= D.vertices:
            raise UsageError("the set must contain the vertex, avoid the root and name known vertices")
        res = is_bubble(D, v, B)
        if not hasattr(res, "witness"):
            print(f"not a bubble: entrance {sorted(res.unlinkable)} is cut off by {sorted(res.separator)}")
            _emit(args, {"bubble": False, "separator": sorted(res.separator)})
            return VIOLATION
        print(f"bubble; witness {res.witness.to_list()}")
        _emit(args, {"bubble": True, **res.to_dict()})
        return OK
    bub = max_bubble(D, v)
    print(f"largest {v}-bubble: {sorted(bub.vertices)}, entrance {sorted(bub.entrance)}")
    _emit(args, {**bub.to_dict(), "certificate": bub.certificate.to_dict()})
    return OK


def cmd_separation(args) -> int:
    D = _digraph(args)
    v = _vertex(args, D)
    cert = max_system(D, v)
    sep = cert.separation
    print(f"kappa({D.root},{v}) = {len(cert.system)}; separation {sorted(sep.vertices)}"
          + (" plus the edge rv" if sep.uses_root_edge else ""))
    _emit(args, cert.to_dict())
    return OK


def cmd_verify_cert(args) -> int:
    D = _digraph(args)
    if not args.cert:
        raise UsageError("--cert PATH is required")
    try:
        bundle = read_bundle(args.cert)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read bundle: {exc}") from exc
    problems = bundle_problems(D, bundle)
    for p in problems:
        print(f"certificate failure: {p}")
    if problems:
        return CERT_FAILURE
    tag = bundle.get("tag")
    print("bundle verified: output is a D-large flame" + (f" ({tag})" if tag else ""))
    return OK


def cmd_gen(args) -> int:
    if not args.gen:
        raise UsageError("--gen SPEC is required")
    if args.prefix is not None:
        if args.prefix < 0:
            raise UsageError("--prefix must be non-negative")
        try:
            D = read_prefix(_stream_factory(args)(), args.prefix)[0]
        except StreamError as exc:
            raise UsageError(str(exc)) from exc
    else:
        D = parse_gen(args.gen, args.seed, args.exclude_omega_edges)
    text = D.dumps() + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    _write(args.dot, to_dot(D))
    if _is_figure6(args):
        print(FIGURE6_HELP, file=sys.stderr)
    return OK


def cmd_export(args) -> int:
    D = _digraph(args)
    if not args.out and not args.dot:
        sys.stdout.write(to_dot(D))
    _write(args.out, D.dumps() + "\n")
    _write(args.dot, to_dot(D))
    return OK


COMMANDS = {
    "analyze": (cmd_analyze, "connectivity, flame status and largest bubbles per vertex"),
    "lovasz": (cmd_lovasz, "trim to a minimum large flame by deleting unused in-edges"),
    "construct": (cmd_construct, "build a large flame with a certificate bundle"),
    "check-flame": (cmd_check_flame, "test the flame property"),
    "check-large": (cmd_check_large, "test whether --sub L is large in the input D"),
    "bubble": (cmd_bubble, "largest bubble of --vertex, or test --set"),
    "separation": (cmd_separation, "maximum system and separation for --vertex"),
    "verify-cert": (cmd_verify_cert, "re-verify a bundle against the input digraph"),
    "gen": (cmd_gen, "generate a digraph"),
    "export": (cmd_export, "write canonical JSON and/or DOT"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH")
    common.add_argument("--gen", metavar="SPEC",
                        help="figure6:k=K | random:n=N,p=P,seed=S | random:n=N,m=M,seed=S | "
                             "layered:widths=3-4-3,seed=S | file:PATH | "
                             f"{STREAM_KIND} (with --prefix). " + FIGURE6_HELP)
    common.add_argument("--root", metavar="NAME", help="override the root named in the input file")
    common.add_argument("--order", metavar="V1,V2,...")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--dot", metavar="PATH")
    common.add_argument("--normalize-root", action="store_true", help="drop edges into the root with a warning")
    common.add_argument("--strict-quasi", action="store_true", help="check every subset of every in-set")
    common.add_argument("--oracle-bound", type=int, metavar="N", help="cross-check with brute force (|V| <= N)")
    common.add_argument("--exclude-omega-edges", action="store_true",
                        help="figure6: omit the edges from vw to the v{j}_b vertices")
    common.add_argument("--sub", metavar="PATH", help="check-large: the candidate subdigraph L")
    common.add_argument("--vertex", metavar="V")
    common.add_argument("--set", metavar="A,B,...", help="bubble: vertex set to test")
    common.add_argument("--cert", metavar="PATH", help="verify-cert: bundle to check")
    common.add_argument("--prefix", type=int, metavar="K",
                        help="construct/gen: use the root and the first K streamed vertices "
                             f"(--gen {STREAM_KIND} streams the countable figure6 family); "
                             f"bundles are tagged {PREFIX_RELATIVE}")
    parser = argparse.ArgumentParser(prog="flames", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return COMMANDS[args.command][0](args)
    except (UsageError, DigraphError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except LemmaViolation as exc:
        print(f"property violated: {exc.lemma}: {exc.detail}", file=sys.stderr)
        return VIOLATION


__all__ = ["main", "build_parser", "parse_gen", "INFINITE_CLAIMS", "PREFIX_RELATIVE"]
