"""End-to-end acceptance checks. Each test prints one ACCEPTANCE line."""

import itertools
import os
import random
import subprocess
import sys
import time

import pytest

from flames import oracle
from flames.bubbles import (
    FAILS,
    HOLDS,
    Bubble,
    bubble_from_separation,
    coloop_edge_check,
    entrance,
    is_bubble,
    largeness_check,
    max_bubble,
    minus_root_edge,
    superlarge_check,
)
from flames.certs import build_bundle, bundle_problems
from flames.cli import FIGURE6_HELP, INFINITE_CLAIMS, main
from flames.digraph import Digraph
from flames.flame import (
    PREFIX_RELATIVE,
    construct_large_flame,
    is_flame,
    lovasz_trim,
    maximal_quasi_flame,
    prefix_construct,
    quasi_flame_transfer_check,
)
from flames.generators import (
    figure6,
    figure6_stream,
    nonisomorphic,
    random_corpus,
    small_corpus,
)
from flames.menger import (
    Kind,
    MengerCertificate,
    PathSystem,
    Separation,
    augmenting_walk,
    check_disjoint,
    covering_system,
    is_strongly_maximal,
    local_connectivity,
    pym_link,
    verify_certificate,
)
from harvest import harvest

CORPUS_SEED = 20240501


@pytest.fixture(scope="module")
def corpus500():
    return list(random_corpus(500, CORPUS_SEED, (8, 50), (0.05, 0.4)))


@pytest.fixture
def report(capsys):
    def emit(n, failures, detail):
        line = f"ACCEPTANCE {n}: {'PASS' if not failures else 'FAIL'} {detail}"
        if failures:
            line += f" first failure: {failures[0]}"
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line
    return emit


def test_1_lovasz_optimality(corpus500, report):
    t = time.perf_counter()
    failures = []
    for i, D in enumerate(corpus500):
        E = lovasz_trim(D)
        total = 0
        for v in D.targets:
            k = local_connectivity(D, v)
            total += k
            if not local_connectivity(E, v) == k == E.in_degree(v):
                failures.append(f"instance {i}, vertex {v}")
        if len(E.edges) != total:
            failures.append(f"instance {i}: {len(E.edges)} edges, sum of kappa {total}")
    elapsed = time.perf_counter() - t
    if elapsed > 60:
        failures.append(f"took {elapsed:.1f}s > 60s")
    report(1, failures, f"500 instances, {elapsed:.1f}s")


def test_2_main_theorem(corpus500, report):
    t = time.perf_counter()
    failures = []
    instances = [(f"random {i}", D) for i, D in enumerate(corpus500)]
    instances += [(f"figure6 k={k}", figure6(k)) for k in (1, 2, 3)]
    audited = 0
    for name, D in instances:
        try:
            con = construct_large_flame(D)
        except AssertionError as exc:
            failures.append(f"{name}: {exc}")
            continue
        audited += sum(s.audited for s in con.steps)
        if not is_flame(con.E).ok:
            failures.append(f"{name}: output is not a flame")
        if not largeness_check(con.E, D).large:
            failures.append(f"{name}: output is not large")
        if bundle_problems(D, build_bundle(con)):
            failures.append(f"{name}: certificate bundle does not verify")
    elapsed = time.perf_counter() - t
    if elapsed > 300:
        failures.append(f"took {elapsed:.1f}s > 300s")
    report(2, failures, f"{len(instances)} instances, {audited} audited steps, {elapsed:.1f}s")


def _oracle_mismatches(D):
    out = []
    for v in D.targets:
        systems = oracle.enum_systems(D, v)
        kappa = local_connectivity(D, v)
        if kappa != max(len(s) for s in systems):
            out.append(f"kappa at {v}")
        for s in systems:
            if is_strongly_maximal(D, v, PathSystem(s)) != oracle.is_separable(D, v, s):
                out.append(f"separable system {sorted(s)} at {v}")
        realizable = {frozenset((p[-2], p[-1]) for p in s) for s in systems}
        ins = sorted(D.in_edges(v))
        for k in range(len(ins) + 1):
            for I in itertools.combinations(ins, k):
                if covering_system(D, v, I).ok != (frozenset(I) in realizable):
                    out.append(f"realizable set {I} at {v}")
        if max_bubble(D, v).vertices != oracle.brute_max_bubble(D, v):
            out.append(f"largest bubble at {v}")
    if is_flame(D).ok != oracle.brute_flame(D):
        out.append("flame")
    subs = [D.without_edges([e]) for e in sorted(D.edges)] + [lovasz_trim(D)]
    rng = random.Random(len(D.edges))
    subs.append(D.spanning(e for e in sorted(D.edges) if rng.random() < 0.6))
    for L in subs:
        if largeness_check(L, D).large != oracle.brute_largeness(L, D):
            out.append(f"largeness of {sorted(D.edges - L.edges)} deleted")
    return out


def test_3_oracle_equivalence(report):
    failures = []
    count = 0
    for D in small_corpus(max_exhaustive=4, random_sizes=(5, 6, 7), per_size=500, seed=0):
        count += 1
        failures += [f"{sorted(D.edges)}: {m}" for m in _oracle_mismatches(D)]
    if count < 2000:
        failures.append(f"only {count} instances")
    report(3, failures, f"{count} instances with at most 7 vertices")


def _em_certificates(D, v, limit=25):
    """Certificates for Erdős–Menger separations found by the oracle."""
    r = D.root
    for s in oracle.brute_separable_systems(D, v):
        for choice in itertools.islice(oracle.separating_choices(D, v, s), limit):
            paths = sorted(s)
            assignment = dict(zip(paths, choice))
            verts = frozenset(x for x in choice if x != (r, v))
            yield MengerCertificate(v, PathSystem(paths), Separation(v, verts, (r, v) in choice), assignment)


def test_4_bubble_calculus(report):
    failures = []
    count = pairs = seps = 0
    for D in small_corpus(max_exhaustive=4, random_sizes=(5, 6), per_size=500, seed=1):
        count += 1
        for v in D.targets:
            bubbles = oracle.brute_bubbles(D, v)
            for A, B in itertools.combinations(bubbles, 2):
                pairs += 1
                if not isinstance(is_bubble(D, v, A | B), Bubble):
                    failures.append(f"(a) {sorted(A)} + {sorted(B)} in {sorted(D.edges)}")
            bub = max_bubble(D, v)
            if bub.vertices != frozenset().union(*bubbles):
                failures.append(f"(b) {v} in {sorted(D.edges)}")
            try:
                verify_certificate(D, bub.certificate)
                if entrance(minus_root_edge(D, v), bub.vertices) != bub.certificate.separation.vertices:
                    failures.append(f"(c) entrance differs from the separation at {v}")
            except ValueError as exc:
                failures.append(f"(c) {exc}")
            for cert in _em_certificates(D, v):
                seps += 1
                try:
                    got = bubble_from_separation(D, v, cert).vertices
                except AssertionError as exc:
                    failures.append(f"(d) {exc}")
                    continue
                if got != oracle.brute_bubble_of_separation(D, v, cert.separation.vertices):
                    failures.append(f"(d) bubble of {sorted(cert.separation.vertices)} at {v}")
    report(4, failures, f"{count} instances, {pairs} bubble pairs, {seps} separations")


def _separates(G, X, Y, S):
    starts = set(X) - S
    seen = set(starts)
    todo = list(starts)
    out = {}
    for a, b in G.edges:
        out.setdefault(a, []).append(b)
    while todo:
        a = todo.pop()
        for b in out.get(a, ()):
            if b not in S and b not in seen:
                seen.add(b)
                todo.append(b)
    return not seen & (set(Y) - S)


def _iterate_walks(G, X, Y):
    """Augment from the empty system until blocked; returns (size, problems)."""
    current = PathSystem([], Kind.DISJOINT)
    problems = []
    while True:
        out = augmenting_walk(G, X, Y, current)
        if (out.augmented is None) == (out.separation is None):
            problems.append("walk returned both or neither outcome")
            return len(current), problems
        if out.augmented is None:
            S = frozenset(out.separation)
            if len(S) != len(current) or not _separates(G, X, Y, S):
                problems.append("blocking set is not a separation of the right size")
            for p, x in out.assignment.items():
                if x not in p:
                    problems.append("separation vertex off its path")
            return len(current), problems
        check_disjoint(G, X, Y, out.augmented)
        if len(out.augmented) != len(current) + 1:
            problems.append("augmentation did not add one path")
        current = out.augmented


def test_5_dichotomy_and_linkage(report):
    failures = []
    pairs = walks = 0
    rng = random.Random(5)
    for i, D in enumerate(random_corpus(400, 55, (6, 24), (0.08, 0.35))):
        for _ in range(4):
            G, X, Y, P, Q = harvest(D, rng)
            if not len(P) and not len(Q):
                continue
            pairs += 1
            try:
                R = pym_link(G, X, Y, P, Q)
                check_disjoint(G, X, Y, R)
            except ValueError as exc:
                failures.append(f"instance {i}: {exc}")
                continue
            if not (R.first_vertices >= P.first_vertices and R.last_vertices >= Q.last_vertices):
                failures.append(f"instance {i}: endpoint inclusions fail")
            if not R.edges <= P.edges | Q.edges:
                failures.append(f"instance {i}: R uses an edge outside P and Q")
        G, X, Y, _, _ = harvest(D, rng)
        failures += [f"instance {i}: {p}" for p in _iterate_walks(G, X, Y)[1]]
        walks += 1
        for v in list(D.targets)[:3]:
            r = D.root
            plain = Digraph(D.vertices - {r, v}, [e for e in D.edges if r not in e and v not in e])
            X = frozenset(D.out_neighbors(r)) - {v}
            Y = frozenset(D.in_neighbors(v)) - {r}
            size, problems = _iterate_walks(plain, X, Y)
            failures += [f"instance {i}, {v}: {p}" for p in problems]
            if size + D.has_edge(r, v) != local_connectivity(D, v):
                failures.append(f"instance {i}, {v}: walks stop at {size}, kappa {local_connectivity(D, v)}")
            walks += 1
    if pairs < 1000:
        failures.append(f"only {pairs} linkage pairs")
    report(5, failures, f"{pairs} linkage pairs, {walks} walk iterations to exhaustion")


def test_6_transfer_lemmas(report):
    failures = []
    tally = {"transfer": {}, "coloop": {}, "superlarge": {}}
    rng = random.Random(6)

    def note(kind, res, where):
        tally[kind][res.status] = tally[kind].get(res.status, 0) + 1
        if res.status == FAILS:
            failures.append(f"{kind} {where}: {res.detail}")

    instances = list(small_corpus(max_exhaustive=4, random_sizes=(5, 6, 7), per_size=150, seed=6))
    instances += list(random_corpus(40, 66, (8, 12), (0.1, 0.35)))
    for i, D in enumerate(instances):
        F = maximal_quasi_flame(D)
        G = D.spanning(e for e in sorted(D.edges) if rng.random() < 0.7)
        H = G.spanning(e for e in sorted(G.edges) if rng.random() < 0.7)
        candidates = [lovasz_trim(F), construct_large_flame(F).E,
                      F.spanning(e for e in sorted(F.edges) if rng.random() < 0.8)]
        for L in candidates:
            note("transfer", quasi_flame_transfer_check(F, L), i)
            note("superlarge", superlarge_check(D, F, L), i)
        note("transfer", quasi_flame_transfer_check(D, lovasz_trim(D)), i)
        note("superlarge", superlarge_check(D, G, H), i)
        for GG, HH in ((G, H), (G, G), (F, F), (F, candidates[0])):
            for v in D.targets:
                for u, w in sorted(D.edges - GG.edges):
                    note("coloop", coloop_edge_check(D, GG, HH, v, u, w), (i, v, u, w))
    for kind, counts in tally.items():
        if not counts.get(HOLDS):
            failures.append(f"{kind}: no instance met the hypotheses")
    summary = "; ".join(f"{k} {dict(sorted(c.items()))}" for k, c in tally.items())
    report(6, failures, f"{len(instances)} instances; {summary}")


def test_7_small_existence(report):
    failures = []
    count = 0
    for n in range(1, 6):
        for D in nonisomorphic(n, max_edges=10):
            count += 1
            if oracle.brute_spanning_flame_exists(D) is None:
                failures.append(f"no spanning large flame for {sorted(D.edges)}")
            E = construct_large_flame(D).E
            if not (oracle.brute_flame(E) and oracle.brute_largeness(E, D)):
                failures.append(f"construction output rejected by the oracle for {sorted(D.edges)}")
    report(7, failures, f"{count} instances (every rooted digraph with at most 5 vertices and "
                        "10 edges, up to isomorphism)")


def test_8_infinite_claims_flagged(report, capsys):
    failures = []
    assert main(["analyze", "--gen", "figure6:k=2"]) == 0
    out = capsys.readouterr().out
    if "infinite-object claims (not verified at finite scale)" not in out:
        failures.append("analyze does not flag infinite claims")
    for claim in INFINITE_CLAIMS:
        if claim not in out:
            failures.append(f"analyze omits: {claim[:40]}")
    if not any("N^out(r)" in c for c in INFINITE_CLAIMS) or not any("countable" in c for c in INFINITE_CLAIMS):
        failures.append("a required infinite claim is missing")
    assert main(["gen", "--help"]) == 0
    gen_help = " ".join(capsys.readouterr().out.split())
    if "NOT verified" not in FIGURE6_HELP or " ".join(FIGURE6_HELP.split()) not in gen_help:
        failures.append("figure6 help does not mark infinite claims")
    rep = prefix_construct(lambda: figure6_stream(), 10)
    bundle = build_bundle(rep.construction, tag=rep.tag)
    if rep.tag != PREFIX_RELATIVE or bundle.get("tag") != PREFIX_RELATIVE:
        failures.append("prefix certificates are not tagged")
    report(8, failures, "analyze and help flag infinite claims; prefix bundles tagged prefix-relative")


COMMANDS_9 = [
    ["analyze", "--gen", "figure6:k=3"],
    ["analyze", "--gen", "random:n=7,p=0.4,seed=3", "--oracle-bound", "7"],
    ["lovasz", "--gen", "random:n=25,p=0.2,seed=9"],
    ["construct", "--gen", "random:n=25,p=0.2,seed=9"],
    ["construct", "--gen", "layered:widths=3-4-3,seed=2", "--order", None],
    ["construct", "--gen", "figure6-stream", "--prefix", "14"],
    ["check-flame", "--gen", "figure6:k=2", "--strict-quasi"],
    ["bubble", "--gen", "figure6:k=2", "--vertex", "vf_01"],
    ["separation", "--gen", "random:n=12,p=0.3,seed=4", "--vertex", "v05"],
    ["gen", "--gen", "random:n=12,m=30,seed=8"],
    ["gen", "--gen", "figure6:k=2", "--exclude-omega-edges"],
    ["export", "--gen", "layered:widths=2-3,seed=1"],
]


def _run(args, workdir, hashseed):
    out, dot = workdir / "out.json", workdir / "out.dot"
    for f in (out, dot):
        if f.exists():
            f.unlink()
    env = {**os.environ, "PYTHONHASHSEED": str(hashseed)}
    proc = subprocess.run([sys.executable, "-m", "flames", *args, "--out", str(out), "--dot", str(dot)],
                          capture_output=True, env=env, cwd=workdir)
    return (proc.returncode, proc.stdout, proc.stderr,
            out.read_bytes() if out.exists() else None, dot.read_bytes() if dot.exists() else None)


def test_9_determinism(tmp_path, report):
    failures = []
    layered_order = ",".join(reversed(["l0_0", "l0_1", "l0_2", "l1_0", "l1_1", "l1_2", "l1_3",
                                       "l2_0", "l2_1", "l2_2"]))
    commands = [[layered_order if a is None else a for a in cmd] for cmd in COMMANDS_9]
    src = tmp_path / "g.json"
    main(["gen", "--gen", "random:n=9,p=0.35,seed=12", "--out", str(src)])
    bundle = tmp_path / "bundle.json"
    main(["construct", "--input", str(src), "--out", str(bundle)])
    commands.append(["verify-cert", "--input", str(src), "--cert", str(bundle)])
    commands.append(["check-large", "--input", str(src), "--sub", str(src)])
    for cmd in commands:
        a = _run(cmd, tmp_path, 1)
        b = _run(cmd, tmp_path, 2)
        if a != b:
            failures.append(" ".join(cmd))
        elif a[0] not in (0, 1):
            failures.append(f"{' '.join(cmd)} exited {a[0]}: {a[2].decode()[:200]}")
    report(9, failures, f"{len(commands)} commands run twice under different hash seeds")
