"""Flames, quasi-flames and the constructions of large flames.

At finite scale a quasi-flame is the same thing as a flame: a subset I of a
coverable in-set is covered by the restriction of the covering system to the
paths ending in I. ``is_quasi_flame(strict=True)`` re-checks every subset
anyway so the collapse can be cross-checked on small inputs.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from ._flow import DisjointPaths
from .bubbles import FAILS, HOLDS, NOT_APPLICABLE, LemmaViolation, largeness_check, max_bubble
from .digraph import Digraph, Edge, RootedDigraph
from .menger import (
    Kind,
    MengerCertificate,
    PathSystem,
    Separation,
    _rv_network,
    certify_system,
    check_disjoint,
    covering_system,
    fan_to,
    max_system,
    pym_link,
    verify_certificate,
)

FLAME_OK = "flame-ok"
VIOLATED = "violated"
MAX_STRICT_INDEGREE = 14


@dataclass(frozen=True)
class VertexRecord:
    v: str
    in_degree: int
    kappa: int
    witness: PathSystem | None
    status: str


@dataclass(frozen=True)
class FlameReport:
    records: tuple[VertexRecord, ...]

    @property
    def ok(self) -> bool:
        return all(rec.status == FLAME_OK for rec in self.records)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def violations(self) -> list[str]:
        return [rec.v for rec in self.records if rec.status != FLAME_OK]

    def record(self, v) -> VertexRecord:
        for rec in self.records:
            if rec.v == v:
                return rec
        raise KeyError(v)

    def to_dict(self) -> dict:
        return {"flame": self.ok, "vertices": [
            {"v": rec.v, "in_degree": rec.in_degree, "kappa": rec.kappa, "status": rec.status,
             "witness": rec.witness.to_list() if rec.witness is not None else None}
            for rec in self.records]}


def is_flame(F: RootedDigraph) -> FlameReport:
    records = []
    for v in F.targets:
        cov = covering_system(F, v, F.in_edges(v))
        # with I = in(v) the restricted digraph is F itself
        kappa = len(cov.certificate.system)
        status = FLAME_OK if cov.ok else VIOLATED
        records.append(VertexRecord(v, F.in_degree(v), kappa, cov.system, status))
    return FlameReport(tuple(records))


def is_quasi_flame(F: RootedDigraph, strict: bool = False) -> bool:
    """Every subset of every in-set is coverable.

    Without ``strict`` this is ``is_flame``; with it every subset is tried.
    """
    if not strict:
        return is_flame(F).ok
    for v in F.targets:
        ins = sorted(F.in_edges(v))
        if len(ins) > MAX_STRICT_INDEGREE:
            raise ValueError(f"in-degree of {v!r} too large for subset enumeration")
        for k in range(len(ins) + 1):
            for I in itertools.combinations(ins, k):
                if not covering_system(F, v, I).ok:
                    return False
    return True


def _check_order(D: RootedDigraph, order: Sequence | None) -> tuple:
    if order is None:
        return D.targets
    order = tuple(order)
    if sorted(order) != list(D.targets):
        raise ValueError("order must enumerate every non-root vertex exactly once")
    return order


def lovasz_trim(D: RootedDigraph, order: Sequence | None = None) -> RootedDigraph:
    """Delete, vertex by vertex, the in-edges unused by a maximum system."""
    E = D
    for u in _check_order(D, order):
        used = max_system(E, u).system.last_edges
        E = E.without_edges(E.in_edges(u) - used)
    return E


class _Grower:
    """A flame F inside D that can be extended edge by edge.

    Each target keeps a flow network for F together with a maximum flow, so
    testing whether F + ab is still a flame at b costs one augmenting search.
    Other targets are unaffected by the addition because their flows already
    saturate their in-degree.
    """

    def __init__(self, D: RootedDigraph, F: RootedDigraph):
        self.D = D
        self.edges = set(F.edges)
        self.nets: dict = {}

    def current(self) -> RootedDigraph:
        return RootedDigraph(self.D.root, self.D.vertices, frozenset(self.edges))

    def _net(self, b) -> DisjointPaths:
        net = self.nets.get(b)
        if net is None:
            net = _rv_network(self.current(), b)
            net.maximize()
            self.nets[b] = net
        return net

    def try_add(self, a, b) -> bool:
        r = self.D.root
        if a != r:
            net = self._net(b)
            net.add_sink(a)
            if not net.augment():
                net.remove_sink(a)
                return False
        self.edges.add((a, b))
        for c, net in self.nets.items():
            if c == b:
                continue
            if a == r:
                net.add_source(b)
            elif c != a:
                net.add_edge(a, b)
        return True


def _root_out(D: RootedDigraph) -> RootedDigraph:
    return D.spanning(D.out_edges(D.root))


def maximal_quasi_flame(D: RootedDigraph) -> RootedDigraph:
    """A quasi-flame F in D to which no further edge of D can be added.

    Greedy: start from the out-edges of r (always a flame) and repeat
    lexicographic passes over the remaining edges until a pass adds nothing.
    """
    grower = _Grower(D, _root_out(D))
    changed = True
    while changed:
        changed = False
        for a, b in sorted(D.edges - grower.edges):
            if grower.try_add(a, b):
                changed = True
    return grower.current()


def flame_grow(D: RootedDigraph, seed: RootedDigraph) -> RootedDigraph:
    """Extend the flame ``seed`` one edge at a time until it is D-large."""
    if not seed.is_subdigraph_of(D):
        raise ValueError("seed is not a spanning subdigraph of D")
    if not is_flame(seed).ok:
        raise ValueError("seed is not a flame")
    grower = _Grower(D, seed)
    while True:
        E = grower.current()
        verdict = largeness_check(E, D, certificates=False)
        if verdict.large:
            return E
        for a, b in sorted(D.edges - grower.edges):
            if grower.try_add(a, b):
                break
        else:
            raise LemmaViolation("flame extension", f"no edge keeps the flame property, yet {verdict.violation} violates largeness")


# -- the main recursion ---------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    n: int
    vertex: str
    deleted: frozenset
    audited: bool
    separation: frozenset
    J: frozenset
    system: PathSystem


@dataclass(frozen=True)
class Construction:
    D: RootedDigraph
    order: tuple
    F: RootedDigraph
    E: RootedDigraph
    steps: tuple[Step, ...]
    systems: dict = field(compare=False)
    certificates: dict = field(compare=False)


def _aux_digraph(G: RootedDigraph, v) -> Digraph:
    """G without r, with v replaced by one sink node per in-edge."""
    r = G.root
    verts = {("v", x) for x in G.vertices if x not in (r, v)}
    edges = []
    for a, b in G.edges:
        if a in (r, v):
            continue
        if b == v:
            verts.add(("z", a))
            edges.append((("v", a), ("z", a)))
        else:
            edges.append((("v", a), ("v", b)))
    return Digraph(verts, edges)


def _lift(seg: Sequence) -> tuple:
    return (*(("v", x) for x in seg[:-1]), ("z", seg[-2]))


def _recombine(G: RootedDigraph, v, cert: MengerCertificate, Q: PathSystem) -> PathSystem:
    """Reroute the post-separation part of ``cert.system`` so that its last edges
    contain those of Q, keeping the pre-separation initial segments."""
    r = G.root
    S = cert.separation.vertices
    aux = _aux_digraph(G, v)
    X = frozenset(("v", s) for s in S)
    Y = frozenset(x for x in aux.vertices if x[0] == "z")
    by_sep = {}
    P1 = []
    for p in cert.system:
        if p == (r, v):
            continue
        s = cert.assignment[p]
        by_sep[s] = p
        P1.append(_lift(p[p.index(s):]))
    Q1 = []
    for q in Q:
        hits = [i for i, x in enumerate(q) if x in S]
        if not hits:
            raise LemmaViolation("separation", f"path {q!r} avoids the separation {sorted(S)}")
        Q1.append(_lift(q[hits[-1]:]))
    P1 = PathSystem(P1, Kind.DISJOINT)
    Q1 = PathSystem(Q1, Kind.DISJOINT)
    check_disjoint(aux, X, Y, P1)
    check_disjoint(aux, X, Y, Q1)
    R1 = pym_link(aux, X, Y, P1, Q1)
    paths = []
    for seg in R1:
        s = seg[0][1]
        head = by_sep[s]
        paths.append(head[:head.index(s)] + tuple(x[1] for x in seg[:-1]) + (v,))
    if G.has_edge(r, v):
        paths.append((r, v))
    return PathSystem(paths)


def _one_per_path(G: RootedDigraph, v, system: PathSystem, S: frozenset) -> MengerCertificate:
    r = G.root
    assignment = {}
    for p in system:
        if p == (r, v):
            assignment[p] = (r, v)
            continue
        hits = [x for x in p[1:-1] if x in S]
        if len(hits) != 1:
            raise LemmaViolation("property 1", f"path {p!r} meets the separation {len(hits)} times")
        assignment[p] = hits[0]
    return MengerCertificate(v, system, Separation(v, S, G.has_edge(r, v)), assignment)


def construct_large_flame(D: RootedDigraph, order: Sequence | None = None) -> Construction:
    """A D-large flame E built from one separable system per vertex.

    D is first replaced by a maximal quasi-flame F. Every fact that the argument
    guarantees is re-verified along the way and a failure raises LemmaViolation.
    """
    order = _check_order(D, order)
    r = D.root
    F = maximal_quasi_flame(D)
    if not is_flame(F).ok:
        raise LemmaViolation("large quasi flame", "greedy result is not a quasi-flame")
    systems: dict = {}
    steps = []
    prev_deleted: frozenset = frozenset()
    for n, v in enumerate(order):
        deleted = frozenset(e for m in range(n) for e in F.in_edges(order[m]) - systems[order[m]].last_edges)
        Dn = F.without_edges(deleted)
        audited = n == 0 or deleted != prev_deleted
        if audited:
            if not largeness_check(Dn, F, certificates=False).large:
                raise LemmaViolation("key lemma", f"D_{n} is not large")
            if not is_flame(Dn).ok:
                raise LemmaViolation("key lemma1", f"D_{n} is not a quasi-flame")
        prev_deleted = deleted

        bub = max_bubble(Dn, v)
        cert = bub.certificate
        S = cert.separation.vertices
        try:
            verify_certificate(F, cert, host=Dn)
        except ValueError as exc:
            raise LemmaViolation("char of largeness", str(exc)) from exc

        earlier = frozenset(e for m in range(n) for e in systems[order[m]].in_edges_at(v))
        J = earlier - {(r, v)}
        if len(J) > n:
            raise LemmaViolation("|J| <= n", f"|J| = {len(J)} at step {n}")
        cov = covering_system(Dn, v, J)
        if not cov.ok:
            raise LemmaViolation("key lemma1", f"J = {sorted(J)} is not coverable at {v!r}")

        Pn = _recombine(Dn, v, cert, cov.system)
        cert_n = _one_per_path(Dn, v, Pn, S)
        try:
            verify_certificate(F, cert_n, host=Dn)
        except ValueError as exc:
            raise LemmaViolation("property 1", str(exc)) from exc
        if not Pn.last_edges >= earlier:
            raise LemmaViolation("property 2", f"last edges at {v!r} miss {sorted(earlier - Pn.last_edges)}")
        for m in range(n):
            w = order[m]
            if not Pn.in_edges_at(w) <= systems[w].last_edges:
                raise LemmaViolation("property 3", f"system of {v!r} enters {w!r} through a forbidden edge")
        systems[v] = Pn
        steps.append(Step(n, v, deleted, audited, S, J, Pn))

    E = F.spanning(frozenset(e for p in systems.values() for e in p.edges))
    if not is_flame(E).ok:
        raise LemmaViolation("main theorem", "E is not a flame")
    if not largeness_check(E, D, certificates=False).large:
        raise LemmaViolation("main theorem", "E is not D-large")
    certificates = {}
    for v in order:
        if E.in_edges(v) != systems[v].last_edges:
            raise LemmaViolation("main theorem", f"in-edges of {v!r} differ from the last edges of its system")
        certificates[v] = certify_system(D, v, systems[v])
    return Construction(D, tuple(order), F, E, tuple(steps), systems, certificates)


# -- prefixes of countable digraphs ---------------------------------------------------

PREFIX_RELATIVE = "prefix-relative"


class StreamError(ValueError):
    pass


@dataclass(frozen=True)
class PrefixReport:
    k: int
    tag: str
    prefix: RootedDigraph
    construction: Construction
    survived: tuple = ()
    changed: tuple = ()


def read_prefix(stream: Iterable[tuple[str, Sequence[Edge]]], k: int) -> tuple[RootedDigraph, tuple]:
    """Root plus the first k vertices of a vertex stream.

    The stream yields ``(vertex, edges)``; the first item is the root and each
    edge joins the new vertex to itself or to an earlier one.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    it: Iterator = iter(stream)
    try:
        root, root_edges = next(it)
    except StopIteration as exc:
        raise StreamError("empty stream") from exc
    seen = [root]
    edges: list[Edge] = []

    def take(v, es):
        for a, b in es:
            if v not in (a, b):
                raise StreamError(f"edge {a}->{b} does not touch {v!r}")
            if a not in seen or b not in seen:
                raise StreamError(f"edge {a}->{b} touches an unseen vertex")
            edges.append((a, b))

    take(root, root_edges)
    for v, es in itertools.islice(it, k):
        if v in seen:
            raise StreamError(f"vertex {v!r} yielded twice")
        seen.append(v)
        take(v, es)
    if len(seen) < k + 1:
        raise StreamError(f"stream ended after {len(seen) - 1} vertices")
    return RootedDigraph(root, frozenset(seen), frozenset(edges)), tuple(seen[1:])


def prefix_construct(stream_factory, k: int) -> PrefixReport:
    """Run the construction on the prefix spanned by the root and k streamed vertices.

    ``stream_factory`` is called to get a fresh stream (it is consumed twice when
    k > 1, once for the comparison prefix of size k - 1). Every certificate is
    valid only for the prefix digraph.
    """
    D, order = read_prefix(stream_factory(), k)
    con = construct_large_flame(D, order)
    survived, changed = (), ()
    if k > 1:
        D0, order0 = read_prefix(stream_factory(), k - 1)
        before = construct_large_flame(D0, order0)
        keep, diff = [], []
        for v in order0:
            same = before.certificates[v].system == con.certificates[v].system
            (keep if same else diff).append(v)
        survived, changed = tuple(keep), tuple(diff)
    return PrefixReport(k, PREFIX_RELATIVE, D, con, survived, changed)


# -- transfer of the quasi-flame property --------------------------------------------

@dataclass(frozen=True)
class TransferVerdict:
    status: str
    detail: str = ""
    sets_checked: int = 0


def _sample_sets(D: RootedDigraph, samples: int, seed: int) -> list[frozenset]:
    pool = list(D.targets)
    if len(pool) <= 8:
        return [frozenset(c) for k in range(len(pool) + 1) for c in itertools.combinations(pool, k)]
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        out.append(frozenset(x for x in pool if rng.random() < 0.5))
    return out


def quasi_flame_transfer_check(D: RootedDigraph, L: RootedDigraph, sets: Iterable | None = None,
                               samples: int = 64, seed: int = 0) -> TransferVerdict:
    """If D is a quasi-flame and L is D-large, L must be a quasi-flame, and every
    vertex set reached exactly by an r-fan of D must be reached by one in L."""
    if not L.is_subdigraph_of(D):
        raise ValueError("L is not a spanning subdigraph of D")
    if not is_quasi_flame(D):
        return TransferVerdict(NOT_APPLICABLE, "D is not a quasi-flame")
    if not largeness_check(L, D, certificates=False).large:
        return TransferVerdict(NOT_APPLICABLE, "L is not D-large")
    if not is_quasi_flame(L):
        return TransferVerdict(FAILS, "L is not a quasi-flame")
    checked = 0
    for X in (_sample_sets(D, samples, seed) if sets is None else sets):
        X = frozenset(X)
        if fan_to(D, X) is None:
            continue
        checked += 1
        if fan_to(L, X) is None:
            return TransferVerdict(FAILS, f"no r-fan of L ends exactly on {sorted(X)}", checked)
    return TransferVerdict(HOLDS, "", checked)


__all__ = [
    "Construction", "FlameReport", "PrefixReport", "Step", "StreamError", "TransferVerdict",
    "VertexRecord", "construct_large_flame", "flame_grow", "is_flame", "is_quasi_flame",
    "lovasz_trim", "maximal_quasi_flame", "prefix_construct", "quasi_flame_transfer_check",
    "read_prefix",
]
