"""Entrances, v-bubbles, the largest bubble and the bubble-based largeness test.

A set B (r not in B, v in B) is a v-bubble of D when its entrance vertices can
be linked to v inside B by a v-infan, one path per entrance vertex. The
largest v-bubble is computed from the residual cut nearest to r in D - rv
rather than as a union over all bubbles.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from ._flow import DisjointPaths
from .digraph import Digraph, Edge, RootedDigraph, reachable
from .menger import (
    Kind,
    MengerCertificate,
    PathSystem,
    augmenting_walk,
    check_infan,
    covering_system,
    max_system,
    verify_certificate,
)


class LemmaViolation(AssertionError):
    """A fact guaranteed by one of the underlying lemmas failed to verify.

    This always indicates an implementation bug.
    """

    def __init__(self, lemma: str, detail: str):
        super().__init__(f"[{lemma}] {detail}")
        self.lemma = lemma
        self.detail = detail


def entrance(D: RootedDigraph, X: Iterable) -> frozenset:
    X = frozenset(X)
    if D.root in X:
        raise ValueError("the root cannot belong to X")
    return frozenset(x for x in X if any(u not in X for u in D.in_neighbors(x)))


def interior(D: RootedDigraph, X: Iterable) -> frozenset:
    X = frozenset(X)
    return X - entrance(D, X)


def minus_root_edge(D: RootedDigraph, v) -> RootedDigraph:
    return D.without_edges([(D.root, v)]) if D.has_edge(D.root, v) else D


@dataclass(frozen=True)
class Bubble:
    target: str
    vertices: frozenset
    entrance: frozenset
    witness: PathSystem
    certificate: MengerCertificate | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {"target": self.target, "vertices": sorted(self.vertices),
                "entrance": sorted(self.entrance), "witness": self.witness.to_list()}


@dataclass(frozen=True)
class BubbleRefutation:
    """The entrance vertices ``unlinkable`` are separated from the target inside B
    by ``separator``, which is smaller than them."""

    target: str
    vertices: frozenset
    unlinkable: frozenset
    separator: frozenset


def check_bubble(D: RootedDigraph, bubble: Bubble) -> None:
    """Raise ValueError unless ``bubble`` carries a valid witness in D."""
    B, v = bubble.vertices, bubble.target
    if D.root in B or v not in B:
        raise ValueError("bubble must contain its target and avoid the root")
    if bubble.entrance != entrance(D, B):
        raise ValueError("recorded entrance is wrong")
    check_infan(_inside(D, B), v, bubble.witness)
    starts = [p[0] for p in bubble.witness]
    if sorted(starts) != sorted(bubble.entrance):
        raise ValueError("witness paths do not start exactly at the entrance vertices")


def _inside(D: RootedDigraph, B: frozenset) -> Digraph:
    return Digraph(B, ((a, b) for a, b in D.edges if a in B and b in B))


def is_bubble(D: RootedDigraph, v, B: Iterable) -> Bubble | BubbleRefutation:
    """Build the witnessing v-infan for B by a flow inside B, or refute."""
    B = frozenset(B)
    if v not in B or D.root in B:
        raise ValueError("need v in B and r not in B")
    ent = entrance(D, B)
    sources = ent - {v}
    inner = B - {v}
    edges = [(a, b) for a, b in D.edges
             if a in inner and b in inner and b not in sources]
    sinks = [u for u in D.in_neighbors(v) if u in inner]
    net = DisjointPaths(inner, edges, sources, sinks)
    if net.maximize() < len(sources):
        return BubbleRefutation(v, B, sources, frozenset(net.cut()))
    paths = [(*p, v) for p in net.paths()]
    if v in ent:
        paths.append((v,))
    return Bubble(v, B, ent, PathSystem(paths, Kind.INFAN))


def _prefix_to(path, hits: frozenset):
    for i, x in enumerate(path):
        if x in hits:
            return path[:i + 1], x
    return None, None


def bubble_union(D: RootedDigraph, bubbles: Sequence[Bubble]) -> Bubble:
    """Join a finite chain of bubbles into a bubble for the first target.

    Chain condition: every later bubble targets the first target or a vertex in
    the interior of the union of its predecessors. Each new entrance vertex gets
    the initial segment of its witness path up to the union so far, continued by
    the path already attached to the vertex where it arrives.
    """
    if not bubbles:
        raise ValueError("empty chain")
    for b in bubbles:
        check_bubble(D, b)
    v0 = bubbles[0].target
    union = frozenset(bubbles[0].vertices)
    attached = {p[0]: p for p in bubbles[0].witness}
    for b in bubbles[1:]:
        if b.target != v0 and b.target not in interior(D, union):
            raise ValueError(f"chain condition fails at bubble with target {b.target!r}")
        new_union = union | b.vertices
        new_ent = entrance(D, new_union)
        old_ent = entrance(D, union)
        by_start = {p[0]: p for p in b.witness}
        for u in sorted(new_ent - old_ent):
            q = by_start.get(u)
            if q is None:
                raise LemmaViolation("bubble chain", f"{u!r} enters the union but not bubble {sorted(b.vertices)}")
            head, w = _prefix_to(q, union)
            if head is None:
                raise LemmaViolation("bubble chain", f"witness path from {u!r} never meets the union")
            attached[u] = head[:-1] + attached[w]
        union = new_union
    witness = PathSystem([attached[u] for u in sorted(entrance(D, union))], Kind.INFAN)
    result = Bubble(v0, union, entrance(D, union), witness)
    try:
        check_bubble(D, result)
    except ValueError as exc:
        raise LemmaViolation("bubble chain", str(exc)) from exc
    return result


def bubble_from_separation(D: RootedDigraph, v, cert: MengerCertificate) -> Bubble:
    """The set of vertices u such that every r->u path of D - rv meets the separation.

    Requires a certificate that the separation is an Erdős–Menger separation of v.
    """
    verify_certificate(D, cert)
    if cert.target != v:
        raise ValueError("certificate is for another target")
    r = D.root
    S = cert.separation.vertices
    Dm = minus_root_edge(D, v)
    B = frozenset(D.vertices - reachable(Dm, r, S))
    if entrance(Dm, B) != S:
        raise LemmaViolation("largest bubble", f"entrance {sorted(entrance(Dm, B))} differs from S {sorted(S)}")
    if not set(Dm.in_neighbors(v)) <= B:
        raise LemmaViolation("largest bubble", "an in-neighbour of v lies outside the bubble")
    paths = []
    for p, el in cert.assignment.items():
        if el == (r, v):
            continue
        paths.append(p[p.index(el):])
    ent = entrance(D, B)
    if D.has_edge(r, v):
        paths.append((v,))
    bubble = Bubble(v, B, ent, PathSystem(paths, Kind.INFAN), cert)
    try:
        check_bubble(D, bubble)
    except ValueError as exc:
        raise LemmaViolation("largest bubble", str(exc)) from exc
    return bubble


def max_bubble(D: RootedDigraph, v) -> Bubble:
    """The largest v-bubble, from the minimum cut of D - rv nearest to r.

    The attached certificate shows that its entrance in D - rv is an
    Erdős–Menger separation of v.
    """
    cert = max_system(D, v)
    return bubble_from_separation(D, v, cert)


@dataclass(frozen=True)
class LargenessVerdict:
    large: bool
    violation: Edge | None = None
    certificates: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.large


def largeness_check(L: RootedDigraph, D: RootedDigraph, certificates: bool = True) -> LargenessVerdict:
    """L is D-vertex-large iff u lies in the largest v-bubble of L for every uv in D - L.

    On success, each non-root v gets a certificate: a system in L whose separation
    is the entrance of that bubble in L - rv, checked to separate v in D as well.
    """
    if L.root != D.root or L.vertices != D.vertices or not L.edges <= D.edges:
        raise ValueError("L is not a spanning subdigraph of D")
    bubbles: dict = {}
    for u, v in sorted(D.edges - L.edges):
        if v not in bubbles:
            bubbles[v] = max_bubble(L, v)
        if u not in bubbles[v].vertices:
            return LargenessVerdict(False, (u, v))
    certs = {}
    if certificates:
        for v in D.targets:
            bub = bubbles.get(v) or max_bubble(L, v)
            cert = bub.certificate
            if entrance(minus_root_edge(D, v), bub.vertices) != entrance(minus_root_edge(L, v), bub.vertices):
                raise LemmaViolation("char of largeness", f"entrances of the bubble of {v!r} differ in D and L")
            try:
                verify_certificate(D, cert, host=L)
            except ValueError as exc:
                raise LemmaViolation("char of largeness", str(exc)) from exc
            certs[v] = cert
    return LargenessVerdict(True, None, certs)


def fan_to_entrance_plus(D: RootedDigraph, v, u) -> PathSystem:
    """An r-fan in D - rv ending exactly at the entrance of the largest v-bubble plus u.

    Requires u outside that bubble. Built from the entrance fan by one augmenting
    walk between the out-neighbours of r and the target set.
    """
    r = D.root
    if u == r:
        raise ValueError("u must differ from the root")
    bub = max_bubble(D, v)
    if u in bub.vertices:
        raise ValueError(f"{u!r} lies in the largest {v!r}-bubble")
    Dm = minus_root_edge(D, v)
    ent = entrance(Dm, bub.vertices)
    cert = bub.certificate
    fan = []
    for p, el in cert.assignment.items():
        if el == (r, v):
            continue
        seg = p[:p.index(el) + 1]
        if u in seg:
            seg = seg[:seg.index(u) + 1]
        fan.append(seg)
    X = frozenset(Dm.out_neighbors(r))
    Y = ent | {u}
    segments = []
    for p in fan:
        last_x = max(i for i, x in enumerate(p) if x in X)
        segments.append(p[last_x:])
    plain = Digraph(Dm.vertices - {r}, (e for e in Dm.edges if e[0] != r))
    outcome = augmenting_walk(plain, X, Y, PathSystem(segments, Kind.DISJOINT))
    if outcome.blocked:
        raise LemmaViolation("one more path", f"no augmentation towards {u!r}")
    result = PathSystem([(r, *p) for p in outcome.augmented], Kind.FAN)
    if result.last_vertices != Y:
        raise LemmaViolation("one more path", "fan does not end exactly on entrance + u")
    return result


# -- lemma harnesses -------------------------------------------------------------------

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class LemmaCheck:
    status: str
    detail: str = ""
    checked: int = 0


def in_edge_subsets(D: RootedDigraph, w, limit: int = 10, samples: int = 256, seed: int = 0) -> Iterator[frozenset]:
    """All subsets of in_D(w), or seeded random ones when in-degree exceeds ``limit``."""
    ins = sorted(D.in_edges(w))
    if len(ins) <= limit:
        for k in range(len(ins) + 1):
            for c in itertools.combinations(ins, k):
                yield frozenset(c)
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield frozenset(e for e in ins if rng.random() < 0.5)


def realizable_sets(D: RootedDigraph, w, **kw) -> Iterator[frozenset]:
    """The members of the family of exactly coverable in-edge sets of w (enumerated)."""
    for I in in_edge_subsets(D, w, **kw):
        if covering_system(D, w, I).ok:
            yield I


def _spanning_chain(D: RootedDigraph, G: RootedDigraph, H: RootedDigraph) -> None:
    if not (G.is_subdigraph_of(D) and H.is_subdigraph_of(G)):
        raise ValueError("need spanning subdigraphs H <= G <= D")


def coloop_edge_check(D: RootedDigraph, G: RootedDigraph, H: RootedDigraph, v, u, w) -> LemmaCheck:
    """Adding uw to G keeps every realizable in-set of w realizable once uw joins it.

    Hypotheses: uw in D - G, u outside the largest v-bubble B of H, w inside
    B but not on its entrance in H - rv, and that entrance is the same in G - rv.
    """
    _spanning_chain(D, G, H)
    if (u, w) not in D.edges or (u, w) in G.edges:
        return LemmaCheck(NOT_APPLICABLE, "uw is not an edge of D - G")
    if v == H.root:
        return LemmaCheck(NOT_APPLICABLE, "v is the root")
    B = max_bubble(H, v).vertices
    if u in B:
        return LemmaCheck(NOT_APPLICABLE, "u lies in the bubble")
    Hm = minus_root_edge(H, v)
    if w not in interior(Hm, B):
        return LemmaCheck(NOT_APPLICABLE, "w is not interior to the bubble")
    if entrance(Hm, B) != entrance(minus_root_edge(G, v), B):
        return LemmaCheck(NOT_APPLICABLE, "entrances differ in G and H")
    G1 = G.add_edge(u, w)
    checked = 0
    for I in realizable_sets(G, w):
        checked += 1
        if not covering_system(G1, w, I | {(u, w)}).ok:
            return LemmaCheck(FAILS, f"{sorted(I)} + {(u, w)} is not realizable in G + uw", checked)
    return LemmaCheck(HOLDS, "", checked)


def breaks_on_every_edge(D: RootedDigraph, G: RootedDigraph) -> Edge | None:
    """None if every uv in D - G has a realizable I whose extension by uv stops being
    realizable in G + uv; otherwise the first edge without such an I."""
    for u, v in sorted(D.edges - G.edges):
        G1 = G.add_edge(u, v)
        if all(covering_system(G1, v, I | {(u, v)}).ok for I in realizable_sets(G, v)):
            return (u, v)
    return None


def superlarge_check(D: RootedDigraph, G: RootedDigraph, H: RootedDigraph) -> LemmaCheck:
    """If no edge of D - G can be added to G harmlessly, G-large implies D-large."""
    _spanning_chain(D, G, H)
    bad = breaks_on_every_edge(D, G)
    if bad is not None:
        return LemmaCheck(NOT_APPLICABLE, f"{bad} can be added to G without loss")
    if not largeness_check(H, G, certificates=False).large:
        return LemmaCheck(NOT_APPLICABLE, "H is not G-large")
    verdict = largeness_check(H, D, certificates=False)
    if not verdict.large:
        return LemmaCheck(FAILS, f"H is not D-large at {verdict.violation}", 1)
    return LemmaCheck(HOLDS, "", 1)
