"""Rooted digraphs, loading/export, reachability and the vertex-splitting transform."""

from __future__ import annotations

import hashlib
import json
import warnings
from collections import deque
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[str, str]
Path = tuple[str, ...]


class DigraphError(ValueError):
    """Malformed digraph input."""


class UnknownVertex(DigraphError):
    pass


class SelfLoop(DigraphError):
    pass


class EdgeIntoRoot(DigraphError):
    pass


class DigraphWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Digraph:
    """A plain finite digraph (no root). Used by the X->Y linkage operations."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for u, w in self.edges:
            if u not in self.vertices or w not in self.vertices:
                raise UnknownVertex(f"edge {u!r}->{w!r} has an endpoint outside the vertex set")
            if u == w:
                raise SelfLoop(f"self-loop at {u!r}")


@dataclass(frozen=True)
class RootedDigraph:
    """Finite simple digraph with a root that has no ingoing edges.

    Values are immutable; every editing method returns a new digraph.
    """

    root: str
    vertices: frozenset[str]
    edges: frozenset[Edge]

    def __post_init__(self):
        vertices = frozenset(self.vertices)
        edges = frozenset((u, w) for u, w in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if self.root not in vertices:
            raise UnknownVertex(f"root {self.root!r} is not a vertex")
        for u, w in edges:
            if u not in vertices or w not in vertices:
                raise UnknownVertex(f"edge {u!r}->{w!r} has an endpoint outside the vertex set")
            if u == w:
                raise SelfLoop(f"self-loop at {u!r}")
            if w == self.root:
                raise EdgeIntoRoot(f"edge {u!r}->{w!r} enters the root")

    @classmethod
    def from_edges(cls, root: str, edges: Iterable[Edge], vertices: Iterable[str] = ()) -> RootedDigraph:
        edges = [tuple(e) for e in edges]
        vs = {root, *vertices}
        for u, w in edges:
            vs.update((u, w))
        return cls(root, frozenset(vs), frozenset(edges))

    # -- accessors -----------------------------------------------------------

    @cached_property
    def order(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def targets(self) -> tuple[str, ...]:
        """Non-root vertices in lexicographic order."""
        return tuple(v for v in self.order if v != self.root)

    @cached_property
    def _adjacency(self):
        out = {v: [] for v in self.vertices}
        inn = {v: [] for v in self.vertices}
        for u, w in self.edges:
            out[u].append(w)
            inn[w].append(u)
        return ({v: tuple(sorted(ns)) for v, ns in out.items()},
                {v: tuple(sorted(ns)) for v, ns in inn.items()})

    def out_neighbors(self, v: str) -> tuple[str, ...]:
        return self._adjacency[0][v]

    def in_neighbors(self, v: str) -> tuple[str, ...]:
        return self._adjacency[1][v]

    def in_edges(self, v: str) -> frozenset[Edge]:
        return frozenset((u, v) for u in self.in_neighbors(v))

    def out_edges(self, v: str) -> frozenset[Edge]:
        return frozenset((v, w) for w in self.out_neighbors(v))

    def in_degree(self, v: str) -> int:
        return len(self.in_neighbors(v))

    def has_edge(self, u: str, w: str) -> bool:
        return (u, w) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    # -- editing -------------------------------------------------------------

    def without_edges(self, edges: Iterable[Edge]) -> RootedDigraph:
        return RootedDigraph(self.root, self.vertices, self.edges - frozenset(edges))

    def with_edges(self, edges: Iterable[Edge]) -> RootedDigraph:
        """Add edges; endpoints that are not yet vertices are added too."""
        edges = frozenset(tuple(e) for e in edges)
        vs = self.vertices.union(*edges) if edges else self.vertices
        return RootedDigraph(self.root, vs, self.edges | edges)

    def add_edge(self, u: str, w: str) -> RootedDigraph:
        return self.with_edges([(u, w)])

    def delete_edges(self, edges: Iterable[Edge]) -> RootedDigraph:
        return self.without_edges(edges)

    def spanning(self, edges: Iterable[Edge]) -> RootedDigraph:
        """Spanning subdigraph on the same vertex set with the given edges."""
        edges = frozenset(edges)
        if not edges <= self.edges:
            raise DigraphError("edge set is not contained in the digraph")
        return RootedDigraph(self.root, self.vertices, edges)

    def induced(self, vertices: Iterable[str]) -> RootedDigraph:
        vs = frozenset(vertices) | {self.root}
        missing = vs - self.vertices
        if missing:
            raise UnknownVertex(f"unknown vertices {sorted(missing)}")
        return RootedDigraph(self.root, vs, frozenset((u, w) for u, w in self.edges if u in vs and w in vs))

    def is_subdigraph_of(self, other: RootedDigraph) -> bool:
        return (self.root == other.root and self.vertices == other.vertices
                and self.edges <= other.edges)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {"root": self.root, "vertices": list(self.order),
                "edges": [list(e) for e in self.sorted_edges()]}

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load(raw: Mapping, normalize_root: bool = False) -> RootedDigraph:
    """Build a validated RootedDigraph from a ``{root, vertices?, edges}`` mapping.

    Duplicate edges are dropped with a DigraphWarning. Edges into the root are an
    error unless ``normalize_root`` is set, in which case they are dropped with a
    warning.
    """
    if "root" not in raw:
        raise DigraphError("missing 'root'")
    root = raw["root"]
    if not isinstance(root, str):
        raise DigraphError("root must be a string")
    declared = raw.get("vertices")
    edges_raw = raw.get("edges", [])
    edges: list[Edge] = []
    for e in edges_raw:
        if len(e) != 2 or not all(isinstance(x, str) for x in e):
            raise DigraphError(f"malformed edge {e!r}")
        edges.append((e[0], e[1]))

    if declared is not None:
        vertices = set(declared)
        if not all(isinstance(x, str) for x in vertices):
            raise DigraphError("vertex identifiers must be strings")
        if root not in vertices:
            raise UnknownVertex(f"root {root!r} not among declared vertices")
        for u, w in edges:
            for x in (u, w):
                if x not in vertices:
                    raise UnknownVertex(f"edge {u!r}->{w!r} names unknown vertex {x!r}")
    else:
        vertices = {root}
        for u, w in edges:
            vertices.update((u, w))

    seen: set[Edge] = set()
    kept: list[Edge] = []
    for u, w in edges:
        if u == w:
            raise SelfLoop(f"self-loop at {u!r}")
        if (u, w) in seen:
            warnings.warn(f"duplicate edge {u}->{w} dropped", DigraphWarning, stacklevel=2)
            continue
        seen.add((u, w))
        if w == root:
            if not normalize_root:
                raise EdgeIntoRoot(f"edge {u!r}->{w!r} enters the root")
            warnings.warn(f"edge {u}->{w} into the root dropped", DigraphWarning, stacklevel=2)
            continue
        kept.append((u, w))
    return RootedDigraph(root, frozenset(vertices), frozenset(kept))


def read(path, normalize_root: bool = False) -> RootedDigraph:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DigraphError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise DigraphError(f"{path}: expected a JSON object")
    return load(raw, normalize_root=normalize_root)


def reachable(D, start: Hashable, forbidden: Iterable = ()) -> frozenset:
    """Vertices reachable from ``start`` by paths that avoid ``forbidden`` entirely."""
    forbidden = frozenset(forbidden)
    if start not in D.vertices:
        raise UnknownVertex(f"{start!r} is not a vertex")
    if start in forbidden:
        raise ValueError("start vertex is forbidden")
    out = {}
    for u, w in D.edges:
        out.setdefault(u, []).append(w)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in out.get(u, ()):
            if w not in seen and w not in forbidden:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def to_dot(D: RootedDigraph, highlight: Iterable[Edge] | None = None, name: str = "D") -> str:
    """DOT rendering; the root is a doublecircle and highlighted edges are bold."""
    hl = frozenset(highlight) if highlight is not None else None
    lines = [f"digraph {json.dumps(name)} {{"]
    for v in D.order:
        shape = "doublecircle" if v == D.root else "circle"
        lines.append(f"  {json.dumps(v)} [shape={shape}];")
    for u, w in D.sorted_edges():
        attr = ""
        if hl is not None:
            attr = " [style=bold, color=red]" if (u, w) in hl else " [style=dashed, color=gray]"
        lines.append(f"  {json.dumps(u)} -> {json.dumps(w)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- vertex splitting ------------------------------------------------------------


@dataclass(frozen=True)
class SplitDigraph:
    """D with every non-root v split into t_v -> h_v.

    ``t_v`` inherits the ingoing and ``h_v`` the outgoing edges of v.
    """

    base: RootedDigraph
    digraph: RootedDigraph
    tail: Mapping[str, str]
    head: Mapping[str, str]
    origin: Mapping[str, str]

    def lift_path(self, path: Path) -> Path:
        """Image of an r->v path of the base digraph (ends at t_v)."""
        r = self.base.root
        out = []
        for i, x in enumerate(path):
            if x == r:
                out.append(r)
            elif i == len(path) - 1:
                out.append(self.tail[x])
            else:
                out.extend((self.tail[x], self.head[x]))
        return tuple(out)

    def lower_path(self, path: Path) -> Path:
        out: list[str] = []
        for x in path:
            v = self.origin[x]
            if not out or out[-1] != v:
                out.append(v)
        return tuple(out)


def split(D: RootedDigraph) -> SplitDigraph:
    r = D.root
    n = 1
    while True:
        tp, hp = "t" + ":" * n, "h" + ":" * n
        tail = {v: tp + v for v in D.targets}
        head = {v: hp + v for v in D.targets}
        if r not in tail.values() and r not in head.values():
            break
        n += 1
    edges = [(tail[v], head[v]) for v in D.targets]
    for u, w in D.edges:
        edges.append((r if u == r else head[u], tail[w]))
    origin = {r: r}
    origin.update({t: v for v, t in tail.items()})
    origin.update({h: v for v, h in head.items()})
    sd = RootedDigraph(r, frozenset(origin), frozenset(edges))
    return SplitDigraph(D, sd, tail, head, origin)


def contract(S: SplitDigraph) -> RootedDigraph:
    """Inverse of :func:`split`."""
    r = S.base.root
    edges = []
    for a, b in S.digraph.edges:
        u, w = S.origin[a], S.origin[b]
        if u == w:
            continue
        edges.append((u, w))
    return RootedDigraph(r, frozenset(S.origin[x] for x in S.digraph.vertices), frozenset(edges))
