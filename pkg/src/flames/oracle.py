"""Exponential reference implementations, written straight from the definitions.

Nothing here touches the flow engine. Path systems are enumerated by
backtracking over simple paths, separations by trying every way of picking one
internal vertex per path, bubbles by trying every vertex set. Inputs above the
configured bounds raise ``OracleBoundExceeded`` instead of being skipped.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .digraph import RootedDigraph


class OracleBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBounds:
    max_vertices: int = 7
    spanning_vertices: int = 5
    spanning_edges: int = 10


DEFAULT_BOUNDS = OracleBounds()


def _guard(D, bounds: OracleBounds) -> None:
    if len(D.vertices) > bounds.max_vertices:
        raise OracleBoundExceeded(f"{len(D.vertices)} vertices exceed the oracle bound {bounds.max_vertices}")


def _succ(edges) -> dict:
    out: dict = {}
    for a, b in edges:
        out.setdefault(a, []).append(b)
    for adj in out.values():
        adj.sort()
    return out


def _reach(edges, start, blocked=frozenset()) -> set:
    out = _succ(edges)
    seen = {start}
    todo = deque([start])
    while todo:
        a = todo.popleft()
        for b in out.get(a, ()):
            if b not in seen and b not in blocked:
                seen.add(b)
                todo.append(b)
    return seen


def simple_paths(edges, start, end, allowed=None) -> list[tuple]:
    """All vertex-simple start->end paths using only ``allowed`` vertices."""
    out = _succ(edges)
    found = []

    def walk(path, used):
        a = path[-1]
        if a == end:
            found.append(tuple(path))
            return
        for b in out.get(a, ()):
            if b in used or (allowed is not None and b not in allowed):
                continue
            used.add(b)
            path.append(b)
            walk(path, used)
            path.pop()
            used.discard(b)

    walk([start], {start})
    return found


def _pack(paths: list[tuple], shared: frozenset) -> Iterator[tuple]:
    """Every subfamily of ``paths`` whose members meet only in ``shared``."""

    def rec(i, chosen, used):
        if i == len(paths):
            yield tuple(chosen)
            return
        yield from rec(i + 1, chosen, used)
        own = set(paths[i]) - shared
        if not own & used:
            chosen.append(paths[i])
            yield from rec(i + 1, chosen, used | own)
            chosen.pop()

    yield from rec(0, [], frozenset())


def enum_systems(D: RootedDigraph, v, bounds: OracleBounds = DEFAULT_BOUNDS) -> list[frozenset]:
    """All internally disjoint r->v path systems of D, the empty one included."""
    _guard(D, bounds)
    paths = simple_paths(D.edges, D.root, v)
    return [frozenset(s) for s in _pack(paths, frozenset({D.root, v}))]


def brute_kappa(D: RootedDigraph, v, bounds: OracleBounds = DEFAULT_BOUNDS) -> int:
    return max(len(s) for s in enum_systems(D, v, bounds))


def separating_choices(D: RootedDigraph, v, system: Iterable[tuple]) -> Iterator[tuple]:
    """Every one-element-per-path choice that meets all r->v paths of D.

    A path of length one can only contribute the edge rv itself.
    """
    r = D.root
    system = sorted(system)
    options = [[(r, v)] if len(p) == 2 else list(p[1:-1]) for p in system]
    for choice in itertools.product(*options):
        vertices = frozenset(x for x in choice if not isinstance(x, tuple))
        edges = D.edges - ({(r, v)} if (r, v) in choice else set())
        if v not in _reach(edges, r, vertices):
            yield choice


def is_separable(D: RootedDigraph, v, system) -> bool:
    """Literal membership test for the systems admitting a one-per-path separation."""
    return next(separating_choices(D, v, system), None) is not None


def brute_separable_systems(D: RootedDigraph, v, bounds: OracleBounds = DEFAULT_BOUNDS) -> list[frozenset]:
    return [s for s in enum_systems(D, v, bounds) if is_separable(D, v, s)]


def brute_strongly_maximal(D: RootedDigraph, v, system, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    P = frozenset(system)
    return all(len(Q - P) <= len(P - Q) for Q in enum_systems(D, v, bounds))


def brute_coverable(D: RootedDigraph, v, I, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    I = frozenset(I)
    return any(frozenset((p[-2], p[-1]) for p in s) == I and len(s) == len(I)
               for s in enum_systems(D, v, bounds))


def brute_flame(D: RootedDigraph, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    return all(brute_coverable(D, v, D.in_edges(v), bounds) for v in D.targets)


def brute_quasi_flame(D: RootedDigraph, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    for v in D.targets:
        ins = sorted(D.in_edges(v))
        for k in range(len(ins) + 1):
            for I in itertools.combinations(ins, k):
                if not brute_coverable(D, v, I, bounds):
                    return False
    return True


def brute_largeness(L: RootedDigraph, D: RootedDigraph, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    """For every v some separable system of D lies inside L."""
    _guard(D, bounds)
    for v in D.targets:
        if not any(is_separable(D, v, s) for s in enum_systems(L, v, bounds)):
            return False
    return True


def brute_fan_exists(D: RootedDigraph, X, bounds: OracleBounds = DEFAULT_BOUNDS) -> bool:
    """Is there an r-fan whose last-vertex set is exactly X?"""
    _guard(D, bounds)
    r = D.root
    X = frozenset(X)
    families = [[p for p in simple_paths(D.edges, r, x) if not set(p[1:-1]) & X] for x in sorted(X)]

    def rec(i, used):
        if i == len(families):
            return True
        for p in families[i]:
            own = set(p[1:])
            if not own & used and rec(i + 1, used | own):
                return True
        return False

    return rec(0, frozenset())


# -- bubbles ---------------------------------------------------------------------------


def brute_entrance(D: RootedDigraph, X) -> frozenset:
    X = frozenset(X)
    return frozenset(x for x in X if any(a not in X for a, b in D.edges if b == x))


def brute_is_bubble(D: RootedDigraph, v, B) -> bool:
    B = frozenset(B)
    inside = [(a, b) for a, b in D.edges if a in B and b in B]
    ent = sorted(brute_entrance(D, B))
    families = [simple_paths(inside, u, v) for u in ent]

    def rec(i, used):
        if i == len(families):
            return True
        for p in families[i]:
            own = set(p[:-1])
            if not own & used and rec(i + 1, used | own):
                return True
        return False

    return rec(0, frozenset())


def brute_bubbles(D: RootedDigraph, v, bounds: OracleBounds = DEFAULT_BOUNDS) -> list[frozenset]:
    _guard(D, bounds)
    others = sorted(x for x in D.vertices if x not in (D.root, v))
    found = []
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            B = frozenset((v, *extra))
            if brute_is_bubble(D, v, B):
                found.append(B)
    return found


def brute_max_bubble(D: RootedDigraph, v, bounds: OracleBounds = DEFAULT_BOUNDS) -> frozenset:
    return frozenset().union(*brute_bubbles(D, v, bounds))


def brute_bubble_of_separation(D: RootedDigraph, v, S) -> frozenset:
    """The vertices u such that every r->u path of D - rv meets S."""
    r = D.root
    edges = D.edges - {(r, v)}
    return frozenset(D.vertices) - _reach(edges, r, frozenset(S))


# -- spanning flames -------------------------------------------------------------------


def brute_spanning_flame_exists(D: RootedDigraph, bounds: OracleBounds = DEFAULT_BOUNDS) -> RootedDigraph | None:
    """A spanning subdigraph that is a flame and D-large, smallest edge sets first."""
    if len(D.vertices) > bounds.spanning_vertices or len(D.edges) > bounds.spanning_edges:
        raise OracleBoundExceeded(
            f"spanning search bounded by {bounds.spanning_vertices} vertices and {bounds.spanning_edges} edges")
    edges = sorted(D.edges)
    for k in range(len(edges) + 1):
        for sub in itertools.combinations(edges, k):
            L = D.spanning(sub)
            if brute_flame(L, bounds) and brute_largeness(L, D, bounds):
                return L
    return None
