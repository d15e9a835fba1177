"""Seeded digraph generators and test corpora.

All randomness comes from ``random.Random(seed)`` (MT19937) and only its
``random()`` method is called, so a seed fixes the output on every platform.
Non-root vertices are named ``v00``, ``v01``, ... (zero padded, so the
lexicographic order is the creation order).
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence

from .digraph import Edge, RootedDigraph

ROOT = "r"
MAX_FIGURE6_LEVEL = 12


def _names(count: int) -> list[str]:
    width = max(2, len(str(max(count - 1, 0))))
    return [f"v{i:0{width}d}" for i in range(count)]


def _pairs(vertices: Sequence[str], root: str) -> list[Edge]:
    return [(u, w) for u in vertices for w in vertices if u != w and w != root]


def random_digraph(n: int, density: float, seed: int) -> RootedDigraph:
    """Each possible edge (u, w) with w != r is kept with probability ``density``.

    ``n`` counts the root.
    """
    if n < 1:
        raise ValueError("need at least the root")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    vertices = [ROOT, *_names(n - 1)]
    edges = [e for e in _pairs(vertices, ROOT) if rng.random() < density]
    return RootedDigraph(ROOT, frozenset(vertices), frozenset(edges))


def random_digraph_m(n: int, m: int, seed: int) -> RootedDigraph:
    """Exactly m edges chosen uniformly (partial Fisher-Yates driven by random())."""
    if n < 1:
        raise ValueError("need at least the root")
    vertices = [ROOT, *_names(n - 1)]
    pool = _pairs(vertices, ROOT)
    if not 0 <= m <= len(pool):
        raise ValueError(f"m must lie in [0, {len(pool)}]")
    rng = random.Random(seed)
    for i in range(m):
        j = i + int(rng.random() * (len(pool) - i))
        pool[i], pool[j] = pool[j], pool[i]
    return RootedDigraph(ROOT, frozenset(vertices), frozenset(pool[:m]))


def layered(widths: Sequence[int], seed: int, p: float = 0.5) -> RootedDigraph:
    """r feeds the first layer; edges go forward to the next layer with
    probability p and sideways inside a layer with probability p/4."""
    if not widths or any(w < 1 for w in widths):
        raise ValueError("widths must be positive")
    rng = random.Random(seed)
    layers = []
    for i, w in enumerate(widths):
        layers.append([f"l{i}_{j}" for j in range(w)])
    edges = [(ROOT, x) for x in layers[0]]
    for i, layer in enumerate(layers):
        for a, b in itertools.permutations(layer, 2):
            if rng.random() < p / 4:
                edges.append((a, b))
        if i + 1 < len(layers):
            for a in layer:
                for b in layers[i + 1]:
                    if rng.random() < p:
                        edges.append((a, b))
    vertices = [ROOT, *(x for layer in layers for x in layer)]
    return RootedDigraph(ROOT, frozenset(vertices), frozenset(edges))


# -- the counterexample family ---------------------------------------------------------

OMEGA = "vw"


def figure6(k: int, exclude_omega: bool = False) -> RootedDigraph:
    """Truncation at level k of the digraph that defeats separation-preserving flames.

    Vertices: r, u{i}, v{i}_0, v{i}_1, v{i} for i < k, the vertex vw standing for
    v_omega, and vf_<bits> for every bit string of length k. Edges: r -> u{i},
    r -> vw, u{i} -> v{i}_j, v{i}_j -> v{i}, every v{i} (and vw unless
    ``exclude_omega``) -> every v{j}_b, and v{i}_<bits[i]> -> vf_<bits>.

    The infinite object has uncountably many vf vertices, each of infinite
    in-degree. Its headline properties (for instance that the out-neighbourhood
    of r is an Erdős–Menger separation of every vf) are statements about that
    limit and are not expected to hold here: at level k the out-neighbourhood
    of r has k + 1 vertices while every vf has in-degree k.
    """
    if not 1 <= k <= MAX_FIGURE6_LEVEL:
        raise ValueError(f"k must lie in [1, {MAX_FIGURE6_LEVEL}]")
    edges: list[Edge] = [(ROOT, OMEGA)]
    vertices = [ROOT, OMEGA]
    for i in range(k):
        u, vi = f"u{i}", f"v{i}"
        vertices += [u, f"v{i}_0", f"v{i}_1", vi]
        edges += [(ROOT, u), (u, f"v{i}_0"), (u, f"v{i}_1"), (f"v{i}_0", vi), (f"v{i}_1", vi)]
    sources = [f"v{i}" for i in range(k)] + ([] if exclude_omega else [OMEGA])
    for s in sources:
        for j in range(k):
            for b in (0, 1):
                edges.append((s, f"v{j}_{b}"))
    for bits in itertools.product("01", repeat=k):
        f = "vf_" + "".join(bits)
        vertices.append(f)
        edges += [(f"v{i}_{bits[i]}", f) for i in range(k)]
    return RootedDigraph(ROOT, frozenset(vertices), frozenset(edges))


def figure6_size(k: int) -> int:
    return 4 * k + 2 + 2 ** k


def figure6_stream(exclude_omega: bool = False) -> Iterator[tuple[str, list[Edge]]]:
    """The countable part of the family where every f is eventually zero.

    Yields ``(vertex, edges)``; the edges join the vertex to earlier vertices.
    Level i yields u{i}, v{i}_0, v{i}_1, v{i} and then the vertices vf_<bits>
    whose bit string has length i + 1 and ends in 1 (level 0 also yields
    ``vf_`` for the all-zero function). A vf vertex receives a new in-edge at
    every later level, so its in-degree grows without bound.
    """
    fs: list[str] = []
    yield ROOT, []
    yield OMEGA, [(ROOT, OMEGA)]
    i = 0
    while True:
        u, vi = f"u{i}", f"v{i}"
        yield u, [(ROOT, u)]
        for b in (0, 1):
            x = f"v{i}_{b}"
            es = [(u, x)] + [(f"v{j}", x) for j in range(i)]
            if not exclude_omega:
                es.append((OMEGA, x))
            es += [(x, "vf_" + bits) for bits in fs if _bit(bits, i) == b]
            yield x, sorted(es)
        es = [(f"v{i}_0", vi), (f"v{i}_1", vi)]
        es += [(vi, f"v{j}_{b}") for j in range(i + 1) for b in (0, 1)]
        yield vi, sorted(es)
        new = ["".join(p) + "1" for p in itertools.product("01", repeat=i)]
        if i == 0:
            new.insert(0, "")
        for bits in new:
            f = "vf_" + bits
            yield f, [(f"v{j}_{_bit(bits, j)}", f) for j in range(i + 1)]
            fs.append(bits)
        i += 1


def _bit(bits: str, i: int) -> int:
    return int(bits[i]) if i < len(bits) else 0


def digraph_stream(D: RootedDigraph, order: Sequence[str] | None = None) -> Iterator[tuple[str, list[Edge]]]:
    """Present a finite digraph as a vertex stream (root first)."""
    order = [D.root, *(order if order is not None else D.targets)]
    seen: set[str] = set()
    for v in order:
        seen.add(v)
        yield v, sorted(e for e in D.edges if v in e and e[0] in seen and e[1] in seen)


# -- corpora -----------------------------------------------------------------------------


def exhaustive(n: int) -> Iterator[RootedDigraph]:
    """Every rooted digraph on the vertex set {r, v00, ...} of size n."""
    vertices = [ROOT, *_names(n - 1)]
    pool = _pairs(vertices, ROOT)
    for mask in range(1 << len(pool)):
        edges = [e for i, e in enumerate(pool) if mask >> i & 1]
        yield RootedDigraph(ROOT, frozenset(vertices), frozenset(edges))


def random_corpus(count: int, seed: int, n_range: tuple[int, int] = (8, 50),
                  density_range: tuple[float, float] = (0.05, 0.4)) -> Iterator[RootedDigraph]:
    """``count`` random digraphs with size and density drawn from a master seed."""
    rng = random.Random(seed)
    lo, hi = n_range
    dlo, dhi = density_range
    for _ in range(count):
        n = lo + int(rng.random() * (hi - lo + 1))
        density = dlo + rng.random() * (dhi - dlo)
        sub = int(rng.random() * 2 ** 63)
        yield random_digraph(n, density, sub)


def small_corpus(max_exhaustive: int = 4, random_sizes: Sequence[int] = (5, 6, 7),
                 per_size: int = 500, seed: int = 0,
                 density_range: tuple[float, float] = (0.15, 0.6)) -> Iterator[RootedDigraph]:
    """All digraphs with at most ``max_exhaustive`` vertices plus random larger ones."""
    for n in range(1, max_exhaustive + 1):
        yield from exhaustive(n)
    for n in random_sizes:
        yield from random_corpus(per_size, seed + n, (n, n), density_range)


def nonisomorphic(n: int, max_edges: int | None = None) -> Iterator[RootedDigraph]:
    """One representative per isomorphism class (root fixed) of the rooted digraphs
    on n vertices, optionally with at most ``max_edges`` edges.

    The representative is the member whose edge mask is smallest.
    """
    vertices = [ROOT, *_names(n - 1)]
    pool = _pairs(vertices, ROOT)
    index = {e: i for i, e in enumerate(pool)}
    maps = []
    for perm in itertools.permutations(vertices[1:]):
        rename = dict(zip(vertices[1:], perm), **{ROOT: ROOT})
        maps.append([index[(rename[a], rename[b])] for a, b in pool])
    for mask in range(1 << len(pool)):
        if max_edges is not None and mask.bit_count() > max_edges:
            continue
        bits = [i for i in range(len(pool)) if mask >> i & 1]
        if any(sum(1 << m[i] for i in bits) < mask for m in maps):
            continue
        yield RootedDigraph(ROOT, frozenset(vertices), frozenset(pool[i] for i in bits))
