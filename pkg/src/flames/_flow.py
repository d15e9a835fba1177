"""Unit-capacity vertex-disjoint path engine.

Every vertex x is split into a tail node (code ``x``) and a head node (code
``x + n``) joined by a capacity-one arc. A super source feeds the tails of the
source vertices and the heads of the sink vertices drain into a super sink.
Flow is stored as single-valued ``pred``/``succ`` pointers, which is enough
because every vertex carries at most one unit.

Augmenting paths are found breadth first with neighbours visited in sorted
vertex order, so every result is deterministic.
"""

from __future__ import annotations

from bisect import insort
from collections import deque
from collections.abc import Hashable, Iterable, Sequence

FREE = -1
TERMINAL = -2  # pred == TERMINAL: fed by the super source; succ == TERMINAL: drains to the super sink

_UNSEEN = -1
_FROM_SOURCE = -2
_FROM_SINK = -3


class FlowError(RuntimeError):
    pass


class DisjointPaths:
    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple],
                 sources: Iterable[Hashable] = (), sinks: Iterable[Hashable] = ()):
        self.names = sorted(set(vertices))
        self.index = {v: i for i, v in enumerate(self.names)}
        n = self.n = len(self.names)
        out: list[list[int]] = [[] for _ in range(n)]
        idx = self.index
        for u, w in set(edges):
            out[idx[u]].append(idx[w])
        for adj in out:
            adj.sort()
        self.out = out
        self.is_src = [False] * n
        self.is_snk = [False] * n
        for x in sources:
            self.is_src[idx[x]] = True
        for y in sinks:
            self.is_snk[idx[y]] = True
        self.pred = [FREE] * n
        self.succ = [FREE] * n

    # -- structure edits -----------------------------------------------------

    def add_edge(self, u, w) -> None:
        a, b = self.index[u], self.index[w]
        if b not in self.out[a]:
            insort(self.out[a], b)

    def remove_edge(self, u, w) -> None:
        a, b = self.index[u], self.index[w]
        if self.succ[a] == b:
            self._cancel_path_through(a)
        self.out[a].remove(b)

    def add_sink(self, y) -> None:
        self.is_snk[self.index[y]] = True

    def remove_sink(self, y) -> None:
        b = self.index[y]
        if self.succ[b] == TERMINAL:
            self._cancel_path_through(b)
        self.is_snk[b] = False

    def add_source(self, x) -> None:
        self.is_src[self.index[x]] = True

    def remove_source(self, x) -> None:
        a = self.index[x]
        if self.pred[a] == TERMINAL:
            self._cancel_path_through(a)
        self.is_src[a] = False

    def _cancel_path_through(self, x: int) -> None:
        pred, succ = self.pred, self.succ
        chain = [x]
        a = pred[x]
        while a >= 0:
            chain.append(a)
            a = pred[a]
        b = succ[x]
        while b >= 0:
            chain.append(b)
            b = succ[b]
        for c in chain:
            pred[c] = FREE
            succ[c] = FREE

    # -- flow ----------------------------------------------------------------

    @property
    def value(self) -> int:
        return sum(1 for p in self.pred if p == TERMINAL)

    def load(self, paths: Iterable[Sequence]) -> None:
        """Install an existing system of disjoint source->sink paths as the flow."""
        pred, succ, idx = self.pred, self.succ, self.index
        for path in paths:
            codes = [idx[x] for x in path]
            if not self.is_src[codes[0]] or not self.is_snk[codes[-1]]:
                raise FlowError(f"path {path!r} does not run from a source to a sink")
            for c in codes:
                if pred[c] != FREE:
                    raise FlowError(f"paths share vertex {self.names[c]!r}")
            for a, b in zip(codes, codes[1:]):
                if b not in self.out[a]:
                    raise FlowError(f"path {path!r} uses a missing edge")
            pred[codes[0]] = TERMINAL
            succ[codes[-1]] = TERMINAL
            for a, b in zip(codes, codes[1:]):
                succ[a] = b
                pred[b] = a

    def _bfs(self, target: int | None = None, release: Sequence[int] = ()):
        """Residual search. Returns (parent array, end vertex or None).

        ``release`` lists sinks whose drain arc may be cancelled (the walk then
        starts at their head); ``target`` restricts which sink may be reached.
        """
        n = self.n
        pred, succ, out = self.pred, self.succ, self.out
        is_snk = self.is_snk
        par = [_UNSEEN] * (2 * n)
        queue = deque()
        for x in range(n):
            if self.is_src[x]:
                par[x] = _FROM_SOURCE
                queue.append(x)
        for y in release:
            if par[y + n] == _UNSEEN:
                par[y + n] = _FROM_SINK
                queue.append(y + n)
        while queue:
            a = queue.popleft()
            if a < n:
                p = pred[a]
                if p == FREE:
                    b = a + n
                elif p >= 0:
                    b = p + n
                else:
                    continue
                if par[b] == _UNSEEN:
                    par[b] = a
                    queue.append(b)
            else:
                x = a - n
                if is_snk[x] and succ[x] != TERMINAL and (target is None or x == target):
                    return par, x
                if pred[x] != FREE and par[x] == _UNSEEN:
                    par[x] = a
                    queue.append(x)
                s = succ[x]
                for y in out[x]:
                    if y != s and par[y] == _UNSEEN:
                        par[y] = a
                        queue.append(y)
        return par, None

    def _apply(self, par: list[int], end: int) -> None:
        n = self.n
        pred, succ = self.pred, self.succ
        cancels: list[tuple[int, int]] = []
        adds: list[tuple[int, int]] = [(end, TERMINAL)]
        src_add = None
        b = end + n
        while True:
            a = par[b]
            if a == _FROM_SOURCE:
                src_add = b
                break
            if a == _FROM_SINK:
                cancels.append((b - n, TERMINAL))
                break
            if a < n <= b:
                if a != b - n:
                    cancels.append((b - n, a))  # backward over the flow edge (b-n) -> a
            elif b < n <= a:
                if a - n != b:
                    adds.append((a - n, b))
            b = a
        for u, w in cancels:
            if succ[u] == w:
                succ[u] = FREE
            if w >= 0 and pred[w] == u:
                pred[w] = FREE
        if src_add is not None:
            pred[src_add] = TERMINAL
        for u, w in adds:
            succ[u] = w
            if w >= 0:
                pred[w] = u

    def augment(self) -> bool:
        par, end = self._bfs()
        if end is None:
            return False
        self._apply(par, end)
        return True

    def maximize(self) -> int:
        while self.augment():
            pass
        return self.value

    def reroute_to(self, y, releasable: Iterable) -> bool:
        """Make sink ``y`` covered without uncovering sources or non-releasable sinks."""
        target = self.index[y]
        release = [self.index[z] for z in sorted(releasable, key=self.index.__getitem__)]
        par, end = self._bfs(target=target, release=release)
        if end is None:
            return False
        self._apply(par, end)
        return True

    def paths(self) -> list[tuple]:
        names, succ = self.names, self.succ
        result = []
        for x in range(self.n):
            if self.pred[x] != TERMINAL:
                continue
            path = [x]
            while succ[path[-1]] != TERMINAL:
                nxt = succ[path[-1]]
                if nxt < 0:
                    raise FlowError("broken flow chain")
                path.append(nxt)
            result.append(tuple(names[c] for c in path))
        return sorted(result)

    def cut(self) -> list:
        """Source-side-minimal vertex cut; requires a maximum flow."""
        par, end = self._bfs()
        if end is None:
            n = self.n
            return [self.names[x] for x in range(n) if par[x] != _UNSEEN and par[x + n] == _UNSEEN]
        raise FlowError("flow is not maximum")

    def source_side(self) -> set:
        """Vertices whose tail is reachable in the residual network."""
        par, end = self._bfs()
        if end is not None:
            raise FlowError("flow is not maximum")
        return {self.names[x] for x in range(self.n) if par[x] != _UNSEEN}
