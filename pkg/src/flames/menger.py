"""Local connectivity, internally disjoint path systems and Erdős–Menger separations.

At finite scale a system of internally disjoint r->v paths is strongly maximal
exactly when it has maximum size, so membership of a system among the
"separable" systems is always reported as *maximum + certificate*: the system
together with a vertex set that picks one internal vertex from every path and
meets every r->v path of the host digraph (plus the edge rv when present).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from ._flow import DisjointPaths
from .digraph import Edge, Path, RootedDigraph, reachable


class InvalidPathSystem(ValueError):
    pass


class CertificateError(ValueError):
    pass


class Kind(str, Enum):
    INTERNALLY_DISJOINT = "internally-disjoint"
    DISJOINT = "disjoint"
    FAN = "r-fan"
    INFAN = "v-infan"


def path_edges(path: Path) -> list[Edge]:
    return list(zip(path, path[1:]))


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[Path, ...]
    kind: Kind = Kind.INTERNALLY_DISJOINT

    def __post_init__(self):
        paths = tuple(sorted(tuple(p) for p in self.paths))
        if len(set(paths)) != len(paths):
            raise InvalidPathSystem("repeated path")
        for p in paths:
            if not p or len(set(p)) != len(p):
                raise InvalidPathSystem(f"{p!r} is not a vertex-simple path")
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "kind", Kind(self.kind))

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    @property
    def first_vertices(self) -> frozenset:
        return frozenset(p[0] for p in self.paths)

    @property
    def last_vertices(self) -> frozenset:
        return frozenset(p[-1] for p in self.paths)

    @property
    def last_edges(self) -> frozenset:
        return frozenset((p[-2], p[-1]) for p in self.paths if len(p) > 1)

    @property
    def edges(self) -> frozenset:
        return frozenset(e for p in self.paths for e in path_edges(p))

    def in_edges_at(self, w) -> frozenset:
        """Edges of the system entering ``w``."""
        return frozenset(e for e in self.edges if e[1] == w)

    def to_list(self) -> list[list]:
        return [list(p) for p in self.paths]


def _check_edges(D, paths: Iterable[Path]) -> None:
    for p in paths:
        for x in p:
            if x not in D.vertices:
                raise InvalidPathSystem(f"path {p!r} leaves the vertex set")
        for e in path_edges(p):
            if e not in D.edges:
                raise InvalidPathSystem(f"path {p!r} uses missing edge {e!r}")


def check_internally_disjoint(D: RootedDigraph, v, system: PathSystem) -> None:
    r = D.root
    _check_edges(D, system)
    seen: dict = {}
    for p in system:
        if len(p) < 2 or p[0] != r or p[-1] != v:
            raise InvalidPathSystem(f"{p!r} is not an {r}->{v} path")
        for x in p[1:-1]:
            if x in seen:
                raise InvalidPathSystem(f"paths {seen[x]!r} and {p!r} share {x!r}")
            seen[x] = p


def check_disjoint(D, X, Y, system: PathSystem) -> None:
    X, Y = frozenset(X), frozenset(Y)
    _check_edges(D, system)
    seen: dict = {}
    for p in system:
        if p[0] not in X or p[-1] not in Y:
            raise InvalidPathSystem(f"{p!r} does not run from X to Y")
        if any(x in X for x in p[1:]) or any(y in Y for y in p[:-1]):
            raise InvalidPathSystem(f"{p!r} meets X or Y more than once")
        for x in p:
            if x in seen:
                raise InvalidPathSystem(f"paths {seen[x]!r} and {p!r} share {x!r}")
            seen[x] = p


def check_fan(D, root, system: PathSystem) -> None:
    _check_edges(D, system)
    seen: dict = {}
    for p in system:
        if p[0] != root:
            raise InvalidPathSystem(f"{p!r} does not start at {root!r}")
        for x in p[1:]:
            if x in seen:
                raise InvalidPathSystem(f"paths {seen[x]!r} and {p!r} share {x!r}")
            seen[x] = p
    if sum(1 for p in system if len(p) == 1) > 1:
        raise InvalidPathSystem("repeated trivial path")


def check_infan(D, target, system: PathSystem) -> None:
    _check_edges(D, system)
    seen: dict = {}
    for p in system:
        if p[-1] != target:
            raise InvalidPathSystem(f"{p!r} does not end at {target!r}")
        for x in p[:-1]:
            if x in seen:
                raise InvalidPathSystem(f"paths {seen[x]!r} and {p!r} share {x!r}")
            seen[x] = p


# -- separations and certificates -------------------------------------------------


@dataclass(frozen=True)
class Separation:
    target: str
    vertices: frozenset = frozenset()
    uses_root_edge: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices) + int(self.uses_root_edge)

    def separates(self, D: RootedDigraph) -> bool:
        """True iff the vertices (and rv when flagged) meet every r->v path of D."""
        r, v = D.root, self.target
        if self.uses_root_edge != D.has_edge(r, v):
            return False
        if r in self.vertices or v in self.vertices:
            return False
        rest = D.without_edges([(r, v)])
        return v not in reachable(rest, r, self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "uses_root_edge": self.uses_root_edge}


@dataclass(frozen=True)
class MengerCertificate:
    """An internally disjoint r->v system with a one-per-path separation.

    ``assignment`` maps each path to its separation element: an internal vertex,
    or the edge (r, v) for the one-edge path.
    """

    target: str
    system: PathSystem
    separation: Separation
    assignment: Mapping[Path, object] = field(hash=False)

    def to_dict(self) -> dict:
        assign = {}
        for i, p in enumerate(self.system.paths):
            el = self.assignment[p]
            assign[str(i)] = list(el) if isinstance(el, tuple) else el
        return {"target": self.target, "system": self.system.to_list(),
                "separation": self.separation.to_dict(), "assignment": assign}

    @classmethod
    def from_dict(cls, data: Mapping) -> MengerCertificate:
        try:
            system = PathSystem([tuple(p) for p in data["system"]])
            sep = data["separation"]
            separation = Separation(data["target"], frozenset(sep["vertices"]), bool(sep["uses_root_edge"]))
            raw_paths = [tuple(p) for p in data["system"]]
            assignment = {}
            for key, el in data["assignment"].items():
                assignment[raw_paths[int(key)]] = tuple(el) if isinstance(el, list) else el
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from exc
        return cls(data["target"], system, separation, assignment)


def certificate_problems(D: RootedDigraph, cert: MengerCertificate, host: RootedDigraph | None = None) -> list[str]:
    """Check ``cert`` for target v.

    The system must lie in ``host`` (default ``D``); the separation must meet every
    r->v path of ``D``.
    """
    host = D if host is None else host
    r, v = D.root, cert.target
    problems = []
    if v == r or v not in D.vertices:
        return [f"{v!r} is not a non-root vertex"]
    try:
        check_internally_disjoint(host, v, cert.system)
    except InvalidPathSystem as exc:
        problems.append(f"system: {exc}")
    paths = set(cert.system.paths)
    if set(cert.assignment) != paths:
        problems.append("assignment does not cover exactly the paths of the system")
    used = []
    for p, el in cert.assignment.items():
        if p not in paths:
            continue
        if el == (r, v):
            if p != (r, v):
                problems.append(f"edge rv assigned to path {p!r}")
        elif el not in p[1:-1]:
            problems.append(f"{el!r} is not an internal vertex of {p!r}")
        used.append(el)
    if len(set(used)) != len(used):
        problems.append("assignment is not injective")
    elements = set(cert.separation.vertices)
    if cert.separation.uses_root_edge:
        elements.add((r, v))
    if set(used) != elements:
        problems.append("separation elements differ from the assigned elements")
    if not cert.separation.separates(D):
        problems.append("separation does not meet every r->v path")
    return problems


def verify_certificate(D: RootedDigraph, cert: MengerCertificate, host: RootedDigraph | None = None) -> None:
    problems = certificate_problems(D, cert, host)
    if problems:
        raise CertificateError(f"certificate for {cert.target!r}: " + "; ".join(problems))


# -- flow-backed operations ---------------------------------------------------------


def _require_target(D: RootedDigraph, v) -> None:
    if v not in D.vertices:
        raise KeyError(f"{v!r} is not a vertex")
    if v == D.root:
        raise ValueError("target must differ from the root")


def _rv_network(D: RootedDigraph, v, tails: Iterable | None = None) -> DisjointPaths:
    """r->v systems of D - rv as source->sink flow on V - {r, v}.

    Sources are the out-neighbours of r, sinks the in-neighbours of v (or the
    given ``tails``).
    """
    r = D.root
    inner = [x for x in D.vertices if x != r and x != v]
    edges = [(a, b) for a, b in D.edges if a != r and b != v and a != v]
    sources = [x for x in D.out_neighbors(r) if x != v]
    sinks = [x for x in (D.in_neighbors(v) if tails is None else tails) if x != r]
    return DisjointPaths(inner, edges, sources, sinks)


def local_connectivity(D: RootedDigraph, v) -> int:
    _require_target(D, v)
    return _rv_network(D, v).maximize() + int(D.has_edge(D.root, v))


def _certificate_from_network(D: RootedDigraph, v, net: DisjointPaths) -> MengerCertificate:
    r = D.root
    cut = set(net.cut())
    paths = []
    assignment = {}
    for inner in net.paths():
        p = (r, *inner, v)
        hit = [x for x in inner if x in cut]
        if len(hit) != 1:
            raise AssertionError("residual cut does not pick one vertex per path")
        paths.append(p)
        assignment[p] = hit[0]
    uses = D.has_edge(r, v)
    if uses:
        paths.append((r, v))
        assignment[(r, v)] = (r, v)
    return MengerCertificate(v, PathSystem(paths), Separation(v, frozenset(cut), uses), assignment)


def max_system(D: RootedDigraph, v) -> MengerCertificate:
    """A maximum internally disjoint r->v system with its residual-cut separation.

    The cut is the one nearest to r. When rv is an edge, the path (r, v) is in the
    system and is assigned the edge itself.
    """
    _require_target(D, v)
    net = _rv_network(D, v)
    net.maximize()
    return _certificate_from_network(D, v, net)


class NotMaximum(ValueError):
    pass


def certify_system(D: RootedDigraph, v, system: PathSystem) -> MengerCertificate:
    """Certificate for a given system, or NotMaximum if it can be enlarged in D."""
    _require_target(D, v)
    check_internally_disjoint(D, v, system)
    r = D.root
    has_rv = D.has_edge(r, v)
    if has_rv and (r, v) not in system.paths:
        raise NotMaximum("the edge rv is not used")
    net = _rv_network(D, v)
    net.load([p[1:-1] for p in system if p != (r, v)])
    if net.augment():
        raise NotMaximum(f"system of size {len(system)} is not maximum")
    return _certificate_from_network(D, v, net)


def is_strongly_maximal(D: RootedDigraph, v, system: PathSystem) -> bool:
    check_internally_disjoint(D, v, system)
    return len(system) == local_connectivity(D, v)


@dataclass(frozen=True)
class Coverage:
    """Outcome of a covering request: a system with exact last edges, or a refutation."""

    edges: frozenset
    system: PathSystem | None
    certificate: MengerCertificate

    @property
    def ok(self) -> bool:
        return self.system is not None

    @property
    def refutation(self) -> Separation | None:
        return None if self.ok else self.certificate.separation


def covering_system(D: RootedDigraph, v, I: Iterable[Edge]) -> Coverage:
    """Decide whether the in-edges ``I`` of v are the exact last edges of some system.

    Works in D with in(v) restricted to I: coverable iff that digraph has local
    connectivity |I|. Otherwise its maximum-system separation is the refutation.
    """
    _require_target(D, v)
    I = frozenset(tuple(e) for e in I)
    if not I <= D.in_edges(v):
        raise ValueError("I is not a subset of in(v)")
    restricted = D.without_edges(D.in_edges(v) - I)
    cert = max_system(restricted, v)
    if len(cert.system) == len(I):
        assert cert.system.last_edges == I
        return Coverage(I, cert.system, cert)
    return Coverage(I, None, cert)


def fan_to(D: RootedDigraph, X: Iterable, exclude_edges: Iterable[Edge] = ()) -> PathSystem | None:
    """An r-fan with last-vertex set exactly X, or None if there is none."""
    r = D.root
    X = frozenset(X)
    if r in X:
        raise ValueError("X must avoid the root")
    excluded = frozenset(exclude_edges)
    edges = [(a, b) for a, b in D.edges if a != r and a not in X and (a, b) not in excluded]
    sources = [x for x in D.out_neighbors(r) if (r, x) not in excluded]
    net = DisjointPaths([x for x in D.vertices if x != r], edges, sources, X)
    if net.maximize() < len(X):
        return None
    return PathSystem([(r, *p) for p in net.paths()], Kind.FAN)


# -- X->Y linkage -------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkOutcome:
    """Result of one augmenting-walk attempt: exactly one field pair is set."""

    augmented: PathSystem | None = None
    separation: frozenset | None = None
    assignment: Mapping | None = field(default=None, hash=False)

    @property
    def blocked(self) -> bool:
        return self.separation is not None


def _xy_network(D, X, Y) -> DisjointPaths:
    X, Y = frozenset(X), frozenset(Y)
    edges = [(a, b) for a, b in D.edges if b not in X and a not in Y]
    return DisjointPaths(D.vertices, edges, X & D.vertices, Y & D.vertices)


def augmenting_walk(D, X, Y, P: PathSystem) -> WalkOutcome:
    """Either enlarge the disjoint X->Y system P by one path, or separate X from Y
    with exactly one vertex from each path of P."""
    check_disjoint(D, X, Y, P)
    net = _xy_network(D, X, Y)
    net.load(P.paths)
    if net.augment():
        return WalkOutcome(augmented=PathSystem(net.paths(), Kind.DISJOINT))
    cut = set(net.cut())
    assignment = {}
    for p in P:
        hit = [x for x in p if x in cut]
        if len(hit) != 1:
            raise AssertionError("residual cut does not pick one vertex per path")
        assignment[p] = hit[0]
    return WalkOutcome(separation=frozenset(cut), assignment=assignment)


def pym_link(D, X, Y, P: PathSystem, Q: PathSystem) -> PathSystem:
    """Disjoint X->Y system R inside the union of P and Q whose first vertices
    contain those of P and whose last vertices contain those of Q.

    Starts from P and covers the missing last vertices of Q one at a time with
    residual walks that may release a last vertex not needed by Q but never
    release a first vertex.
    """
    check_disjoint(D, X, Y, P)
    check_disjoint(D, X, Y, Q)
    union = P.edges | Q.edges
    X, Y = frozenset(X), frozenset(Y)
    net = DisjointPaths(D.vertices, union, X & D.vertices, Y & D.vertices)
    net.load(P.paths)
    wanted = Q.last_vertices
    covered = set(P.last_vertices)
    for y in sorted(wanted - covered):
        releasable = covered - wanted
        if not net.reroute_to(y, releasable):
            raise AssertionError(f"linkage failed to reach {y!r}")
        covered = {p[-1] for p in net.paths()}
    R = PathSystem(net.paths(), Kind.DISJOINT)
    assert R.first_vertices >= P.first_vertices and R.last_vertices >= Q.last_vertices
    return R
