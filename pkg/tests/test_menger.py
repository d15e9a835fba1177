import pytest

from conftest import digraph
from flames import oracle
from flames._flow import DisjointPaths, FlowError
from flames.digraph import Digraph
from flames.menger import (
    CertificateError,
    InvalidPathSystem,
    Kind,
    MengerCertificate,
    NotMaximum,
    PathSystem,
    Separation,
    augmenting_walk,
    certify_system,
    check_disjoint,
    covering_system,
    fan_to,
    is_strongly_maximal,
    local_connectivity,
    max_system,
    pym_link,
    verify_certificate,
)


def test_local_connectivity_examples(G1, G2, G6):
    assert local_connectivity(G1, "v") == 1
    assert local_connectivity(G2, "v") == 2 == oracle.brute_kappa(G2, "v")
    assert local_connectivity(G6, "v") == 1 == oracle.brute_kappa(G6, "v")
    with pytest.raises(KeyError):
        local_connectivity(G1, "x")
    with pytest.raises(ValueError):
        local_connectivity(G1, "r")


def test_max_system_examples(G1, G2, G6):
    c = max_system(G1, "v")
    assert c.system.paths == (("r", "v"),)
    assert c.separation == Separation("v", frozenset(), True)
    assert c.assignment[("r", "v")] == ("r", "v")

    c = max_system(G2, "v")
    assert c.system.paths == (("r", "a", "v"), ("r", "b", "v"))
    assert c.separation.vertices == {"a", "b"}
    assert c.assignment == {("r", "a", "v"): "a", ("r", "b", "v"): "b"}
    assert oracle.is_separable(G2, "v", c.system.paths)

    c = max_system(G6, "v")
    assert c.system.paths == (("r", "a", "b", "v"),)
    assert c.separation.vertices == {"a"}


def test_max_system_empty():
    D = digraph(("r", "a"), vertices=("v",))
    c = max_system(D, "v")
    assert len(c.system) == 0 and len(c.separation) == 0
    verify_certificate(D, c)


def test_certificate_round_trip_and_tampering(G2):
    c = max_system(G2, "v")
    again = MengerCertificate.from_dict(c.to_dict())
    verify_certificate(G2, again)
    data = c.to_dict()
    data["separation"]["vertices"] = ["a"]
    with pytest.raises(CertificateError):
        verify_certificate(G2, MengerCertificate.from_dict(data))
    with pytest.raises(CertificateError):
        MengerCertificate.from_dict({"target": "v"})


def test_separation_flag_must_match_root_edge(G1, G2):
    assert Separation("v", frozenset(), True).separates(G1)
    assert not Separation("v", frozenset(), False).separates(G1)
    assert not Separation("v", frozenset({"a", "b"}), True).separates(G2)
    assert Separation("v", frozenset({"a", "b"}), False).separates(G2)


def test_covering_system_examples(G2, G6):
    cov = covering_system(G2, "v", {("a", "v"), ("b", "v")})
    assert cov.ok and cov.system.paths == (("r", "a", "v"), ("r", "b", "v"))
    cov = covering_system(G6, "v", {("b", "v"), ("c", "v")})
    assert not cov.ok and cov.refutation.vertices == {"a"}
    cov = covering_system(G6, "v", ())
    assert cov.ok and len(cov.system) == 0
    with pytest.raises(ValueError):
        covering_system(G6, "v", {("a", "v")})


def test_strong_maximality(G2):
    assert is_strongly_maximal(G2, "v", PathSystem([("r", "a", "v"), ("r", "b", "v")]))
    assert not is_strongly_maximal(G2, "v", PathSystem([("r", "a", "v")]))
    empty = digraph(("r", "a"), vertices=("v",))
    assert is_strongly_maximal(empty, "v", PathSystem([]))
    with pytest.raises(InvalidPathSystem):
        is_strongly_maximal(G2, "v", PathSystem([("r", "a", "b", "v"), ("r", "b", "v")]))


def test_certify_system(G2):
    with pytest.raises(NotMaximum):
        certify_system(G2, "v", PathSystem([("r", "a", "b", "v")]))
    c = certify_system(G2, "v", PathSystem([("r", "a", "v"), ("r", "b", "v")]))
    verify_certificate(G2, c)


XY = Digraph({"x1", "x2", "y1", "y2"}, {("x1", "y1"), ("x2", "y1"), ("x2", "y2")})


def test_augmenting_walk_augments():
    out = augmenting_walk(XY, {"x1", "x2"}, {"y1", "y2"}, PathSystem([("x2", "y1")], Kind.DISJOINT))
    assert not out.blocked
    assert out.augmented.paths == (("x1", "y1"), ("x2", "y2"))


def test_augmenting_walk_separates_at_maximum():
    P = PathSystem([("x1", "y1"), ("x2", "y2")], Kind.DISJOINT)
    out = augmenting_walk(XY, {"x1", "x2"}, {"y1", "y2"}, P)
    assert out.blocked and out.augmented is None
    assert len(out.separation) == 2
    for p, x in out.assignment.items():
        assert x in p


def test_augmenting_walk_empty():
    out = augmenting_walk(Digraph(set(), set()), set(), set(), PathSystem([], Kind.DISJOINT))
    assert out.blocked and out.separation == frozenset()


def test_augmenting_walk_rejects_invalid():
    with pytest.raises(InvalidPathSystem):
        augmenting_walk(XY, {"x1"}, {"y1"}, PathSystem([("x2", "y2")], Kind.DISJOINT))


def test_pym_examples():
    P = PathSystem([("x2", "y1")], Kind.DISJOINT)
    assert pym_link(XY, {"x1", "x2"}, {"y1", "y2"}, P, P) == P
    D = Digraph({"x1", "x2", "a", "y1", "y2"}, {("x1", "a"), ("a", "y1"), ("x2", "a"), ("a", "y2")})
    R = pym_link(D, {"x1", "x2"}, {"y1", "y2"}, PathSystem([("x1", "a", "y1")], Kind.DISJOINT),
                 PathSystem([("x2", "a", "y2")], Kind.DISJOINT))
    assert R.paths == (("x1", "a", "y2"),)
    R = pym_link(XY, {"x1", "x2"}, {"y1", "y2"}, PathSystem([], Kind.DISJOINT),
                 PathSystem([("x2", "y2")], Kind.DISJOINT))
    assert R.paths == (("x2", "y2"),)


def test_singleton_paths_in_x_and_y():
    D = Digraph({"a", "b"}, {("a", "b")})
    P = PathSystem([("a",)], Kind.DISJOINT)
    check_disjoint(D, {"a"}, {"a", "b"}, P)
    out = augmenting_walk(D, {"a"}, {"a", "b"}, P)
    assert out.blocked


def test_fan_to(G2, G6):
    assert fan_to(G2, {"a", "b"}).paths == (("r", "a"), ("r", "b"))
    assert fan_to(G6, {"b", "c"}) is None
    assert fan_to(G6, set()).paths == ()


def test_flow_engine_rejects_bad_loads():
    net = DisjointPaths(["a", "b"], [("a", "b")], ["a"], ["b"])
    with pytest.raises(FlowError):
        net.load([("b", "a")])
    net.load([("a", "b")])
    assert net.value == 1
    assert net.cut() == ["a"]
    net = DisjointPaths(["a", "b"], [("a", "b")], ["a"], ["b"])
    with pytest.raises(FlowError):
        net.cut()
