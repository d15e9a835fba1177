import pytest

from conftest import digraph
from flames import oracle
from flames.bubbles import (
    Bubble,
    HOLDS,
    NOT_APPLICABLE,
    BubbleRefutation,
    breaks_on_every_edge,
    bubble_from_separation,
    bubble_union,
    check_bubble,
    coloop_edge_check,
    entrance,
    fan_to_entrance_plus,
    interior,
    is_bubble,
    largeness_check,
    max_bubble,
    minus_root_edge,
    superlarge_check,
)
from flames.flame import lovasz_trim, maximal_quasi_flame
from flames.menger import Kind, PathSystem, check_fan, max_system, verify_certificate


def test_entrance(G2, G6):
    assert entrance(G2, {"a", "b", "v"}) == {"a", "b"}
    assert entrance(G2, set()) == frozenset()
    assert entrance(G6, {"a", "b", "c", "v"}) == {"a"}
    assert interior(G6, {"a", "b", "c", "v"}) == {"b", "c", "v"}
    with pytest.raises(ValueError):
        entrance(G6, {"r"})


def test_singleton_is_bubble(G1, G2, G6):
    for D in (G1, G2, G6):
        assert isinstance(is_bubble(D, "v", {"v"}), Bubble)
    assert is_bubble(G1, "v", {"v"}).witness.paths == (("v",),)
    assert is_bubble(G6, "c", {"c"}).witness.paths == (("c",),)


def test_is_bubble_examples(G2, G6):
    b = is_bubble(G2, "v", {"a", "b", "v"})
    assert isinstance(b, Bubble) and b.witness.paths == (("a", "v"), ("b", "v"))
    # b and c reach v along their own edges, so this set is a bubble after all
    b = is_bubble(G6, "v", {"b", "c", "v"})
    assert isinstance(b, Bubble) and b.entrance == {"b", "c"}
    assert oracle.brute_is_bubble(G6, "v", {"b", "c", "v"})


def test_is_bubble_refutation():
    D = digraph(("r", "a"), ("r", "b"), ("a", "c"), ("b", "c"), ("c", "v"))
    res = is_bubble(D, "v", {"a", "b", "c", "v"})
    assert isinstance(res, BubbleRefutation)
    assert res.separator == {"c"}
    assert not oracle.brute_is_bubble(D, "v", {"a", "b", "c", "v"})


def test_bubble_union(G6):
    B0 = is_bubble(G6, "v", {"a", "b", "c", "v"})
    assert bubble_union(G6, [B0]).vertices == B0.vertices
    B1 = is_bubble(G6, "b", {"b"})
    U = bubble_union(G6, [B0, B1])
    assert U.vertices == {"a", "b", "c", "v"}
    check_bubble(G6, U)
    with pytest.raises(ValueError):
        bubble_union(G6, [B1, is_bubble(G6, "v", {"v"})])


def test_bubble_union_same_target(G2):
    B0 = is_bubble(G2, "v", {"b", "v"})
    B1 = is_bubble(G2, "v", {"a", "v"})
    U = bubble_union(G2, [B0, B1])
    assert U.vertices == {"a", "b", "v"}
    assert isinstance(is_bubble(G2, "v", U.vertices), Bubble)


def test_bubble_from_separation(G1, G2, G6):
    assert bubble_from_separation(G1, "v", max_system(G1, "v")).vertices == {"v"}
    assert bubble_from_separation(G2, "v", max_system(G2, "v")).vertices == {"a", "b", "v"}
    assert bubble_from_separation(G6, "v", max_system(G6, "v")).vertices == {"a", "b", "c", "v"}


def test_max_bubble_examples(G1, G2, G6):
    for D, B, ent in ((G1, {"v"}, set()), (G2, {"a", "b", "v"}, {"a", "b"}), (G6, {"a", "b", "c", "v"}, {"a"})):
        bub = max_bubble(D, "v")
        assert bub.vertices == B == oracle.brute_max_bubble(D, "v")
        assert entrance(minus_root_edge(D, "v"), bub.vertices) == ent
        verify_certificate(D, bub.certificate)


def test_largeness_examples(G2, G6):
    assert largeness_check(G6, G6).large
    v = largeness_check(G6.without_edges([("c", "v")]), G6)
    assert v.large and set(v.certificates) == {"a", "b", "c", "v"}
    assert oracle.brute_largeness(G6.without_edges([("c", "v")]), G6)
    v = largeness_check(G2.without_edges([("a", "v")]), G2)
    assert not v.large and v.violation == ("a", "v")
    assert not oracle.brute_largeness(G2.without_edges([("a", "v")]), G2)
    with pytest.raises(ValueError):
        largeness_check(G2, G6)


def test_largeness_certificates_hold_in_both(G6):
    L = G6.without_edges([("c", "v")])
    for v, cert in largeness_check(L, G6).certificates.items():
        verify_certificate(G6, cert, host=L)
        verify_certificate(L, cert)


def test_fan_to_entrance_plus(G1, G2, G6):
    D = G2.add_edge("r", "c")
    fan = fan_to_entrance_plus(D, "v", "c")
    assert fan.paths == (("r", "a"), ("r", "b"), ("r", "c"))
    D = G1.add_edge("r", "u")
    assert fan_to_entrance_plus(D, "v", "u").paths == (("r", "u"),)
    D = G6.add_edge("r", "b")
    bub = max_bubble(D, "v")
    for u in sorted(D.targets):
        if u in bub.vertices:
            with pytest.raises(ValueError):
                fan_to_entrance_plus(D, "v", u)
            continue
        fan = fan_to_entrance_plus(D, "v", u)
        check_fan(minus_root_edge(D, "v"), "r", fan)
        assert fan.last_vertices == entrance(minus_root_edge(D, "v"), bub.vertices) | {u}


def test_check_bubble_rejects_bad_witness(G2):
    bad = Bubble("v", frozenset({"a", "b", "v"}), frozenset({"a", "b"}), PathSystem([("a", "v")], Kind.INFAN))
    with pytest.raises(ValueError):
        check_bubble(G2, bad)


def test_coloop_edge_harness():
    H = digraph(("r", "a"), ("a", "w"), ("w", "v"), ("r", "u"))
    D = H.add_edge("u", "w")
    assert max_bubble(H, "v").vertices == {"a", "w", "v"}
    res = coloop_edge_check(D, H, H, "v", "u", "w")
    assert res.status == HOLDS and res.checked == 2
    D2 = D.add_edge("a", "u")
    assert coloop_edge_check(D2, H, H, "v", "a", "u").status == NOT_APPLICABLE
    assert coloop_edge_check(D, D, H, "v", "u", "w").status == NOT_APPLICABLE
    with pytest.raises(ValueError):
        coloop_edge_check(H, D, H, "v", "u", "w")


def test_superlarge_harness(G2):
    F = maximal_quasi_flame(G2)
    assert breaks_on_every_edge(G2, F) is None
    assert superlarge_check(G2, F, lovasz_trim(F)).status == HOLDS
    # r->a->w->v with a spare path through u: adding uw to H costs nothing
    H = digraph(("r", "a"), ("a", "w"), ("w", "v"), ("r", "u"))
    D = H.add_edge("u", "w")
    assert breaks_on_every_edge(D, H) == ("u", "w")
    assert superlarge_check(D, H, H).status == NOT_APPLICABLE
