"""Vertex-flames, largeness and Erdős–Menger separations in finite rooted digraphs."""

from .bubbles import (
    Bubble,
    BubbleRefutation,
    LargenessVerdict,
    LemmaCheck,
    LemmaViolation,
    bubble_from_separation,
    bubble_union,
    coloop_edge_check,
    entrance,
    fan_to_entrance_plus,
    interior,
    is_bubble,
    largeness_check,
    max_bubble,
    superlarge_check,
)
from .digraph import Digraph, DigraphError, RootedDigraph, SplitDigraph, contract, load, reachable, split, to_dot
from .flame import (
    Construction,
    FlameReport,
    construct_large_flame,
    flame_grow,
    is_flame,
    is_quasi_flame,
    lovasz_trim,
    maximal_quasi_flame,
    prefix_construct,
    quasi_flame_transfer_check,
)
from .menger import (
    MengerCertificate,
    PathSystem,
    Separation,
    augmenting_walk,
    covering_system,
    is_strongly_maximal,
    local_connectivity,
    max_system,
    pym_link,
)

__version__ = "0.1.0"

__all__ = [
    "Bubble",
    "BubbleRefutation",
    "Construction",
    "Digraph",
    "DigraphError",
    "FlameReport",
    "LargenessVerdict",
    "LemmaCheck",
    "LemmaViolation",
    "MengerCertificate",
    "PathSystem",
    "RootedDigraph",
    "Separation",
    "SplitDigraph",
    "augmenting_walk",
    "bubble_from_separation",
    "bubble_union",
    "coloop_edge_check",
    "construct_large_flame",
    "contract",
    "covering_system",
    "entrance",
    "fan_to_entrance_plus",
    "flame_grow",
    "interior",
    "is_bubble",
    "is_flame",
    "is_quasi_flame",
    "is_strongly_maximal",
    "largeness_check",
    "load",
    "local_connectivity",
    "lovasz_trim",
    "max_bubble",
    "max_system",
    "maximal_quasi_flame",
    "prefix_construct",
    "pym_link",
    "quasi_flame_transfer_check",
    "reachable",
    "split",
    "superlarge_check",
    "to_dot",
]
