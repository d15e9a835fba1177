"""Certificate bundles for constructed large flames.

A bundle is a JSON document holding the input digest, the vertex order, the
output edges and, for every non-root v, a system inside the output E together
with a one-per-path separation in the input D. Re-verification needs only the
input digraph and the bundle:

* each system lies in E and its separation meets every r->v path of D, so E
  contains a separable system of D for every v (E is D-large);
* the last edges of each system are exactly in_E(v), so E is a flame.
"""

from __future__ import annotations

import json
from collections.abc import Mapping

from .digraph import DigraphError, RootedDigraph, canonical_json
from .flame import Construction
from .menger import CertificateError, MengerCertificate, certificate_problems

FORMAT = "flame-bundle/1"


def build_bundle(con: Construction, tag: str | None = None) -> dict:
    bundle = {
        "format": FORMAT,
        "input_hash": con.D.digest(),
        "order": list(con.order),
        "output_edges": [list(e) for e in con.E.sorted_edges()],
        "per_vertex": [],
    }
    for v in con.order:
        cert = con.certificates[v].to_dict()
        bundle["per_vertex"].append({"v": v, "system": cert["system"],
                                     "separation": cert["separation"], "assignment": cert["assignment"]})
    if tag is not None:
        bundle["tag"] = tag
    return bundle


def dumps(bundle: Mapping) -> str:
    return canonical_json(bundle) + "\n"


def bundle_problems(D: RootedDigraph, bundle: Mapping) -> list[str]:
    """Every reason the bundle fails to certify a D-large flame (empty if it does)."""
    problems = []
    try:
        if bundle.get("format") != FORMAT:
            problems.append(f"unknown format {bundle.get('format')!r}")
        if bundle["input_hash"] != D.digest():
            problems.append("input hash does not match the digraph")
        order = list(bundle["order"])
        if sorted(order) != list(D.targets):
            problems.append("order does not enumerate the non-root vertices")
        out = frozenset(tuple(e) for e in bundle["output_edges"])
        if not out <= D.edges:
            return problems + ["output edges are not edges of the input"]
        E = D.spanning(out)
        entries = bundle["per_vertex"]
        seen = set()
        for entry in entries:
            v = entry["v"]
            if v in seen:
                problems.append(f"vertex {v!r} certified twice")
            seen.add(v)
            cert = MengerCertificate.from_dict({"target": v, **entry})
            problems += [f"{v}: {p}" for p in certificate_problems(D, cert, host=E)]
            if v in D.vertices and v != D.root and cert.system.last_edges != E.in_edges(v):
                problems.append(f"{v}: last edges of the system differ from in_E({v})")
        missing = set(D.targets) - seen
        if missing:
            problems.append(f"no certificate for {sorted(missing)}")
    except (KeyError, TypeError, ValueError, CertificateError, DigraphError) as exc:
        problems.append(f"malformed bundle: {exc}")
    return problems


def read_bundle(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
