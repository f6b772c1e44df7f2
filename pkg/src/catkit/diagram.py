"""Diagrams as labeled shape graphs and commutativity checking.

A diagram commutes when for every ordered pair of nodes all directed paths
between them compose to the same morphism.  Cyclic shape graphs have
infinitely many paths but only finitely many composite values, so the check
runs as a least fixpoint of single-edge extension over composite sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import FinCategory
from .errors import CheckError


@dataclass(frozen=True)
class Diagram:
    category: FinCategory
    nodes: dict  # node id -> object name
    edges: tuple  # (src node, dst node, morphism name)


@dataclass(frozen=True)
class CommutativityVerdict:
    commutative: bool
    # on failure: (src node, dst node, composite 1, composite 2)
    witness: tuple | None = None
    # representative edge-label paths for the two composites
    witness_paths: tuple | None = None

    def __bool__(self):
        return self.commutative


def build_diagram(cat: FinCategory, nodes, edges) -> Diagram:
    """Validate node labels and edge endpoints against the category."""
    nodes = dict(nodes)
    for n, obj in nodes.items():
        if not cat.has_object(obj):
            raise CheckError("UnknownLabel", f"node {n} labeled with unknown object {obj!r}")
    checked = []
    for src, dst, m in edges:
        if src not in nodes or dst not in nodes:
            raise CheckError("UnknownLabel", f"edge {m} joins undeclared nodes {src} -> {dst}")
        md = cat.mor(m)
        if (md.dom, md.cod) != (nodes[src], nodes[dst]):
            raise CheckError(
                "EndpointMismatch",
                f"edge {m}: {md.dom} -> {md.cod} placed between nodes labeled "
                f"{nodes[src]} and {nodes[dst]}",
                witness=(src, dst, m),
            )
        checked.append((src, dst, m))
    return Diagram(cat, nodes, tuple(checked))


def _path_composites(d: Diagram):
    """Least fixpoint: (src, dst) -> {composite name: representative path}.

    Only nonempty paths are recorded; representative paths are the first
    found under deterministic worklist order.
    """
    cat = d.category
    out_edges = {}
    for src, dst, m in d.edges:
        out_edges.setdefault(src, []).append((dst, m))
    reach = {}
    work = deque()
    for src, dst, m in d.edges:
        slot = reach.setdefault((src, dst), {})
        if m not in slot:
            slot[m] = (m,)
            work.append((src, dst, m))
    while work:
        src, mid, c = work.popleft()
        for dst, g in out_edges.get(mid, ()):
            c2 = cat.compose(g, c)
            slot = reach.setdefault((src, dst), {})
            if c2 not in slot:
                slot[c2] = reach[(src, mid)][c] + (g,)
                work.append((src, dst, c2))
    return reach


def achievable_composites(d: Diagram, src, dst) -> set:
    """Composites of all directed paths src -> dst.

    The empty path is admitted only from a node to itself, contributing the
    identity of its label; between distinct nodes identity edges must be
    drawn explicitly.
    """
    for n in (src, dst):
        if n not in d.nodes:
            raise CheckError("UnknownLabel", f"unknown node {n!r}")
    found = set(_path_composites(d).get((src, dst), ()))
    if src == dst:
        found.add(d.category.identity[d.nodes[src]])
    return found


def is_commutative(d: Diagram) -> CommutativityVerdict:
    """Check that all parallel paths agree; the witness is the first
    violating node pair in declaration order with its two smallest
    composites."""
    reach = _path_composites(d)
    node_list = list(d.nodes)
    for src in node_list:
        for dst in node_list:
            slot = dict(reach.get((src, dst), ()))
            if src == dst:
                ident = d.category.identity[d.nodes[src]]
                slot.setdefault(ident, ())
            if len(slot) > 1:
                m1, m2 = sorted(slot)[:2]
                return CommutativityVerdict(
                    False, witness=(src, dst, m1, m2), witness_paths=(slot[m1], slot[m2])
                )
    return CommutativityVerdict(True)
