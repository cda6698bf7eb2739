"""Structural comparison of models.

Statecharts are compared ignoring names: element kinds, containment and
next/rnext structure must correspond under some bijection.  Both models are
turned into labelled digraphs, refined jointly by colour refinement
(iterated multiset hashing of neighbourhoods), and a colour-respecting
bijection is then confirmed by backtracking.
"""

from __future__ import annotations

import hashlib

from .model import PetriNet, ScModel


class _Graph:
    __slots__ = ("kinds", "out", "inn")

    def __init__(self, kinds):
        self.kinds = list(kinds)
        self.out = [set() for _ in self.kinds]
        self.inn = [set() for _ in self.kinds]

    def edge(self, u: int, label: str, v: int) -> None:
        self.out[u].add((label, v))
        self.inn[v].add((label, u))

    def n_edges(self) -> int:
        return sum(len(o) for o in self.out)


def statechart_graph(sc: ScModel) -> _Graph:
    elems = (list(sc.basics.values()) + list(sc.ors.values()) + list(sc.ands.values())
             + list(sc.hyperedges.values()) + list(sc.statecharts))
    index = {e: i for i, e in enumerate(elems)}
    g = _Graph(e.kind for e in elems)
    for c in list(sc.ors.values()) + list(sc.ands.values()):
        for child in c.contains:
            g.edge(index[c], "contains", index[child])
    for b in sc.basics.values():
        for e in b.next:
            g.edge(index[b], "next", index[e])
    for e in sc.hyperedges.values():
        for b in e.next:
            g.edge(index[e], "next", index[b])
    for chart in sc.statecharts:
        g.edge(index[chart], "top", index[chart.top_state])
    return g


def _refine(graphs: list[_Graph]) -> list[list[int]]:
    """Joint colour refinement; colours are comparable across the graphs."""
    kinds = sorted({k for g in graphs for k in g.kinds})
    colors = [[kinds.index(k) for k in g.kinds] for g in graphs]
    n_classes = len(kinds)
    while True:
        sigs = []
        for g, col in zip(graphs, colors):
            sigs.append([
                (col[u],
                 tuple(sorted((lab, col[v]) for lab, v in g.out[u])),
                 tuple(sorted((lab, col[v]) for lab, v in g.inn[u])))
                for u in range(len(g.kinds))
            ])
        palette = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        colors = [[palette[s] for s in ss] for ss in sigs]
        if len(palette) == n_classes:
            return colors
        n_classes = len(palette)


def _find_bijection(a: _Graph, ca: list[int], b: _Graph, cb: list[int]):
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(cb):
        by_color.setdefault(c, []).append(v)
    class_size = {c: len(vs) for c, vs in by_color.items()}

    # place rigid nodes first, then grow along edges so constraints bite early
    order = []
    placed = set()
    for start in sorted(range(len(ca)), key=lambda u: (class_size[ca[u]], u)):
        if start in placed:
            continue
        stack = [start]
        while stack:
            u = stack.pop()
            if u in placed:
                continue
            placed.add(u)
            order.append(u)
            nbrs = {v for _, v in a.out[u]} | {v for _, v in a.inn[u]}
            stack.extend(sorted((v for v in nbrs if v not in placed),
                                key=lambda v: (-class_size[ca[v]], v)))

    fwd: dict[int, int] = {}
    back: dict[int, int] = {}

    def consistent(u: int, v: int) -> bool:
        for lab, w in a.out[u]:
            if w in fwd and (lab, fwd[w]) not in b.out[v]:
                return False
            if w == u and (lab, v) not in b.out[v]:
                return False
        for lab, w in a.inn[u]:
            if w in fwd and (lab, fwd[w]) not in b.inn[v]:
                return False
        for lab, x in b.out[v]:
            if x in back and (lab, back[x]) not in a.out[u]:
                return False
            if x == v and (lab, u) not in a.out[u]:
                return False
        for lab, x in b.inn[v]:
            if x in back and (lab, back[x]) not in a.inn[u]:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for v in by_color[ca[u]]:
            if v in back or not consistent(u, v):
                continue
            fwd[u] = v
            back[v] = u
            if search(i + 1):
                return True
            del fwd[u]
            del back[v]
        return False

    return dict(fwd) if search(0) else None


def isomorphic_graphs(a: _Graph, b: _Graph) -> bool:
    if len(a.kinds) != len(b.kinds) or a.n_edges() != b.n_edges():
        return False
    ca, cb = _refine([a, b])
    if sorted(ca) != sorted(cb):
        return False
    return _find_bijection(a, ca, b, cb) is not None


def isomorphic_statecharts(a: ScModel, b: ScModel) -> bool:
    """True iff the two statecharts have the same shape, names ignored."""
    return isomorphic_graphs(statechart_graph(a), statechart_graph(b))


def isomorphic_nets(a: PetriNet, b: PetriNet) -> bool:
    """Name-preserving equality of two nets' structure."""
    def shape(pn):
        places = sorted(p.name for p in pn.places.values())
        arcs = sorted((t.name, tuple(sorted(p.name for p in t.prep)),
                       tuple(sorted(p.name for p in t.postp)))
                      for t in pn.transitions.values())
        return places, arcs
    return shape(a) == shape(b)


def subtree_digests(sc: ScModel) -> dict:
    """Name-free digest of each state's containment subtree."""
    digests: dict = {}

    def digest(state) -> str:
        d = digests.get(state)
        if d is not None:
            return d
        h = hashlib.blake2b(state.kind.encode(), digest_size=12)
        if state.kind != "basic":
            for child in sorted(digest(c) for c in state.contains):
                h.update(b"(" + child.encode() + b")")
        d = digests[state] = h.hexdigest()
        return d

    # deepest first, so recursion stays shallow
    pending = list(sc.states())
    depth = {}
    for s in pending:
        n, cur = 0, s.rcontains
        while cur is not None:
            n += 1
            cur = cur.rcontains
        depth[s] = n
    for s in sorted(pending, key=lambda s: -depth[s]):
        digest(s)
    return digests
