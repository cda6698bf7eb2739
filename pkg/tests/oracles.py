"""Reference implementations the production code is checked against.

Deliberately naive: linear scans, full rescans, unpruned search.
"""

from pn2sc.reduce import APPLY, Match, candidate_order


def scan_or(sc, name):
    hits = [o for o in sc.ors.values() if o.name == name]
    return hits[0] if hits else None


def rebuild_links(pn):
    """Recompute place-side link sets from transition-side ones."""
    pret = {p: set() for p in pn.places.values()}
    postt = {p: set() for p in pn.places.values()}
    for t in pn.transitions.values():
        for p in t.prep:
            postt[p].add(t)
        for p in t.postp:
            pret[p].add(t)
    return pret, postt


def _post1(t):
    if len(t.prep) != 1 or len(t.postp) != 1:
        return None
    (q,), (r,) = tuple(t.prep), tuple(t.postp)
    if len(q.pret & r.pret) == 0 and len(q.postt & r.postt) == 0:
        return (q, r)
    return None


def _group(places):
    if len(places) <= 1:
        return None
    ps = list(places)
    if all(ps[0].pret == p2.pret and ps[0].postt == p2.postt for p2 in ps):
        return tuple(sorted(ps, key=lambda p: (p.name, p.uid)))
    return None


def naive_run(pn, sc, seed=None):
    """Full rescan of every transition against every guard at each step."""
    order = candidate_order(pn, seed)
    trace = []
    while True:
        chosen = None
        for rule, guard in (("Post1", _post1),
                            ("Post2", lambda t: _group(t.prep)),
                            ("Post3", lambda t: _group(t.postp))):
            for t in order:
                if not t.live:
                    continue
                bound = guard(t)
                if bound is not None:
                    chosen = Match(rule, t, bound)
                    break
            if chosen:
                break
        if chosen is None:
            return trace
        trace.append(chosen.describe())
        APPLY[chosen.rule](pn, sc, chosen)


def sc_elements(sc):
    elems = (list(sc.basics.values()) + list(sc.ors.values()) + list(sc.ands.values())
             + list(sc.hyperedges.values()) + list(sc.statecharts))
    edges = set()
    for c in list(sc.ors.values()) + list(sc.ands.values()):
        for child in c.contains:
            edges.add(("contains", c, child))
    for b in sc.basics.values():
        for e in b.next:
            edges.add(("next", b, e))
    for e in sc.hyperedges.values():
        for b in e.next:
            edges.add(("next", e, b))
    for chart in sc.statecharts:
        edges.add(("top", chart, chart.top_state))
    return elems, edges


def brute_force_isomorphic(a, b):
    """Kind-preserving bijection search with edge checks, no refinement."""
    ea, edges_a = sc_elements(a)
    eb, edges_b = sc_elements(b)
    if len(ea) != len(eb) or len(edges_a) != len(edges_b):
        return False
    if sorted(e.kind for e in ea) != sorted(e.kind for e in eb):
        return False
    mapping = {}
    used = set()

    def ok():
        for lab, u, v in edges_a:
            if u in mapping and v in mapping and (lab, mapping[u], mapping[v]) not in edges_b:
                return False
        return True

    def search(i):
        if i == len(ea):
            return all((lab, mapping[u], mapping[v]) in edges_b for lab, u, v in edges_a)
        x = ea[i]
        for y in eb:
            if y in used or y.kind != x.kind:
                continue
            mapping[x] = y
            used.add(y)
            if ok() and search(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return search(0)
