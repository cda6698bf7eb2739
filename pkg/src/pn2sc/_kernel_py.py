"""Pure-Python scheduler kernels.

``_kernel.pyx`` mirrors this module line for line with C-typed locals; the
two must stay behaviourally identical (tests run both).
"""

from heapq import heappop, heappush

COMPILED = False


def post1_guard(t):
    """(q, r) when t has one pre-place q, one post-place r, and q, r share
    no producing and no consuming transition; else None."""
    prep = t.prep
    postp = t.postp
    if len(prep) != 1 or len(postp) != 1:
        return None
    for q in prep:
        pass
    for r in postp:
        pass
    if q.pret.isdisjoint(r.pret) and q.postt.isdisjoint(r.postt):
        return q, r
    return None


def group_guard(places):
    """More than one place, all with identical pret and identical postt."""
    if len(places) < 2:
        return False
    first = None
    for p in places:
        if first is None:
            first = p
        elif p.pret != first.pret or p.postt != first.postt:
            return False
    return True


def neighbourhood(places):
    out = set()
    for p in places:
        out.update(p.pret)
        out.update(p.postt)
    return out


def refresh(transitions, rank, matching, heaps, queued):
    """Re-evaluate all three guards on ``transitions``.

    ``matching[i]`` is the set of transitions whose rule-i guard holds;
    ``heaps[i]`` holds (rank, uid, t) entries for them, ``queued[i]`` the
    transitions currently on that heap.  Returns guard evaluations done.
    """
    attempts = 0
    for t in transitions:
        if not t.live:
            for m in matching:
                m.discard(t)
            continue
        flags = (post1_guard(t) is not None, group_guard(t.prep), group_guard(t.postp))
        attempts += 3
        for i in range(3):
            if flags[i]:
                matching[i].add(t)
                if t not in queued[i]:
                    queued[i].add(t)
                    heappush(heaps[i], (rank[t], t.uid, t))
            else:
                matching[i].discard(t)
    return attempts


def select(heap, matching, queued):
    """Lowest-ranked transition of ``heap`` still in ``matching``, or None."""
    while heap:
        t = heap[0][2]
        if t in matching:
            return t
        heappop(heap)
        queued.discard(t)
    return None
