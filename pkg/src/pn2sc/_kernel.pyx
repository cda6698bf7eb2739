# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled scheduler kernels; see ``_kernel_py.py`` for the reference."""

from heapq import heappop, heappush

COMPILED = True


cpdef object post1_guard(object t):
    cdef set prep = t.prep
    cdef set postp = t.postp
    cdef object q = None, r = None
    if len(prep) != 1 or len(postp) != 1:
        return None
    for q in prep:
        pass
    for r in postp:
        pass
    cdef set qpret = q.pret, rpret = r.pret
    cdef set qpostt = q.postt, rpostt = r.postt
    if qpret.isdisjoint(rpret) and qpostt.isdisjoint(rpostt):
        return q, r
    return None


cpdef bint group_guard(set places):
    cdef object p, first = None
    cdef set pret = None, postt = None
    if len(places) < 2:
        return False
    for p in places:
        if first is None:
            first = p
            pret = p.pret
            postt = p.postt
        elif p.pret != pret or p.postt != postt:
            return False
    return True


cpdef set neighbourhood(object places):
    cdef set out = set()
    cdef object p
    for p in places:
        out.update(<set>p.pret)
        out.update(<set>p.postt)
    return out


cpdef Py_ssize_t refresh(object transitions, dict rank, list matching, list heaps, list queued):
    cdef Py_ssize_t attempts = 0
    cdef Py_ssize_t i
    cdef object t
    cdef bint f0, f1, f2, flag
    cdef set m, qd
    for t in transitions:
        if not t.live:
            for i in range(3):
                (<set>matching[i]).discard(t)
            continue
        f0 = post1_guard(t) is not None
        f1 = group_guard(<set>t.prep)
        f2 = group_guard(<set>t.postp)
        attempts += 3
        for i in range(3):
            flag = f0 if i == 0 else (f1 if i == 1 else f2)
            m = <set>matching[i]
            if flag:
                m.add(t)
                qd = <set>queued[i]
                if t not in qd:
                    qd.add(t)
                    heappush(heaps[i], (rank[t], t.uid, t))
            else:
                m.discard(t)
    return attempts


cpdef object select(list heap, set matching, set queued):
    cdef object t
    while heap:
        t = (<tuple>heap[0])[2]
        if t in matching:
            return t
        heappop(heap)
        queued.discard(t)
    return None
