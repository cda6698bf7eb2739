"""Source and target metamodels.

Both models are mutable workspaces.  Every element carries a stable integer
``uid`` (its creation index); names are plain attributes, looked up through
secondary indexes that the owning model keeps current across renames and
deletions.  All association ends are kept mutually inverse by the model
methods, so callers never touch the link sets directly.
"""

from __future__ import annotations

from typing import Iterator, Optional, Union


class InternalFault(RuntimeError):
    """A broken internal contract: stale reference, double delete, phase misuse."""


def fresh_name(base: str, taken) -> str:
    """Return ``base``, or ``base~k`` for the smallest k >= 1 that is free."""
    if not taken(base):
        return base
    k = 1
    while taken(f"{base}~{k}"):
        k += 1
    return f"{base}~{k}"


def _index_add(index: dict, name: str, elem) -> None:
    bucket = index.get(name)
    if bucket is None:
        index[name] = [elem]
    else:
        bucket.append(elem)


def _index_remove(index: dict, name: str, elem) -> None:
    bucket = index[name]
    bucket.remove(elem)
    if not bucket:
        del index[name]


def _index_get(index: dict, name: str):
    bucket = index.get(name)
    return bucket[0] if bucket else None


# --------------------------------------------------------------------------
# Petri nets


class Place:
    __slots__ = ("uid", "name", "pret", "postt", "live")

    def __init__(self, uid: int, name: str):
        self.uid = uid
        self.name = name
        self.pret: set[Transition] = set()
        self.postt: set[Transition] = set()
        self.live = True

    def __repr__(self):
        return f"Place({self.name!r})"


class Transition:
    __slots__ = ("uid", "name", "prep", "postp", "live")

    def __init__(self, uid: int, name: str):
        self.uid = uid
        self.name = name
        self.prep: set[Place] = set()
        self.postp: set[Place] = set()
        self.live = True

    def __repr__(self):
        return f"Transition({self.name!r})"


class PetriNet:
    """A structural Petri net (no tokens).

    ``places`` and ``transitions`` map uid to element in creation order.
    Names of places and transitions share one index, since name uniqueness
    is required jointly over both kinds.
    """

    def __init__(self):
        self.places: dict[int, Place] = {}
        self.transitions: dict[int, Transition] = {}
        self._names: dict[str, list] = {}
        self._uid = 0

    def _take_uid(self) -> int:
        self._uid += 1
        return self._uid - 1

    def add_place(self, name: str) -> Place:
        p = Place(self._take_uid(), name)
        self.places[p.uid] = p
        _index_add(self._names, name, p)
        return p

    def add_transition(self, name: str) -> Transition:
        t = Transition(self._take_uid(), name)
        self.transitions[t.uid] = t
        _index_add(self._names, name, t)
        return t

    def add_arc(self, src: Union[Place, Transition], dst: Union[Place, Transition]) -> None:
        """``place -> transition`` adds to prep; ``transition -> place`` to postp."""
        if isinstance(src, Place) and isinstance(dst, Transition):
            dst.prep.add(src)
            src.postt.add(dst)
        elif isinstance(src, Transition) and isinstance(dst, Place):
            src.postp.add(dst)
            dst.pret.add(src)
        else:
            raise ValueError(f"arc must connect a place and a transition: {src!r} -> {dst!r}")

    def element_named(self, name: str):
        return _index_get(self._names, name)

    def place_named(self, name: str) -> Optional[Place]:
        for e in self._names.get(name, ()):
            if isinstance(e, Place):
                return e
        return None

    def transition_named(self, name: str) -> Optional[Transition]:
        for e in self._names.get(name, ()):
            if isinstance(e, Transition):
                return e
        return None

    def names_in_use(self):
        return self._names.keys()

    def rename(self, elem: Union[Place, Transition], name: str) -> None:
        if not elem.live:
            raise InternalFault(f"rename of deleted {elem!r}")
        _index_remove(self._names, elem.name, elem)
        elem.name = name
        _index_add(self._names, name, elem)

    def delete_place(self, p: Place) -> None:
        if not p.live or self.places.get(p.uid) is not p:
            raise InternalFault(f"delete of dead or foreign {p!r}")
        for t in p.postt:
            t.prep.discard(p)
        for t in p.pret:
            t.postp.discard(p)
        p.pret.clear()
        p.postt.clear()
        p.live = False
        del self.places[p.uid]
        _index_remove(self._names, p.name, p)

    def delete_transition(self, t: Transition) -> None:
        if not t.live or self.transitions.get(t.uid) is not t:
            raise InternalFault(f"delete of dead or foreign {t!r}")
        for p in t.prep:
            p.postt.discard(t)
        for p in t.postp:
            p.pret.discard(t)
        t.prep.clear()
        t.postp.clear()
        t.live = False
        del self.transitions[t.uid]
        _index_remove(self._names, t.name, t)

    def size(self) -> int:
        return len(self.places) + len(self.transitions)

    def copy(self) -> "PetriNet":
        """Independent copy with the same uids and names."""
        new = PetriNet()
        new._uid = self._uid
        pmap = {}
        for p in self.places.values():
            q = Place(p.uid, p.name)
            new.places[q.uid] = q
            pmap[p] = q
        for t in self.transitions.values():
            u = Transition(t.uid, t.name)
            new.transitions[u.uid] = u
            for p in t.prep:
                new.add_arc(pmap[p], u)
            for p in t.postp:
                new.add_arc(u, pmap[p])
        for e in sorted(list(new.places.values()) + list(new.transitions.values()),
                        key=lambda e: e.uid):
            _index_add(new._names, e.name, e)
        return new

    def __repr__(self):
        return f"<PetriNet places={len(self.places)} transitions={len(self.transitions)}>"


# --------------------------------------------------------------------------
# Statecharts
#
# Containment goes through a small box object: a state points at the box it
# sits in, and the box knows its owning container.  Handing a whole box to a
# new owner moves every member in O(1), which keeps repeated OR merges from
# going quadratic.


class _Box:
    __slots__ = ("owner", "items")

    def __init__(self, owner):
        self.owner = owner
        self.items = set()


class _State:
    __slots__ = ("uid", "name", "live", "_box")

    kind = "state"

    @property
    def rcontains(self):
        box = self._box
        return box.owner if box is not None else None

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"


class Basic(_State):
    __slots__ = ("next", "rnext")
    kind = "basic"

    def __init__(self, uid: int, name: str):
        self.uid = uid
        self.name = name
        self.live = True
        self._box = None
        self.next: set[HyperEdge] = set()
        self.rnext: set[HyperEdge] = set()


class _Composite(_State):
    __slots__ = ("_own",)

    def __init__(self, uid: int, name: str):
        self.uid = uid
        self.name = name
        self.live = True
        self._box = None
        self._own = _Box(self)

    @property
    def contains(self) -> set:
        return self._own.items


class OrState(_Composite):
    __slots__ = ()
    kind = "or"


class AndState(_Composite):
    __slots__ = ()
    kind = "and"


class HyperEdge:
    __slots__ = ("uid", "name", "next", "rnext", "live")
    kind = "edge"

    def __init__(self, uid: int, name: str):
        self.uid = uid
        self.name = name
        self.live = True
        self.next: set[Basic] = set()
        self.rnext: set[Basic] = set()

    def __repr__(self):
        return f"HyperEdge({self.name!r})"


class Statechart:
    __slots__ = ("uid", "top_state", "live")
    kind = "statechart"

    def __init__(self, uid: int, top_state: AndState):
        self.uid = uid
        self.top_state = top_state
        self.live = True

    def __repr__(self):
        return f"Statechart(top={self.top_state!r})"


State = Union[Basic, OrState, AndState]


class ScModel:
    """Statechart workspace: registries of Basic, OR, AND and HyperEdge
    elements plus the Statechart roots.

    Basic, OR and HyperEdge names are indexed (each kind separately); AND
    names are not.
    """

    def __init__(self):
        self.basics: dict[int, Basic] = {}
        self.ors: dict[int, OrState] = {}
        self.ands: dict[int, AndState] = {}
        self.hyperedges: dict[int, HyperEdge] = {}
        self.statecharts: list[Statechart] = []
        self._basic_names: dict[str, list] = {}
        self._or_names: dict[str, list] = {}
        self._edge_names: dict[str, list] = {}
        self._uid = 0

    def _take_uid(self) -> int:
        self._uid += 1
        return self._uid - 1

    # creation

    def add_basic(self, name: str) -> Basic:
        b = Basic(self._take_uid(), name)
        self.basics[b.uid] = b
        _index_add(self._basic_names, name, b)
        return b

    def add_or(self, name: str) -> OrState:
        o = OrState(self._take_uid(), name)
        self.ors[o.uid] = o
        _index_add(self._or_names, name, o)
        return o

    def add_and(self, name: str) -> AndState:
        a = AndState(self._take_uid(), name)
        self.ands[a.uid] = a
        return a

    def add_hyperedge(self, name: str) -> HyperEdge:
        e = HyperEdge(self._take_uid(), name)
        self.hyperedges[e.uid] = e
        _index_add(self._edge_names, name, e)
        return e

    def add_statechart(self, top_state: AndState) -> Statechart:
        s = Statechart(self._take_uid(), top_state)
        self.statecharts.append(s)
        return s

    # lookup

    def lookup_or(self, name: str) -> Optional[OrState]:
        return _index_get(self._or_names, name)

    def lookup_basic(self, name: str) -> Optional[Basic]:
        return _index_get(self._basic_names, name)

    def lookup_hyperedge(self, name: str) -> Optional[HyperEdge]:
        return _index_get(self._edge_names, name)

    def rename_or(self, o: OrState, name: str) -> None:
        _index_remove(self._or_names, o.name, o)
        o.name = name
        _index_add(self._or_names, name, o)

    def states(self) -> Iterator[State]:
        yield from self.basics.values()
        yield from self.ors.values()
        yield from self.ands.values()

    def roots(self) -> list:
        return [s for s in self.states() if s._box is None]

    def size(self) -> int:
        return (len(self.basics) + len(self.ors) + len(self.ands)
                + len(self.hyperedges) + len(self.statecharts))

    # containment

    def move_into(self, container, state) -> None:
        """Put ``state`` into ``container``, leaving its previous container."""
        if isinstance(container, OrState):
            if not isinstance(state, (Basic, AndState)):
                raise InternalFault(f"OR may contain only Basic or AND, got {state!r}")
        elif isinstance(container, AndState):
            if not isinstance(state, OrState):
                raise InternalFault(f"AND may contain only OR, got {state!r}")
        else:
            raise InternalFault(f"not a container: {container!r}")
        old = state._box
        if old is not None:
            old.items.discard(state)
        box = container._own
        box.items.add(state)
        state._box = box

    def detach(self, state) -> None:
        box = state._box
        if box is not None:
            box.items.discard(state)
            state._box = None

    def absorb(self, target: OrState, sources) -> None:
        """Move the contents of every OR in ``sources`` into ``target``.

        The largest source box is handed over wholesale; the others are moved
        member by member.
        """
        sources = [s for s in sources if s is not target]
        if not sources:
            return
        big = max(sources, key=lambda s: len(s._own.items))
        if not target._own.items:
            box = big._own
            target._own, big._own = box, target._own
            box.owner = target
            big._own.owner = big
            sources = [s for s in sources if s is not big]
        for src in sources:
            for state in list(src._own.items):
                self.move_into(target, state)

    # hyperedge links

    def link_to_edge(self, b: Basic, e: HyperEdge) -> None:
        b.next.add(e)
        e.rnext.add(b)

    def link_from_edge(self, e: HyperEdge, b: Basic) -> None:
        e.next.add(b)
        b.rnext.add(e)

    # deletion

    def delete_or(self, o: OrState) -> None:
        if not o.live or self.ors.get(o.uid) is not o:
            raise InternalFault(f"delete of dead or foreign {o!r}")
        self.detach(o)
        for child in list(o._own.items):
            child._box = None
        o._own.items.clear()
        o.live = False
        del self.ors[o.uid]
        _index_remove(self._or_names, o.name, o)

    def copy(self) -> "ScModel":
        """Independent copy with the same uids and names."""
        new = ScModel()
        new._uid = self._uid
        smap = {}
        for reg, newreg, cls, index in (
                (self.basics, new.basics, Basic, new._basic_names),
                (self.ors, new.ors, OrState, new._or_names),
                (self.ands, new.ands, AndState, None),
                (self.hyperedges, new.hyperedges, HyperEdge, new._edge_names)):
            for e in reg.values():
                c = cls(e.uid, e.name)
                newreg[c.uid] = c
                smap[e] = c
                if index is not None:
                    _index_add(index, c.name, c)
        for s in self.states():
            if s._box is not None:
                new.move_into(smap[s.rcontains], smap[s])
        for b in self.basics.values():
            for e in b.next:
                new.link_to_edge(smap[b], smap[e])
        for e in self.hyperedges.values():
            for b in e.next:
                new.link_from_edge(smap[e], smap[b])
        for s in self.statecharts:
            c = Statechart(s.uid, smap[s.top_state])
            new.statecharts.append(c)
        return new

    def __repr__(self):
        return (f"<ScModel basics={len(self.basics)} ors={len(self.ors)} "
                f"ands={len(self.ands)} edges={len(self.hyperedges)} "
                f"statecharts={len(self.statecharts)}>")
