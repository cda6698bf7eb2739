"""Plain-text formats for Petri nets (``.pn``) and statecharts (``.sc``).

Petri net format, one declaration per line::

    place q
    transition t
    arc q t        # place -> transition: q is a pre-place of t
    arc t r        # transition -> place: r is a post-place of t

Statechart format, containment by two-space indentation::

    statechart _TOPSTATE_
    and _TOPSTATE_
      or q_OR_r
        basic q
        basic r
    edge t : q -> r

``#`` starts a comment line; blank lines are ignored.  Identifiers are
nonempty, contain no whitespace or commas, and do not start with ``#``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .iso import subtree_digests
from .model import AndState, Basic, OrState, PetriNet, ScModel

_TOKEN = re.compile(r"\S+")
_KINDS = ("basic", "or", "and")


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(ValueError):
    """Raised with the full list of diagnostics when input is rejected."""

    def __init__(self, diagnostics: list[ParseDiagnostic], source: Optional[str] = None):
        self.diagnostics = diagnostics
        self.source = source
        prefix = f"{source}:" if source else ""
        super().__init__("\n".join(prefix + str(d) for d in diagnostics))


def valid_identifier(name: str) -> bool:
    return bool(name) and "," not in name and not name.startswith("#") \
        and not any(c.isspace() for c in name)


def _lines(text: str):
    """Yield (lineno, raw line, [(column, token), ...]) for content lines."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(raw)]
        yield lineno, raw, tokens


# --------------------------------------------------------------------------
# Petri nets


def parse_petri_net(text: str, warnings: Optional[list] = None) -> PetriNet:
    """Parse ``.pn`` text.  Raises :class:`ParseError` on any error."""
    errors: list[ParseDiagnostic] = []

    def error(line, col, msg):
        errors.append(ParseDiagnostic(line, col, msg))

    decls = []
    arcs = []
    seen: dict[str, int] = {}
    for lineno, _, tokens in _lines(text):
        col, keyword = tokens[0]
        if keyword in ("place", "transition"):
            if len(tokens) != 2:
                error(lineno, col, f"'{keyword}' takes exactly one name")
                continue
            ncol, name = tokens[1]
            if not valid_identifier(name):
                error(lineno, ncol, f"invalid identifier {name}")
            elif name in seen:
                error(lineno, ncol, f"duplicate name {name}")
            else:
                seen[name] = lineno
                decls.append((keyword, name))
        elif keyword == "arc":
            if len(tokens) != 3:
                error(lineno, col, "'arc' takes exactly two endpoints")
                continue
            arcs.append((lineno, tokens[1], tokens[2]))
        else:
            error(lineno, col, f"unknown keyword {keyword}")

    pn = PetriNet()
    for keyword, name in decls:
        if keyword == "place":
            pn.add_place(name)
        else:
            pn.add_transition(name)

    seen_arcs = set()
    for lineno, (scol, src), (dcol, dst) in arcs:
        a = pn.element_named(src)
        b = pn.element_named(dst)
        if a is None:
            error(lineno, scol, f"unknown element {src}")
        if b is None:
            error(lineno, dcol, f"unknown element {dst}")
        if a is None or b is None:
            continue
        if type(a) is type(b):
            error(lineno, scol, f"arc {src} {dst} connects two elements of the same kind")
            continue
        if (src, dst) in seen_arcs:
            if warnings is not None:
                warnings.append(ParseDiagnostic(lineno, scol, f"duplicate arc {src} {dst}", "warning"))
            continue
        seen_arcs.add((src, dst))
        pn.add_arc(a, b)

    if errors:
        raise ParseError(sorted(errors, key=lambda d: (d.line, d.column)))
    return pn


def serialize_petri_net(pn: PetriNet) -> str:
    lines = [f"place {n}" for n in sorted(p.name for p in pn.places.values())]
    lines += [f"transition {n}" for n in sorted(t.name for t in pn.transitions.values())]
    arcs = []
    for t in pn.transitions.values():
        arcs += [(p.name, t.name) for p in t.prep]
        arcs += [(t.name, p.name) for p in t.postp]
    lines += [f"arc {a} {b}" for a, b in sorted(arcs)]
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------
# Statecharts


def serialize_statechart(sc: ScModel) -> str:
    digests = subtree_digests(sc)

    def ordered(states):
        return sorted(states, key=lambda s: (digests[s], s.name))

    out = []
    for chart in sc.statecharts:
        out.append(f"statechart {chart.top_state.name}")
    stack = [(s, 0) for s in reversed(ordered(sc.roots()))]
    while stack:
        state, depth = stack.pop()
        out.append(f"{'  ' * depth}{state.kind} {state.name}")
        if state.kind != "basic":
            stack.extend((c, depth + 1) for c in reversed(ordered(state.contains)))
    for e in sorted(sc.hyperedges.values(), key=lambda e: e.name):
        parts = ["edge", e.name, ":"]
        srcs = ",".join(sorted(b.name for b in e.rnext))
        tgts = ",".join(sorted(b.name for b in e.next))
        if srcs:
            parts.append(srcs)
        parts.append("->")
        if tgts:
            parts.append(tgts)
        out.append(" ".join(parts))
    return "".join(line + "\n" for line in out)


def _indent_of(raw: str) -> int:
    return len(raw) - len(raw.lstrip(" "))


def parse_statechart(text: str) -> ScModel:
    """Parse ``.sc`` text.  Raises :class:`ParseError` on any error."""
    errors: list[ParseDiagnostic] = []

    def error(line, col, msg):
        errors.append(ParseDiagnostic(line, col, msg))

    sc = ScModel()
    headers = []
    edges = []
    stack: list = []  # stack[i] is the open state at depth i, or None if unusable
    for lineno, raw, tokens in _lines(text):
        if "\t" in raw[:len(raw) - len(raw.lstrip())]:
            error(lineno, 1, "tabs are not allowed in indentation")
            continue
        indent = _indent_of(raw)
        col, keyword = tokens[0]
        if keyword in ("statechart", "edge"):
            if indent:
                error(lineno, col, f"'{keyword}' must not be indented")
                continue
            if keyword == "statechart":
                if len(tokens) != 2:
                    error(lineno, col, "'statechart' takes exactly one name")
                else:
                    headers.append((lineno, tokens[1]))
            else:
                edges.append((lineno, tokens))
            continue
        if keyword not in _KINDS:
            error(lineno, col, f"unknown keyword {keyword}")
            continue
        if len(tokens) != 2:
            error(lineno, col, f"'{keyword}' takes exactly one name")
            continue
        if indent % 2:
            error(lineno, col, "indentation must be a multiple of two spaces")
            continue
        depth = indent // 2
        if depth > len(stack):
            error(lineno, col, "indentation skips a level")
            continue
        del stack[depth:]
        ncol, name = tokens[1]
        parent = stack[depth - 1] if depth else None
        state = None
        if not valid_identifier(name):
            error(lineno, ncol, f"invalid identifier {name}")
        elif keyword == "basic" and sc.lookup_basic(name) is not None:
            error(lineno, ncol, f"duplicate Basic name {name}")
        elif keyword == "or" and sc.lookup_or(name) is not None:
            error(lineno, ncol, f"duplicate OR name {name}")
        elif depth and parent is None:
            pass  # parent line already rejected
        elif isinstance(parent, Basic):
            error(lineno, col, "Basic may not contain states")
        elif isinstance(parent, AndState) and keyword != "or":
            error(lineno, col, "AND may contain only OR")
        elif isinstance(parent, OrState) and keyword == "or":
            error(lineno, col, "OR may contain only Basic or AND")
        else:
            state = {"basic": sc.add_basic, "or": sc.add_or, "and": sc.add_and}[keyword](name)
            if parent is not None:
                sc.move_into(parent, state)
        stack.append(state)

    for lineno, tokens in edges:
        words = [t for _, t in tokens]
        if len(words) < 4 or words[2] != ":" or "->" not in words[3:]:
            error(lineno, tokens[0][0], "expected 'edge NAME : SOURCES -> TARGETS'")
            continue
        arrow = words.index("->", 3)
        left, right = tokens[3:arrow], tokens[arrow + 1:]
        if len(left) > 1 or len(right) > 1:
            error(lineno, tokens[0][0], "endpoint lists must be comma-separated without spaces")
            continue
        ncol, name = tokens[1]
        if not valid_identifier(name):
            error(lineno, ncol, f"invalid identifier {name}")
            continue
        if sc.lookup_hyperedge(name) is not None:
            error(lineno, ncol, f"duplicate HyperEdge name {name}")
            continue
        ends = []
        ok = True
        for side in (left, right):
            basics = []
            for scol, tok in side:
                for b_name in tok.split(","):
                    b = sc.lookup_basic(b_name)
                    if b is None:
                        error(lineno, scol, f"unknown edge endpoint {b_name}")
                        ok = False
                    else:
                        basics.append(b)
            ends.append(basics)
        if not ok:
            continue
        e = sc.add_hyperedge(name)
        for b in ends[0]:
            sc.link_to_edge(b, e)
        for b in ends[1]:
            sc.link_from_edge(e, b)

    for lineno, (col, name) in headers[1:]:
        error(lineno, col, "more than one statechart header")
    for lineno, (col, name) in headers[:1]:
        tops = [a for a in sc.ands.values() if a.name == name and a.rcontains is None]
        if len(tops) != 1:
            error(lineno, col, f"statechart top state {name} is not a unique root AND")
        else:
            sc.add_statechart(tops[0])

    if errors:
        raise ParseError(sorted(errors, key=lambda d: (d.line, d.column)))
    return sc
