"""Line-oriented text formats.

Instance / delegation file::

    # comment
    alts: s t
    agent a1 -> s t
    agent a2 -> a1

Edit file: ``+ u v`` / ``- u v``.  Bribe file: ``bribe a -> t``.

Serialization is canonical: vertices and arcs in natural name order, so
``serialize(parse(x))`` is a fixed point.
"""

from __future__ import annotations

import re
from typing import Iterator

from .delegation_bribery import BribeSet
from .election_bribery import EditSet
from .graph import DelegationGraph, ElectionGraph, vertex_key

_TOKEN = re.compile(r"\S+")
ARROW = "->"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


Token = tuple[str, int]


def _lines(text: str) -> Iterator[tuple[int, list[Token]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if toks:
            yield no, toks


def _name(tok: Token, line: int) -> str:
    word, col = tok
    if word == ARROW or word == "alts:":
        raise ParseError(line, col, f"{word!r} is not a valid name")
    return word


def _parse_graph(text: str, single: bool):
    alts: list[str] = []
    alts_line = None
    declared: dict[str, tuple[int, int]] = {}
    arcs: dict[str, list[str]] = {}
    refs: list[tuple[str, int, int]] = []
    for no, toks in _lines(text):
        head, col = toks[0]
        if head == "alts:":
            if alts_line is not None:
                raise ParseError(no, col, f"duplicate alts line (first on line {alts_line})")
            alts_line = no
            for tok in toks[1:]:
                name = _name(tok, no)
                if name in declared:
                    raise ParseError(no, tok[1], f"duplicate declaration of {name!r}")
                declared[name] = (no, tok[1])
                alts.append(name)
        elif head == "agent":
            if len(toks) < 3 or toks[2][0] != ARROW:
                where = toks[2][1] if len(toks) >= 3 else len(" ".join(t for t, _ in toks)) + toks[0][1]
                raise ParseError(no, where, "expected 'agent <name> -> <target> ...'")
            name = _name(toks[1], no)
            if name in declared:
                raise ParseError(no, toks[1][1], f"duplicate declaration of {name!r}")
            declared[name] = (no, toks[1][1])
            targets = [_name(t, no) for t in toks[3:]]
            if single and len(targets) != 1:
                raise ParseError(no, toks[2][1], f"agent {name!r} must have exactly one target")
            arcs[name] = targets
            refs.extend((t, no, c) for t, (_, c) in zip(targets, toks[3:]))
        else:
            raise ParseError(no, col, f"unexpected {head!r}; expected 'alts:' or 'agent'")
    if alts_line is None:
        raise ParseError(1, 1, "missing alts line")
    for name, no, col in refs:
        if name not in declared:
            raise ParseError(no, col, f"unknown name {name!r}")
    return alts, arcs


def parse_instance(text: str) -> ElectionGraph:
    """Parse an election graph.  Structural problems (self-loops, duplicate
    targets, agents without targets) are left to validation."""
    alts, arcs = _parse_graph(text, single=False)
    return ElectionGraph(alts, arcs, agents=arcs)


def serialize_instance(g: ElectionGraph) -> str:
    out = ["alts: " + " ".join(g.alternatives) if g.alternatives else "alts:"]
    for u in g.agents:
        out.append(" ".join(["agent", u, ARROW, *g.successors(u)]))
    return "\n".join(out) + "\n"


def parse_delegation(text: str) -> DelegationGraph:
    alts, arcs = _parse_graph(text, single=True)
    return DelegationGraph(alts, {u: vs[0] for u, vs in arcs.items()})


def serialize_delegation(d: DelegationGraph) -> str:
    out = ["alts: " + " ".join(d.alternatives) if d.alternatives else "alts:"]
    for u in d.agents:
        out.append(f"agent {u} {ARROW} {d.target(u)}")
    return "\n".join(out) + "\n"


def parse_edits(text: str) -> EditSet:
    adds: set = set()
    dels: set = set()
    for no, toks in _lines(text):
        op, col = toks[0]
        if op not in ("+", "-") or len(toks) != 3:
            raise ParseError(no, col, "expected '+ <u> <v>' or '- <u> <v>'")
        arc = (_name(toks[1], no), _name(toks[2], no))
        if arc in adds or arc in dels:
            raise ParseError(no, col, f"arc {arc[0]} -> {arc[1]} listed twice")
        (adds if op == "+" else dels).add(arc)
    return EditSet(additions=adds, deletions=dels)


def serialize_edits(e: EditSet) -> str:
    lines = [f"- {u} {v}" for u, v in e.sorted_deletions()]
    lines += [f"+ {u} {v}" for u, v in e.sorted_additions()]
    return "".join(line + "\n" for line in lines)


def parse_bribes(text: str) -> BribeSet:
    rewires: dict[str, str] = {}
    for no, toks in _lines(text):
        head, col = toks[0]
        if head != "bribe" or len(toks) != 4 or toks[2][0] != ARROW:
            raise ParseError(no, col, "expected 'bribe <agent> -> <target>'")
        agent = _name(toks[1], no)
        if agent in rewires:
            raise ParseError(no, toks[1][1], f"agent {agent!r} bribed twice")
        rewires[agent] = _name(toks[3], no)
    return BribeSet.of(rewires)


def serialize_bribes(b: BribeSet) -> str:
    return "".join(f"bribe {a} {ARROW} {t}\n" for a, t in sorted(b.rewires, key=lambda p: vertex_key(p[0])))
