"""Right-angled Artin groups: defining graphs, seed systems, colourings and structure checks."""

from __future__ import annotations

import enum
import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .completion import CompletionConfig, CompletionOutcome, Outcome, knuth_bendix
from .core import (
    EMPTY,
    Alphabet,
    Kind,
    Letter,
    Presentation,
    Relation,
    Word,
    free_reduce,
    is_positive,
    iter_declarations,
)
from .errors import MissingTrace, ParseError
from .ordering import LetterOrder, orient
from .rewriting import Overlap, RewritingSystem, Rule, normal_form


@dataclass(frozen=True)
class DefiningGraph:
    vertices: Alphabet
    edges: frozenset  # frozenset of frozenset({i, j}) over vertex indices

    def __post_init__(self):
        edges = frozenset(frozenset(e) for e in self.edges)
        n = len(self.vertices)
        for e in edges:
            if len(e) != 2:
                raise ParseError("defining graph must not have self-loops")
            if not all(0 <= v < n for v in e):
                raise ParseError("edge endpoint out of range")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_names(cls, names: Sequence[str], edges: Iterable[tuple]) -> "DefiningGraph":
        alphabet = Alphabet(tuple(names))
        return cls(alphabet, frozenset(frozenset((alphabet.index(a), alphabet.index(b))) for a, b in edges))

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for j in range(len(self.vertices)) if j != i and self.adjacent(i, j))

    def sorted_edges(self) -> list[tuple]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def raag_presentation(g: DefiningGraph) -> Presentation:
    rels = []
    for i, j in g.sorted_edges():
        x, y = Letter(i, 1), Letter(j, 1)
        rels.append(Relation((x, y), (y, x)))
    return Presentation(g.vertices, tuple(rels), Kind.GROUP)


def free_reduction_pairs(alphabet: Alphabet) -> list[tuple]:
    pairs = []
    for i in range(len(alphabet)):
        x, xi = Letter(i, 1), Letter(i, -1)
        pairs += [((x, xi), EMPTY), ((xi, x), EMPTY)]
    return pairs


def raag_re0(g: DefiningGraph, order: LetterOrder) -> RewritingSystem:
    """Signed commutation rules for every edge, then the free reductions."""
    pairs = []
    for i, j in g.sorted_edges():
        for gi, gj in itertools.product((1, -1), repeat=2):
            x, y = Letter(i, gi), Letter(j, gj)
            pairs.append(orient(order, (x, y), (y, x)))
    pairs += free_reduction_pairs(g.vertices)
    return RewritingSystem.from_pairs(g.vertices, pairs, order)


def is_free_reduction(r: Rule) -> bool:
    return (
        not r.rhs
        and len(r.lhs) == 2
        and r.lhs[0].generator == r.lhs[1].generator
        and r.lhs[0].sign == -r.lhs[1].sign
    )


class Colour(enum.Enum):
    BLACK = "black"
    WHITE = "white"


@dataclass(frozen=True)
class NotBipartite:
    cycle: tuple  # vertex indices of an odd closed path, first == last


def two_coloring(g: DefiningGraph):
    """Breadth-first 2-colouring, or :class:`NotBipartite` with an odd cycle.

    Each component is rooted at its highest-degree vertex (earliest declared
    on ties) and the root is coloured black.
    """
    n = len(g.vertices)
    colour: dict = {}
    parent: dict = {}
    degree = {v: len(g.neighbours(v)) for v in range(n)}
    for root in sorted(range(n), key=lambda v: (-degree[v], v)):
        if root in colour:
            continue
        colour[root] = Colour.BLACK
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.neighbours(v):
                if u not in colour:
                    colour[u] = Colour.WHITE if colour[v] is Colour.BLACK else Colour.BLACK
                    parent[u] = v
                    queue.append(u)
                elif colour[u] is colour[v]:
                    return NotBipartite(_odd_cycle(parent, v, u))
    return {v: colour[v] for v in range(n)}


def _odd_cycle(parent: dict, v: int, u: int) -> tuple:
    def path_to_root(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pv, pu = path_to_root(v), path_to_root(u)
    common = set(pv) & set(pu)
    lca = next(x for x in pv if x in common)
    left = pv[: pv.index(lca) + 1]
    right = pu[: pu.index(lca)]
    return tuple(left + list(reversed(right)) + [v])


def coloring_order(
    g: DefiningGraph,
    coloring: dict,
    black_order: Optional[Sequence[Letter]] = None,
    white_order: Optional[Sequence[Letter]] = None,
) -> LetterOrder:
    """Every black signed letter above every white one.

    Within each class the default is declaration order with ``x > x^-1``.
    """

    def default(colour):
        out = []
        for v in range(len(g.vertices)):
            if coloring[v] is colour:
                out += [Letter(v, 1), Letter(v, -1)]
        return out

    black = list(black_order) if black_order is not None else default(Colour.BLACK)
    white = list(white_order) if white_order is not None else default(Colour.WHITE)
    if {x.generator for x in black} != {v for v, c in coloring.items() if c is Colour.BLACK}:
        raise ValueError("black_order must list exactly the black signed letters")
    if {x.generator for x in white} != {v for v, c in coloring.items() if c is Colour.WHITE}:
        raise ValueError("white_order must list exactly the white signed letters")
    return LetterOrder(g.vertices, tuple(black + white))


def is_clique(g: DefiningGraph, s: Iterable[int]) -> bool:
    s = sorted(set(s))
    return all(g.adjacent(i, j) for i, j in itertools.combinations(s, 2))


def _split_ux(r: Rule) -> Optional[tuple]:
    """``(u, x)`` when r reads ``u x -> x u`` for a single letter x and nonempty u."""
    lhs, rhs = r.lhs, r.rhs
    if len(lhs) < 2 or len(lhs) != len(rhs):
        return None
    u, x = lhs[:-1], lhs[-1]
    if rhs == (x,) + u:
        return u, x
    return None


def prefix_condition_holds(r: Rule, re0: RewritingSystem) -> bool:
    split = _split_ux(r)
    if split is None:
        return False
    u, x = split
    seed = set(re0.pairs())
    if ((u[0], x), (x, u[0])) not in seed:
        return False
    return all(((x, t), (t, x)) in seed for t in u[1:])


@dataclass
class StructureReport:
    shape: list = field(default_factory=list)  # (A): rule ids failing ux -> xu or prefixes
    right_parent: list = field(default_factory=list)  # (B): right parent not a seed rule
    lengths: list = field(default_factory=list)  # (C): step-n rule not of length n+2
    overlap_length: list = field(default_factory=list)  # creating overlap with |v| != 1
    positivity: list = field(default_factory=list)  # (ii): lhs positive xor rhs positive

    @property
    def ok(self) -> bool:
        return not (self.shape or self.right_parent or self.lengths or self.overlap_length or self.positivity)

    def as_dict(self) -> dict:
        return {
            "shape_and_prefixes": self.shape,
            "right_parent_seed": self.right_parent,
            "length_n_plus_2": self.lengths,
            "overlap_length_one": self.overlap_length,
            "positive_iff": self.positivity,
            "ok": self.ok,
        }


def verify_structure(out: CompletionOutcome, re0: RewritingSystem) -> StructureReport:
    """Check the shape, parentage and length conditions on every created rule.

    Each list in the report holds the ids of failing rules.  The positivity
    condition is checked on commutation rules only, since ``x x^-1 -> 1``
    has a negative lhs and an empty (positive) rhs by design.
    """
    if out.trace is None:
        raise MissingTrace("verify_structure needs a recorded trace")
    seed_ids = {r.id for r in re0.rules}
    creators = {}
    for st in out.trace:
        for ev in st.events:
            if ev.outcome is Outcome.NEW_RULE:
                creators[ev.rule_id] = ev.ambiguity
    rep = StructureReport()
    for r in out.system.rules:
        if not is_free_reduction(r) and is_positive(r.lhs) != is_positive(r.rhs):
            rep.positivity.append(r.id)
        if r.step == 0:
            continue
        if not prefix_condition_holds(r, re0):
            rep.shape.append(r.id)
        if len(r.lhs) != r.step + 2 or len(r.rhs) != r.step + 2:
            rep.lengths.append(r.id)
        amb = creators.get(r.id)
        if not isinstance(amb, Overlap):
            rep.right_parent.append(r.id)
            rep.overlap_length.append(r.id)
            continue
        if amb.right.id not in seed_ids:
            rep.right_parent.append(r.id)
        if len(amb.v) != 1:
            rep.overlap_length.append(r.id)
    return rep


def prefix_genesis_violations(out: CompletionOutcome) -> list[tuple]:
    """Created rules ``u x -> x u`` lacking an earlier ``u' x -> x u'`` or the ``u x^-1`` twin.

    Returns ``(rule id, reason)`` pairs; empty means the property holds.
    """
    by_pair = {(r.lhs, r.rhs): r for r in out.system.rules}
    bad = []
    for r in out.system.rules:
        if r.step == 0:
            continue
        split = _split_ux(r)
        if split is None:
            bad.append((r.id, "not of the form u x -> x u"))
            continue
        u, x = split
        for k in range(1, len(u)):
            p = u[:k]
            earlier = by_pair.get((p + (x,), (x,) + p))
            if earlier is None or earlier.step >= r.step:
                bad.append((r.id, f"prefix of length {k} missing or not earlier"))
        xi = x.inverse()
        if (u + (xi,), (xi,) + u) not in by_pair:
            bad.append((r.id, "inverse twin missing"))
    return bad


@functools.lru_cache(maxsize=64)
def bounded_completion(g: DefiningGraph, order: LetterOrder, steps: int) -> CompletionOutcome:
    """Completion of the seed system through ``steps`` steps (cached)."""
    cfg = CompletionConfig(max_steps=max(steps, 1), max_rules=10**7, max_rule_length=0)
    return knuth_bendix(raag_re0(g, order), order, cfg)


def raag_normal_form(g: DefiningGraph, order: LetterOrder, w: Word, extra_steps: int = 0) -> Word:
    """Normal form of w under the full (possibly infinite) complete system.

    Rules created at step n have length n+2 and reduction never lengthens
    a word, so steps beyond ``len(w) - 2`` cannot matter.
    """
    w = free_reduce(w)
    steps = max(len(w) - 2, 0) + extra_steps
    if steps == 0:
        return normal_form(raag_re0(g, order), w)
    return normal_form(bounded_completion(g, order, steps).system, w)


def default_order(g: DefiningGraph) -> LetterOrder:
    return LetterOrder.interleaved(g.vertices)


def parse_graph(text: str) -> DefiningGraph:
    """Parse ``vertices: a b c`` and ``edge: a b`` lines."""
    names = None
    raw = []
    for lineno, key, value in iter_declarations(text):
        if key == "vertices":
            names = value.split()
        elif key == "edge":
            parts = value.split()
            if len(parts) == 3 and parts[2] == "2":
                parts = parts[:2]
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: edge needs two endpoints (only label 2 is supported)")
            if parts[0] == parts[1]:
                raise ParseError(f"line {lineno}: self-loop")
            raw.append((lineno, tuple(parts)))
        else:
            raise ParseError(f"line {lineno}: unknown declaration {key!r}")
    if names is None:
        raise ParseError("missing 'vertices:' declaration")
    alphabet = Alphabet(tuple(names))
    edges = set()
    for lineno, (a, b) in raw:
        e = frozenset((alphabet.index(a), alphabet.index(b)))
        if e in edges:
            raise ParseError(f"line {lineno}: parallel edge {a} {b}")
        edges.add(e)
    return DefiningGraph(alphabet, frozenset(edges))


def format_graph(g: DefiningGraph) -> str:
    names = g.vertices.generators
    lines = ["vertices: " + " ".join(names)]
    lines += [f"edge: {names[i]} {names[j]}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def format_coloring(g: DefiningGraph, coloring: dict) -> str:
    names = g.vertices.generators
    return "".join(f"color: {names[v]} {coloring[v].value}\n" for v in sorted(coloring))
