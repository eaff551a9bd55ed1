"""String rewriting systems: reduction, ambiguities and critical pairs.

Reduction is deterministic: the leftmost position where some left-hand
side occurs is rewritten, and among rules matching there the lowest id
wins.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .core import (
    EMPTY,
    Alphabet,
    Presentation,
    Word,
    format_word,
    is_positive,
    iter_declarations,
    parse_word,
)
from .errors import FuelExhausted, MalformedSystem, ParseError
from .ordering import GREATER, LetterOrder, compare_shortlex, format_order, parse_order

DEFAULT_FUEL = 100_000


@dataclass(frozen=True)
class Rule:
    id: int
    lhs: Word
    rhs: Word
    step: int = 0
    parents: Optional[Tuple[int, int]] = None

    @property
    def positive(self) -> bool:
        """True when the left-hand side is a positive word."""
        return is_positive(self.lhs)


class RuleIndex:
    """Left-hand-side lookup: lhs -> rules by ascending id, plus the lhs lengths.

    Mutable; completion grows a private copy while a step is in progress.
    """

    def __init__(self, rules: Iterable[Rule] = (), order: Optional[LetterOrder] = None):
        self.order = order
        self._by_lhs: dict = {}
        self._lengths: list = []
        self._trie: dict = {}  # letter -> child node; key None holds the lowest-id rule ending here
        self.max_lhs = 0
        for r in rules:
            self.add(r)

    def add(self, r: Rule) -> None:
        bucket = self._by_lhs.setdefault(r.lhs, [])
        bucket.append(r)
        bucket.sort(key=lambda x: x.id)
        node = self._trie
        for letter in r.lhs:
            node = node.setdefault(letter, {})
        node[None] = bucket[0]
        n = len(r.lhs)
        if n not in self._lengths:
            self._lengths.append(n)
            self._lengths.sort()
            self.max_lhs = self._lengths[-1]

    def copy(self) -> "RuleIndex":
        new = RuleIndex(order=self.order)
        new._by_lhs = {k: list(v) for k, v in self._by_lhs.items()}
        new._lengths = list(self._lengths)
        new._trie = _copy_trie(self._trie)
        new.max_lhs = self.max_lhs
        return new

    def rules_at(self, w: Word, pos: int) -> list[Rule]:
        """Rules whose lhs occurs in w at ``pos``, by ascending id."""
        found = []
        for n in self._lengths:
            if pos + n > len(w):
                break
            found.extend(self._by_lhs.get(w[pos:pos + n], ()))
        found.sort(key=lambda r: r.id)
        return found

    def first_match(self, w: Word, start: int = 0) -> Optional[Tuple[int, Rule]]:
        root = self._trie
        n = len(w)
        for pos in range(start, n):
            node = root
            best = None
            i = pos
            while i < n:
                node = node.get(w[i])
                if node is None:
                    break
                hit = node.get(None)
                if hit is not None and (best is None or hit.id < best.id):
                    best = hit
                i += 1
            if best is not None:
                return pos, best
        return None


def _copy_trie(node: dict) -> dict:
    return {k: (v if k is None else _copy_trie(v)) for k, v in node.items()}


class RewritingSystem:
    """Immutable set of rules with a left-hand-side index.

    ``order`` is optional; when present every rule must be shortlex
    decreasing under it, which guarantees termination.
    """

    def __init__(self, alphabet: Alphabet, rules: Iterable[Rule], order: Optional[LetterOrder] = None):
        self.alphabet = alphabet
        self.order = order
        self.rules: Tuple[Rule, ...] = tuple(sorted(rules, key=lambda r: r.id))
        seen_ids, seen_pairs = set(), set()
        for r in self.rules:
            if not r.lhs:
                raise MalformedSystem(f"rule {r.id} has an empty left-hand side")
            if r.lhs == r.rhs:
                raise MalformedSystem(f"rule {r.id} is trivial")
            if not (alphabet.contains(r.lhs) and alphabet.contains(r.rhs)):
                raise MalformedSystem(f"rule {r.id} uses letters outside the alphabet")
            if r.id in seen_ids:
                raise MalformedSystem(f"duplicate rule id {r.id}")
            if (r.lhs, r.rhs) in seen_pairs:
                raise MalformedSystem(f"rule {r.id} duplicates an earlier rule")
            if order is not None and compare_shortlex(order, r.lhs, r.rhs) != GREATER:
                raise MalformedSystem(f"rule {r.id} is not decreasing under the order")
            seen_ids.add(r.id)
            seen_pairs.add((r.lhs, r.rhs))
        self._by_id = {r.id: r for r in self.rules}
        self.index = RuleIndex(self.rules, order)

    @classmethod
    def from_pairs(cls, alphabet, pairs: Sequence[Tuple[Word, Word]], order=None) -> "RewritingSystem":
        rules = [Rule(i, lhs, rhs) for i, (lhs, rhs) in enumerate(pairs, 1)]
        return cls(alphabet, rules, order)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __repr__(self) -> str:
        return f"RewritingSystem({len(self.rules)} rules)"

    @property
    def max_lhs(self) -> int:
        return self.index.max_lhs

    def rule(self, rule_id: int) -> Rule:
        return self._by_id[rule_id]

    def pairs(self) -> list[Tuple[Word, Word]]:
        return [(r.lhs, r.rhs) for r in self.rules]

    def next_id(self) -> int:
        return self.rules[-1].id + 1 if self.rules else 1

    def extended(self, new_rules: Iterable[Rule]) -> "RewritingSystem":
        return RewritingSystem(self.alphabet, self.rules + tuple(new_rules), self.order)

    def subsystem(self, keep) -> "RewritingSystem":
        return RewritingSystem(self.alphabet, [r for r in self.rules if keep(r)], self.order)

    def rules_at(self, w: Word, pos: int) -> list[Rule]:
        return self.index.rules_at(w, pos)

    def matches(self, w: Word) -> list[Tuple[int, Rule]]:
        """Every ``(position, rule)`` with rule.lhs occurring in w at position."""
        return [(pos, r) for pos in range(len(w)) for r in self.index.rules_at(w, pos)]

    def first_match(self, w: Word, start: int = 0) -> Optional[Tuple[int, Rule]]:
        return self.index.first_match(w, start)

    def is_irreducible(self, w: Word) -> bool:
        return self.first_match(w) is None

    @cached_property
    def _prefix_index(self) -> dict:
        # proper prefix p -> rules whose lhs starts with p and is longer than p
        idx = defaultdict(list)
        for r in self.rules:
            for k in range(1, len(r.lhs)):
                idx[r.lhs[:k]].append(r)
        return idx

    @cached_property
    def _suffix_index(self) -> dict:
        idx = defaultdict(list)
        for r in self.rules:
            for k in range(1, len(r.lhs)):
                idx[r.lhs[k:]].append(r)
        return idx


def reduce_once(rs: RewritingSystem | RuleIndex, w: Word) -> Optional[Word]:
    """One leftmost rewrite step, or None when w is irreducible."""
    m = rs.first_match(w)
    if m is None:
        return None
    pos, r = m
    return w[:pos] + r.rhs + w[pos + len(r.lhs):]


def reduction_steps(rs: RewritingSystem | RuleIndex, w: Word, fuel: Optional[int] = None):
    """Yield ``(position, rule, result)`` for each step of the leftmost reduction of w."""
    if fuel is None and rs.order is None:
        fuel = DEFAULT_FUEL
    steps = 0
    start = 0
    back = max(rs.max_lhs - 1, 0)
    while True:
        m = rs.first_match(w, start)
        if m is None:
            return
        steps += 1
        if fuel is not None and steps > fuel:
            raise FuelExhausted(f"no normal form within {fuel} rewrites")
        pos, r = m
        w = w[:pos] + r.rhs + w[pos + len(r.lhs):]
        # positions left of pos - back still see unchanged windows
        start = max(pos - back, 0)
        yield pos, r, w


def normal_form(rs: RewritingSystem | RuleIndex, w: Word, fuel: Optional[int] = None) -> Word:
    """Reduce w until irreducible.

    ``fuel`` bounds the number of rewrites.  It is optional for
    order-backed systems; order-less systems fall back to DEFAULT_FUEL.
    """
    for _, _, w in reduction_steps(rs, w, fuel):
        pass
    return w


@dataclass(frozen=True)
class Overlap:
    left: Rule
    right: Rule
    u: Word
    v: Word
    w: Word

    @property
    def word(self) -> Word:
        return self.u + self.v + self.w

    def key(self):
        return (self.left.id, self.right.id, 0, len(self.u))


@dataclass(frozen=True)
class Inclusion:
    inner: Rule
    outer: Rule
    u: Word
    w: Word

    @property
    def word(self) -> Word:
        return self.outer.lhs

    def key(self):
        return (self.outer.id, self.inner.id, 1, len(self.u))


Ambiguity = Union[Overlap, Inclusion]


@dataclass(frozen=True)
class CriticalPair:
    left: Word
    right: Word
    source: Ambiguity


def _overlaps_from_left(rs: RewritingSystem, left: Rule) -> Iterator[Overlap]:
    lhs = left.lhs
    for k in range(1, len(lhs)):
        v = lhs[k:]
        for right in rs._prefix_index.get(v, ()):
            yield Overlap(left, right, lhs[:k], v, right.lhs[len(v):])


def _overlaps_from_right(rs: RewritingSystem, right: Rule) -> Iterator[Overlap]:
    lhs = right.lhs
    for k in range(1, len(lhs)):
        v = lhs[:k]
        for left in rs._suffix_index.get(v, ()):
            yield Overlap(left, right, left.lhs[:-k], v, lhs[k:])


def _inclusions_in(rs: RewritingSystem, outer: Rule, inner_ok=None) -> Iterator[Inclusion]:
    lhs = outer.lhs
    for pos, inner in rs.matches(lhs):
        if inner_ok is not None and not inner_ok(inner):
            continue
        end = pos + len(inner.lhs)
        if inner.id == outer.id and pos == 0 and end == len(lhs):
            continue
        yield Inclusion(inner, outer, lhs[:pos], lhs[end:])


def find_ambiguities(rs: RewritingSystem, touching: Optional[Iterable[int]] = None) -> list[Ambiguity]:
    """All overlap and inclusion ambiguities, sorted by :meth:`key`.

    With ``touching``, only ambiguities involving at least one of those rule
    ids are returned.
    """
    found: dict = {}
    if touching is None:
        for r in rs.rules:
            for a in _overlaps_from_left(rs, r):
                found[a.key()] = a
            for a in _inclusions_in(rs, r):
                found[a.key()] = a
    else:
        ids = set(touching)
        for rid in sorted(ids):
            r = rs.rule(rid)
            for a in _overlaps_from_left(rs, r):
                found[a.key()] = a
            for a in _overlaps_from_right(rs, r):
                found[a.key()] = a
            for a in _inclusions_in(rs, r):
                found[a.key()] = a
        # new rule sitting inside an older, longer lhs
        fresh = RewritingSystem(rs.alphabet, [rs.rule(i) for i in ids])
        for outer in rs.rules:
            if outer.id in ids:
                continue
            for pos, inner in fresh.matches(outer.lhs):
                a = Inclusion(inner, outer, outer.lhs[:pos], outer.lhs[pos + len(inner.lhs):])
                found[a.key()] = a
    return [found[k] for k in sorted(found)]


def critical_pair(amb: Ambiguity) -> CriticalPair:
    if isinstance(amb, Overlap):
        return CriticalPair(amb.left.rhs + amb.w, amb.u + amb.right.rhs, amb)
    return CriticalPair(amb.u + amb.inner.rhs + amb.w, amb.outer.rhs, amb)


@dataclass(frozen=True)
class Witness:
    """A critical pair whose two words have different normal forms."""

    pair: CriticalPair
    nf_left: Word
    nf_right: Word


def confluence_witness(rs: RewritingSystem, fuel: Optional[int] = None) -> Optional[Witness]:
    """First critical pair that does not resolve, or None if all resolve."""
    for amb in find_ambiguities(rs):
        cp = critical_pair(amb)
        nl = normal_form(rs, cp.left, fuel)
        nr = normal_form(rs, cp.right, fuel)
        if nl != nr:
            return Witness(cp, nl, nr)
    return None


def is_locally_confluent(rs: RewritingSystem, fuel: Optional[int] = None) -> bool:
    return confluence_witness(rs, fuel) is None


def _occurrences(w: Word, pattern: Word) -> range | list:
    if not pattern:
        return range(len(w) + 1)
    n = len(pattern)
    return [i for i in range(len(w) - n + 1) if w[i:i + n] == pattern]


def equivalence_class_bfs(
    p: Presentation, w: Word, len_cap: int, count_cap: int
) -> Optional[frozenset]:
    """Words reachable from w by applying relations in either direction.

    Words longer than ``len_cap`` are discarded.  Returns None when more
    than ``count_cap`` words are found before the search closes.
    """
    moves = []
    for rel in p.relations:
        if rel.left != rel.right:
            moves.append((rel.left, rel.right))
            moves.append((rel.right, rel.left))
    seen = {w}
    queue = deque([w])
    while queue:
        cur = queue.popleft()
        for src, dst in moves:
            if len(cur) - len(src) + len(dst) > len_cap:
                continue
            for i in _occurrences(cur, src):
                nxt = cur[:i] + dst + cur[i + len(src):]
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > count_cap:
                        return None
                    queue.append(nxt)
    return frozenset(seen)


def format_rule(r: Rule, alphabet: Alphabet) -> str:
    return f"{format_word(r.lhs, alphabet)} -> {format_word(r.rhs, alphabet)}"


def parse_system(text: str) -> RewritingSystem:
    """Parse ``gens:``, ``rule: u -> v`` and an optional ``order:`` line."""
    alphabet = None
    order_text = None
    raw = []
    for lineno, key, value in iter_declarations(text):
        if key == "gens":
            alphabet = Alphabet(tuple(value.split()))
        elif key == "kind":
            continue
        elif key == "order":
            order_text = value
        elif key == "rule":
            raw.append((lineno, value))
        else:
            raise ParseError(f"line {lineno}: unknown declaration {key!r}")
    if alphabet is None:
        raise ParseError("missing 'gens:' declaration")
    order = parse_order(order_text, alphabet) if order_text is not None else None
    pairs = []
    for lineno, value in raw:
        left, sep, right = value.partition("->")
        if not sep:
            raise ParseError(f"line {lineno}: rule needs '->'")
        try:
            pairs.append((parse_word(left, alphabet), parse_word(right, alphabet)))
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return RewritingSystem.from_pairs(alphabet, pairs, order)


def format_system(rs: RewritingSystem) -> str:
    lines = ["gens: " + " ".join(rs.alphabet.generators)]
    if rs.order is not None:
        lines.append(format_order(rs.order))
    lines += ["rule: " + format_rule(r, rs.alphabet) for r in rs.rules]
    return "\n".join(lines) + "\n"


__all__ = [
    "EMPTY",
    "Rule",
    "RewritingSystem",
    "RuleIndex",
    "Overlap",
    "Inclusion",
    "CriticalPair",
    "Witness",
    "reduce_once",
    "reduction_steps",
    "normal_form",
    "find_ambiguities",
    "critical_pair",
    "confluence_witness",
    "is_locally_confluent",
    "equivalence_class_bfs",
    "parse_system",
    "format_system",
    "format_rule",
]
