"""Shortlex ordering over the doubled alphabet and rule orientation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from .core import Alphabet, Letter, Word, parse_letter
from .errors import ParseError

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class LetterOrder:
    """Total order on signed letters.

    ``descending`` lists every signed letter of the alphabet once, greatest
    first, exactly as written in an ``order:`` line.
    """

    alphabet: Alphabet
    descending: Tuple[Letter, ...]
    _rank: Dict[Letter, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        desc = tuple(self.descending)
        object.__setattr__(self, "descending", desc)
        expected = set(self.alphabet.signed_letters())
        if len(set(desc)) != len(desc) or set(desc) != expected:
            raise ParseError("order must list every signed letter exactly once")
        n = len(desc)
        object.__setattr__(self, "_rank", {x: n - i for i, x in enumerate(desc)})

    def rank(self, x: Letter) -> int:
        return self._rank[x]

    def key(self, w: Word) -> tuple:
        """Sort key such that ``key(u) < key(v)`` iff u is shortlex-smaller."""
        r = self._rank
        return (len(w), tuple(r[x] for x in w))

    @classmethod
    def interleaved(cls, alphabet: Alphabet, generators: Optional[Sequence[int]] = None):
        """``g0 > g0^-1 > g1 > g1^-1 > ...`` following ``generators`` (default: declaration order)."""
        if generators is None:
            generators = range(len(alphabet))
        desc = []
        for g in generators:
            desc += [Letter(g, 1), Letter(g, -1)]
        return cls(alphabet, tuple(desc))

    def is_generator_consistent(self) -> bool:
        """True when x and x^-1 are adjacent for every generator.

        Under such an order, the four signed commutation rules of an edge all
        point the same way.
        """
        d = self.descending
        return all(d[i].generator == d[i + 1].generator for i in range(0, len(d), 2))


def compare_shortlex(o: LetterOrder, w1: Word, w2: Word) -> int:
    """Return LESS, EQUAL or GREATER."""
    if len(w1) != len(w2):
        return GREATER if len(w1) > len(w2) else LESS
    for x, y in zip(w1, w2):
        if x != y:
            return GREATER if o.rank(x) > o.rank(y) else LESS
    return EQUAL


def orient(o: LetterOrder, u: Word, v: Word) -> Optional[Tuple[Word, Word]]:
    """Orient ``u = v`` as ``(greater, lesser)``; None when u and v coincide."""
    c = compare_shortlex(o, u, v)
    if c == EQUAL:
        return None
    return (u, v) if c == GREATER else (v, u)


def parse_order(text: str, alphabet: Alphabet) -> LetterOrder:
    """Parse ``a > a^-1 > b > b^-1``.

    A leading ``order:`` is accepted.  When only positive generators are
    listed, each one is followed by its inverse (the interleaved default).
    """
    text = text.strip()
    if text.startswith("order:"):
        text = text[len("order:"):]
    tokens = [t.strip() for t in text.split(">")]
    if any(not t for t in tokens):
        raise ParseError(f"malformed order {text!r}")
    letters = [parse_letter(t, alphabet) for t in tokens]
    if all(x.sign > 0 for x in letters) and len(letters) == len(alphabet):
        if len({x.generator for x in letters}) != len(letters):
            raise ParseError("order lists a generator twice")
        return LetterOrder.interleaved(alphabet, [x.generator for x in letters])
    return LetterOrder(alphabet, tuple(letters))


def format_order(o: LetterOrder) -> str:
    return "order: " + " > ".join(o.alphabet.name(x) for x in o.descending)
