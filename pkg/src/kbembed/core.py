"""Alphabets, signed letters, words and presentations.

A word is a plain tuple of :class:`Letter` values.  Letters refer to
generators by index; the names only live in the :class:`Alphabet`.
The empty word is ``()`` and prints as ``1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Tuple

from .errors import MalformedExponent, ParseError, UnknownGenerator

RESERVED = set("^=>#,")


class Letter(NamedTuple):
    generator: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)


Word = Tuple[Letter, ...]
EMPTY: Word = ()


def word(*gens: int) -> Word:
    """Positive word from generator indices, mostly a test convenience."""
    return tuple(Letter(g, 1) for g in gens)


@dataclass(frozen=True)
class Alphabet:
    generators: Tuple[str, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(set(gens)) != len(gens):
            raise ParseError(f"duplicate generator names in {list(gens)}")
        for name in gens:
            if not name or any(ch.isspace() or ch in RESERVED for ch in name):
                raise ParseError(f"invalid generator name {name!r}")
            if name == "1":
                raise ParseError("'1' is reserved for the empty word")

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def name(self, letter: Letter) -> str:
        base = self.generators[letter.generator]
        return base if letter.sign > 0 else base + "^-1"

    def signed_letters(self) -> list[Letter]:
        """X followed by X^-1 interleaved: x0, x0^-1, x1, x1^-1, ..."""
        out = []
        for i in range(len(self.generators)):
            out.append(Letter(i, 1))
            out.append(Letter(i, -1))
        return out

    def contains(self, w: Word) -> bool:
        n = len(self.generators)
        return all(0 <= x.generator < n and x.sign in (1, -1) for x in w)


class Kind(enum.Enum):
    MONOID = "monoid"
    GROUP = "group"


@dataclass(frozen=True)
class Relation:
    left: Word
    right: Word


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: Tuple[Relation, ...]
    kind: Kind

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for rel in self.relations:
            for side in (rel.left, rel.right):
                if not self.alphabet.contains(side):
                    raise ParseError("relation uses letters outside the alphabet")


def free_reduce(w: Iterable[Letter]) -> Word:
    """Cancel adjacent ``x x^-1`` / ``x^-1 x`` pairs until none remain."""
    stack: list[Letter] = []
    for x in w:
        if stack and stack[-1].generator == x.generator and stack[-1].sign == -x.sign:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_positive(w: Word) -> bool:
    return all(x.sign > 0 for x in w)


def inverse_word(w: Word) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def group_to_monoid(p: Presentation) -> Presentation:
    """Monoid presentation of a group: keep R and add ``x x^-1 = 1``, ``x^-1 x = 1``."""
    if p.kind is not Kind.GROUP:
        raise ValueError("group_to_monoid expects a group presentation")
    rels = list(p.relations)
    for i in range(len(p.alphabet)):
        x, xi = Letter(i, 1), Letter(i, -1)
        rels.append(Relation((x, xi), EMPTY))
        rels.append(Relation((xi, x), EMPTY))
    return Presentation(p.alphabet, tuple(rels), Kind.MONOID)


def parse_letter(token: str, alphabet: Alphabet) -> Letter:
    if "^" in token:
        base, _, exp = token.partition("^")
        if exp != "-1":
            raise MalformedExponent(f"bad exponent in {token!r} (only ^-1 is allowed)")
        return Letter(alphabet.index(base), -1)
    return Letter(alphabet.index(token), 1)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    tokens = text.split()
    if tokens == ["1"]:
        return EMPTY
    if "1" in tokens:
        raise ParseError(f"'1' must stand alone in {text!r}")
    return tuple(parse_letter(tok, alphabet) for tok in tokens)


def format_word(w: Word, alphabet: Alphabet) -> str:
    if not w:
        return "1"
    return " ".join(alphabet.name(x) for x in w)


def _split_decl(line: str) -> tuple[str, str] | None:
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    key, sep, value = line.partition(":")
    if not sep:
        raise ParseError(f"expected 'key: value', got {line!r}")
    return key.strip(), value.strip()


def iter_declarations(text: str):
    """Yield ``(key, value)`` pairs from the line format, skipping comments."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            decl = _split_decl(raw)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if decl is not None:
            yield lineno, decl[0], decl[1]


def parse_presentation(text: str) -> Presentation:
    """Parse ``kind:``, ``gens:`` and ``rel: u = v`` lines."""
    kind = Kind.MONOID
    alphabet = None
    raw_rels = []
    for lineno, key, value in iter_declarations(text):
        if key == "kind":
            try:
                kind = Kind(value.lower())
            except ValueError:
                raise ParseError(f"line {lineno}: unknown kind {value!r}") from None
        elif key == "gens":
            alphabet = Alphabet(tuple(value.split()))
        elif key == "rel":
            raw_rels.append((lineno, value))
        else:
            raise ParseError(f"line {lineno}: unknown declaration {key!r}")
    if alphabet is None:
        raise ParseError("missing 'gens:' declaration")
    rels = []
    for lineno, value in raw_rels:
        left, sep, right = value.partition("=")
        if not sep or "=" in right:
            raise ParseError(f"line {lineno}: relation needs exactly one '='")
        try:
            rels.append(Relation(parse_word(left, alphabet), parse_word(right, alphabet)))
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return Presentation(alphabet, tuple(rels), kind)


def format_presentation(p: Presentation) -> str:
    lines = [f"kind: {p.kind.value}", "gens: " + " ".join(p.alphabet.generators)]
    for rel in p.relations:
        lines.append(
            f"rel: {format_word(rel.left, p.alphabet)} = {format_word(rel.right, p.alphabet)}"
        )
    return "\n".join(lines) + "\n"
