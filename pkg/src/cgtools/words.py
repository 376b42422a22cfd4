"""Free-group words and finitely presented groups.

A word is stored flat as a tuple of nonzero integers: the letter ``k`` stands
for generator number ``k`` (1-based) and ``-k`` for its inverse.  Powers,
conjugates and commutators written in a presentation are expanded when the
text is parsed, so every algorithm downstream only ever sees flat letters.

The text grammar accepted by :func:`parse_presentation`::

    presentation = '<' gens '|' relators '>'
    gens         = identifier { ',' identifier }
    relators     = [ word { ',' word } ]
    word         = term { '*' term }
    term         = factor [ '^' ( signed-integer | factor ) ]
    factor       = identifier | '(' word ')' | '[' word ',' word ']' | '1'

``u^n`` is the n-fold power (negative n inverts), ``u^v`` is ``v^-1*u*v`` and
``[u,v]`` is ``u^-1*v^-1*u*v``.  ``1`` denotes the empty word.  Generator
names are case sensitive; there is no upper-case-means-inverse shorthand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letters = tuple[int, ...]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[+-]?\d+")


class PresentationSyntaxError(ValueError):
    """Raised for malformed presentation or word text.

    ``pos`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


# -- letter-level helpers (used by the enumerator and rewriting code) --------

def reduce_letters(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclically_reduce_letters(letters: Iterable[int]) -> Letters:
    w = reduce_letters(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-a for a in reversed(letters))


def power_letters(letters: Sequence[int], n: int) -> Letters:
    if n < 0:
        return tuple(invert_letters(letters)) * (-n)
    return tuple(letters) * n


def format_letters(letters: Sequence[int], names: Sequence[str]) -> str:
    """Render letters as ``x^2*y^-1*x``; the empty word renders as ``1``."""
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        a = letters[i]
        j = i
        while j < len(letters) and letters[j] == a:
            j += 1
        run = j - i
        exp = run if a > 0 else -run
        name = names[abs(a) - 1]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


# -- value types --------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A word over a named generator alphabet."""

    letters: Letters
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "names", tuple(self.names))
        r = len(self.names)
        for a in self.letters:
            if a == 0 or abs(a) > r:
                raise ValueError(f"letter {a} out of range for {r} generators")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return format_letters(self.letters, self.names)

    def __mul__(self, other: Word) -> Word:
        return word_multiply(self, other)

    def inverse(self) -> Word:
        return word_invert(self)

    def is_reduced(self) -> bool:
        return reduce_letters(self.letters) == self.letters

    def exponent_sum(self, gen: int) -> int:
        """Exponent sum of generator ``gen`` (0-based index)."""
        k = gen + 1
        return sum(1 if a == k else -1 if a == -k else 0 for a in self.letters)


def _check_names(names: Sequence[str]) -> None:
    seen = set()
    for n in names:
        if not n:
            raise ValueError("zero-length generator name")
        if not _IDENT_RE.fullmatch(n):
            raise ValueError(f"invalid generator name {n!r}")
        if n in seen:
            raise ValueError(f"duplicate generator name {n!r}")
        seen.add(n)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; relators are kept cyclically reduced."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(self.generators)
        _check_names(gens)
        rels = []
        for r in self.relators:
            letters = r.letters if isinstance(r, Word) else tuple(r)
            if isinstance(r, Word) and r.names != gens:
                raise ValueError("relator over a different generator set")
            rels.append(Word(cyclically_reduce_letters(letters), gens))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, letters: Iterable[int]) -> Word:
        return Word(tuple(letters), self.generators)

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def parse_subgroup(self, text: str) -> SubgroupSpec:
        return SubgroupSpec(tuple(parse_words(text, self.generators)))

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class SubgroupSpec:
    """A subgroup given by generating words over the ambient generators."""

    generators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def __str__(self):
        return ", ".join(str(w) for w in self.generators)


# -- word algebra -------------------------------------------------------------

def free_reduce(w: Word) -> Word:
    return Word(reduce_letters(w.letters), w.names)


def cyclically_reduce(w: Word) -> Word:
    return Word(cyclically_reduce_letters(w.letters), w.names)


def word_multiply(u: Word, v: Word) -> Word:
    if u.names != v.names:
        raise ValueError("words are over different generator sets")
    return Word(reduce_letters(u.letters + v.letters), u.names)


def word_invert(u: Word) -> Word:
    return Word(reduce_letters(invert_letters(u.letters)), u.names)


# -- parsing ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, names: Sequence[str] | None = None):
        self.text = text
        self.pos = 0
        self.index = {n: i + 1 for i, n in enumerate(names or ())}

    def error(self, message: str, pos: int | None = None):
        raise PresentationSyntaxError(
            message, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def identifier(self) -> str:
        self.skip()
        m = _IDENT_RE.match(self.text, self.pos)
        if not m:
            if self.peek() in (",", "|", ">"):
                self.error("zero-length generator name")
            self.error("expected identifier")
        self.pos = m.end()
        return m.group()

    def presentation(self) -> Presentation:
        self.expect("<")
        names: list[str] = []
        if self.peek() != "|":
            while True:
                start = self.pos
                name = self.identifier()
                if name in self.index:
                    self.error(f"duplicate generator name {name!r}", start)
                names.append(name)
                self.index[name] = len(names)
                if self.peek() != ",":
                    break
                self.pos += 1
        self.expect("|")
        rels: list[Letters] = []
        if self.peek() != ">":
            rels.append(self.word())
            while self.peek() == ",":
                self.pos += 1
                rels.append(self.word())
        self.expect(">")
        self.end()
        return Presentation(tuple(names), tuple(Word(r, names) for r in rels))

    def word_list(self) -> list[Letters]:
        if not self.peek():
            return []
        out = [self.word()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.word())
        self.end()
        return out

    def end(self):
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")

    def word(self) -> Letters:
        letters = self.term()
        while self.peek() == "*":
            self.pos += 1
            letters = letters + self.term()
        return letters

    def term(self) -> Letters:
        base = self.factor()
        if self.peek() != "^":
            return base
        self.pos += 1
        self.skip()
        m = _INT_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return power_letters(base, int(m.group()))
        conj = self.factor()
        return invert_letters(conj) + base + conj

    def factor(self) -> Letters:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return invert_letters(u) + invert_letters(v) + u + v
        if ch == "1":
            self.pos += 1
            return ()
        start = self.pos
        name = self.identifier()
        if name not in self.index:
            self.error(f"unknown generator {name!r}", start)
        return (self.index[name],)


def parse_presentation(text: str) -> Presentation:
    """Parse ``< gens | relators >`` text into a :class:`Presentation`."""
    return _Parser(text).presentation()


def parse_word(text: str, names: Sequence[str]) -> Word:
    p = _Parser(text, names)
    w = p.word()
    p.end()
    return Word(w, names)


def parse_words(text: str, names: Sequence[str]) -> list[Word]:
    """Parse a comma-separated list of words; blank text gives no words."""
    return [Word(w, names) for w in _Parser(text, names).word_list()]
