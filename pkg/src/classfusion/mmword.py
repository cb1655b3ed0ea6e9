"""Parser and printer for Monster element words.

A word is a string M<atom*atom*...*atom> where each atom is tag_value:
tags y, x, d carry lowercase hexadecimal values with a mandatory trailing
'h'; tags p, t, l carry decimal values.  Hex digit strings are stored
verbatim (including leading zeros), so printing a parsed word reproduces
the input byte for byte.  No algebraic simplification is ever applied:
words are identifiers for group elements, not elements.
"""

from __future__ import annotations

from dataclasses import dataclass


HEX_TAGS = frozenset("yxd")
DEC_TAGS = frozenset("ptl")
TAGS = HEX_TAGS | DEC_TAGS

_HEX_DIGITS = frozenset("0123456789abcdef")
_DEC_DIGITS = frozenset("0123456789")


class MmWordSyntaxError(ValueError):
    """Parse failure, carrying the byte offset of the offending character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    tag: str      # one of y x d p t l
    digits: str   # verbatim digit string (without the trailing 'h')

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown atom tag {self.tag!r}")
        digitset = _HEX_DIGITS if self.tag in HEX_TAGS else _DEC_DIGITS
        if not self.digits or any(ch not in digitset for ch in self.digits):
            raise ValueError(f"bad digits {self.digits!r} for tag {self.tag!r}")

    @property
    def value(self) -> int:
        return int(self.digits, 16 if self.tag in HEX_TAGS else 10)

    def __str__(self) -> str:
        suffix = "h" if self.tag in HEX_TAGS else ""
        return f"{self.tag}_{self.digits}{suffix}"


@dataclass(frozen=True)
class MmWord:
    atoms: tuple[Atom, ...]
    label: str | None = None

    def __str__(self) -> str:
        if not self.atoms:
            # the listing format never exhibits an identity word; refusing to
            # invent a serialization keeps round trips unambiguous
            raise ValueError("cannot print an empty word")
        return "M<" + "*".join(str(a) for a in self.atoms) + ">"

    def __len__(self) -> int:
        return len(self.atoms)


def parse(s: str) -> MmWord:
    """Parse a strict M<...> word; any deviation raises MmWordSyntaxError
    with the byte offset."""
    if not s.startswith("M<"):
        raise MmWordSyntaxError("expected 'M<' prefix", 0)
    pos = 2
    atoms: list[Atom] = []
    n = len(s)
    while True:
        if pos >= n:
            raise MmWordSyntaxError("unterminated word", pos)
        tag = s[pos]
        if tag not in TAGS:
            raise MmWordSyntaxError(f"expected atom tag, got {tag!r}", pos)
        pos += 1
        if pos >= n or s[pos] != "_":
            raise MmWordSyntaxError("expected '_' after atom tag", pos)
        pos += 1
        digitset = _HEX_DIGITS if tag in HEX_TAGS else _DEC_DIGITS
        start = pos
        while pos < n and s[pos] in digitset:
            pos += 1
        if pos == start:
            raise MmWordSyntaxError("expected digits", pos)
        digits = s[start:pos]
        if tag in HEX_TAGS:
            if pos >= n or s[pos] != "h":
                raise MmWordSyntaxError("hex atom requires trailing 'h'", pos)
            pos += 1
        atoms.append(Atom(tag, digits))
        if pos >= n:
            raise MmWordSyntaxError("unterminated word", pos)
        if s[pos] == "*":
            pos += 1
            continue
        if s[pos] == ">":
            pos += 1
            break
        raise MmWordSyntaxError(f"expected '*' or '>', got {s[pos]!r}", pos)
    if pos != n:
        raise MmWordSyntaxError("trailing input after '>'", pos)
    return MmWord(tuple(atoms))


def concat(a: MmWord, b: MmWord, label: str | None = None) -> MmWord:
    """Concatenate atom sequences; no simplification."""
    return MmWord(a.atoms + b.atoms, label)


def power(a: MmWord, k: int, label: str | None = None) -> MmWord:
    """k-fold concatenation of a word with itself, k >= 1."""
    if k < 1:
        raise ValueError("only positive powers can be spelled out")
    return MmWord(a.atoms * k, label)


# ----------------------------------------------------------------------
# the labeled fixture file: sections of `label = M<...>` lines


@dataclass
class WordFile:
    sections: list[tuple[str, list[MmWord]]]

    def section(self, name: str) -> dict[str, MmWord]:
        for sec, words in self.sections:
            if sec == name:
                return {w.label: w for w in words}
        raise KeyError(f"no listing section {name!r}")

    def all_words(self) -> list[MmWord]:
        return [w for _, words in self.sections for w in words]


def load_word_file(path) -> WordFile:
    sections: list[tuple[str, list[MmWord]]] = []
    current: list[MmWord] | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                current = []
                sections.append((line.lstrip("#").strip(), current))
                continue
            if "=" not in line:
                raise MmWordSyntaxError(f"line {lineno}: expected 'label = M<...>'", 0)
            label, _, word = line.partition("=")
            parsed = parse(word.strip())
            if current is None:
                current = []
                sections.append(("", current))
            current.append(MmWord(parsed.atoms, label.strip()))
    return WordFile(sections)
