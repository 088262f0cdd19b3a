"""Longest-match tokenizer and sentence splitter.

At each position every token recognizer proposes a match; the longest
wins and ties go to the earlier recognizer in the order
NUM > HEURE > MWE > elision > word > punctuation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Sequence, TextIO

__all__ = [
    "Token",
    "HINTS",
    "ELISIONS",
    "TERMINATORS",
    "tokenize",
    "split_sentences",
    "load_mwe_list",
    "default_mwe_list",
    "NUM_RE",
    "HEURE_RE",
]

HINTS = ("NUM", "HEURE", "CM", "PUNCT", "MWE", "WORD")

ELISIONS = frozenset({"l", "d", "n", "qu", "m", "t", "s", "j", "c"})
APOSTROPHES = "'’"
TERMINATORS = frozenset(".!?…")

NUM_RE = re.compile(r"\d+(?:[,./+\-%]\d+)*%?")
HEURE_RE = re.compile(r"\d+h\d+|\d+(?::\d+)+")
_WORD_RE = re.compile(r"[^\W\d_]+")
_TERM_RUN_RE = re.compile(r"[.!?…]+")
_SPACE_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    hint: str = "WORD"

    def __post_init__(self):
        if not self.surface:
            raise ValueError("empty token surface")
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")
        if self.hint not in HINTS:
            raise ValueError(f"unknown token hint {self.hint!r}")

    @property
    def is_terminator(self) -> bool:
        return self.hint == "PUNCT" and all(ch in TERMINATORS for ch in self.surface)


class _MweMatcher:
    """Whitespace-tolerant matcher for multi-word expressions."""

    def __init__(self, expressions: Iterable[str]):
        by_first: dict[str, list[re.Pattern]] = {}
        for expr in expressions:
            words = expr.split()
            if not words:
                continue
            body = r"\s+".join(re.escape(w) for w in words)
            # an expression must not end inside a word
            tail = r"(?![^\W\d_])" if _WORD_RE.fullmatch(words[-1][-1]) else ""
            by_first.setdefault(words[0][0], []).append(re.compile(body + tail))
        self._by_first = by_first

    def match(self, text: str, pos: int) -> int:
        best = 0
        for pattern in self._by_first.get(text[pos], ()):
            m = pattern.match(text, pos)
            if m and m.end() - pos > best:
                best = m.end() - pos
        return best


def _candidates(text: str, pos: int, mwe: Optional[_MweMatcher]):
    m = NUM_RE.match(text, pos)
    if m:
        yield m.end() - pos, "NUM"
    m = HEURE_RE.match(text, pos)
    if m:
        yield m.end() - pos, "HEURE"
    if mwe is not None:
        n = mwe.match(text, pos)
        if n:
            yield n, "MWE"
    m = _WORD_RE.match(text, pos)
    if m:
        end = m.end()
        if end < len(text) and text[end] in APOSTROPHES and m.group().lower() in ELISIONS:
            yield end + 1 - pos, "WORD"
        yield end - pos, "WORD"
        return
    ch = text[pos]
    if ch == ",":
        yield 1, "CM"
        return
    m = _TERM_RUN_RE.match(text, pos)
    yield (m.end() - pos if m else 1), "PUNCT"


def tokenize(text: str, mwe_list: Iterable[str] = ()) -> list[Token]:
    """Split ``text`` into classified tokens by longest match."""
    mwe = _MweMatcher(mwe_list) if mwe_list else None
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        ws = _SPACE_RE.match(text, pos)
        if ws:
            pos = ws.end()
            continue
        # max() keeps the first of equal lengths, i.e. the higher priority
        length, hint = max(_candidates(text, pos, mwe), key=lambda c: c[0])
        tokens.append(Token(text[pos:pos + length], pos, pos + length, hint))
        pos += length
    return tokens


def split_sentences(tokens: Sequence[Token]) -> list[list[Token]]:
    sentences: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        current.append(tok)
        if tok.is_terminator:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def load_mwe_list(stream: TextIO) -> list[str]:
    """One expression per line; blank lines and ``#`` comments ignored."""
    out = []
    for raw in stream:
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(" ".join(line.split()))
    return out


def default_mwe_list() -> list[str]:
    with resources.files("fstag").joinpath("data/mwe.txt").open(encoding="utf-8") as fh:
        return load_mwe_list(fh)
