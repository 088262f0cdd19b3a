"""Lexicon lookup with a productive-endings guesser as fallback."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Sequence, TextIO

from .lattice import Cohort, SentenceLattice, build_lattice
from .tagset import Tag, TagSet, UnknownTagError, is_open_class, parse_tag, parse_tags
from .tokenizer import Token

__all__ = [
    "Lexicon",
    "Guesser",
    "LexiconFormatError",
    "LexiconTagError",
    "load_lexicon",
    "load_guesser",
    "analyze",
    "analyze_sentence",
    "guess",
    "default_lexicon",
    "default_guesser",
    "HINT_TAGS",
]

HINT_TAGS = {"NUM": "NUM", "HEURE": "HEURE", "CM": "CM", "PUNCT": "PUNCT"}


class LexiconFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LexiconTagError(LexiconFormatError):
    """A lexicon or guesser line names a tag outside the inventory."""


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, TagSet]
    lemmas: Mapping[tuple[str, Tag], str] = field(default_factory=dict)

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, surface: str) -> TagSet | None:
        return self.entries.get(surface)


@dataclass(frozen=True)
class Guesser:
    ending_rules: tuple[tuple[str, TagSet], ...]
    default_class: TagSet
    capitalized_class: TagSet

    def __post_init__(self):
        suffixes = [s for s, _ in self.ending_rules]
        if len(set(suffixes)) != len(suffixes):
            raise ValueError("guesser suffixes must be distinct")
        for label, tags in [*self.ending_rules, ("DEFAULT", self.default_class),
                            ("CAPITALIZED", self.capitalized_class)]:
            if not tags:
                raise ValueError(f"empty tag set for {label}")
            closed = [t.name for t in tags if not is_open_class(t)]
            if closed:
                raise ValueError(f"{label}: closed-class tags in guesser: {closed}")


def load_lexicon(source: TextIO) -> Lexicon:
    """Parse ``surface<TAB>tag[:lemma] tag[:lemma] ...`` lines.

    Repeated surfaces merge their tag sets.
    """
    entries: dict[str, set[Tag]] = {}
    lemmas: dict[tuple[str, Tag], str] = {}
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise LexiconFormatError(lineno, f"expected surface<TAB>tags, got {line!r}")
        surface, rest = line.split("\t", 1)
        surface = surface.strip()
        items = rest.split()
        if not surface or not items:
            raise LexiconFormatError(lineno, "missing surface or tags")
        bucket = entries.setdefault(surface, set())
        for item in items:
            label, _, lemma = item.partition(":")
            try:
                tag = parse_tag(label)
            except UnknownTagError as exc:
                raise LexiconTagError(lineno, str(exc)) from None
            bucket.add(tag)
            if lemma:
                lemmas[(surface, tag)] = lemma
    return Lexicon({s: frozenset(t) for s, t in entries.items()}, lemmas)


def load_guesser(source: TextIO) -> Guesser:
    """Parse ``suffix<TAB>tags`` lines plus the DEFAULT and CAPITALIZED lines."""
    rules: list[tuple[str, TagSet]] = []
    default = capitalized = None
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise LexiconFormatError(lineno, f"expected suffix<TAB>tags, got {line!r}")
        key, rest = line.split("\t", 1)
        key = key.strip()
        try:
            tags = parse_tags(rest.split())
        except UnknownTagError as exc:
            raise LexiconTagError(lineno, str(exc)) from None
        if not tags:
            raise LexiconFormatError(lineno, "no tags")
        if key == "DEFAULT":
            default = tags
        elif key == "CAPITALIZED":
            capitalized = tags
        else:
            rules.append((key, tags))
    if default is None or capitalized is None:
        raise LexiconFormatError(0, "guesser file needs DEFAULT and CAPITALIZED lines")
    return Guesser(tuple(rules), default, capitalized)


def guess(g: Guesser, surface: str) -> TagSet:
    best: tuple[int, TagSet] | None = None
    for suffix, tags in g.ending_rules:
        if surface.endswith(suffix) and (best is None or len(suffix) > best[0]):
            best = (len(suffix), tags)
    if best is not None:
        return best[1]
    if surface[:1].isupper():
        return g.capitalized_class
    return g.default_class


def analyze(lex: Lexicon, g: Guesser, tok: Token, sentence_initial: bool = False) -> Cohort:
    """Assign ``tok`` its ambiguity class.

    Punctuation-like hints map straight to their tag. Otherwise the exact
    surface is looked up, then (for a sentence-initial capitalized word)
    its lowercased form, and finally the guesser is consulted.
    """
    if tok.hint in HINT_TAGS:
        return Cohort(tok, frozenset({parse_tag(HINT_TAGS[tok.hint])}), "hint")
    tags = lex.get(tok.surface)
    if tags is None and sentence_initial and tok.surface[:1].isupper():
        tags = lex.get(tok.surface.lower())
    if tags is not None:
        return Cohort(tok, tags, "lexicon")
    return Cohort(tok, guess(g, tok.surface), "guesser")


def analyze_sentence(lex: Lexicon, g: Guesser, tokens: Sequence[Token]) -> SentenceLattice:
    return build_lattice(analyze(lex, g, tok, i == 0) for i, tok in enumerate(tokens))


def _open_data(name: str):
    return resources.files("fstag").joinpath("data", name).open(encoding="utf-8")


def default_lexicon() -> Lexicon:
    with _open_data("lexicon.txt") as fh:
        return load_lexicon(fh)


def default_guesser() -> Guesser:
    with _open_data("guesser.txt") as fh:
        return load_guesser(fh)
