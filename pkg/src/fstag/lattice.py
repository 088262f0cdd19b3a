"""Sentence lattices: ordered cohorts of candidate readings."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence, TextIO

from .tagset import Tag, TagSet, normalize_tags, parse_tags, sorted_tags
from .tokenizer import Token, tokenize

__all__ = [
    "Cohort",
    "SentenceLattice",
    "AmbiguityStats",
    "LatticeError",
    "EmptySentenceError",
    "EmptyReadingsError",
    "build_lattice",
    "make_lattice",
    "ambiguity_stats",
    "corpus_stats",
    "read_lattices",
    "write_lattices",
    "format_readings",
]

SOURCES = ("lexicon", "guesser", "hint", "file")


class LatticeError(ValueError):
    pass


class EmptySentenceError(LatticeError):
    pass


class EmptyReadingsError(LatticeError):
    pass


@dataclass(frozen=True)
class Cohort:
    token: Token
    readings: TagSet
    source: str = "lexicon"

    @property
    def surface(self) -> str:
        return self.token.surface

    @property
    def ambiguous(self) -> bool:
        return len(self.readings) > 1

    def with_readings(self, readings: Iterable[Tag]) -> "Cohort":
        return replace(self, readings=frozenset(readings))


@dataclass(frozen=True)
class SentenceLattice:
    cohorts: tuple[Cohort, ...]

    def __len__(self) -> int:
        return len(self.cohorts)

    def __iter__(self) -> Iterator[Cohort]:
        return iter(self.cohorts)

    def __getitem__(self, i: int) -> Cohort:
        return self.cohorts[i]

    @property
    def readings(self) -> tuple[TagSet, ...]:
        return tuple(c.readings for c in self.cohorts)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(c.surface for c in self.cohorts)

    def with_readings(self, readings: Sequence[Iterable[Tag]]) -> "SentenceLattice":
        """A new lattice with cohort ``i`` holding ``readings[i]``."""
        if len(readings) != len(self.cohorts):
            raise LatticeError("reading list does not match lattice length")
        return build_lattice(c.with_readings(r) for c, r in zip(self.cohorts, readings))

    @property
    def is_disambiguated(self) -> bool:
        return all(len(c.readings) == 1 for c in self.cohorts)


@dataclass(frozen=True)
class AmbiguityStats:
    words: int
    ambiguous_words: int
    total_readings: int

    @property
    def tags_per_word(self) -> float:
        return self.total_readings / self.words if self.words else 1.0

    @property
    def percent_ambiguous(self) -> float:
        """Fraction in [0, 1], despite the name used in the published tables."""
        return self.ambiguous_words / self.words if self.words else 0.0

    def __add__(self, other: "AmbiguityStats") -> "AmbiguityStats":
        return AmbiguityStats(
            self.words + other.words,
            self.ambiguous_words + other.ambiguous_words,
            self.total_readings + other.total_readings,
        )


def build_lattice(cohorts: Iterable[Cohort]) -> SentenceLattice:
    cohorts = tuple(cohorts)
    if not cohorts:
        raise EmptySentenceError("a sentence lattice needs at least one cohort")
    for i, c in enumerate(cohorts):
        if not c.readings:
            raise EmptyReadingsError(f"cohort {i} ({c.surface!r}) has no readings")
    return SentenceLattice(cohorts)


def make_lattice(surfaces: Sequence[str], readings: Sequence[Iterable[Tag]],
                 source: str = "file") -> SentenceLattice:
    """Lattice from parallel surface and reading lists, spans as if space-joined."""
    if len(surfaces) != len(readings):
        raise LatticeError("surfaces and readings differ in length")
    cohorts, offset = [], 0
    for surface, rs in zip(surfaces, readings):
        tok = Token(surface, offset, offset + len(surface), _guess_hint(surface))
        offset += len(surface) + 1
        cohorts.append(Cohort(tok, frozenset(rs), source))
    return build_lattice(cohorts)


def ambiguity_stats(lattice: SentenceLattice) -> AmbiguityStats:
    sizes = [len(c.readings) for c in lattice]
    return AmbiguityStats(len(sizes), sum(1 for s in sizes if s > 1), sum(sizes))


def corpus_stats(lattices: Iterable[SentenceLattice]) -> AmbiguityStats:
    total = AmbiguityStats(0, 0, 0)
    for lattice in lattices:
        total = total + ambiguity_stats(lattice)
    return total


def format_readings(readings: Iterable[Tag], normalize: bool = False) -> str:
    if normalize:
        readings = normalize_tags(readings)
    return " ".join(t.name for t in sorted_tags(readings))


def write_lattices(lattices: Iterable[SentenceLattice], out: TextIO,
                   normalize: bool = False) -> None:
    """Write ``surface<TAB>tag tag ...`` lines, blank line between sentences."""
    first = True
    for lattice in lattices:
        if not first:
            out.write("\n")
        first = False
        for c in lattice:
            out.write(f"{c.surface}\t{format_readings(c.readings, normalize)}\n")


def read_lattices(stream: TextIO) -> list[SentenceLattice]:
    """Parse the lattice text format.

    Token spans are synthesized as if surfaces were joined by single spaces.
    Raises ``LatticeError`` with a line number on malformed input.
    """
    lattices: list[SentenceLattice] = []
    cohorts: list[Cohort] = []
    offset = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            if cohorts:
                lattices.append(build_lattice(cohorts))
                cohorts = []
            continue
        if "\t" not in line:
            raise LatticeError(f"line {lineno}: expected surface<TAB>tags")
        surface, tags = line.split("\t", 1)
        if not surface:
            raise LatticeError(f"line {lineno}: empty surface")
        try:
            readings = parse_tags(tags.split())
        except ValueError as exc:
            raise LatticeError(f"line {lineno}: {exc}") from None
        if not readings:
            raise LatticeError(f"line {lineno}: no tags for {surface!r}")
        tok = Token(surface, offset, offset + len(surface), _guess_hint(surface))
        offset += len(surface) + 1
        cohorts.append(Cohort(tok, readings, "file"))
    if cohorts:
        lattices.append(build_lattice(cohorts))
    return lattices


def _guess_hint(surface: str) -> str:
    toks = tokenize(surface)
    if len(toks) == 1:
        return toks[0].hint
    return "MWE" if " " in surface else "WORD"
