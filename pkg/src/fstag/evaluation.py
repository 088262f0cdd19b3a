"""Scoring against a hand-tagged reference and ambiguity frequency profiles."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .lattice import AmbiguityStats, SentenceLattice, corpus_stats
from .morphology import Guesser, Lexicon, analyze
from .tagset import Tag, normalize_tag, normalize_tags
from .tokenizer import Token, split_sentences

__all__ = [
    "AlignmentError",
    "EvalReport",
    "ProfileEntry",
    "AmbiguityProfile",
    "evaluate",
    "gold_sequences",
    "ambiguity_profile",
    "format_table",
    "format_kv",
    "format_profile",
]


class AlignmentError(ValueError):
    def __init__(self, message: str, sentence: int, token: int | None = None):
        where = f"sentence {sentence + 1}" + (f", token {token + 1}" if token is not None else "")
        super().__init__(f"{where}: {message}")
        self.sentence = sentence
        self.token = token


@dataclass(frozen=True)
class EvalReport:
    words: int
    errors: int
    ambiguous_words: int
    total_readings: int

    @property
    def error_rate(self) -> float:
        return self.errors / self.words if self.words else 0.0

    @property
    def correctness(self) -> float:
        return 1.0 - self.error_rate

    @property
    def remaining_ambiguity(self) -> float:
        return self.ambiguous_words / self.words if self.words else 0.0

    @property
    def tags_per_word(self) -> float:
        return self.total_readings / self.words if self.words else 1.0

    def as_dict(self) -> dict[str, float]:
        return {
            "words": self.words,
            "errors": self.errors,
            "error_rate": self.error_rate,
            "correctness": self.correctness,
            "remaining_ambiguity": self.remaining_ambiguity,
            "tags_per_word": self.tags_per_word,
        }


GoldSentence = Union[SentenceLattice, Sequence[Tag]]


def gold_sequences(gold: Iterable[SentenceLattice]) -> list[list[Tag]]:
    """Tag sequences from single-reading lattices (the gold file format)."""
    out = []
    for s, lattice in enumerate(gold):
        row = []
        for i, c in enumerate(lattice):
            if len(c.readings) != 1:
                raise AlignmentError(f"gold token {c.surface!r} has {len(c.readings)} tags", s, i)
            row.append(next(iter(c.readings)))
        out.append(row)
    return out


def evaluate(system: Sequence[SentenceLattice], gold: Sequence[GoldSentence]) -> EvalReport:
    """Score possibly ambiguous output against one gold tag per word.

    A word is wrong when its gold tag is not among its remaining readings;
    both sides are compared after variant normalization. Error rate is over
    all words. When gold sentences are lattices their surfaces must match.
    """
    if len(system) != len(gold):
        raise AlignmentError(f"{len(system)} system sentences vs {len(gold)} gold",
                             min(len(system), len(gold)))
    errors = 0
    for s, (lattice, ref) in enumerate(zip(system, gold)):
        if len(lattice) != len(ref):
            raise AlignmentError(f"{len(lattice)} system tokens vs {len(ref)} gold", s)
        if isinstance(ref, SentenceLattice):
            for i, (a, b) in enumerate(zip(lattice.surfaces, ref.surfaces)):
                if a != b:
                    raise AlignmentError(f"surface {a!r} vs gold {b!r}", s, i)
            ref = gold_sequences([ref])[0]
        for c, tag in zip(lattice, ref):
            if normalize_tag(tag) not in normalize_tags(c.readings):
                errors += 1
    stats: AmbiguityStats = corpus_stats(system)
    return EvalReport(stats.words, errors, stats.ambiguous_words, stats.total_readings)


@dataclass(frozen=True)
class ProfileEntry:
    surface: str
    count: int
    coverage: float


@dataclass(frozen=True)
class AmbiguityProfile:
    entries: tuple[ProfileEntry, ...]
    total: int

    def __len__(self) -> int:
        return len(self.entries)

    def forms_for_coverage(self, ratio: float) -> int:
        """Fewest top-ranked forms whose cumulative coverage reaches ``ratio``."""
        for k, e in enumerate(self.entries, 1):
            if e.coverage >= ratio:
                return k
        return len(self.entries)


def ambiguity_profile(tokens: Iterable[Token], lex: Lexicon, g: Guesser) -> AmbiguityProfile:
    """Rank ambiguous surface forms (case-sensitive) by occurrence count."""
    counts: Counter[str] = Counter()
    for sentence in split_sentences(list(tokens)):
        for i, tok in enumerate(sentence):
            if len(analyze(lex, g, tok, i == 0).readings) > 1:
                counts[tok.surface] += 1
    total = sum(counts.values())
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    entries, running = [], 0
    for surface, n in ranked:
        running += n
        entries.append(ProfileEntry(surface, n, running / total))
    return AmbiguityProfile(tuple(entries), total)


_COLUMNS = ("error rate (correctness)", "remaining ambiguity", "tag / word")


def format_table(rows: Sequence[tuple[str, EvalReport]]) -> str:
    """Aligned plain-text table, one row per labelled report."""
    cells = [("", *_COLUMNS)]
    for label, r in rows:
        cells.append((label,
                      f"{100 * r.error_rate:.2f} % ({100 * r.correctness:.2f} %)",
                      f"{100 * r.remaining_ambiguity:.2f} %",
                      f"{r.tags_per_word:.2f}"))
    widths = [max(len(row[k]) for row in cells) for k in range(4)]
    lines = []
    for row in cells:
        first = row[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(row[1:], widths[1:])]
        lines.append(" | ".join([first, *rest]).rstrip())
    return "\n".join(lines) + "\n"


def format_kv(report: EvalReport, prefix: str = "") -> str:
    return "".join(f"{prefix}{k}={v!r}\n" for k, v in report.as_dict().items())


def format_profile(profile: AmbiguityProfile, limit: int | None = None) -> str:
    lines = [f"# ambiguous tokens: {profile.total}"]
    for rank, e in enumerate(profile.entries[:limit], 1):
        lines.append(f"{rank}\t{e.surface}\t{e.count}\t{e.coverage:.4f}")
    return "\n".join(lines) + "\n"
