"""Text to lattices: tokenization, sentence splitting and lexical analysis."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .lattice import SentenceLattice
from .morphology import (HINT_TAGS, Guesser, Lexicon, analyze_sentence, default_guesser,
                         default_lexicon)
from .tagset import TagSet, parse_tag
from .tokenizer import Token, default_mwe_list, split_sentences, tokenize

__all__ = ["Analyzer"]


@dataclass(frozen=True)
class Analyzer:
    lexicon: Lexicon
    guesser: Guesser
    mwe_list: tuple[str, ...] = field(default=())

    @classmethod
    def default(cls) -> "Analyzer":
        return cls(default_lexicon(), default_guesser(), tuple(default_mwe_list()))

    def tokens(self, text: str) -> list[Token]:
        return tokenize(text, self.mwe_list)

    def sentences(self, text: str) -> list[list[Token]]:
        return split_sentences(self.tokens(text))

    def lattices(self, text: str) -> list[SentenceLattice]:
        return [analyze_sentence(self.lexicon, self.guesser, s) for s in self.sentences(text)]

    def lattices_by_line(self, lines: Iterable[str]) -> list[SentenceLattice]:
        """Analyze each line separately, so sentences never span lines."""
        out: list[SentenceLattice] = []
        for line in lines:
            out.extend(self.lattices(line))
        return out

    def classes(self) -> set[TagSet]:
        """Every ambiguity class this analyzer can assign."""
        found = set(self.lexicon.entries.values())
        found.update(tags for _, tags in self.guesser.ending_rules)
        found.add(self.guesser.default_class)
        found.add(self.guesser.capitalized_class)
        found.update(frozenset({parse_tag(t)}) for t in HINT_TAGS.values())
        return found
