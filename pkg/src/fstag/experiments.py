"""Reusable experiment drivers behind the scripts in ``scripts/``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .evaluation import EvalReport, evaluate
from .hmm import Biases, HmmModel, corpus_classes, decode, default_biases, init_model, train
from .lattice import SentenceLattice
from .pipeline import Analyzer
from .rules import RulePack, apply_tiers
from .synthetic import COMPOUND_TEMPLATES, TEMPLATES, GoldSentence, SyntheticConfig, generate
from .tagset import Tag, parse_tag

__all__ = [
    "BiasRun",
    "BiasSensitivity",
    "analyze_gold",
    "bias_sensitivity",
    "decode_corpus",
    "tier_reports",
    "train_model",
]

FIXTURE = "Le train part à cinq heures ."
FIXTURE_INDEX = 2


def analyze_gold(an: Analyzer, corpus: Sequence[GoldSentence]) -> list[SentenceLattice]:
    out = []
    for g in corpus:
        lattices = an.lattices(g.text)
        if len(lattices) != 1 or len(lattices[0]) != len(g.tags):
            raise ValueError(f"synthetic sentence does not tokenize as generated: {g.text!r}")
        out.append(lattices[0])
    return out


def tier_reports(pack: RulePack, lattices: Sequence[SentenceLattice],
                 gold: Sequence[Sequence[Tag]]) -> list[tuple[str, EvalReport]]:
    """Lexicon baseline followed by one row per rule tier depth."""
    rows = [("lexicon only", evaluate(lattices, gold))]
    for depth, label in ((1, "reliable rules"), (2, "+ heuristic rules"), (3, "all the rules")):
        rows.append((label, evaluate([apply_tiers(pack, l, depth) for l in lattices], gold)))
    return rows


def train_model(an: Analyzer, lattices: Sequence[SentenceLattice], biases: Biases,
                max_iter: int = 20, tol: float = 1e-4) -> HmmModel:
    classes = an.classes() | set(corpus_classes(lattices))
    return train(init_model(None, classes, biases), lattices, max_iter=max_iter, tol=tol).model


def decode_corpus(m: HmmModel, lattices: Sequence[SentenceLattice]) -> list[SentenceLattice]:
    return [l.with_readings([{t} for t in decode(m, l)]) for l in lattices]


@dataclass
class BiasRun:
    fixture_tag: Tag
    report: EvalReport


@dataclass
class BiasSensitivity:
    seed: int
    before: BiasRun
    after: BiasRun
    edits: dict = field(default_factory=dict)

    @property
    def fixed(self) -> bool:
        return self.before.fixture_tag != self.after.fixture_tag == parse_tag("VERB-P3SG")

    @property
    def side_effect(self) -> bool:
        return self.after.report.errors > self.before.report.errors


def default_edits() -> dict[tuple[Tag, Tag], float]:
    """Make noun-noun successions unlikely and noun-verb ones likely."""
    n, v = parse_tag("NOUN-SG"), parse_tag("VERB-P3SG")
    return {(n, n): 0.01, (n, v): 10.0}


def bias_sensitivity(biases: Optional[Biases] = None, seed: int = 0, sentences: int = 300,
                     compound_weight: float = 2.0,
                     edits: Optional[dict] = None,
                     an: Optional[Analyzer] = None) -> BiasSensitivity:
    """Train with and without a transition-bias edit on the same text.

    The corpus mixes ordinary sentences with noun-noun compounds whose
    second noun shares its ambiguity class with verbs. Each model is
    scored on the corpus and on the tag it gives *part* in the fixture.
    """
    an = an or Analyzer.default()
    biases = biases or default_biases()
    edits = edits if edits is not None else default_edits()
    weights = [1.0] * len(TEMPLATES) + [compound_weight] * len(COMPOUND_TEMPLATES)
    corpus = generate(SyntheticConfig(sentences, seed, TEMPLATES + COMPOUND_TEMPLATES, weights))
    lattices = analyze_gold(an, corpus)
    gold = [g.tags for g in corpus]
    fixture = an.lattices(FIXTURE)[0]
    runs = []
    for b in (biases, biases.with_transition(edits)):
        m = train_model(an, lattices + [fixture], b)
        tag = decode(m, fixture)[FIXTURE_INDEX]
        runs.append(BiasRun(tag, evaluate(decode_corpus(m, lattices), gold)))
    return BiasSensitivity(seed, runs[0], runs[1], edits)
