"""Contextual constraint rules and their application to sentence lattices.

A rule names target readings and a conjunction of context conditions.
Conditions are evaluated against the lattice as it was before the rule
ran, so one application behaves like a single pass of a transducer over
the whole sentence. Within a tier, rules are re-run until nothing changes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..lattice import SentenceLattice
from ..tagset import Tag, TagSet, all_tags

__all__ = [
    "Tier",
    "Action",
    "Condition",
    "Rule",
    "PreferenceRanking",
    "RulePack",
    "TierTrace",
    "apply_rule",
    "apply_tier",
    "apply_tiers",
    "apply_final_preference",
    "run_tier",
]


class Tier(enum.IntEnum):
    RELIABLE = 1
    HEURISTIC = 2
    FINAL = 3

    @classmethod
    def parse(cls, value) -> "Tier":
        if isinstance(value, Tier):
            return value
        if isinstance(value, int) or (isinstance(value, str) and value.isdigit()):
            return cls(int(value))
        return cls[str(value).upper()]


class Action(enum.Enum):
    SELECT = "SELECT"
    REMOVE = "REMOVE"


def _fold(word: str) -> str:
    return word.replace("’", "'").lower()


def _plain(word: str) -> str:
    return word.replace("’", "'")


@dataclass(frozen=True)
class Condition:
    """One context test, relative to the target cohort.

    ``offset`` is the cohort position (0 is the target itself); with
    ``scan`` set, cohorts are visited from ``offset`` outward until one
    passes the test or a barrier cohort is reached. ``careful`` demands
    that every reading of the tested cohort passes the tag test (for word
    tests: that the cohort is unambiguous). ``boundary`` tests whether the
    position lies before the sentence start (BOS) or after its end (EOS).
    """

    offset: int
    tags: Optional[TagSet] = None
    words: Optional[frozenset[str]] = None
    fold: bool = False
    boundary: Optional[str] = None
    scan: bool = False
    negated: bool = False
    careful: bool = False
    barrier: Optional[TagSet] = None
    careful_barrier: bool = False

    def __post_init__(self):
        kinds = sum(x is not None for x in (self.tags, self.words, self.boundary))
        if kinds != 1:
            raise ValueError("a condition tests exactly one of tags, words or a boundary")
        if self.barrier is not None and not self.scan:
            raise ValueError("barriers are only meaningful on scanning conditions")
        if self.boundary is not None and (self.scan or self.careful):
            raise ValueError("boundary tests take a plain offset")
        if self.boundary not in (None, "BOS", "EOS"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if self.scan and self.offset == 0:
            raise ValueError("a scan needs a nonzero starting offset")
        if self.tags is not None and not self.tags:
            raise ValueError("empty tag test")
        if self.words is not None:
            if not self.words:
                raise ValueError("empty word test")
            norm = _fold if self.fold else _plain
            object.__setattr__(self, "words", frozenset(norm(w) for w in self.words))

    def _cohort_passes(self, lattice: SentenceLattice, j: int) -> bool:
        c = lattice[j]
        if self.tags is not None:
            if self.careful:
                return c.readings <= self.tags
            return not c.readings.isdisjoint(self.tags)
        surface = _fold(c.surface) if self.fold else _plain(c.surface)
        if surface not in self.words:
            return False
        return len(c.readings) == 1 if self.careful else True

    def _blocks(self, lattice: SentenceLattice, j: int) -> bool:
        readings = lattice[j].readings
        if self.careful_barrier:
            return readings <= self.barrier
        return not readings.isdisjoint(self.barrier)

    def _holds(self, lattice: SentenceLattice, i: int) -> bool:
        n = len(lattice)
        j = i + self.offset
        if self.boundary == "BOS":
            return j < 0
        if self.boundary == "EOS":
            return j >= n
        if not self.scan:
            return 0 <= j < n and self._cohort_passes(lattice, j)
        step = 1 if self.offset > 0 else -1
        while 0 <= j < n:
            if self._cohort_passes(lattice, j):
                return True
            if self.barrier is not None and self._blocks(lattice, j):
                return False
            j += step
        return False

    def holds(self, lattice: SentenceLattice, i: int) -> bool:
        return self._holds(lattice, i) != self.negated


@dataclass(frozen=True)
class Rule:
    name: str
    tier: Tier
    action: Action
    target: TagSet
    conditions: tuple[Condition, ...] = ()
    words: Optional[frozenset[str]] = None
    fold: bool = False

    def __post_init__(self):
        if not self.target:
            raise ValueError(f"rule {self.name}: empty target")
        if self.tier not in (Tier.RELIABLE, Tier.HEURISTIC):
            raise ValueError(f"rule {self.name}: contextual rules are RELIABLE or HEURISTIC")
        if self.words is not None:
            norm = _fold if self.fold else _plain
            object.__setattr__(self, "words", frozenset(norm(w) for w in self.words))

    def matches_target(self, lattice: SentenceLattice, i: int) -> bool:
        c = lattice[i]
        if c.readings.isdisjoint(self.target):
            return False
        if self.words is not None:
            surface = _fold(c.surface) if self.fold else _plain(c.surface)
            if surface not in self.words:
                return False
        return True

    def reduce(self, readings: TagSet) -> TagSet:
        if self.action is Action.SELECT:
            return readings & self.target
        return readings - self.target


@dataclass(frozen=True)
class PreferenceRanking:
    """Total order used by the final, non-contextual tier.

    Listed tags rank in list order; a word-specific variant that is not
    listed takes its base tag's rank (just below it); everything else
    ranks below all listed tags, in inventory order.
    """

    order: tuple[Tag, ...] = ()
    by_word: Mapping[str, tuple[Tag, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("duplicate tag in preference ranking")
        for word, order in self.by_word.items():
            if len(set(order)) != len(order):
                raise ValueError(f"duplicate tag in ranking for {word!r}")

    def _key(self, tag: Tag, positions: Mapping[Tag, int]) -> tuple:
        if tag in positions:
            return (positions[tag], 0, tag.id)
        if tag.base in positions:
            return (positions[tag.base], 1, tag.id)
        return (len(positions), 2, tag.id)

    def best(self, readings: TagSet, surface: Optional[str] = None) -> Tag:
        if surface is not None and self.by_word:
            order = self.by_word.get(_plain(surface)) or self.by_word.get(_fold(surface))
            if order:
                for tag in order:
                    if tag in readings:
                        return tag
        positions = {t: k for k, t in enumerate(self.order)}
        return min(readings, key=lambda t: self._key(t, positions))

    def ranked(self) -> list[Tag]:
        positions = {t: k for k, t in enumerate(self.order)}
        return sorted(all_tags(), key=lambda t: self._key(t, positions))


@dataclass(frozen=True)
class RulePack:
    reliable: tuple[Rule, ...] = ()
    heuristic: tuple[Rule, ...] = ()
    final: PreferenceRanking = field(default_factory=PreferenceRanking)

    def __post_init__(self):
        names = [r.name for r in self.rules]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ValueError(f"duplicate rule names: {', '.join(dupes)}")

    @property
    def rules(self) -> tuple[Rule, ...]:
        return self.reliable + self.heuristic

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


def apply_rule(rule: Rule, lattice: SentenceLattice) -> SentenceLattice:
    """Apply one rule to every cohort it targets.

    A reduction that would leave a cohort without readings is skipped for
    that cohort.
    """
    out = list(lattice.readings)
    changed = False
    for i, readings in enumerate(out):
        if not rule.matches_target(lattice, i):
            continue
        reduced = rule.reduce(readings)
        if not reduced or reduced == readings:
            continue
        if all(cond.holds(lattice, i) for cond in rule.conditions):
            out[i] = reduced
            changed = True
    return lattice.with_readings(out) if changed else lattice


@dataclass
class TierTrace:
    passes: int = 0
    applications: int = 0
    fired: list[str] = field(default_factory=list)


def run_tier(rules: Sequence[Rule], lattice: SentenceLattice,
             trace: Optional[TierTrace] = None) -> SentenceLattice:
    """Run ``rules`` in order, repeating full passes until a fixpoint.

    Every pass except the last removes at least one reading, so there are
    at most ``total readings - words + 1`` passes.
    """
    while True:
        if trace is not None:
            trace.passes += 1
        changed = False
        for rule in rules:
            reduced = apply_rule(rule, lattice)
            if trace is not None:
                trace.applications += 1
            if reduced is not lattice:
                changed = True
                lattice = reduced
                if trace is not None:
                    trace.fired.append(rule.name)
        if not changed:
            return lattice


def apply_final_preference(rank: PreferenceRanking, lattice: SentenceLattice) -> SentenceLattice:
    return lattice.with_readings(
        [{rank.best(c.readings, c.surface)} if len(c.readings) > 1 else c.readings
         for c in lattice]
    )


def apply_tier(pack: RulePack, lattice: SentenceLattice, tier) -> SentenceLattice:
    """Apply a single tier in isolation."""
    tier = Tier.parse(tier)
    if tier is Tier.RELIABLE:
        return run_tier(pack.reliable, lattice)
    if tier is Tier.HEURISTIC:
        return run_tier(pack.heuristic, lattice)
    return apply_final_preference(pack.final, lattice)


def apply_tiers(pack: RulePack, lattice: SentenceLattice, max_tier=Tier.FINAL,
                trace: Optional[dict] = None) -> SentenceLattice:
    """Apply tiers 1..``max_tier`` in order; ``max_tier`` may be 1-3 or a name."""
    max_tier = Tier.parse(max_tier)
    traces = {}
    traces[Tier.RELIABLE] = TierTrace()
    lattice = run_tier(pack.reliable, lattice, traces[Tier.RELIABLE])
    if max_tier >= Tier.HEURISTIC:
        traces[Tier.HEURISTIC] = TierTrace()
        lattice = run_tier(pack.heuristic, lattice, traces[Tier.HEURISTIC])
    if max_tier >= Tier.FINAL:
        lattice = apply_final_preference(pack.final, lattice)
    if trace is not None:
        trace.update(traces)
    return lattice
