"""Hybrid tagging: contextual rules filter, the HMM picks, the ranking finishes."""
from __future__ import annotations

from typing import Optional

from .hmm import HmmModel, decode
from .lattice import SentenceLattice
from .rules import RulePack, Tier, apply_final_preference, apply_tiers
from .tagset import Tag

__all__ = ["tag_combined", "combine_lattice"]


def combine_lattice(pack: RulePack, model: HmmModel, lattice: SentenceLattice,
                    hmm_on_reduced: bool = False,
                    trace: Optional[dict] = None) -> SentenceLattice:
    """Fully disambiguated lattice produced by the three combination steps.

    The HMM normally decodes the unreduced lattice and its choice is kept
    only where it survived the rules. With ``hmm_on_reduced`` it decodes
    with its states restricted to the rule survivors instead, so every
    choice survives.
    """
    reduced = apply_tiers(pack, lattice, Tier.HEURISTIC, trace=trace)
    if hmm_on_reduced:
        path = decode(model, lattice, allowed=reduced.readings)
    else:
        path = decode(model, lattice)
    picked = [{t} if t in rs else rs for t, rs in zip(path, reduced.readings)]
    return apply_final_preference(pack.final, reduced.with_readings(picked))


def tag_combined(pack: RulePack, model: HmmModel, lattice: SentenceLattice,
                 hmm_on_reduced: bool = False) -> list[Tag]:
    out = combine_lattice(pack, model, lattice, hmm_on_reduced)
    return [next(iter(c.readings)) for c in out]
