"""Seeded template grammar producing small French corpora with gold tags.

Each template is a sequence of slot names; each slot offers phrases
written as ``word/TAG`` pairs. The first word is capitalized. Gold tags
are stored normalized, as the scorer expects.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .tagset import Tag, normalize_tag, parse_tag

__all__ = ["GoldSentence", "SyntheticConfig", "generate", "SLOTS", "TEMPLATES", "COMPOUND_TEMPLATES"]

SLOTS: dict[str, tuple[str, ...]] = {
    "SUBJ_SG": (
        "le/DET-SG chien/NOUN-SG", "la/DET-SG femme/NOUN-SG", "le/DET-SG train/NOUN-SG",
        "l'/DET-SG enfant/NOUN-SG", "le/DET-SG chat/NOUN-SG", "l'/DET-SG homme/NOUN-SG",
        "le/DET-SG petit/ADJ-SG chat/NOUN-SG", "le/DET-SG chien/NOUN-SG noir/ADJ-SG",
        "la/DET-SG porte/NOUN-SG", "le/DET-SG chef/NOUN-SG",
    ),
    "SUBJ_PL": (
        "les/DET-PL chiens/NOUN-PL", "les/DET-PL enfants/NOUN-PL", "des/DET-PL chats/NOUN-PL",
        "les/DET-PL fleurs/NOUN-PL",
    ),
    "V_INTR_SG": (
        "dort/VERB-P3SG", "part/VERB-P3SG", "arrive/VERB-P3SG", "chante/VERB-P3SG",
        "marche/VERB-P3SG", "joue/VERB-P3SG", "aboie/VERB-P3SG", "voyage/VERB-P3SG",
    ),
    "V_INTR_PL": (
        "dorment/VERB-P3PL", "partent/VERB-P3PL", "arrivent/VERB-P3PL", "jouent/VERB-P3PL",
        "aboient/VERB-P3PL",
    ),
    "V_TR_SG": (
        "mange/VERB-P3SG", "aime/VERB-P3SG", "regarde/VERB-P3SG", "porte/VERB-P3SG",
        "garde/VERB-P3SG", "ferme/VERB-P3SG", "voit/VERB-P3SG", "ouvre/VERB-P3SG",
    ),
    "OBJ": (
        "des/DET-PL pommes/NOUN-PL", "le/DET-SG livre/NOUN-SG", "la/DET-SG porte/NOUN-SG",
        "le/DET-SG bruit/NOUN-SG des/PREP-DE vagues/NOUN-PL", "la/DET-SG lettre/NOUN-SG",
        "les/DET-PL fleurs/NOUN-PL", "le/DET-SG journal/NOUN-SG", "une/DET-SG pomme/NOUN-SG",
        "la/DET-SG place/NOUN-SG", "le/DET-SG billet/NOUN-SG",
    ),
    "PP": (
        "dans/PREP la/DET-SG cuisine/NOUN-SG", "à/PREP-A la/DET-SG gare/NOUN-SG",
        "à/PREP-A cinq/NUM heures/NOUN-PL", "avec/PREP le/DET-SG chat/NOUN-SG",
        "sur/PREP la/DET-SG place/NOUN-SG", "dans/PREP la/DET-SG maison/NOUN-SG",
        "pour/PREP la/DET-SG journée/NOUN-SG", "vers/PREP la/DET-SG ville/NOUN-SG",
    ),
    "PAP": (
        "mangé/PAP-SG", "donné/PAP-SG", "fini/PAP-SG", "ouvert/PAP-SG", "écrit/PAP-SG",
        "regardé/PAP-SG",
    ),
    "ADJ": (
        "malade/ADJ-SG", "heureux/ADJ-INV", "jeune/ADJ-SG", "petite/ADJ-SG",
        "gentille/ADJ-SG", "forte/ADJ-SG", "rouge/ADJ-SG",
    ),
    "NEG_SG": (
        "il/PRON ne/NEG le/PC pense/VERB-P3SG pas/ADV",
        "elle/PRON ne/NEG la/PC regarde/VERB-P3SG pas/ADV",
        "on/PRON ne/NEG les/PC mange/VERB-P3SG pas/ADV",
    ),
    "NEG_12": (
        "je/PRON-P1P2 ne/NEG le/PC pense/VERB-P1P2 pas/ADV",
        "nous/PRON-P1P2 ne/NEG les/PC avons/VAUX-P1P2 pas/ADV",
        "tu/PRON-P1P2 ne/NEG la/PC regardes/VERB-P1P2 pas/ADV",
    ),
    "COMPOUND": (
        "la/DET-SG date/NOUN-SG limite/NOUN-SG", "la/DET-SG vitesse/NOUN-SG limite/NOUN-SG",
        "l'/DET-SG heure/NOUN-SG limite/NOUN-SG", "le/DET-SG cas/NOUN-INV limite/NOUN-SG",
        "la/DET-SG voiture/NOUN-SG garde/NOUN-SG", "le/DET-SG mot/NOUN-SG place/NOUN-SG",
        "le/DET-SG wagon/NOUN-SG lit/NOUN-SG", "le/DET-SG canapé/NOUN-SG lit/NOUN-SG",
    ),
    "END": ("./PUNCT",),
}

TEMPLATES: tuple[tuple[str, ...], ...] = (
    ("SUBJ_SG", "V_INTR_SG", "PP", "END"),
    ("SUBJ_SG", "V_INTR_SG", "END"),
    ("SUBJ_PL", "V_INTR_PL", "PP", "END"),
    ("SUBJ_SG", "V_TR_SG", "OBJ", "END"),
    ("SUBJ_SG", "V_TR_SG", "OBJ", "PP", "END"),
    ("NEG_SG", "END"),
    ("NEG_12", "END"),
    ("SUBJ_SG", "a/VAUX-P3SG", "PAP", "OBJ", "END"),
    ("SUBJ_SG", "est/VAUX-P3SG", "ADJ", "END"),
)

# sentences whose second noun is also a verb form
COMPOUND_TEMPLATES: tuple[tuple[str, ...], ...] = (
    ("SUBJ_SG", "V_TR_SG", "COMPOUND", "END"),
    ("COMPOUND", "est/VAUX-P3SG", "ADJ", "END"),
)


@dataclass(frozen=True)
class GoldSentence:
    words: tuple[str, ...]
    tags: tuple[Tag, ...]

    @property
    def text(self) -> str:
        out = ""
        for w in self.words:
            if out and not out.endswith(("'", "’")):
                out += " "
            out += w
        return out


@dataclass
class SyntheticConfig:
    sentences: int = 200
    seed: int = 0
    templates: Sequence[tuple[str, ...]] = TEMPLATES
    weights: Optional[Sequence[float]] = None
    slots: Mapping[str, Sequence[str]] = field(default_factory=lambda: SLOTS)


def _expand(item: str, slots: Mapping[str, Sequence[str]], rng: random.Random) -> list[tuple[str, str]]:
    phrase = rng.choice(slots[item]) if item in slots else item
    pairs = []
    for chunk in phrase.split():
        word, _, tag = chunk.rpartition("/")
        pairs.append((word, tag))
    return pairs


def generate(cfg: Optional[SyntheticConfig] = None) -> list[GoldSentence]:
    cfg = cfg or SyntheticConfig()
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.sentences):
        template = rng.choices(cfg.templates, weights=cfg.weights)[0]
        pairs = [p for item in template for p in _expand(item, cfg.slots, rng)]
        words = [w for w, _ in pairs]
        words[0] = words[0][:1].upper() + words[0][1:]
        tags = tuple(normalize_tag(parse_tag(t)) for _, t in pairs)
        out.append(GoldSentence(tuple(words), tags))
    return out
