"""Closed tag inventory, word-specific tag variants and normalization.

Tags are interned: there is exactly one :class:`Tag` object per label, so
equality is identity and ``tag.id`` can index dense matrices.
"""
from __future__ import annotations

from importlib import resources
from typing import FrozenSet, Iterable, TextIO

__all__ = [
    "Tag",
    "TagSet",
    "UnknownTagError",
    "parse_tag",
    "parse_tags",
    "normalize_tag",
    "normalize_tags",
    "is_open_class",
    "register_variant",
    "load_tagset",
    "base_tags",
    "all_tags",
    "sorted_tags",
]


class UnknownTagError(ValueError):
    def __init__(self, label: str):
        super().__init__(f"unknown tag label: {label!r}")
        self.label = label


class Tag:
    __slots__ = ("name", "id", "base")

    def __init__(self, name: str, id: int, base: "Tag | None" = None):
        self.name = name
        self.id = id
        self.base = self if base is None else base

    @property
    def is_variant(self) -> bool:
        return self.base is not self

    def __repr__(self) -> str:
        return f"Tag({self.name})"

    def __str__(self) -> str:
        return self.name

    def __lt__(self, other: "Tag") -> bool:
        return self.id < other.id

    # equality stays identity; hashing the id keeps set order reproducible
    def __hash__(self) -> int:
        return self.id

    def __reduce__(self):
        return (parse_tag, (self.name,))


TagSet = FrozenSet[Tag]

_REGISTRY: dict[str, Tag] = {}
_BASE: list[Tag] = []

_OPEN_PREFIXES = ("NOUN-", "ADJ-", "VERB-", "PAP-")


def _add_base(name: str) -> Tag:
    if name in _REGISTRY:
        tag = _REGISTRY[name]
        if tag.is_variant:
            raise ValueError(f"{name} is already registered as a variant")
        return tag
    tag = Tag(name, len(_REGISTRY))
    _REGISTRY[name] = tag
    _BASE.append(tag)
    return tag


def register_variant(name: str, base: str) -> Tag:
    """Register a word-specific variant such as ``PREP-DE`` of base ``PREP``.

    Re-registering an identical pair is a no-op; remapping an existing
    variant to a different base raises ``ValueError``.
    """
    base_tag = parse_tag(base)
    if base_tag.is_variant:
        raise ValueError(f"variant base must be a base tag, got {base}")
    if name in _REGISTRY:
        existing = _REGISTRY[name]
        if existing.base is not base_tag:
            raise ValueError(f"{name} already maps to {existing.base.name}")
        return existing
    tag = Tag(name, len(_REGISTRY), base_tag)
    _REGISTRY[name] = tag
    return tag


def load_tagset(stream: TextIO) -> list[Tag]:
    """Read an inventory file and register every tag it lists.

    Lines hold either a base tag or ``variant<TAB>base``; ``#`` starts a
    comment.
    """
    loaded = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) == 1 and len(line.split()) == 1:
            loaded.append(_add_base(line))
        elif len(fields) == 2:
            loaded.append(register_variant(fields[0].strip(), fields[1].strip()))
        else:
            raise ValueError(f"line {lineno}: malformed tag entry {raw.rstrip()!r}")
    return loaded


def parse_tag(label: str) -> Tag:
    try:
        return _REGISTRY[label]
    except KeyError:
        raise UnknownTagError(label) from None


def parse_tags(labels: Iterable[str]) -> TagSet:
    return frozenset(parse_tag(label) for label in labels)


def normalize_tag(t: Tag) -> Tag:
    return t.base


def normalize_tags(tags: Iterable[Tag]) -> TagSet:
    return frozenset(t.base for t in tags)


def is_open_class(t: Tag) -> bool:
    name = t.base.name
    return name == "ADV" or name.startswith(_OPEN_PREFIXES)


def base_tags() -> tuple[Tag, ...]:
    return tuple(_BASE)


def all_tags() -> tuple[Tag, ...]:
    return tuple(sorted(_REGISTRY.values()))


def sorted_tags(tags: Iterable[Tag]) -> list[Tag]:
    """Tags in inventory order, the canonical order for output and ties."""
    return sorted(tags, key=lambda t: t.id)


with resources.files("fstag").joinpath("data/tags.txt").open(encoding="utf-8") as _fh:
    load_tagset(_fh)
del _fh
