"""First-order HMM over tags whose observations are ambiguity classes.

States are tags and a cohort emits its ambiguity class (the set of its
readings), so ``emission[c, t]`` is P(class c | tag t) up to the usual
per-class normalization used by ambiguity-class taggers: each class row
is a distribution over its own members and is zero elsewhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Optional, Sequence, TextIO

import numpy as np

from .lattice import SentenceLattice
from .tagset import Tag, TagSet, UnknownTagError, parse_tag, sorted_tags

__all__ = [
    "AmbiguityClass",
    "Biases",
    "BiasError",
    "HmmModel",
    "ModelFormatError",
    "TrainResult",
    "UnknownClassError",
    "ambiguity_class",
    "corpus_classes",
    "decode",
    "default_biases",
    "init_model",
    "load_biases",
    "load_model",
    "save_model",
    "sequence_log_likelihood",
    "train",
    "DEFAULT_SMOOTHING",
]

AmbiguityClass = TagSet

DEFAULT_SMOOTHING = 1e-6
MODEL_MAGIC = "fstag-hmm"
MODEL_VERSION = 1


class UnknownClassError(KeyError):
    def __str__(self) -> str:
        return f"ambiguity class not in model: {self.args[0]}"


class BiasError(ValueError):
    pass


class ModelFormatError(ValueError):
    pass


def ambiguity_class(readings: Iterable[Tag]) -> AmbiguityClass:
    return frozenset(readings)


def _class_label(c: AmbiguityClass) -> str:
    return "{" + " ".join(t.name for t in sorted_tags(c)) + "}"


def corpus_classes(corpus: Iterable[SentenceLattice]) -> list[AmbiguityClass]:
    seen: dict[AmbiguityClass, None] = {}
    for lattice in corpus:
        for cohort in lattice:
            seen.setdefault(ambiguity_class(cohort.readings))
    return list(seen)


@dataclass
class Biases:
    """Initial-value priors: per-class tag weights and tag-pair multipliers.

    Unspecified weights and multipliers default to 1.
    """

    symbol: dict[AmbiguityClass, dict[Tag, float]] = field(default_factory=dict)
    transition: dict[tuple[Tag, Tag], float] = field(default_factory=dict)

    def with_transition(self, edits: Mapping[tuple[Tag, Tag], float]) -> "Biases":
        trans = dict(self.transition)
        trans.update(edits)
        return Biases(dict(self.symbol), trans)


def load_biases(stream: TextIO) -> Biases:
    """Parse ``SYMBOL tags : tag=weight ...`` and ``TRANS tag tag weight`` lines."""
    b = Biases()
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "SYMBOL":
                if ":" not in rest:
                    raise BiasError("SYMBOL line needs ':' between class and weights")
                k = rest.index(":")
                cls = frozenset(parse_tag(x) for x in rest[:k])
                weights = {}
                for item in rest[k + 1:]:
                    label, _, w = item.partition("=")
                    weights[parse_tag(label)] = float(w)
                if not cls or not weights:
                    raise BiasError("empty SYMBOL class or weights")
                b.symbol.setdefault(cls, {}).update(weights)
            elif head == "TRANS":
                if len(rest) != 3:
                    raise BiasError("TRANS line needs two tags and a weight")
                b.transition[(parse_tag(rest[0]), parse_tag(rest[1]))] = float(rest[2])
            else:
                raise BiasError(f"unknown directive {head!r}")
        except (BiasError, UnknownTagError, ValueError) as exc:
            raise BiasError(f"line {lineno}: {exc}") from None
    return b


def default_biases() -> Biases:
    with resources.files("fstag").joinpath("data/biases.txt").open(encoding="utf-8") as fh:
        return load_biases(fh)


@dataclass(frozen=True, eq=False)
class HmmModel:
    tags: tuple[Tag, ...]
    initial: np.ndarray
    transition: np.ndarray
    classes: tuple[AmbiguityClass, ...]
    emission: np.ndarray

    def __post_init__(self):
        n, k = len(self.tags), len(self.classes)
        if self.initial.shape != (n,) or self.transition.shape != (n, n):
            raise ValueError("initial/transition shapes do not match the tag list")
        if self.emission.shape != (k, n):
            raise ValueError("emission shape does not match classes x tags")
        object.__setattr__(self, "tag_index", {t: i for i, t in enumerate(self.tags)})
        object.__setattr__(self, "class_index", {c: i for i, c in enumerate(self.classes)})

    def class_id(self, c: AmbiguityClass) -> int:
        try:
            return self.class_index[c]
        except KeyError:
            raise UnknownClassError(_class_label(c)) from None

    def emission_for(self, c: AmbiguityClass) -> np.ndarray:
        return self.emission[self.class_id(c)]

    def member_mask(self, c: Iterable[Tag]) -> np.ndarray:
        mask = np.zeros(len(self.tags), dtype=bool)
        for t in c:
            if t not in self.tag_index:
                raise UnknownClassError(_class_label(frozenset(c)))
            mask[self.tag_index[t]] = True
        return mask

    def with_classes(self, classes: Iterable[AmbiguityClass]) -> "HmmModel":
        """Copy of the model extended by ``classes``, new ones emitting uniformly."""
        new = [c for c in dict.fromkeys(classes) if c not in self.class_index]
        if not new:
            return self
        rows = []
        for c in new:
            mask = self.member_mask(c)
            rows.append(mask / mask.sum())
        return HmmModel(self.tags, self.initial, self.transition,
                        self.classes + tuple(new), np.vstack([self.emission, rows]))


def init_model(tags: Optional[Sequence[Tag]], classes: Iterable[AmbiguityClass],
               biases: Optional[Biases] = None) -> HmmModel:
    """Initial model: uniform start, bias-shaped transitions and emissions."""
    biases = biases or Biases()
    classes = {frozenset(c) for c in classes} | set(biases.symbol)
    if not classes:
        raise ValueError("init_model needs at least one ambiguity class")
    if any(not c for c in classes):
        raise ValueError("empty ambiguity class")
    if tags is None:
        pool = set().union(*classes)
        for a, b in biases.transition:
            pool |= {a, b}
        tags = sorted_tags(pool)
    tags = tuple(tags)
    index = {t: i for i, t in enumerate(tags)}
    classes = sorted(classes, key=lambda c: (len(c), sorted(t.id for t in c)))
    n = len(tags)

    trans = np.ones((n, n))
    for (a, b), w in biases.transition.items():
        if w < 0 or not math.isfinite(w):
            raise BiasError(f"transition bias {a.name}->{b.name} must be finite and >= 0")
        if a not in index or b not in index:
            raise BiasError(f"transition bias {a.name}->{b.name} uses a tag outside the model")
        trans[index[a], index[b]] = w
    sums = trans.sum(axis=1, keepdims=True)
    if np.any(sums == 0):
        raise BiasError("transition biases zero out an entire row")
    trans = trans / sums

    emission = np.zeros((len(classes), n))
    for k, c in enumerate(classes):
        weights = biases.symbol.get(c, {})
        for t, w in weights.items():
            if t not in c:
                raise BiasError(f"symbol bias for {t.name} outside class {_class_label(c)}")
            if not w > 0 or not math.isfinite(w):
                raise BiasError(f"symbol bias for {t.name} in {_class_label(c)} must be positive")
        for t in c:
            if t not in index:
                raise BiasError(f"class {_class_label(c)} uses a tag outside the model")
            emission[k, index[t]] = weights.get(t, 1.0)
        emission[k] /= emission[k].sum()

    return HmmModel(tags, np.full(n, 1.0 / n), trans, tuple(classes), emission)


def _emissions(m: HmmModel, lattice: SentenceLattice) -> np.ndarray:
    return np.stack([m.emission_for(ambiguity_class(c.readings)) for c in lattice])


def _logs(m: HmmModel, emit: np.ndarray):
    with np.errstate(divide="ignore"):
        return np.log(m.initial), np.log(m.transition), np.log(emit)


def decode(m: HmmModel, lattice: SentenceLattice,
           allowed: Optional[Sequence[Iterable[Tag]]] = None) -> list[Tag]:
    """Most probable tag path (Viterbi, log space).

    The state space at each position is the cohort's readings, further
    narrowed by ``allowed`` when given. Among equally probable paths the
    one whose tag indices are smallest, comparing from the last position
    backwards, is returned; this is what taking the first maximum at every
    step produces.
    """
    emit = _emissions(m, lattice)
    permitted = np.stack([m.member_mask(c.readings) for c in lattice])
    if allowed is not None:
        mask = np.stack([m.member_mask(a) for a in allowed])
        emit = emit * mask
        permitted &= mask
    log_pi, log_a, log_b = _logs(m, emit)
    T, n = log_b.shape
    cols = np.arange(n)
    delta = log_pi + log_b[0]
    back = []
    for t in range(1, T):
        scores = delta[:, None] + log_a
        bp = np.argmax(scores, axis=0)
        delta = scores[bp, cols] + log_b[t]
        back.append(bp)
    best = int(np.argmax(delta))
    if delta[best] == -np.inf:
        # zero-probability sentence: every path ties, take the first permitted tag
        return [m.tags[int(np.argmax(row))] for row in permitted]
    path = [best]
    for bp in reversed(back):
        path.append(int(bp[path[-1]]))
    path.reverse()
    return [m.tags[i] for i in path]


def _forward_backward(m: HmmModel, emit: np.ndarray):
    """Scaled forward-backward; returns (loglik, gamma, xi_sum) or None."""
    T, n = emit.shape
    A = m.transition
    alpha = np.empty((T, n))
    scale = np.empty(T)
    a = m.initial * emit[0]
    for t in range(T):
        if t:
            a = (alpha[t - 1] @ A) * emit[t]
        s = a.sum()
        if s <= 0.0:
            return None
        scale[t] = s
        alpha[t] = a / s
    beta = np.empty((T, n))
    beta[-1] = 1.0
    for t in range(T - 2, -1, -1):
        beta[t] = A @ (emit[t + 1] * beta[t + 1]) / scale[t + 1]
    gamma = alpha * beta
    xi = np.zeros((n, n))
    for t in range(T - 1):
        xi += np.outer(alpha[t], emit[t + 1] * beta[t + 1] / scale[t + 1]) * A
    return float(np.log(scale).sum()), gamma, xi


def sequence_log_likelihood(m: HmmModel, lattice: SentenceLattice) -> float:
    """log P(class sequence); ``-inf`` when the sequence is impossible."""
    emit = _emissions(m, lattice)
    a = m.initial * emit[0]
    total = 0.0
    for t in range(len(lattice)):
        if t:
            a = (a @ m.transition) * emit[t]
        s = a.sum()
        if s <= 0.0:
            return -math.inf
        total += math.log(s)
        a = a / s
    return total


@dataclass
class TrainResult:
    model: HmmModel
    trace: list[float]

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1


def _e_step(m: HmmModel, corpus: Sequence[SentenceLattice]):
    n, k = len(m.tags), len(m.classes)
    init = np.zeros(n)
    trans = np.zeros((n, n))
    emit_counts = np.zeros((k, n))
    loglik = 0.0
    for lattice in corpus:
        ids = [m.class_id(ambiguity_class(c.readings)) for c in lattice]
        res = _forward_backward(m, m.emission[ids])
        if res is None:
            loglik = -math.inf
            continue
        ll, gamma, xi = res
        loglik += ll
        init += gamma[0]
        trans += xi
        np.add.at(emit_counts, ids, gamma)
    return loglik, init, trans, emit_counts


def _m_step(m: HmmModel, init, trans, emit_counts, smoothing: float) -> HmmModel:
    n = len(m.tags)
    initial = init / init.sum() if init.sum() > 0 else m.initial
    rows = trans.sum(axis=1, keepdims=True)
    if smoothing > 0:
        transition = (trans + smoothing) / (rows + n * smoothing)
    else:
        transition = np.where(rows > 0, trans / np.where(rows > 0, rows, 1), m.transition)
    csum = emit_counts.sum(axis=1, keepdims=True)
    emission = np.where(csum > 0, emit_counts / np.where(csum > 0, csum, 1), m.emission)
    return HmmModel(m.tags, initial, transition, m.classes, emission)


def train(m: HmmModel, corpus: Sequence[SentenceLattice], max_iter: int = 20,
          tol: float = 1e-4, smoothing: float = DEFAULT_SMOOTHING) -> TrainResult:
    """Baum-Welch re-estimation on the corpus' ambiguity-class sequences.

    ``trace[0]`` is the log-likelihood of the starting model and
    ``trace[i]`` that of the model after ``i`` updates. Training stops
    after ``max_iter`` updates or once an update gains less than ``tol``.
    Classes missing from the model are added with uniform emissions.
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("cannot train on an empty corpus")
    m = m.with_classes(corpus_classes(corpus))
    loglik, *stats = _e_step(m, corpus)
    trace = [loglik]
    for _ in range(max_iter):
        m = _m_step(m, *stats, smoothing)
        loglik, *stats = _e_step(m, corpus)
        trace.append(loglik)
        if not trace[-1] - trace[-2] >= tol:
            break
    return TrainResult(m, trace)


def save_model(m: HmmModel, out: TextIO) -> None:
    """Plain-text dump; floats are written with ``repr`` so they round-trip."""
    fmt = lambda xs: " ".join(repr(float(x)) for x in xs)  # noqa: E731
    out.write(f"{MODEL_MAGIC} {MODEL_VERSION}\n")
    out.write("tags " + " ".join(t.name for t in m.tags) + "\n")
    out.write("initial " + fmt(m.initial) + "\n")
    out.write("transition\n")
    for row in m.transition:
        out.write(fmt(row) + "\n")
    out.write(f"classes {len(m.classes)}\n")
    for c, row in zip(m.classes, m.emission):
        members = [t for t in m.tags if t in c]
        out.write(" ".join(t.name for t in members) + " : "
                  + fmt(row[m.tag_index[t]] for t in members) + "\n")


def load_model(stream: TextIO) -> HmmModel:
    lines = [ln.rstrip("\n") for ln in stream if ln.strip()]
    try:
        magic, version = lines[0].split()
        if magic != MODEL_MAGIC or int(version) != MODEL_VERSION:
            raise ModelFormatError(f"unsupported model header {lines[0]!r}")
        head, *names = lines[1].split()
        if head != "tags":
            raise ModelFormatError("expected 'tags' line")
        tags = tuple(parse_tag(x) for x in names)
        index = {t: i for i, t in enumerate(tags)}
        n = len(tags)
        head, *vals = lines[2].split()
        if head != "initial":
            raise ModelFormatError("expected 'initial' line")
        initial = np.array([float(v) for v in vals])
        if lines[3].strip() != "transition":
            raise ModelFormatError("expected 'transition' line")
        transition = np.array([[float(v) for v in lines[4 + i].split()] for i in range(n)])
        head, count = lines[4 + n].split()
        if head != "classes":
            raise ModelFormatError("expected 'classes' line")
        classes, emission = [], []
        for ln in lines[5 + n:5 + n + int(count)]:
            left, right = ln.split(":")
            members = [parse_tag(x) for x in left.split()]
            probs = [float(v) for v in right.split()]
            if len(members) != len(probs):
                raise ModelFormatError(f"class line arity mismatch: {ln!r}")
            row = np.zeros(n)
            for t, p in zip(members, probs):
                row[index[t]] = p
            classes.append(frozenset(members))
            emission.append(row)
        if len(classes) != int(count):
            raise ModelFormatError("truncated class table")
        return HmmModel(tags, initial, transition, tuple(classes),
                        np.array(emission).reshape(len(classes), n))
    except ModelFormatError:
        raise
    except (IndexError, ValueError, KeyError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from None
