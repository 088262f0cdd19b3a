"""Command-line entry point: ``fstag <command> [options]``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors
(unreadable or malformed input files, alignment mismatches, ...).
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .combiner import combine_lattice
from .evaluation import (AlignmentError, EvalReport, ambiguity_profile, evaluate, format_kv,
                         format_profile, format_table, gold_sequences)
from .hmm import (BiasError, HmmModel, ModelFormatError, UnknownClassError, corpus_classes,
                  decode, default_biases, init_model, load_biases, load_model, save_model, train)
from .lattice import LatticeError, SentenceLattice, format_readings, read_lattices, write_lattices
from .morphology import (LexiconFormatError, analyze_sentence, default_guesser, default_lexicon,
                         load_guesser, load_lexicon)
from .pipeline import Analyzer
from .rules import RuleParseError, RulePack, apply_tiers, default_rule_pack, parse_rules
from .tagset import UnknownTagError
from .tokenizer import default_mwe_list, load_mwe_list

__all__ = ["Config", "UsageError", "DataError", "run", "main"]

ENGINES = ("rules", "hmm", "combined")
FORMATS = ("tsv", "inline")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


_DATA_ERRORS = (OSError, UnicodeDecodeError, LatticeError, LexiconFormatError, RuleParseError,
                BiasError, ModelFormatError, UnknownClassError, AlignmentError, UnknownTagError,
                DataError)


@dataclass
class Config:
    """Every option a command may read; ``None`` paths mean the shipped data."""

    lexicon: Optional[str] = None
    guesser: Optional[str] = None
    mwe: Optional[str] = None
    rules: Optional[str] = None
    biases: Optional[str] = None
    model: Optional[str] = None
    input: Optional[str] = None
    output: Optional[str] = None
    gold: Optional[str] = None
    engine: str = "rules"
    tiers: int = 3
    format: str = "tsv"
    hmm_on_reduced: bool = False
    lattice_input: bool = False
    iters: int = 20
    tol: float = 1e-4
    limit: Optional[int] = None

    _PATHS = ("lexicon", "guesser", "mwe", "rules", "biases", "model", "input", "gold")

    def validate(self) -> None:
        if self.engine not in ENGINES:
            raise UsageError(f"unknown engine {self.engine!r} (choose from {', '.join(ENGINES)})")
        if self.tiers not in (1, 2, 3):
            raise UsageError(f"--tiers must be 1, 2 or 3, not {self.tiers}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r} (choose from {', '.join(FORMATS)})")
        if self.iters < 0 or self.tol < 0:
            raise UsageError("--iters and --tol must be non-negative")
        for name in self._PATHS:
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise DataError(f"{name} file not found: {path}")


def _coerce(name: str, raw: str):
    default = Config.__dataclass_fields__[name].default
    kind = type(default) if default is not None else str
    if name == "limit":
        kind = int
    if kind is bool:
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"config key {name}: expected a boolean, got {raw!r}")
    try:
        return kind(raw)
    except ValueError:
        raise UsageError(f"config key {name}: bad value {raw!r}") from None


def read_config(path: str) -> dict:
    """``key=value`` lines; keys are flag names with ``-`` or ``_``."""
    known = {f.name for f in fields(Config)}
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in known:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _coerce(key, value)
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file mirroring the flags")
    common.add_argument("--input", help="read this file instead of standard input")
    common.add_argument("--lexicon")
    common.add_argument("--guesser")
    common.add_argument("--mwe", help="multi-word expression list")

    p = _Parser(prog="fstag", description="French part-of-speech tagging toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("tokenize", parents=[common], help="one token per line with its hint")
    sub.add_parser("analyze", parents=[common], help="emit lexical ambiguity lattices")

    tag = sub.add_parser("tag", parents=[common], help="disambiguate text")
    tag.add_argument("--engine", choices=ENGINES)
    tag.add_argument("--tiers", type=int, choices=(1, 2, 3))
    tag.add_argument("--rules")
    tag.add_argument("--model")
    tag.add_argument("--hmm-on-reduced", action="store_true", default=None)
    tag.add_argument("--format", choices=FORMATS)
    tag.add_argument("--lattice-input", action="store_true", default=None,
                     help="input is in lattice format rather than raw text")

    tr = sub.add_parser("train", parents=[common], help="train an HMM on untagged text")
    tr.add_argument("--biases")
    tr.add_argument("--iters", type=int)
    tr.add_argument("--tol", type=float)
    tr.add_argument("--output", help="write the model here instead of standard output")
    tr.add_argument("--lattice-input", action="store_true", default=None)

    ev = sub.add_parser("eval", parents=[common], help="score engines against a gold file")
    ev.add_argument("--gold")
    ev.add_argument("--engine", choices=ENGINES)
    ev.add_argument("--tiers", type=int, choices=(1, 2, 3))
    ev.add_argument("--rules")
    ev.add_argument("--model")
    ev.add_argument("--hmm-on-reduced", action="store_true", default=None)
    ev.add_argument("--all", action="store_true",
                    help="report the lexicon baseline, every tier and, given a model, the HMM rows")

    pr = sub.add_parser("profile", parents=[common], help="rank ambiguous word forms")
    pr.add_argument("--limit", type=int)
    return p


def _config(args: argparse.Namespace) -> Config:
    values = read_config(args.config) if args.config else {}
    for f in fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    cfg = Config(**values)
    cfg.validate()
    return cfg


def _open_input(cfg: Config, stdin: TextIO) -> TextIO:
    return open(cfg.input, encoding="utf-8") if cfg.input else stdin


def _analyzer(cfg: Config) -> Analyzer:
    def load(path, loader, default):
        if path is None:
            return default()
        with open(path, encoding="utf-8") as fh:
            return loader(fh)

    return Analyzer(load(cfg.lexicon, load_lexicon, default_lexicon),
                    load(cfg.guesser, load_guesser, default_guesser),
                    tuple(load(cfg.mwe, load_mwe_list, default_mwe_list)))


def _rules(cfg: Config) -> RulePack:
    if cfg.rules is None:
        return default_rule_pack()
    with open(cfg.rules, encoding="utf-8") as fh:
        return parse_rules(fh)


def _model(cfg: Config, lattices: Sequence[SentenceLattice]) -> HmmModel:
    with open(cfg.model, encoding="utf-8") as fh:
        m = load_model(fh)
    # classes the training text never produced get uniform emissions
    return m.with_classes(corpus_classes(lattices))


def _lattices(cfg: Config, an: Analyzer, stdin: TextIO) -> list[SentenceLattice]:
    fh = _open_input(cfg, stdin)
    try:
        if cfg.lattice_input:
            return read_lattices(fh)
        return an.lattices_by_line(fh)
    finally:
        if fh is not stdin:
            fh.close()


def _tag_lattices(cfg: Config, lattices: Sequence[SentenceLattice]) -> list[SentenceLattice]:
    if cfg.engine in ("hmm", "combined") and cfg.model is None:
        raise UsageError(f"--engine {cfg.engine} needs --model")
    if cfg.engine == "rules":
        pack = _rules(cfg)
        return [apply_tiers(pack, l, cfg.tiers) for l in lattices]
    m = _model(cfg, lattices)
    if cfg.engine == "hmm":
        return [l.with_readings([{t} for t in decode(m, l)]) for l in lattices]
    pack = _rules(cfg)
    return [combine_lattice(pack, m, l, cfg.hmm_on_reduced) for l in lattices]


def _cmd_tokenize(cfg, an, stdin, out):
    fh = _open_input(cfg, stdin)
    try:
        for line in fh:
            for tok in an.tokens(line):
                out.write(f"{tok.surface}\t{tok.hint}\n")
    finally:
        if fh is not stdin:
            fh.close()


def _cmd_analyze(cfg, an, stdin, out):
    write_lattices(_lattices(cfg, an, stdin), out)


def _cmd_tag(cfg, an, stdin, out):
    tagged = _tag_lattices(cfg, _lattices(cfg, an, stdin))
    for k, lattice in enumerate(tagged):
        if cfg.format == "inline":
            out.write(" ".join(f"{c.surface}/{format_readings(c.readings, True).replace(' ', '|')}"
                               for c in lattice) + "\n")
            continue
        if k:
            out.write("\n")
        for c in lattice:
            out.write(f"{c.surface}\t{format_readings(c.readings, True)}\n")


def _cmd_train(cfg, an, stdin, out, err):
    lattices = _lattices(cfg, an, stdin)
    if not lattices:
        raise DataError("no training text")
    if cfg.biases is None:
        biases = default_biases()
    else:
        with open(cfg.biases, encoding="utf-8") as fh:
            biases = load_biases(fh)
    m = init_model(None, an.classes() | set(corpus_classes(lattices)), biases)
    result = train(m, lattices, max_iter=cfg.iters, tol=cfg.tol)
    for i, ll in enumerate(result.trace):
        err.write(f"iteration {i}\tloglik {ll!r}\n")
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            save_model(result.model, fh)
    else:
        save_model(result.model, out)


def _cmd_eval(cfg, an, stdin, out, all_rows: bool):
    if cfg.gold is None:
        raise UsageError("eval needs --gold")
    with open(cfg.gold, encoding="utf-8") as fh:
        gold_lattices = read_lattices(fh)
    gold = gold_sequences(gold_lattices)
    # re-analyze the gold tokens so that tokenization is shared
    lattices = [analyze_sentence(an.lexicon, an.guesser, [c.token for c in g]) for g in gold_lattices]
    rows: list[tuple[str, EvalReport]] = []
    if all_rows:
        rows.append(("lexicon only", evaluate(lattices, gold)))
        pack = _rules(cfg)
        for depth in (1, 2, 3):
            rows.append((f"rules, tiers 1-{depth}" if depth > 1 else "rules, tier 1",
                         evaluate([apply_tiers(pack, l, depth) for l in lattices], gold)))
        if cfg.model is not None:
            for engine in ("hmm", "combined"):
                sub = Config(**{**vars(cfg), "engine": engine})
                rows.append((engine, evaluate(_tag_lattices(sub, lattices), gold)))
    else:
        label = cfg.engine if cfg.engine != "rules" else f"rules, tiers {cfg.tiers}"
        rows.append((label, evaluate(_tag_lattices(cfg, lattices), gold)))
    out.write(format_table(rows))
    out.write("\n")
    for label, report in rows:
        prefix = label.replace(", ", "_").replace(" ", "_").replace("-", "_") + "."
        out.write(format_kv(report, prefix))


def _cmd_profile(cfg, an, stdin, out):
    fh = _open_input(cfg, stdin)
    try:
        tokens = [tok for line in fh for tok in an.tokens(line)]
    finally:
        if fh is not stdin:
            fh.close()
    out.write(format_profile(ambiguity_profile(tokens, an.lexicon, an.guesser), cfg.limit))


def run(argv: Sequence[str], stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    # buffer so that a failing command leaves no partial output behind
    out = io.StringIO()
    try:
        args = _build_parser().parse_args(list(argv))
        cfg = _config(args)
        an = _analyzer(cfg)
        cmd = args.command
        if cmd == "tokenize":
            _cmd_tokenize(cfg, an, stdin, out)
        elif cmd == "analyze":
            _cmd_analyze(cfg, an, stdin, out)
        elif cmd == "tag":
            _cmd_tag(cfg, an, stdin, out)
        elif cmd == "train":
            _cmd_train(cfg, an, stdin, out, stderr)
        elif cmd == "eval":
            _cmd_eval(cfg, an, stdin, out, args.all)
        else:
            _cmd_profile(cfg, an, stdin, out)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except _DATA_ERRORS as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    stdout.write(out.getvalue())
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
