"""Parser for the rule file format.

Example::

    SET FINITE {VERB-P1P2 VERB-P3SG VERB-P3PL}

    RELIABLE
    RULE avons-verb SELECT {VAUX-P1P2} ON WORD {avons} IF (*-1 WORD {nous})
    RULE no-clitic-after-prep REMOVE {PC} ON IWORD {le la les}
        IF (-1 C {PREP PREP-A PREP-DE}) (NOT 1 {VERB-INF VAUX-INF})

    FINAL
    PREFER PREP > ADJ-SG
    PREFER WORD {des} DET-PL > PREP-DE

Whitespace, including newlines, only separates tokens; ``#`` starts a
comment. A rule may name its tier explicitly (``RULE x RELIABLE ...``),
otherwise it takes the tier of the enclosing section.

Conditions are ``( [NOT] POSITION [C] TEST [BARRIER|CBARRIER tagset] )``.
POSITION is an offset (``-1``, ``0``, ``2``) or a scan (``*-1``, ``*1``).
TEST is a tag set, ``WORD {...}``, ``IWORD {...}`` (case-folded), ``BOS``
or ``EOS``. Tag sets accept tag names, ``PREFIX*`` globs, names defined
with ``SET``, and a leading ``^`` for the complement.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional, TextIO

from ..tagset import Tag, TagSet, UnknownTagError, all_tags, parse_tag
from .core import Action, Condition, PreferenceRanking, Rule, RulePack, Tier

__all__ = [
    "RuleParseError",
    "RuleSyntaxError",
    "RuleTagError",
    "DuplicateRuleError",
    "parse_rules",
    "parse_rules_text",
    "default_rule_pack",
]


class RuleParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class RuleSyntaxError(RuleParseError):
    pass


class RuleTagError(RuleParseError):
    pass


class DuplicateRuleError(RuleParseError):
    pass


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int
    quoted: bool = False


_TOKEN_RE = re.compile(r'"(?P<q>[^"\n]*)"|(?P<p>[{}()>^])|(?P<a>[^\s{}()>"#^]+)|(?P<c>#[^\n]*)|(?P<s>\s+)')
_POSITION_RE = re.compile(r"(\*)?([+-]?\d+)$")
_NAME_RE = re.compile(r"[A-Za-z_][\w.-]*$")
_STATEMENTS = {"RULE", "PREFER", "SET", "RELIABLE", "HEURISTIC", "FINAL"}


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        kind = m.lastgroup
        if kind == "q":
            toks.append(_Tok(m.group("q"), line, col, quoted=True))
        elif kind in ("p", "a"):
            toks.append(_Tok(m.group(), line, col))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0
        self.sets: dict[str, TagSet] = {}
        self.section: Optional[Tier] = None
        self.reliable: list[Rule] = []
        self.heuristic: list[Rule] = []
        self.order: list[Tag] = []
        self.by_word: dict[str, list[Tag]] = {}
        self.names: set[str] = set()

    # token helpers

    def _peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self, what: str) -> _Tok:
        tok = self._peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", 1, 1)
            raise RuleSyntaxError(f"expected {what}, found end of input", last.line, last.col)
        self.i += 1
        return tok

    def _expect(self, text: str) -> _Tok:
        tok = self._next(repr(text))
        if tok.text != text or tok.quoted:
            raise RuleSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def _at(self, *texts: str) -> bool:
        tok = self._peek()
        return tok is not None and not tok.quoted and tok.text in texts

    # grammar

    def parse(self) -> RulePack:
        while self._peek() is not None:
            tok = self._next("statement")
            if tok.quoted or tok.text not in _STATEMENTS:
                raise RuleSyntaxError(f"expected a statement, found {tok.text!r}", tok.line, tok.col)
            if tok.text in ("RELIABLE", "HEURISTIC", "FINAL"):
                self.section = Tier[tok.text]
            elif tok.text == "SET":
                self._set_def()
            elif tok.text == "RULE":
                self._rule(tok)
            else:
                self._prefer()
        return RulePack(tuple(self.reliable), tuple(self.heuristic),
                        PreferenceRanking(tuple(self.order),
                                          {w: tuple(o) for w, o in self.by_word.items()}))

    def _set_def(self) -> None:
        name = self._next("set name")
        if not _NAME_RE.match(name.text) or name.text in _STATEMENTS:
            raise RuleSyntaxError(f"bad set name {name.text!r}", name.line, name.col)
        if name.text in self.sets:
            raise RuleSyntaxError(f"set {name.text} defined twice", name.line, name.col)
        try:
            parse_tag(name.text)
        except UnknownTagError:
            pass
        else:
            raise RuleSyntaxError(f"set name {name.text} shadows a tag", name.line, name.col)
        self.sets[name.text] = self._tagset()

    def _rule(self, start: _Tok) -> None:
        name = self._next("rule name")
        if name.text in _STATEMENTS:
            raise RuleSyntaxError("missing rule name", name.line, name.col)
        if name.text in self.names:
            raise DuplicateRuleError(f"duplicate rule name {name.text!r}", name.line, name.col)
        tier = self.section
        if self._at("RELIABLE", "HEURISTIC"):
            tier = Tier[self._next("tier").text]
        if tier is None or tier is Tier.FINAL:
            raise RuleSyntaxError("rule needs a RELIABLE or HEURISTIC tier", start.line, start.col)
        act = self._next("SELECT or REMOVE")
        if act.text not in ("SELECT", "REMOVE"):
            raise RuleSyntaxError(f"expected SELECT or REMOVE, found {act.text!r}", act.line, act.col)
        target = self._tagset()
        words, fold = None, False
        if self._at("ON"):
            self.i += 1
            kind = self._next("WORD or IWORD")
            if kind.text not in ("WORD", "IWORD"):
                raise RuleSyntaxError(f"expected WORD or IWORD, found {kind.text!r}", kind.line, kind.col)
            words, fold = self._wordset(), kind.text == "IWORD"
        conditions = []
        if self._at("IF"):
            self.i += 1
            if not self._at("("):
                tok = self._peek() or name
                raise RuleSyntaxError("IF needs at least one condition", tok.line, tok.col)
            while self._at("("):
                conditions.append(self._condition())
        rule = Rule(name.text, tier, Action[act.text], target, tuple(conditions), words, fold)
        self.names.add(name.text)
        (self.reliable if tier is Tier.RELIABLE else self.heuristic).append(rule)

    def _condition(self) -> Condition:
        open_tok = self._expect("(")
        negated = False
        if self._at("NOT"):
            self.i += 1
            negated = True
        pos_tok = self._next("position")
        m = _POSITION_RE.match(pos_tok.text)
        if not m or pos_tok.quoted:
            raise RuleSyntaxError(f"bad position {pos_tok.text!r}", pos_tok.line, pos_tok.col)
        scan, offset = bool(m.group(1)), int(m.group(2))
        if scan and offset == 0:
            raise RuleSyntaxError("a scan cannot start at 0", pos_tok.line, pos_tok.col)
        careful = False
        if self._at("C"):
            self.i += 1
            careful = True
        kw = dict(offset=offset, scan=scan, negated=negated, careful=careful)
        if self._at("BOS", "EOS"):
            tok = self._next("boundary")
            if scan or careful:
                raise RuleSyntaxError("BOS/EOS take a plain offset", tok.line, tok.col)
            kw["boundary"] = tok.text
        elif self._at("WORD", "IWORD"):
            tok = self._next("word test")
            kw["words"] = self._wordset()
            kw["fold"] = tok.text == "IWORD"
        else:
            kw["tags"] = self._tagset()
        if self._at("BARRIER", "CBARRIER"):
            tok = self._next("barrier")
            if not scan:
                raise RuleSyntaxError("barrier on a non-scanning condition", tok.line, tok.col)
            kw["barrier"] = self._tagset()
            kw["careful_barrier"] = tok.text == "CBARRIER"
        self._expect(")")
        try:
            return Condition(**kw)
        except ValueError as exc:
            raise RuleSyntaxError(str(exc), open_tok.line, open_tok.col) from None

    def _tagset(self) -> TagSet:
        tok = self._peek()
        if tok is not None and not tok.quoted and tok.text in self.sets:
            self.i += 1
            return self.sets[tok.text]
        open_tok = self._expect("{")
        complement = False
        if self._at("^"):
            self.i += 1
            complement = True
        tags: set[Tag] = set()
        while not self._at("}"):
            item = self._next("tag or '}'")
            tags |= self._resolve(item)
        self._expect("}")
        if complement:
            tags = set(all_tags()) - tags
        if not tags:
            raise RuleSyntaxError("empty tag set", open_tok.line, open_tok.col)
        return frozenset(tags)

    def _resolve(self, item: _Tok) -> set[Tag]:
        text = item.text
        if item.quoted or text in "{}()>^":
            raise RuleSyntaxError(f"unexpected {text!r} in tag set", item.line, item.col)
        if text.endswith("*"):
            prefix = text[:-1]
            found = {t for t in all_tags() if t.name.startswith(prefix)}
            if not found:
                raise RuleTagError(f"no tag matches {text!r}", item.line, item.col)
            return found
        if text in self.sets:
            return set(self.sets[text])
        try:
            return {parse_tag(text)}
        except UnknownTagError:
            raise RuleTagError(f"unknown tag {text!r}", item.line, item.col) from None

    def _wordset(self) -> frozenset[str]:
        open_tok = self._expect("{")
        words = set()
        while not self._at("}"):
            tok = self._next("word or '}'")
            if not tok.quoted and tok.text in "{()>^":
                raise RuleSyntaxError(f"unexpected {tok.text!r} in word set", tok.line, tok.col)
            words.add(tok.text)
        self._expect("}")
        if not words:
            raise RuleSyntaxError("empty word set", open_tok.line, open_tok.col)
        return frozenset(words)

    def _prefer(self) -> None:
        words = None
        if self._at("WORD"):
            self.i += 1
            words = self._wordset()
        chain = [self._single_tag()]
        while self._at(">"):
            self.i += 1
            chain.append(self._single_tag())
        if words is None:
            orders = [self.order]
        else:
            orders = [self.by_word.setdefault(w, []) for w in sorted(words)]
        for order in orders:
            for tag_tok, tag in chain:
                if tag in order:
                    raise RuleSyntaxError(f"{tag.name} ranked twice", tag_tok.line, tag_tok.col)
                order.append(tag)

    def _single_tag(self) -> tuple[_Tok, Tag]:
        tok = self._next("tag")
        try:
            return tok, parse_tag(tok.text)
        except UnknownTagError:
            raise RuleTagError(f"unknown tag {tok.text!r}", tok.line, tok.col) from None


def parse_rules_text(text: str) -> RulePack:
    return _Parser(text).parse()


def parse_rules(source: TextIO) -> RulePack:
    return parse_rules_text(source.read())


def default_rule_pack() -> RulePack:
    with resources.files("fstag").joinpath("data/rules.txt").open(encoding="utf-8") as fh:
        return parse_rules(fh)
