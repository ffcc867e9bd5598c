"""Parser for logic programs in plain rule syntax.

Supported shapes::

    a :- b, not c.
    a | b :- c.
    :- a, b.
    fact(x,1).
    % line comment
    %#background.     (directive: every rule of this file is background)

Identifiers are ``[a-z][A-Za-z0-9_]*`` or unsigned integers; variables are
``[A-Z][A-Za-z0-9_]*``.  There are no function symbols, arithmetic or
comparison built-ins.  Every rule must be safe: each of its variables has to
occur in a positive body literal.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .lang import Atom, Literal, Program, Rule, Span, Term, classify

_BACKGROUND_DIRECTIVE = re.compile(r"(?m)^[ \t]*%#background\.")
_IDENT = re.compile(r"[a-z][A-Za-z0-9_]*")
_VARIABLE = re.compile(r"[A-Z][A-Za-z0-9_]*")
_INTEGER = re.compile(r"[0-9]+")


class ProgramError(Exception):
    """A program that cannot be used: bad syntax or an unsafe rule."""

    def __init__(self, message: str, file: str, line: int, column: int):
        super().__init__("%s:%d:%d: %s" % (file, line, column, message))
        self.message = message
        self.file = file
        self.line = line
        self.column = column


class ParseError(ProgramError):
    pass


class SafetyError(ProgramError):
    def __init__(self, message, file, line, column, rule_text, variable):
        super().__init__(message, file, line, column)
        self.rule_text = rule_text
        self.variable = variable


class _Source:
    """Cursor over one file's text with line/column bookkeeping."""

    def __init__(self, name: str, text: str):
        self.name = name
        self.text = text
        self.pos = 0
        self.line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(i + 1)

    def location(self, pos: int) -> tuple[int, int]:
        line = 0
        for i, start in enumerate(self.line_starts):
            if start <= pos:
                line = i
            else:
                break
        return line + 1, pos - self.line_starts[line] + 1

    def error(self, message: str, pos: int | None = None) -> ParseError:
        line, column = self.location(self.pos if pos is None else pos)
        return ParseError(message, self.name, line, column)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_layout(self) -> None:
        """Skip whitespace and comments (directives included: prescanned)."""
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "%":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl + 1
            else:
                return

    def take(self, token: str) -> bool:
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str, what: str) -> None:
        if not self.take(token):
            raise self.error("expected %s" % what)

    def match(self, pattern: re.Pattern) -> str | None:
        m = pattern.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group()


def _parse_term(src: _Source) -> Term:
    name = src.match(_VARIABLE) or src.match(_IDENT) or src.match(_INTEGER)
    if name is None:
        raise src.error("expected a term")
    if name == "not":
        raise src.error("'not' is a reserved word", src.pos - 3)
    return Term(name)


def _parse_atom(src: _Source, predicate: str | None = None) -> Atom:
    if predicate is None:
        start = src.pos
        predicate = src.match(_IDENT)
        if predicate is None:
            raise src.error("expected an atom")
        if predicate == "not":
            raise src.error("'not' is a reserved word", start)
    if not src.take("("):
        return Atom(predicate)
    src.skip_layout()
    args = [_parse_term(src)]
    src.skip_layout()
    while src.take(","):
        src.skip_layout()
        args.append(_parse_term(src))
        src.skip_layout()
    src.expect(")", "')'")
    return Atom(predicate, tuple(args))


def _parse_literal(src: _Source) -> Literal:
    word = src.match(_IDENT)
    if word is None:
        raise src.error("expected a literal")
    if word == "not":
        src.skip_layout()
        return Literal(_parse_atom(src), positive=False)
    return Literal(_parse_atom(src, predicate=word), positive=True)


def _parse_body(src: _Source) -> list[Literal]:
    body = [_parse_literal(src)]
    src.skip_layout()
    while src.take(","):
        src.skip_layout()
        body.append(_parse_literal(src))
        src.skip_layout()
    return body


def _dedupe(items):
    return tuple(dict.fromkeys(items))


def _check_safety(rule: Rule, src: _Source, start: int) -> None:
    pos_vars = set()
    for lit in rule.body_pos:
        pos_vars.update(lit.atom.variables())
    for var in rule.variables():
        if var not in pos_vars:
            line, column = src.location(start)
            raise SafetyError(
                "unsafe rule '%s': variable %s does not occur in a positive "
                "body literal" % (rule, var),
                src.name,
                line,
                column,
                str(rule),
                var,
            )


def _parse_rule(src: _Source, rule_id: int) -> Rule:
    start = src.pos
    head: list[Atom] = []
    body: list[Literal] = []
    if src.take(":-"):
        src.skip_layout()
        body = _parse_body(src)
    else:
        head.append(_parse_atom(src))
        src.skip_layout()
        while src.take("|"):
            src.skip_layout()
            head.append(_parse_atom(src))
            src.skip_layout()
        if src.take(":-"):
            src.skip_layout()
            body = _parse_body(src)
    src.expect(".", "'.' at end of rule")
    line, column = src.location(start)
    span = Span(src.name, start, src.pos, line, column)
    rule = Rule(rule_id, _dedupe(head), _dedupe(body), span=span)
    _check_safety(rule, src, start)
    return rule


def parse_program(
    sources: Iterable[tuple[str, str]], facts_as_background: bool = True
) -> Program:
    """Parse named text buffers into one Program.

    Rule ids are assigned 1, 2, ... in source order across all buffers.
    Facts default to background knowledge (disable with
    ``facts_as_background=False``); a ``%#background.`` directive marks every
    rule of its file as background.
    """
    rules: list[Rule] = []
    files: list[str] = []
    next_id = 1
    for name, text in sources:
        files.append(name)
        file_background = _BACKGROUND_DIRECTIVE.search(text) is not None
        src = _Source(name, text)
        while True:
            src.skip_layout()
            if src.at_end():
                break
            rule = _parse_rule(src, next_id)
            next_id += 1
            background = file_background or (
                facts_as_background and classify(rule) == "fact"
            )
            if background:
                rule = Rule(rule.id, rule.head, rule.body, rule.span, True)
            rules.append(rule)
    return Program(tuple(rules), tuple(files))


def parse_files(paths: Sequence[str], facts_as_background: bool = True) -> Program:
    """Read and parse program files from disk."""
    sources = []
    for path in paths:
        with open(path, "r", encoding="utf-8") as handle:
            sources.append((path, handle.read()))
    return parse_program(sources, facts_as_background=facts_as_background)


def parse_literals(text: str, file: str = "<literals>") -> list[Literal]:
    """Parse a comma-separated literal list such as ``a, b, not c``."""
    src = _Source(file, text)
    src.skip_layout()
    if src.at_end():
        return []
    body = _parse_body(src)
    src.skip_layout()
    if not src.at_end():
        raise src.error("trailing input after literal list")
    return body
