"""Abstract syntax for disjunctive logic programs.

Terms, atoms, literals, rules and programs, plus the formatting and
classification helpers shared by every other module.  Rule equality is
structural: two rules are equal when they have the same head atoms and the
same body literals, regardless of id, source span or background flag.
"""

from __future__ import annotations

from dataclasses import dataclass

# Prefixes of atoms manufactured by the rewriting stage.  The parser refuses
# them in user programs (identifiers must start with a lowercase letter, so
# they cannot even be written), which keeps the generated atoms fresh.
DEBUG_PREFIX = "_debug_"
SUPPORT_PREFIX = "_support_"


@dataclass(frozen=True)
class Term:
    """A variable or constant; the first character decides which."""

    name: str

    @property
    def is_variable(self) -> bool:
        return self.name[:1].isupper()

    @property
    def is_constant(self) -> bool:
        return not self.is_variable

    def sort_key(self):
        if self.name.isdigit():
            return (0, int(self.name), self.name)
        return (1, 0, self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return all(t.is_constant for t in self.args)

    def variables(self) -> list[str]:
        """Variable names in argument order, with duplicates."""
        return [t.name for t in self.args if t.is_variable]

    def sort_key(self):
        return (self.predicate, tuple(t.sort_key() for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return "%s(%s)" % (self.predicate, ",".join(t.name for t in self.args))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def sort_key(self):
        return (self.atom.sort_key(), 0 if self.positive else 1)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else "not %s" % self.atom


@dataclass(frozen=True)
class Span:
    """Byte range of a rule inside a source file."""

    file: str
    start: int
    end: int
    line: int
    column: int

    def location(self) -> str:
        return "%s:%d" % (self.file, self.line)


@dataclass(frozen=True, eq=False)
class Rule:
    """One rule.  ``head`` and ``body`` keep source order.

    Parsing collapses duplicate literals, but instantiation may reintroduce
    them (two body literals can coincide under a substitution) and keeps
    them so instances always mirror the origin rule's shape.
    """

    id: int
    head: tuple[Atom, ...]
    body: tuple[Literal, ...] = ()
    span: Span | None = None
    is_background: bool = False

    @property
    def body_pos(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.body if l.positive)

    @property
    def body_neg(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.body if not l.positive)

    def atoms(self) -> list[Atom]:
        return list(self.head) + [l.atom for l in self.body]

    def variables(self) -> list[str]:
        """Variable names of the whole rule, first-occurrence order."""
        seen: list[str] = []
        for atom in self.atoms():
            for name in atom.variables():
                if name not in seen:
                    seen.append(name)
        return seen

    def body_variables(self) -> list[str]:
        """Variable names of the body, first-occurrence order, deduplicated."""
        seen: list[str] = []
        for lit in self.body:
            for name in lit.atom.variables():
                if name not in seen:
                    seen.append(name)
        return seen

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.head) and all(
            l.atom.is_ground for l in self.body
        )

    # Structural identity: id, span and background flag are bookkeeping.
    def __eq__(self, other) -> bool:
        if not isinstance(other, Rule):
            return NotImplemented
        return frozenset(self.head) == frozenset(other.head) and frozenset(
            self.body
        ) == frozenset(other.body)

    def __hash__(self) -> int:
        return hash((frozenset(self.head), frozenset(self.body)))

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    files: tuple[str, ...] = ()

    def rule_by_id(self, rule_id: int) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def max_rule_id(self) -> int:
        return max((r.id for r in self.rules), default=0)

    def __str__(self) -> str:
        return format_program(self)


def classify(rule: Rule) -> str:
    """One of ``fact``, ``constraint``, ``normal``, ``disjunctive``."""
    if not rule.head:
        return "constraint"
    if len(rule.head) == 1:
        return "fact" if not rule.body else "normal"
    return "disjunctive"


def format_rule(rule: Rule) -> str:
    head = " | ".join(str(a) for a in rule.head)
    body = ", ".join(str(l) for l in rule.body)
    if not rule.head:
        return ":- %s." % body
    if not rule.body:
        return "%s." % head
    return "%s :- %s." % (head, body)


def format_program(program: Program) -> str:
    return "\n".join(format_rule(r) for r in program.rules)


def is_debug_atom(atom: Atom) -> bool:
    return atom.predicate.startswith(DEBUG_PREFIX)


def is_support_atom(atom: Atom) -> bool:
    return atom.predicate.startswith(SUPPORT_PREFIX)


def is_reserved_atom(atom: Atom) -> bool:
    return is_debug_atom(atom) or is_support_atom(atom)
