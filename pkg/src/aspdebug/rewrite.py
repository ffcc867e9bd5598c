"""Program transformations that prepare a debugging session.

Three steps: turn a test case into constraints, append a fresh debug atom
to every non-background rule, and (after grounding) give every ground atom
a support rule so missing derivations can show up in cores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grounding import GroundProgram
from .lang import (
    DEBUG_PREFIX,
    SUPPORT_PREFIX,
    Atom,
    Literal,
    Program,
    Rule,
    Span,
    Term,
    is_reserved_atom,
)


@dataclass(frozen=True)
class TestCase:
    """A named set of ground literals expected to hold in some answer set.

    An empty literal set just asserts that some answer set exists.
    """

    name: str
    literals: frozenset = frozenset()
    source: str | None = None
    span: Span | None = None

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=Literal.sort_key)


@dataclass
class DebugProgram:
    """A rewritten program plus registries to map generated atoms back."""

    rewritten: Program
    original: Program
    debug_registry: dict[int, Atom] = field(default_factory=dict)
    support_registry: dict[Atom, Atom] = field(default_factory=dict)

    def rule_for_debug(self, debug_atom: Atom) -> int:
        """Origin rule id for a (possibly ground) debug atom."""
        prefix_len = len(DEBUG_PREFIX)
        return int(debug_atom.predicate[prefix_len:])

    def atom_for_support(self, support_atom: Atom) -> Atom:
        for atom, support in self.support_registry.items():
            if support == support_atom:
                return atom
        raise KeyError(support_atom)


def apply_test_case(program: Program, test: TestCase) -> Program:
    """Add one constraint per asserted literal: the complement may not hold.

    The added constraints are non-background, get fresh rule ids, and their
    spans point at the test-case file.
    """
    rules = list(program.rules)
    next_id = program.max_rule_id() + 1
    span = test.span or (
        Span(test.source, 0, 0, 1, 1) if test.source else None
    )
    for literal in test.sorted_literals():
        rules.append(
            Rule(next_id, (), (literal.complement(),), span=span, is_background=False)
        )
        next_id += 1
    return Program(tuple(rules), program.files)


def debug_atom_for(rule: Rule) -> Atom:
    """The debug atom appended to a rule: variables of the body, in order."""
    variables = tuple(Term(name) for name in rule.body_variables())
    return Atom("%s%d" % (DEBUG_PREFIX, rule.id), variables)


def build_debug_program(program: Program) -> DebugProgram:
    """Append a fresh debug atom to every non-background rule."""
    rewritten = []
    registry: dict[int, Atom] = {}
    for rule in program.rules:
        if rule.is_background:
            rewritten.append(rule)
            continue
        atom = debug_atom_for(rule)
        registry[rule.id] = atom
        rewritten.append(
            Rule(
                rule.id,
                rule.head,
                rule.body + (Literal(atom),),
                rule.span,
                rule.is_background,
            )
        )
    return DebugProgram(
        Program(tuple(rewritten), program.files), program, registry
    )


def support_atom_for(atom: Atom) -> Atom:
    return Atom("%s%s" % (SUPPORT_PREFIX, atom.predicate), atom.args)


def add_support_rules(g: GroundProgram, d: DebugProgram) -> GroundProgram:
    """Give every ground atom a deriving rule guarded by a support atom.

    Returns a new ground program with ``a :- _support_a`` appended for each
    atom of ``g`` (debug and support atoms excluded) and records the pairs
    in ``d.support_registry``.
    """
    atoms = sorted(
        (a for a in g.base if not is_reserved_atom(a)), key=Atom.sort_key
    )
    next_id = max(g.rule_ids, default=0) + 1
    rules = list(g.rules)
    rule_ids = set(g.rule_ids)
    base = set(g.base)
    for atom in atoms:
        support = support_atom_for(atom)
        d.support_registry[atom] = support
        rules.append(Rule(next_id, (atom,), (Literal(support),)))
        rule_ids.add(next_id)
        base.add(support)
        next_id += 1
    return GroundProgram(
        tuple(rules), dict(g.origin), g.universe, frozenset(base), frozenset(rule_ids)
    )
