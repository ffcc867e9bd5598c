"""Tiny builders shared across the test suite."""

from aspdebug import Atom, Term, parse_literals, parse_program
from aspdebug.grounding import ground_program_from_rules


def atom(text):
    (found,) = parse_literals(text)
    assert found.positive, "expected a plain atom, got %s" % found
    return found.atom


def lit(text):
    (found,) = parse_literals(text)
    return found


def lits(text):
    return parse_literals(text)


def raw_atom(predicate, *args):
    """Build an atom the parser would refuse (reserved prefixes)."""
    return Atom(predicate, tuple(Term(a) for a in args))


def program(text, facts_as_background=True):
    return parse_program([("<test>", text)], facts_as_background=facts_as_background)


def ground_rules(text):
    """Parse an already-ground program and wrap it as-is (no grounding pass)."""
    parsed = program(text, facts_as_background=False)
    return ground_program_from_rules(parsed.rules)
