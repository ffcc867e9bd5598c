"""Syntax tree behavior: terms, atoms, literals, rules, formatting."""

from hypothesis import given
from hypothesis import strategies as st

from aspdebug import Atom, Literal, Program, Rule, Span, Term, classify, format_rule
from aspdebug.lang import (
    format_program,
    is_debug_atom,
    is_reserved_atom,
    is_support_atom,
)

from util import atom, lit, program


class TestTerm:
    def test_kind_from_first_character(self):
        assert Term("X").is_variable
        assert Term("Xs2").is_variable
        assert not Term("x").is_variable
        assert Term("m1").is_constant
        assert Term("42").is_constant

    def test_integers_sort_numerically_before_symbols(self):
        terms = [Term("10"), Term("m1"), Term("2"), Term("abc")]
        ordered = sorted(terms, key=Term.sort_key)
        assert [t.name for t in ordered] == ["2", "10", "abc", "m1"]


class TestAtom:
    def test_equality_needs_predicate_and_args(self):
        assert atom("p(a,b)") == Atom("p", (Term("a"), Term("b")))
        assert atom("p(a)") != atom("p(b)")
        assert atom("p(a)") != atom("q(a)")
        assert atom("p") != atom("p(a)")

    def test_ground_iff_args_constant(self):
        assert atom("p(a,1)").is_ground
        assert Atom("p").is_ground
        assert not Atom("p", (Term("X"),)).is_ground

    def test_str_has_no_spaces(self):
        assert str(atom("bid(m2,p1,1)")) == "bid(m2,p1,1)"
        assert str(atom("rainy")) == "rainy"

    def test_variables_in_arg_order_with_duplicates(self):
        a = Atom("r", (Term("X"), Term("c"), Term("Y"), Term("X")))
        assert a.variables() == ["X", "Y", "X"]


class TestLiteral:
    def test_complement_is_an_involution(self):
        l = lit("not wet")
        assert l.complement() == lit("wet")
        assert l.complement().complement() == l

    @given(st.booleans())
    def test_complement_flips_exactly_polarity(self, positive):
        l = Literal(Atom("p"), positive)
        c = l.complement()
        assert c.atom == l.atom
        assert c.positive != positive

    def test_str(self):
        assert str(lit("not p(a)")) == "not p(a)"
        assert str(lit("p(a)")) == "p(a)"


class TestRule:
    def test_classification_is_exhaustive_and_exclusive(self):
        kinds = {
            "rainy.": "fact",
            ":- rainy, dry.": "constraint",
            "some_bid(m,p) :- bid(m,p,x).": "normal",
            "wet | dry.": "disjunctive",
            "a | b :- c.": "disjunctive",
        }
        for text, kind in kinds.items():
            (rule,) = program(text).rules
            assert classify(rule) == kind, text
            assert (
                sum(
                    classify(rule) == k
                    for k in ("fact", "constraint", "normal", "disjunctive")
                )
                == 1
            )

    def test_body_projections_preserve_order(self):
        (rule,) = program(":- a, not b, c, not d.").rules
        assert [str(l) for l in rule.body_pos] == ["a", "c"]
        assert [str(l) for l in rule.body_neg] == ["not b", "not d"]

    def test_variables_first_occurrence_order(self):
        (rule,) = program("p(Z,X) :- q(X, Y), r(Y, Z).").rules
        assert rule.variables() == ["Z", "X", "Y"]
        assert rule.body_variables() == ["X", "Y", "Z"]

    def test_equality_is_structural(self):
        a = program("p :- q, not r.").rules[0]
        b = program("% different file, id, span\np :- q, not r.").rules[0]
        assert a == b
        assert hash(a) == hash(b)
        background = Rule(99, a.head, a.body, None, True)
        assert a == background

    def test_equality_ignores_literal_order(self):
        a = program("p :- q, not r.").rules[0]
        b = program("p :- not r, q.").rules[0]
        assert a == b

    def test_inequality(self):
        a = program("p :- q.").rules[0]
        b = program("p :- not q.").rules[0]
        assert a != b
        assert a != "p :- q."


class TestFormatting:
    def test_fact(self):
        assert format_rule(program("rainy.").rules[0]) == "rainy."

    def test_constraint(self):
        assert (
            format_rule(program(":- wet, umbrella.").rules[0]) == ":- wet, umbrella."
        )

    def test_disjunctive_rule(self):
        assert format_rule(program("a | b :- c.").rules[0]) == "a | b :- c."

    def test_negation_and_arguments(self):
        text = "bid(M,P,1) :- not some_bid(M,P), pc(M), paper(P)."
        assert format_rule(program(text).rules[0]) == text

    def test_format_program_joins_lines(self):
        p = program("a.\nb :- a.")
        assert format_program(p) == "a.\nb :- a."


class TestProgram:
    def test_rule_by_id(self):
        p = program("a. b :- a.")
        assert p.rule_by_id(2) is p.rules[1]

    def test_rule_by_id_unknown(self):
        import pytest

        with pytest.raises(KeyError):
            program("a.").rule_by_id(3)

    def test_max_rule_id(self):
        assert program("a. b. c.").max_rule_id() == 3
        assert Program().max_rule_id() == 0


class TestReservedAtoms:
    def test_prefix_checks(self):
        assert is_debug_atom(Atom("_debug_1"))
        assert is_support_atom(Atom("_support_bid", (Term("m2"),)))
        assert is_reserved_atom(Atom("_debug_2"))
        assert is_reserved_atom(Atom("_support_wet"))
        assert not is_reserved_atom(atom("debug"))
        assert not is_reserved_atom(atom("support(x)"))


class TestSpan:
    def test_location(self):
        assert Span("dir/f.lp", 10, 20, 3, 5).location() == "dir/f.lp:3"
