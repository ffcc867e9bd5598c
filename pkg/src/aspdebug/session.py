"""Interactive debugging sessions over an incoherent program.

A session grounds the rewritten program, assumes every debug atom true and
every support atom false, and then loops: extract a minimal unsatisfiable
core, map it back to source rules, pick a question whose answer halves the
remaining diagnoses, and fold the user's answer into the assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .grounding import ground
from .lang import Atom, Literal, Program, classify, is_debug_atom, is_support_atom
from .rewrite import TestCase, add_support_rules, apply_test_case, build_debug_program
from .solving import (
    Assumptions,
    Core,
    enumerate_answer_sets,
    solve_with_core,
    strip_reserved,
)


class SessionError(Exception):
    pass


class CoherentProgram(SessionError):
    """The program under test has an answer set; there is nothing to debug."""

    def __init__(self, answer_set):
        super().__init__("program is coherent; nothing to debug")
        self.answer_set = answer_set


class UnexpectedlyCoherent(SessionError):
    """The accumulated answers made the program coherent."""

    def __init__(self, answer_set):
        super().__init__("assumptions admit an answer set")
        self.answer_set = answer_set


class ContradictoryAnswer(SessionError):
    pass


class UnknownQueryAtom(SessionError):
    pass


class NoCurrentCore(SessionError):
    pass


class NotUnsupported(SessionError):
    pass


@dataclass(frozen=True)
class Diagnosis:
    """Debug atoms whose removal from the assumptions restores coherence."""

    removed: frozenset


@dataclass
class CoreReport:
    """A core mapped back to rules: what the user actually gets shown."""

    core: Core
    ground_rules: list  # (ground Rule, origin rule id, Substitution)
    nonground_rule_ids: frozenset
    unsupported_atoms: frozenset
    conflicting_answers: frozenset  # answered literals that sit in the core


class Session:
    def __init__(
        self,
        program: Program,
        test: TestCase | None = None,
        query_limit: int = 9,
        sample_limit: int = 4,
        diagnosis_bound: int = 16,
    ):
        self.original = program
        self.test = test
        self.query_limit = query_limit
        self.sample_limit = sample_limit
        self.diagnosis_bound = diagnosis_bound

        constrained = apply_test_case(program, test) if test else program
        self.debug = build_debug_program(constrained)
        self.ground = add_support_rules(ground(self.debug.rewritten), self.debug)

        self._debug_rule_index: dict[Atom, int] = {}
        debug_literals = []
        for index, rule in enumerate(self.ground.rules):
            for literal in rule.body:
                if literal.positive and is_debug_atom(literal.atom):
                    if literal.atom not in self._debug_rule_index:
                        self._debug_rule_index[literal.atom] = index
                        debug_literals.append(literal)
        support_literals = [
            Literal(s, False) for s in self.debug.support_registry.values()
        ]
        self._initial = Assumptions.of(debug_literals + support_literals)
        self.assumptions = self._initial

        # atoms never worth asking about: the program's given facts and
        # background heads are not in doubt
        self._settled = frozenset(
            atom
            for rule in constrained.rules
            if rule.is_background or classify(rule) == "fact"
            for atom in rule.head
        )

        self.answers: list[tuple[Atom, bool]] = []
        self.answered: dict[Atom, bool] = {}
        self.core: Core | None = None
        self.report: CoreReport | None = None
        self.query_pool: list[Atom] = []
        self._diagnoses: list[Diagnosis] | None = None

        witness = enumerate_answer_sets(self.ground, self.assumptions, limit=1)
        if witness:
            raise CoherentProgram(strip_reserved(witness[0]))

    # -- the core loop -------------------------------------------------

    def step(self) -> CoreReport:
        """Solve under the current assumptions and report the minimal core."""
        result = solve_with_core(self.ground, self.assumptions)
        if not isinstance(result, Core):
            raise UnexpectedlyCoherent(strip_reserved(result))
        self.core = result
        ground_rules = []
        rule_ids = set()
        unsupported = set()
        conflicting = set()
        for literal in result.sorted():
            atom = literal.atom
            if literal.positive and is_debug_atom(atom):
                index = self._debug_rule_index[atom]
                origin_id, sub = self.ground.origin[index]
                ground_rules.append((self.ground.rules[index], origin_id, sub))
                rule_ids.add(origin_id)
            elif not literal.positive and is_support_atom(atom):
                unsupported.add(self.debug.atom_for_support(atom))
            if atom in self.answered:
                conflicting.add(literal)
        ground_rules.sort(key=lambda item: (item[1], item[2].sort_key()))
        self.report = CoreReport(
            result,
            ground_rules,
            frozenset(rule_ids),
            frozenset(unsupported),
            frozenset(conflicting),
        )
        self._diagnoses = None
        return self.report

    def compute_diagnoses(self, bound: int | None = None) -> list[Diagnosis]:
        """Subset-minimal debug-atom removals that restore coherence.

        Breadth-first over subsets of the core's debug atoms by increasing
        size, stopping once ``bound`` diagnoses were collected.
        """
        if self.core is None:
            raise NoCurrentCore("call step() first")
        if self._diagnoses is not None:
            return self._diagnoses
        bound = self.diagnosis_bound if bound is None else bound
        debug_atoms = sorted(
            (l.atom for l in self.core if l.positive and is_debug_atom(l.atom)),
            key=Atom.sort_key,
        )
        found: list[frozenset] = []
        for size in range(1, len(debug_atoms) + 1):
            if len(found) >= bound:
                break
            for subset in combinations(debug_atoms, size):
                candidate = frozenset(subset)
                if any(prior <= candidate for prior in found):
                    continue
                relaxed = self.assumptions.minus(Literal(a) for a in subset)
                if enumerate_answer_sets(self.ground, relaxed, limit=1):
                    found.append(candidate)
                    if len(found) >= bound:
                        break
        self._diagnoses = [Diagnosis(s) for s in found]
        return self._diagnoses

    def support_query_pool(self, unsupported: Atom) -> list[Atom]:
        """Atoms that decide why ``unsupported`` has no derivation: the other
        head atoms, the positive body, and the negated atoms of each of its
        deriving rules."""
        if self.report is None or unsupported not in self.report.unsupported_atoms:
            raise NotUnsupported("%s is not flagged unsupported" % unsupported)
        pool = set()
        for rule in self.ground.rules:
            if unsupported not in rule.head:
                continue
            pool.update(a for a in rule.head if a != unsupported)
            pool.update(l.atom for l in rule.body)
        return sorted(
            (a for a in pool if not is_debug_atom(a) and not is_support_atom(a)),
            key=Atom.sort_key,
        )

    def compute_query(self) -> Atom | None:
        """Pick the atom whose truth frequency is closest to one half.

        Samples up to ``sample_limit`` answer sets per diagnosis from the
        relaxed program; candidates from the missing-support pools are
        preferred on ties.  Returns None when there is nothing to ask.
        """
        diagnoses = self.compute_diagnoses()
        collected = []
        for diagnosis in diagnoses:
            relaxed = self.assumptions.minus(
                Literal(a) for a in diagnosis.removed
            )
            collected.extend(
                enumerate_answer_sets(self.ground, relaxed, limit=self.sample_limit)
            )
        promoted = set()
        if self.report is not None:
            for atom in self.report.unsupported_atoms:
                promoted.update(self.support_query_pool(atom))

        def excluded(atom):
            return (
                is_debug_atom(atom)
                or is_support_atom(atom)
                or atom in self.answered
                or atom in self._settled
            )

        candidates = set(promoted)
        for answer_set in collected:
            candidates.update(answer_set)
        candidates = [a for a in candidates if not excluded(a)]
        if not candidates:
            self.query_pool = []
            return None
        total = len(collected)

        def frequency(atom):
            if not total:
                return 0.0
            return sum(1 for s in collected if atom in s) / total

        candidates.sort(
            key=lambda a: (
                abs(frequency(a) - 0.5),
                0 if a in promoted else 1,
                a.sort_key(),
            )
        )
        self.query_pool = candidates[: self.query_limit]
        return self.query_pool[0]

    def answer_query(self, atom: Atom, holds: bool) -> "Session":
        """Record the user's verdict on a queried atom as an assumption."""
        if atom in self.answered:
            if self.answered[atom] != holds:
                raise ContradictoryAnswer(
                    "%s was already answered %s" % (atom, self.answered[atom])
                )
            return self
        if atom not in self.query_pool:
            raise UnknownQueryAtom("%s was never asked" % atom)
        self.answers.append((atom, holds))
        self.answered[atom] = holds
        self.assumptions = self.assumptions.plus(Literal(atom, holds))
        self._diagnoses = None
        return self

    def undo(self) -> "Session":
        """Forget the most recent answer and rebuild the assumption set."""
        if self.answers:
            self.answers.pop()
        self.answered = dict(self.answers)
        assumptions = self._initial
        for atom, holds in self.answers:
            assumptions = assumptions.plus(Literal(atom, holds))
        self.assumptions = assumptions
        self.core = None
        self.report = None
        self.query_pool = []
        self._diagnoses = None
        return self


def init_session(program: Program, test: TestCase | None = None, **kwargs) -> Session:
    """Start a debugging session; raises CoherentProgram if there is no bug."""
    return Session(program, test, **kwargs)
