"""Bottom-up instantiation of programs with variables.

The grounder runs a fixpoint over potentially derivable atoms: an instance
of a rule is emitted once every positive body literal is matched by a fact
or by the head of an already emitted instance.  Negative literals never
block instantiation, and no simplification happens at all — emitted rules
keep their full bodies, exactly as written.  Atoms carrying the reserved
debug prefix count as always derivable so rewritten programs ground the
same way their originals do.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lang import Atom, Literal, Program, Rule, Term, is_debug_atom


class UnknownRuleError(KeyError):
    """Raised when asking for instances of a rule id that does not exist."""


@dataclass(frozen=True)
class Substitution:
    """A finite map from variable names to constant terms."""

    bindings: tuple[tuple[str, Term], ...] = ()

    @classmethod
    def of(cls, mapping: dict[str, Term]) -> "Substitution":
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, Term]:
        return dict(self.bindings)

    def get(self, name: str) -> Term | None:
        for var, term in self.bindings:
            if var == name:
                return term
        return None

    def apply_term(self, term: Term) -> Term:
        if term.is_variable:
            bound = self.get(term.name)
            if bound is not None:
                return bound
        return term

    def apply_atom(self, atom: Atom) -> Atom:
        if not atom.args:
            return atom
        return Atom(atom.predicate, tuple(self.apply_term(t) for t in atom.args))

    def apply_literal(self, literal: Literal) -> Literal:
        return Literal(self.apply_atom(literal.atom), literal.positive)

    def apply_rule(self, rule: Rule) -> Rule:
        # Deliberately no deduplication even when a substitution makes two
        # literals coincide: instances must keep the origin rule's shape.
        head = tuple(self.apply_atom(a) for a in rule.head)
        body = tuple(self.apply_literal(l) for l in rule.body)
        return Rule(rule.id, head, body, rule.span, rule.is_background)

    def sort_key(self):
        return tuple((var, term.sort_key()) for var, term in self.bindings)

    def __str__(self) -> str:
        return "{%s}" % ",".join("%s=%s" % (v, t) for v, t in self.bindings)


@dataclass
class GroundProgram:
    """An instantiated program plus provenance for every instance."""

    rules: tuple[Rule, ...]
    origin: dict[int, tuple[int, Substitution]]  # rule index -> (rule id, sub)
    universe: frozenset[Term]
    base: frozenset[Atom]
    rule_ids: frozenset[int] = field(default_factory=frozenset)

    def instances_of(self, rule_id: int) -> list[tuple[int, Substitution]]:
        """(index, substitution) pairs for one origin rule, program order."""
        if rule_id not in self.rule_ids:
            raise UnknownRuleError(rule_id)
        return [
            (index, sub)
            for index, (origin_id, sub) in sorted(self.origin.items())
            if origin_id == rule_id
        ]


def _collect_universe(rules) -> frozenset[Term]:
    constants = set()
    for rule in rules:
        for atom in rule.atoms():
            for term in atom.args:
                if term.is_constant:
                    constants.add(term)
    return frozenset(constants)


def _collect_base(rules) -> frozenset[Atom]:
    atoms = set()
    for rule in rules:
        atoms.update(rule.atoms())
    return frozenset(atoms)


def _match_literals(literals, derivable_by_pred, binding, out):
    """Backtracking join of positive body literals against derivable atoms."""
    if not literals:
        out.append(dict(binding))
        return
    first, rest = literals[0], literals[1:]
    candidates = derivable_by_pred.get(first.atom.predicate, ())
    for atom in candidates:
        if len(atom.args) != len(first.atom.args):
            continue
        trail = []
        ok = True
        for pattern, value in zip(first.atom.args, atom.args):
            if pattern.is_constant:
                if pattern != value:
                    ok = False
                    break
            else:
                bound = binding.get(pattern.name)
                if bound is None:
                    binding[pattern.name] = value
                    trail.append(pattern.name)
                elif bound != value:
                    ok = False
                    break
        if ok:
            _match_literals(rest, derivable_by_pred, binding, out)
        for name in trail:
            del binding[name]


def ground(program: Program) -> GroundProgram:
    """Instantiate a program by fixpoint iteration.

    Instances within the result are ordered by origin rule id and then by
    substitution.  Ground rules keep the id of the rule they came from, so
    ids in a GroundProgram are not unique — provenance lives in ``origin``.
    """
    emitted: dict[tuple[int, tuple], Rule] = {}
    subs: dict[tuple[int, tuple], Substitution] = {}
    derivable_by_pred: dict[str, list[Atom]] = {}
    derivable: set[Atom] = set()

    def derive(atom: Atom) -> bool:
        if atom in derivable or is_debug_atom(atom):
            return False
        derivable.add(atom)
        derivable_by_pred.setdefault(atom.predicate, []).append(atom)
        return True

    changed = True
    while changed:
        changed = False
        for rule in program.rules:
            joinable = [l for l in rule.body_pos if not is_debug_atom(l.atom)]
            matches: list[dict] = []
            _match_literals(joinable, derivable_by_pred, {}, matches)
            for binding in matches:
                sub = Substitution.of(binding)
                key = (rule.id, sub.bindings)
                if key in emitted:
                    continue
                instance = sub.apply_rule(rule)
                if not instance.is_ground:
                    raise ValueError(
                        "cannot ground rule %d: unbound variables remain" % rule.id
                    )
                emitted[key] = instance
                subs[key] = sub
                for atom in instance.head:
                    if derive(atom):
                        changed = True

    order = sorted(emitted, key=lambda key: (key[0], subs[key].sort_key()))
    rules = tuple(emitted[key] for key in order)
    origin = {i: (key[0], subs[key]) for i, key in enumerate(order)}
    return GroundProgram(
        rules,
        origin,
        _collect_universe(program.rules),
        _collect_base(rules),
        frozenset(r.id for r in program.rules),
    )


def substitutions_of(g: GroundProgram, rule_id: int) -> list[Substitution]:
    """Substitutions a rule was instantiated with, in program order."""
    return [sub for _, sub in g.instances_of(rule_id)]


def ground_program_from_rules(rules) -> GroundProgram:
    """Wrap already-ground rules (identity grounding, mostly for tests)."""
    rules = tuple(rules)
    for rule in rules:
        if not rule.is_ground:
            raise ValueError("rule %d is not ground" % rule.id)
    origin = {i: (rule.id, Substitution()) for i, rule in enumerate(rules)}
    return GroundProgram(
        rules,
        origin,
        _collect_universe(rules),
        _collect_base(rules),
        frozenset(r.id for r in rules),
    )
