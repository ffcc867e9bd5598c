"""Stable-model search for ground programs, with assumptions and cores.

The search enumerates candidate models by chronological backtracking over
atom truth values (atoms in lexicographic order, true branch first) with
unit propagation on rule satisfaction, then verifies each candidate by a
secondary minimal-model check on the reduct.

Atoms carrying the reserved ``_debug_`` / ``_support_`` prefixes behave as
choice atoms: they may be true without a deriving rule, and the ones that
are true stay fixed during the minimality check.  Programs without reserved
atoms get exactly the textbook reduct semantics.  Without this exemption a
single assumed debug atom would already be an unsatisfiable core, which
would make assumption-based debugging useless.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grounding import GroundProgram, Substitution, ground_program_from_rules
from .lang import Atom, Literal, Rule, is_reserved_atom

Interpretation = frozenset  # of Atom


@dataclass(frozen=True)
class Assumptions:
    """A set of literals taken as true while solving."""

    literals: frozenset = frozenset()

    def __post_init__(self):
        atoms = {}
        for lit in self.literals:
            if atoms.setdefault(lit.atom, lit.positive) != lit.positive:
                raise ValueError("complementary assumption on %s" % lit.atom)

    @classmethod
    def of(cls, literals) -> "Assumptions":
        return cls(frozenset(literals))

    def sorted(self) -> list[Literal]:
        return sorted(self.literals, key=Literal.sort_key)

    def plus(self, literal: Literal) -> "Assumptions":
        return Assumptions(self.literals | {literal})

    def minus(self, literals) -> "Assumptions":
        return Assumptions(self.literals - frozenset(literals))

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.literals)

    def __contains__(self, literal):
        return literal in self.literals


NO_ASSUMPTIONS = Assumptions()


@dataclass(frozen=True)
class Core:
    """An unsatisfiable subset of the assumption literals."""

    literals: frozenset

    def sorted(self) -> list[Literal]:
        return sorted(self.literals, key=Literal.sort_key)

    def atoms(self) -> list[Atom]:
        return [l.atom for l in self.sorted()]

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.literals)

    def __contains__(self, literal):
        return literal in self.literals


def is_model(g: GroundProgram, interpretation) -> bool:
    """Classical satisfaction: every rule with a true body has a true head atom."""
    true = frozenset(interpretation)
    for rule in g.rules:
        if all(l.atom in true for l in rule.body_pos) and all(
            l.atom not in true for l in rule.body_neg
        ):
            if not any(a in true for a in rule.head):
                return False
    return True


def reduct(g: GroundProgram, interpretation) -> GroundProgram:
    """Drop rules whose negative body is false, strip negative bodies."""
    true = frozenset(interpretation)
    kept = []
    for rule in g.rules:
        if any(l.atom in true for l in rule.body_neg):
            continue
        kept.append(Rule(rule.id, rule.head, rule.body_pos, rule.span, rule.is_background))
    return ground_program_from_rules(kept)


class _Engine:
    """Bitmask search over one ground program plus assumption atoms."""

    def __init__(self, g: GroundProgram, extra_atoms=()):
        atoms = sorted(set(g.base) | set(extra_atoms), key=Atom.sort_key)
        self.atoms = atoms
        self.index = {atom: i for i, atom in enumerate(atoms)}
        self.n = len(atoms)
        self.ext_mask = 0
        for atom, i in self.index.items():
            if is_reserved_atom(atom):
                self.ext_mask |= 1 << i
        self.clauses = []  # (head_mask, pos_mask, neg_mask)
        self.head_rules = [[] for _ in range(self.n)]
        for rule in g.rules:
            head = pos = neg = 0
            for a in rule.head:
                head |= 1 << self.index[a]
            for l in rule.body_pos:
                pos |= 1 << self.index[l.atom]
            for l in rule.body_neg:
                neg |= 1 << self.index[l.atom]
            c = (head, pos, neg)
            self.clauses.append(c)
            h = head
            while h:
                bit = h & -h
                self.head_rules[bit.bit_length() - 1].append(c)
                h ^= bit

    def assumption_masks(self, assumptions: Assumptions) -> tuple[int, int]:
        t = f = 0
        for lit in assumptions.literals:
            bit = 1 << self.index[lit.atom]
            if lit.positive:
                t |= bit
            else:
                f |= bit
        return t, f

    def _propagate(self, true_mask: int, false_mask: int):
        """Unit propagation plus founder pruning; None on conflict."""
        full = (1 << self.n) - 1
        while True:
            changed = False
            for head, pos, neg in self.clauses:
                if head & true_mask or pos & false_mask or neg & true_mask:
                    continue
                unassigned = full & ~true_mask & ~false_mask
                h_open = head & unassigned
                p_open = pos & unassigned
                n_open = neg & unassigned
                options = h_open | p_open | n_open
                if options == 0:
                    return None
                if options & (options - 1) == 0:
                    # one atom left; skip if it would satisfy in either
                    # polarity (e.g. the same atom in head and positive body)
                    if p_open == 0:
                        true_mask |= options
                        changed = True
                    elif (h_open | n_open) == 0:
                        false_mask |= options
                        changed = True
            # A regular atom with no potentially applicable deriving rule
            # cannot be true in any stable model.
            candidates = full & ~false_mask & ~self.ext_mask
            while candidates:
                bit = candidates & -candidates
                candidates ^= bit
                alive = False
                for head, pos, neg in self.head_rules[bit.bit_length() - 1]:
                    if pos & false_mask == 0 and neg & true_mask == 0:
                        alive = True
                        break
                if not alive:
                    if bit & true_mask:
                        return None
                    false_mask |= bit
                    changed = True
            if not changed:
                return true_mask, false_mask

    def _exists_proper_submodel(self, model_mask: int) -> bool:
        """Search for a model of the reduct strictly below the candidate."""
        fixed = model_mask & self.ext_mask
        free = model_mask & ~self.ext_mask
        if free == 0:
            return False
        clauses = []
        for head, pos, neg in self.clauses:
            if neg & model_mask or pos & ~model_mask:
                continue
            clauses.append((head & model_mask, pos))

        def sat(kept: int, dropped: int) -> bool:
            while True:
                changed = False
                for keep_one, drop_one in clauses:
                    if keep_one & kept or drop_one & dropped:
                        continue
                    k_open = keep_one & ~dropped & ~kept
                    d_open = drop_one & ~kept & ~dropped
                    options = k_open | d_open
                    if options == 0:
                        return False
                    if options & (options - 1) == 0:
                        # force only if the one open atom helps in exactly
                        # one role; head and body can share an atom
                        if d_open == 0:
                            kept |= options
                            changed = True
                        elif k_open == 0:
                            dropped |= options
                            changed = True
                if not changed:
                    break
            open_bits = free & ~kept & ~dropped
            if open_bits == 0:
                return dropped != 0
            bit = open_bits & -open_bits
            # try dropping first: we are hunting for smaller models
            return sat(kept, dropped | bit) or sat(kept | bit, dropped)

        return sat(fixed, 0)

    def _is_stable(self, model_mask: int) -> bool:
        return not self._exists_proper_submodel(model_mask)

    def search(self, true_mask: int, false_mask: int):
        """Yield stable models (as masks) extending the given assignment."""
        state = self._propagate(true_mask, false_mask)
        if state is None:
            return
        true_mask, false_mask = state
        unassigned = ((1 << self.n) - 1) & ~true_mask & ~false_mask
        if unassigned == 0:
            if self._is_stable(true_mask):
                yield true_mask
            return
        bit = unassigned & -unassigned
        yield from self.search(true_mask | bit, false_mask)
        yield from self.search(true_mask, false_mask | bit)

    def to_interpretation(self, mask: int) -> frozenset:
        return frozenset(
            atom for atom, i in self.index.items() if mask & (1 << i)
        )

    def stable_models(self, assumptions: Assumptions, limit=None):
        t, f = self.assumption_masks(assumptions)
        found = []
        for mask in self.search(t, f):
            found.append(self.to_interpretation(mask))
            if limit is not None and len(found) >= limit:
                break
        return found


def _engine_for(g: GroundProgram, assumptions: Assumptions) -> _Engine:
    return _Engine(g, extra_atoms=[l.atom for l in assumptions.literals])


def is_answer_set(g: GroundProgram, interpretation) -> bool:
    """Model of g whose reduct admits no strictly smaller model.

    True reserved atoms are exempt from the minimality requirement (choice
    semantics); for programs without reserved atoms this is the plain
    Gelfond-Lifschitz test.
    """
    m = frozenset(interpretation)
    if not is_model(g, m):
        return False
    engine = _Engine(g, extra_atoms=m)
    mask = 0
    for atom in m:
        mask |= 1 << engine.index[atom]
    return engine._is_stable(mask)


def enumerate_answer_sets(
    g: GroundProgram, assumptions: Assumptions = NO_ASSUMPTIONS, limit=None
) -> list:
    """All (or the first ``limit``) answer sets satisfying the assumptions.

    Deterministic: atoms are ordered lexicographically and the true branch
    is explored first, so repeated calls return the same list.
    """
    return _engine_for(g, assumptions).stable_models(assumptions, limit)


def is_coherent(g: GroundProgram, assumptions: Assumptions = NO_ASSUMPTIONS) -> bool:
    return bool(enumerate_answer_sets(g, assumptions, limit=1))


def solve_with_core(g: GroundProgram, assumptions: Assumptions = NO_ASSUMPTIONS):
    """First answer set, or a 1-minimal unsatisfiable core of the assumptions.

    Minimization is deletion-based: every literal is tested once, in sorted
    literal order, and dropped when the rest stays incoherent.  Each literal
    of the returned core is therefore necessary.
    """
    engine = _engine_for(g, assumptions)
    models = engine.stable_models(assumptions, limit=1)
    if models:
        return models[0]
    core = list(assumptions.sorted())
    for lit in list(core):
        trial = [l for l in core if l != lit]
        if not engine.stable_models(Assumptions.of(trial), limit=1):
            core = trial
    return Core(frozenset(core))


def strip_reserved(interpretation) -> frozenset:
    """Drop rewriter-generated atoms from an interpretation."""
    return frozenset(a for a in interpretation if not is_reserved_atom(a))
