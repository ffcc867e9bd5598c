"""Interactive debugger for incoherent answer set programs."""

from .lang import (
    DEBUG_PREFIX,
    SUPPORT_PREFIX,
    Atom,
    Literal,
    Program,
    Rule,
    Span,
    Term,
    classify,
    format_program,
    format_rule,
    is_debug_atom,
    is_reserved_atom,
    is_support_atom,
)
from .parser import (
    ParseError,
    ProgramError,
    SafetyError,
    parse_files,
    parse_literals,
    parse_program,
)
from .grounding import (
    GroundProgram,
    Substitution,
    UnknownRuleError,
    ground,
    substitutions_of,
)
from .rewrite import (
    DebugProgram,
    TestCase,
    add_support_rules,
    apply_test_case,
    build_debug_program,
    debug_atom_for,
    support_atom_for,
)
from .solving import (
    NO_ASSUMPTIONS,
    Assumptions,
    Core,
    enumerate_answer_sets,
    is_answer_set,
    is_coherent,
    is_model,
    reduct,
    solve_with_core,
    strip_reserved,
)
from .session import (
    CoherentProgram,
    ContradictoryAnswer,
    CoreReport,
    Diagnosis,
    NoCurrentCore,
    NotUnsupported,
    Session,
    SessionError,
    UnexpectedlyCoherent,
    UnknownQueryAtom,
    init_session,
)
from .testcases import TestFormatError, load_tests, run_test

__version__ = "0.1.0"
