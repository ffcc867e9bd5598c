"""Loading and running `.test` files.

One test case per file.  A file holds comments, blank lines and at most one
assertion line::

    % the intended forecast
    assert true: dry, umbrella.

An empty file (or comments only) asserts that some answer set exists.  The
test's name is the file stem.
"""

from __future__ import annotations

import os
import re

from .lang import Program, Span
from .parser import ProgramError, parse_literals
from .rewrite import TestCase, apply_test_case
from .solving import is_coherent
from .grounding import ground

_ASSERT_LINE = re.compile(r"^\s*assert\s+true\s*:\s*(.*?)\s*\.\s*$")


class TestFormatError(ProgramError):
    pass


def _parse_test_text(name: str, path: str, text: str) -> TestCase:
    literals = None
    span = None
    offset = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            offset += len(line) + 1
            continue
        match = _ASSERT_LINE.match(line)
        if match is None:
            raise TestFormatError(
                "expected 'assert true: <literals>.'", path, lineno, 1
            )
        if literals is not None:
            raise TestFormatError(
                "only one assertion per test file", path, lineno, 1
            )
        try:
            literals = parse_literals(match.group(1), file=path)
        except ProgramError as err:
            raise TestFormatError(err.message, path, lineno, err.column) from err
        for literal in literals:
            if not literal.atom.is_ground:
                raise TestFormatError(
                    "test literals must be ground: %s" % literal, path, lineno, 1
                )
        span = Span(path, offset, offset + len(line), lineno, 1)
        offset += len(line) + 1
    return TestCase(name, frozenset(literals or ()), source=path, span=span)


def load_tests(paths) -> list[TestCase]:
    """Load test cases from `.test` files, one case per file."""
    tests = []
    for path in paths:
        name = os.path.splitext(os.path.basename(path))[0]
        with open(path, "r", encoding="utf-8") as handle:
            tests.append(_parse_test_text(name, path, handle.read()))
    return tests


def run_test(program: Program, test: TestCase) -> bool:
    """A test passes when the program plus its assertions stays coherent."""
    return is_coherent(ground(apply_test_case(program, test)))
