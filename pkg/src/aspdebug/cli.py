"""Command-line entry point.

Subcommands::

    aspdebug solve   <files...>            enumerate answer sets
    aspdebug ground  <files...>            print the ground program
    aspdebug test    <files...> --tests D  run the .test files in D
    aspdebug debug   <files...> [--test F] interactive debugging loop
    aspdebug serve   <files...> --tests D  run the protocol server

Exit status: 0 on success, 1 on domain errors (parse/safety/test format),
2 on usage errors, 20 when ``solve`` finds no answer set, and 1 when
``test`` sees at least one failing test.
"""

from __future__ import annotations

import argparse
import os
import sys

from .lang import Atom
from .parser import ProgramError, parse_files
from .grounding import ground
from .session import (
    CoherentProgram,
    ContradictoryAnswer,
    Session,
    UnexpectedlyCoherent,
    init_session,
)
from .solving import enumerate_answer_sets, strip_reserved
from .testcases import load_tests, run_test

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_INCOHERENT = 20


def _model_line(model) -> str:
    return " ".join(sorted(str(a) for a in strip_reserved(model)))


def _test_files(directory: str) -> list[str]:
    try:
        names = sorted(os.listdir(directory))
    except OSError as err:
        raise ProgramError(str(err), directory, 0, 0) from err
    return [
        os.path.join(directory, name) for name in names if name.endswith(".test")
    ]


def cmd_solve(args, out) -> int:
    g = ground(parse_files(args.files))
    models = enumerate_answer_sets(g)
    for model in models:
        print(_model_line(model), file=out)
    return EXIT_OK if models else EXIT_INCOHERENT


def cmd_ground(args, out) -> int:
    g = ground(parse_files(args.files))
    for rule in g.rules:
        print(rule, file=out)
    return EXIT_OK


def cmd_test(args, out) -> int:
    program = parse_files(args.files)
    failures = 0
    for test in load_tests(_test_files(args.tests)):
        passed = run_test(program, test)
        print("%s %s" % ("PASS" if passed else "FAIL", test.name), file=out)
        failures += 0 if passed else 1
    return EXIT_ERROR if failures else EXIT_OK


def _print_report(session: Session, report, out) -> None:
    print("suspect rules:", file=out)
    last_origin = None
    for rule, origin, substitution in report.ground_rules:
        source = session.debug.original.rule_by_id(origin)
        if origin != last_origin:
            where = source.span.location() if source.span else "?"
            print("  [%d] %s: %s" % (origin, where, source), file=out)
            last_origin = origin
        print("        %s  %s" % (substitution, rule), file=out)
    if report.unsupported_atoms:
        atoms = ", ".join(sorted(str(a) for a in report.unsupported_atoms))
        print("atoms with no derivation: %s" % atoms, file=out)
    if report.conflicting_answers:
        answers = ", ".join(sorted(str(l) for l in report.conflicting_answers))
        print("conflicting expectations: %s" % answers, file=out)


def _print_pool(session: Session, out) -> None:
    print("is the atom expected to be true?", file=out)
    for number, atom in enumerate(session.query_pool, start=1):
        print("  %d. %s" % (number, atom), file=out)
    print("answer: y/n [atom number], or undo / quit", file=out)


def _read_command(prompt, source, out):
    print(prompt, end="", file=out, flush=True)
    line = source.readline()
    if not line:
        return None
    return line.strip().lower()


def cmd_debug(args, out, source, err) -> int:
    program = parse_files(args.files)
    test = load_tests([args.test])[0] if args.test else None
    try:
        session = init_session(program, test)
    except CoherentProgram as outcome:
        print("nothing to debug: found answer set", file=out)
        print(_model_line(outcome.answer_set), file=out)
        return EXIT_OK

    while True:
        try:
            report = session.step()
        except UnexpectedlyCoherent as outcome:
            print("expectations satisfied: found answer set", file=out)
            print(_model_line(outcome.answer_set), file=out)
            return EXIT_OK
        _print_report(session, report, out)
        query = session.compute_query()
        if query is None:
            print("no further questions; the rules above remain suspect.", file=out)
            return EXIT_OK
        _print_pool(session, out)
        while True:
            command = _read_command("> ", source, out)
            if command is None or command in ("quit", "q"):
                return EXIT_OK
            if command in ("undo", "u"):
                session.undo()
                break
            parts = command.split()
            if parts and parts[0] in ("y", "n"):
                holds = parts[0] == "y"
                try:
                    number = int(parts[1]) if len(parts) > 1 else 1
                    atom = session.query_pool[number - 1]
                except (ValueError, IndexError):
                    print("no such atom; pick a listed number", file=out)
                    continue
                try:
                    session.answer_query(atom, holds)
                except ContradictoryAnswer as clash:
                    print("refused: %s" % clash, file=out)
                    continue
                break
            print("say y or n (optionally an atom number), undo, or quit", file=out)


def cmd_serve(args, out, err) -> int:
    from .server import serve

    program = parse_files(args.files)
    tests = load_tests(_test_files(args.tests)) if args.tests else []
    serve(
        program,
        tests,
        host=args.host,
        port=args.port,
        heartbeat=args.heartbeat,
        log=err,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspdebug",
        description="Solve, test, and interactively debug answer set programs.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def with_files(name, help_text):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("files", nargs="+", help="program files (.lp)")
        return sub

    with_files("solve", "enumerate answer sets, one line each")
    with_files("ground", "print the ground program")

    test = with_files("test", "run .test files against the program")
    test.add_argument("--tests", required=True, help="directory of .test files")

    debug = with_files("debug", "interactive debugging loop")
    debug.add_argument("--test", help="a failing .test file to debug against")

    serve = with_files("serve", "speak the debugger protocol on a socket")
    serve.add_argument("--tests", help="directory of .test files")
    serve.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("ASPDEBUG_PORT", "8642")),
        help="port to listen on (default: $ASPDEBUG_PORT or 8642)",
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--heartbeat",
        type=float,
        default=2.0,
        help="seconds of solver silence before a heartbeat message",
    )
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as bail:
        return bail.code if bail.code is not None else EXIT_USAGE

    try:
        if args.command == "solve":
            return cmd_solve(args, stdout)
        if args.command == "ground":
            return cmd_ground(args, stdout)
        if args.command == "test":
            return cmd_test(args, stdout)
        if args.command == "debug":
            return cmd_debug(args, stdout, stdin, stderr)
        if args.command == "serve":
            return cmd_serve(args, stdout, stderr)
    except ProgramError as err:
        print("error: %s" % err, file=stderr)
        return EXIT_ERROR
    except OSError as err:
        print("error: %s" % err, file=stderr)
        return EXIT_ERROR
    raise AssertionError("unhandled command %r" % args.command)


if __name__ == "__main__":
    sys.exit(main())
