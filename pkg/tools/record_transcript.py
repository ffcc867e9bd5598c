"""Regenerate the protocol fixture transcript.

Run from the repository root::

    python3 tools/record_transcript.py

Drives a fresh ProtocolHandler through the full worked example — list the
workspace, run the failing test, debug, answer the first query, end — and
writes every request and reply to fixtures/example1_transcript.jsonl.
"""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from aspdebug import load_tests, parse_files  # noqa: E402
from aspdebug.server import ProtocolHandler  # noqa: E402

REQUESTS = [
    {"kind": "list_workspace"},
    {"kind": "list_tests"},
    {"kind": "run_test", "name": "some_model"},
    {"kind": "start_debug", "test": "some_model"},
    {"kind": "answer", "atom": "bid(m2,p1,1)", "holds": True},
    {"kind": "end_session"},
]


def main() -> None:
    program = parse_files(["fixtures/bidding.lp"])
    tests = load_tests(["fixtures/tests/some_model.test"])
    handler = ProtocolHandler(program, tests)
    rows = []
    for request in REQUESTS:
        line = json.dumps(request, sort_keys=True, separators=(",", ":"))
        rows.append({"dir": "send", "msg": request})
        for reply in handler.handle_line(line):
            rows.append({"dir": "recv", "msg": json.loads(reply)})
    out = ROOT / "fixtures" / "example1_transcript.jsonl"
    with open(out, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, sort_keys=True) + "\n")
    print("wrote %s (%d rows)" % (out, len(rows)))


if __name__ == "__main__":
    main()
