"""A line-delimited JSON protocol for driving one debugging session.

Each request is one JSON object on one line; each may produce several
reply lines.  Kinds understood::

    {"kind": "list_workspace"}                 -> list_workspace
    {"kind": "list_tests"}                     -> list_tests
    {"kind": "run_test", "name": N}            -> run_test
    {"kind": "start_debug", "test": N?}        -> core_report, query
    {"kind": "answer", "atom": A, "holds": B}  -> core_report, query
    {"kind": "undo"}                           -> core_report, query
    {"kind": "end_session"}                    -> end_session

Malformed or out-of-place requests get an ``error`` reply and the
connection stays open.  While a reply is being computed the socket loop
emits ``heartbeat`` lines at a configurable interval.  One session at a
time; it survives client reconnects because the handler outlives the
connection.  The socket speaks either raw newline-delimited text or, when
the first bytes look like an HTTP GET, a minimal WebSocket upgrade so a
browser can connect directly.

Replies are deterministic: same program, same requests, same bytes —
except the session id, which counts up across sessions of one server.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import queue
import socket
import struct
import threading

from .lang import Program
from .parser import ProgramError, parse_literals
from .rewrite import TestCase
from .session import (
    CoherentProgram,
    Session,
    SessionError,
    UnexpectedlyCoherent,
    init_session,
)


def _dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class ProtocolHandler:
    """Pure request→replies mapping; owns the (single) session."""

    def __init__(self, program: Program, tests: list[TestCase] | None = None):
        self.program = program
        self.tests = {t.name: t for t in tests or []}
        self.session: Session | None = None
        self.session_id: str | None = None
        self._sessions_started = 0

    # -- dispatch -------------------------------------------------------

    def handle_line(self, line: str) -> list[str]:
        try:
            message = json.loads(line)
        except ValueError:
            return [self._error("request is not valid JSON")]
        if not isinstance(message, dict) or not isinstance(message.get("kind"), str):
            return [self._error("request must be an object with a 'kind'")]
        kind = message["kind"]
        handler = getattr(self, "_on_%s" % kind, None)
        if handler is None:
            return [self._error("unknown kind %r" % kind)]
        try:
            return handler(message)
        except SessionError as err:
            return [self._error(str(err))]
        except ProgramError as err:
            return [self._error(str(err))]

    def _error(self, text: str) -> str:
        return _dumps({"kind": "error", "message": text})

    # -- workspace ------------------------------------------------------

    def _on_list_workspace(self, message) -> list[str]:
        files = []
        for path in self.program.files:
            try:
                with open(path, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError:
                text = ""
            files.append(
                {"name": os.path.basename(path), "path": path, "text": text}
            )
        return [_dumps({"kind": "list_workspace", "files": files})]

    def _on_list_tests(self, message) -> list[str]:
        tests = [
            {
                "name": name,
                "literals": sorted(str(l) for l in self.tests[name].literals),
            }
            for name in sorted(self.tests)
        ]
        return [_dumps({"kind": "list_tests", "tests": tests})]

    def _on_run_test(self, message) -> list[str]:
        from .testcases import run_test

        name = message.get("name")
        if name not in self.tests:
            return [self._error("unknown test %r" % name)]
        passed = run_test(self.program, self.tests[name])
        return [
            _dumps(
                {
                    "kind": "run_test",
                    "name": name,
                    "result": "pass" if passed else "fail",
                }
            )
        ]

    # -- the session ----------------------------------------------------

    def _on_start_debug(self, message) -> list[str]:
        if self.session is not None:
            return [self._error("a session is already active; end it first")]
        test = None
        if message.get("test") is not None:
            name = message["test"]
            if name not in self.tests:
                return [self._error("unknown test %r" % name)]
            test = self.tests[name]
        try:
            session = init_session(self.program, test)
        except CoherentProgram as outcome:
            return [self._coherent_report(None, outcome.answer_set)]
        self._sessions_started += 1
        self.session_id = "s%d" % self._sessions_started
        self.session = session
        return self._report_and_query()

    def _on_answer(self, message) -> list[str]:
        if self.session is None:
            return [self._error("no active session")]
        if not isinstance(message.get("holds"), bool):
            return [self._error("'holds' must be true or false")]
        literals = parse_literals(str(message.get("atom", "")))
        if len(literals) != 1 or not literals[0].positive:
            return [self._error("'atom' must name a single ground atom")]
        self.session.answer_query(literals[0].atom, message["holds"])
        return self._report_and_query()

    def _on_undo(self, message) -> list[str]:
        if self.session is None:
            return [self._error("no active session")]
        self.session.undo()
        return self._report_and_query()

    def _on_end_session(self, message) -> list[str]:
        if self.session is None:
            return [self._error("no active session")]
        ended = self.session_id
        self.session = None
        self.session_id = None
        return [_dumps({"kind": "end_session", "session": ended})]

    # -- report shapes ---------------------------------------------------

    def _report_and_query(self) -> list[str]:
        session = self.session
        try:
            report = session.step()
        except UnexpectedlyCoherent as outcome:
            return [self._coherent_report(self.session_id, outcome.answer_set)]
        rules = []
        for rule, origin, substitution in report.ground_rules:
            if not rules or rules[-1]["id"] != origin:
                source = session.debug.original.rule_by_id(origin)
                span = source.span
                rules.append(
                    {
                        "id": origin,
                        "text": str(source),
                        "file": span.file if span else None,
                        "line": span.line if span else None,
                        "start": span.start if span else None,
                        "end": span.end if span else None,
                        "instances": [],
                    }
                )
            rules[-1]["instances"].append(
                {
                    "text": str(rule),
                    "substitution": {
                        name: str(term) for name, term in substitution.bindings
                    },
                }
            )
        unsupported = sorted(str(a) for a in report.unsupported_atoms)
        pools = {
            str(a): [str(q) for q in session.support_query_pool(a)]
            for a in report.unsupported_atoms
        }
        core_report = _dumps(
            {
                "kind": "core_report",
                "session": self.session_id,
                "coherent": False,
                "core": [str(l) for l in report.core.sorted()],
                "rules": rules,
                "unsupported": unsupported,
                "support_pools": pools,
                "conflicting": sorted(str(l) for l in report.conflicting_answers),
            }
        )
        atom = session.compute_query()
        query = _dumps(
            {
                "kind": "query",
                "session": self.session_id,
                "atom": None if atom is None else str(atom),
                "pool": [str(a) for a in session.query_pool],
            }
        )
        return [core_report, query]

    def _coherent_report(self, session_id, answer_set) -> str:
        return _dumps(
            {
                "kind": "core_report",
                "session": session_id,
                "coherent": True,
                "answer_set": sorted(str(a) for a in answer_set),
            }
        )


# -- transports ----------------------------------------------------------

_WS_MAGIC = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


class _LineTransport:
    """Newline-delimited text over a plain socket."""

    def __init__(self, conn: socket.socket, first_chunk: bytes):
        self._file = conn.makefile("rwb")
        self._buffer = first_chunk

    def readline(self) -> str | None:
        while b"\n" not in self._buffer:
            chunk = self._file.read1(65536)
            if not chunk:
                return None
            self._buffer += chunk
        line, self._buffer = self._buffer.split(b"\n", 1)
        return line.decode("utf-8", "replace")

    def writeline(self, text: str) -> None:
        self._file.write(text.encode("utf-8") + b"\n")
        self._file.flush()


class _WebSocketTransport:
    """Just enough RFC 6455: one text frame per protocol line."""

    def __init__(self, conn: socket.socket, first_chunk: bytes):
        self._conn = conn
        self._buffer = first_chunk
        self._handshake()

    def _read_more(self) -> bool:
        chunk = self._conn.recv(65536)
        if not chunk:
            return False
        self._buffer += chunk
        return True

    def _handshake(self) -> None:
        while b"\r\n\r\n" not in self._buffer:
            if not self._read_more():
                raise ConnectionError("client hung up during handshake")
        raw, self._buffer = self._buffer.split(b"\r\n\r\n", 1)
        key = None
        for header in raw.decode("latin-1").split("\r\n")[1:]:
            name, _, value = header.partition(":")
            if name.strip().lower() == "sec-websocket-key":
                key = value.strip()
        if key is None:
            raise ConnectionError("not a WebSocket upgrade")
        accept = base64.b64encode(
            hashlib.sha1((key + _WS_MAGIC).encode("latin-1")).digest()
        ).decode("latin-1")
        self._conn.sendall(
            (
                "HTTP/1.1 101 Switching Protocols\r\n"
                "Upgrade: websocket\r\n"
                "Connection: Upgrade\r\n"
                "Sec-WebSocket-Accept: %s\r\n\r\n" % accept
            ).encode("latin-1")
        )

    def _take(self, n: int) -> bytes | None:
        while len(self._buffer) < n:
            if not self._read_more():
                return None
        taken, self._buffer = self._buffer[:n], self._buffer[n:]
        return taken

    def readline(self) -> str | None:
        message = b""
        while True:
            head = self._take(2)
            if head is None:
                return None
            fin = head[0] & 0x80
            opcode = head[0] & 0x0F
            masked = head[1] & 0x80
            length = head[1] & 0x7F
            if length == 126:
                length = struct.unpack(">H", self._take(2))[0]
            elif length == 127:
                length = struct.unpack(">Q", self._take(8))[0]
            mask = self._take(4) if masked else b"\x00" * 4
            payload = self._take(length)
            if payload is None:
                return None
            if masked:
                payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
            if opcode == 0x8:  # close
                return None
            if opcode == 0x9:  # ping -> pong
                self._send_frame(0xA, payload)
                continue
            if opcode in (0x1, 0x0):
                message += payload
                if fin:
                    return message.decode("utf-8", "replace").rstrip("\n")
            # ignore pongs and binary frames

    def _send_frame(self, opcode: int, payload: bytes) -> None:
        head = bytes([0x80 | opcode])
        n = len(payload)
        if n < 126:
            head += bytes([n])
        elif n < 1 << 16:
            head += bytes([126]) + struct.pack(">H", n)
        else:
            head += bytes([127]) + struct.pack(">Q", n)
        self._conn.sendall(head + payload)

    def writeline(self, text: str) -> None:
        self._send_frame(0x1, text.encode("utf-8"))


def _open_transport(conn: socket.socket):
    first = conn.recv(4, socket.MSG_PEEK)
    if first.startswith(b"GET"):
        return _WebSocketTransport(conn, b"")
    return _LineTransport(conn, b"")


# -- the serve loop -------------------------------------------------------


def _answer_with_heartbeats(handler, line, transport, heartbeat):
    box: queue.Queue = queue.Queue()
    worker = threading.Thread(
        target=lambda: box.put(handler.handle_line(line)), daemon=True
    )
    worker.start()
    while True:
        try:
            replies = box.get(timeout=heartbeat)
            break
        except queue.Empty:
            transport.writeline(_dumps({"kind": "heartbeat"}))
    for reply in replies:
        transport.writeline(reply)


def serve(
    program: Program,
    tests: list[TestCase] | None = None,
    host: str = "127.0.0.1",
    port: int = 8642,
    heartbeat: float = 2.0,
    log=None,
    max_clients: int | None = None,
    ready=None,
) -> None:
    """Accept one client at a time; the session outlives disconnects.

    ``ready``, if given, is called with the bound port once listening —
    handy with port 0.  ``max_clients`` bounds the accept loop (for tests).
    """
    handler = ProtocolHandler(program, tests)
    with socket.create_server((host, port)) as server:
        if ready is not None:
            ready(server.getsockname()[1])
        served = 0
        while max_clients is None or served < max_clients:
            conn, peer = server.accept()
            served += 1
            if log is not None:
                print("client %s:%d connected" % peer[:2], file=log, flush=True)
            try:
                with conn:
                    transport = _open_transport(conn)
                    while True:
                        line = transport.readline()
                        if line is None:
                            break
                        if not line.strip():
                            continue
                        _answer_with_heartbeats(handler, line, transport, heartbeat)
            except (ConnectionError, OSError) as err:
                if log is not None:
                    print("client dropped: %s" % err, file=log, flush=True)
