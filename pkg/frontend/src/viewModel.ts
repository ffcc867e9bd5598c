// Pure view-model for a debugging session.  The state is a function of
// the server messages applied so far plus the user's pending marks;
// nothing here touches the DOM or the socket, so the whole model can be
// driven headlessly from a recorded transcript.
import type {
  ClientMessage,
  IncoherentReport,
  ServerMessage,
  TestCase,
  WorkspaceFile,
} from "./protocol.js";

export type Mark = "check" | "cross";

export interface AnswerRecord {
  atom: string;
  holds: boolean;
}

export interface UiState {
  workspace: WorkspaceFile[];
  tests: TestCase[];
  testResults: Record<string, "pass" | "fail">;
  /** Active debugging session id, or null when none is running. */
  session: string | null;
  /** Sessions already ended; reports for these are stale. */
  endedSessions: string[];
  /** Latest report for the active session; its rules are the highlights. */
  report: IncoherentReport | null;
  queryAtom: string | null;
  queryPool: string[];
  marks: Record<string, Mark>;
  history: AnswerRecord[];
  /** Locked: a request is in flight, waiting for core_report or error. */
  awaitingReport: boolean;
  /** Inline server error; marks are kept so the user can correct them. */
  error: string | null;
  /** Notice that a message for a stale session was ignored. */
  staleNotice: string | null;
  /** Answer set from a coherent report — expectations are satisfied. */
  answerSet: string[] | null;
}

export const initialState: UiState = {
  workspace: [],
  tests: [],
  testResults: {},
  session: null,
  endedSessions: [],
  report: null,
  queryAtom: null,
  queryPool: [],
  marks: {},
  history: [],
  awaitingReport: false,
  error: null,
  staleNotice: null,
  answerSet: null,
};

// The queries view never shows more than nine atoms, whatever arrives.
const POOL_LIMIT = 9;

function stale(state: UiState, session: string): UiState {
  return {
    ...state,
    staleNotice: `ignored a message for stale session ${session}`,
  };
}

function isStaleSession(state: UiState, session: string): boolean {
  if (state.endedSessions.includes(session)) return true;
  return state.session !== null && state.session !== session;
}

export function applyServer(state: UiState, msg: ServerMessage): UiState {
  switch (msg.kind) {
    case "list_workspace":
      return { ...state, workspace: msg.files };

    case "list_tests":
      return { ...state, tests: msg.tests };

    case "run_test":
      return {
        ...state,
        testResults: { ...state.testResults, [msg.name]: msg.result },
      };

    case "core_report": {
      if (msg.coherent) {
        if (msg.session !== null && isStaleSession(state, msg.session)) {
          return stale(state, msg.session);
        }
        // Nothing left to debug; keep the session (the server still
        // holds it) but drop the suspects and show the banner.
        return {
          ...state,
          session: msg.session,
          report: null,
          queryAtom: null,
          queryPool: [],
          marks: {},
          awaitingReport: false,
          error: null,
          staleNotice: null,
          answerSet: msg.answer_set,
        };
      }
      if (isStaleSession(state, msg.session)) return stale(state, msg.session);
      // A fresh report opens a new question round: previous marks are
      // gone (their atoms may no longer be in the pool), the lock lifts.
      return {
        ...state,
        session: msg.session,
        report: msg,
        marks: {},
        awaitingReport: false,
        error: null,
        staleNotice: null,
        answerSet: null,
      };
    }

    case "query": {
      // Queries follow their core_report; only the active session's count.
      if (state.session === null || msg.session !== state.session) {
        return stale(state, msg.session);
      }
      return {
        ...state,
        queryAtom: msg.atom,
        queryPool: msg.pool.slice(0, POOL_LIMIT),
        staleNotice: null,
      };
    }

    case "error":
      return { ...state, error: msg.message, awaitingReport: false };

    case "heartbeat":
      return state;

    case "end_session": {
      if (state.session !== null && msg.session !== state.session) {
        return stale(state, msg.session);
      }
      return {
        ...state,
        session: null,
        endedSessions: [...state.endedSessions, msg.session],
        report: null,
        queryAtom: null,
        queryPool: [],
        marks: {},
        awaitingReport: false,
        staleNotice: null,
      };
    }
  }
}

// -- user intents ---------------------------------------------------------

/** Check/cross are mutually exclusive; clicking the set mark clears it. */
export function toggleMark(state: UiState, atom: string, mark: Mark): UiState {
  if (state.awaitingReport) return state;
  if (!state.queryPool.includes(atom)) return state;
  const marks = { ...state.marks };
  if (marks[atom] === mark) {
    delete marks[atom];
  } else {
    marks[atom] = mark;
  }
  return { ...state, marks };
}

export interface Submission {
  next: UiState;
  messages: ClientMessage[];
}

/**
 * One answer message per marked atom, in display order.  Returns null
 * when there is nothing to send (no marks, or a request in flight) —
 * the send button is disabled in exactly these states.
 */
export function submitAnswers(state: UiState): Submission | null {
  if (!canSubmit(state)) return null;
  const marked = state.queryPool.filter((atom) => state.marks[atom]);
  const messages: ClientMessage[] = marked.map((atom) => ({
    kind: "answer",
    atom,
    holds: state.marks[atom] === "check",
  }));
  const answered: AnswerRecord[] = marked.map((atom) => ({
    atom,
    holds: state.marks[atom] === "check",
  }));
  return {
    next: {
      ...state,
      history: [...state.history, ...answered],
      awaitingReport: true,
      error: null,
    },
    messages,
  };
}

export function canSubmit(state: UiState): boolean {
  if (state.awaitingReport || state.session === null) return false;
  return state.queryPool.some((atom) => state.marks[atom] !== undefined);
}

export interface Outgoing {
  next: UiState;
  message: ClientMessage;
}

export function startDebug(state: UiState, test?: string): Outgoing | null {
  if (state.awaitingReport || state.session !== null) return null;
  return {
    next: {
      ...state,
      history: [],
      marks: {},
      awaitingReport: true,
      error: null,
      answerSet: null,
    },
    message: test === undefined
      ? { kind: "start_debug" }
      : { kind: "start_debug", test },
  };
}

export function sendUndo(state: UiState): Outgoing | null {
  if (state.awaitingReport || state.session === null) return null;
  return {
    next: {
      ...state,
      history: state.history.slice(0, -1),
      awaitingReport: true,
      error: null,
    },
    message: { kind: "undo" },
  };
}

export function endSession(state: UiState): Outgoing | null {
  if (state.awaitingReport || state.session === null) return null;
  return { next: state, message: { kind: "end_session" } };
}

// -- selectors ------------------------------------------------------------

export interface HighlightSpan {
  ruleId: number;
  file: string;
  line: number | null;
  start: number;
  end: number;
}

/** Exactly the rules of the latest core report, at their source spans. */
export function highlightedSpans(state: UiState): HighlightSpan[] {
  if (state.report === null) return [];
  const spans: HighlightSpan[] = [];
  for (const rule of state.report.rules) {
    if (rule.file === null || rule.start === null || rule.end === null) {
      continue;
    }
    spans.push({
      ruleId: rule.id,
      file: rule.file,
      line: rule.line,
      start: rule.start,
      end: rule.end,
    });
  }
  return spans;
}

export interface QueryEntry {
  atom: string;
  mark: Mark | null;
}

export function queryEntries(state: UiState): QueryEntry[] {
  return state.queryPool.map((atom) => ({
    atom,
    mark: state.marks[atom] ?? null,
  }));
}

export interface MissingSupportEntry {
  atom: string;
  pool: string[];
}

/** Atoms the current core leaves without any derivation. */
export function missingSupport(state: UiState): MissingSupportEntry[] {
  if (state.report === null) return [];
  return state.report.unsupported.map((atom) => ({
    atom,
    pool: state.report?.support_pools[atom] ?? [],
  }));
}
