// Headless replay of the recorded session against the view model: the
// bidding program's failing test opens a debug session, two rules light
// up, the user confirms bid(m2,p1,1) with the check mark, and the
// highlight narrows to one rule.
import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { clientMessage, serverMessage } from "../src/protocol.js";
import {
  applyServer,
  highlightedSpans,
  initialState,
  submitAnswers,
  toggleMark,
} from "../src/viewModel.js";
import type { UiState } from "../src/viewModel.js";

const fixtureUrl = new URL(
  "../../fixtures/example1_transcript.jsonl",
  import.meta.url,
);

interface TranscriptRow {
  dir: "send" | "recv";
  msg: { kind?: string } & Record<string, unknown>;
}

function loadRows(): TranscriptRow[] {
  return readFileSync(fixtureUrl, "utf8")
    .trim()
    .split("\n")
    .map((line) => JSON.parse(line) as TranscriptRow);
}

describe("replaying the recorded debugging session", () => {
  it("2 highlighted spans, the bid query, then 1 span after check+send", () => {
    let state: UiState = initialState;
    const spanCounts: number[] = [];

    for (const row of loadRows()) {
      if (row.dir === "recv") {
        const msg = serverMessage.parse(row.msg);
        state = applyServer(state, msg);
        // the queries view never exceeds nine atoms, at any point
        expect(state.queryPool.length).toBeLessThanOrEqual(9);
        if (msg.kind === "core_report") {
          spanCounts.push(highlightedSpans(state).length);
        }
        continue;
      }
      if (row.msg.kind !== "answer") continue;

      // The recorded answer is what the UI must produce for a check
      // mark on the suggested atom followed by send.
      expect(state.queryPool).toContain("bid(m2,p1,1)");
      state = toggleMark(state, "bid(m2,p1,1)", "check");
      const submitted = submitAnswers(state);
      expect(submitted).not.toBeNull();
      expect(submitted!.messages).toEqual([row.msg]);
      state = submitted!.next;
    }

    // one count per applied report: two suspects, then one
    expect(spanCounts).toEqual([2, 1]);
    // the transcript ends the session
    expect(state.session).toBeNull();
    expect(state.endedSessions).toContain("s1");
  });

  it("highlights sit inside the workspace file they point at", () => {
    let state: UiState = initialState;
    for (const row of loadRows()) {
      if (row.dir !== "recv") continue;
      state = applyServer(state, serverMessage.parse(row.msg));
      for (const span of highlightedSpans(state)) {
        const file = state.workspace.find((f) => f.path === span.file);
        expect(file).toBeDefined();
        expect(span.end).toBeLessThanOrEqual(file!.text.length);
        // a span covers a whole rule, which ends with its period
        expect(file!.text.slice(span.start, span.end).trim().endsWith(".")).toBe(
          true,
        );
      }
    }
  });

  it("emits nothing the protocol grammar rejects", () => {
    let state: UiState = initialState;
    for (const row of loadRows()) {
      if (row.dir !== "recv") continue;
      state = applyServer(state, serverMessage.parse(row.msg));
      if (state.queryPool.length > 0) {
        let marked = state;
        for (const atom of state.queryPool) {
          marked = toggleMark(marked, atom, "cross");
        }
        const submitted = submitAnswers(marked);
        if (submitted !== null) {
          for (const message of submitted.messages) {
            expect(clientMessage.safeParse(message).success).toBe(true);
          }
        }
      }
    }
  });
});
