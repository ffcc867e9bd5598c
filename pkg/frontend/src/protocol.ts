// Message shapes for the debugger's line-delimited JSON protocol.
// The server sends one JSON object per line (or per WebSocket text
// frame); everything coming in is validated against these schemas and
// silently dropped when it does not fit.
import { z } from "zod";

export const ruleInstance = z.object({
  text: z.string(),
  substitution: z.record(z.string(), z.string()),
});

export const suspectRule = z.object({
  id: z.number().int(),
  text: z.string(),
  file: z.string().nullable(),
  line: z.number().int().nullable(),
  start: z.number().int().nullable(),
  end: z.number().int().nullable(),
  instances: z.array(ruleInstance),
});

const workspaceFile = z.object({
  name: z.string(),
  path: z.string(),
  text: z.string(),
});

const testCase = z.object({
  name: z.string(),
  literals: z.array(z.string()),
});

export const workspaceReply = z.object({
  kind: z.literal("list_workspace"),
  files: z.array(workspaceFile),
});

export const testsReply = z.object({
  kind: z.literal("list_tests"),
  tests: z.array(testCase),
});

export const runTestReply = z.object({
  kind: z.literal("run_test"),
  name: z.string(),
  result: z.enum(["pass", "fail"]),
});

// The server answered a start_debug/answer/undo and the program turned
// out to have an answer set: nothing left to debug.  `session` is null
// when no debugging session was needed at all.
export const coherentReport = z.object({
  kind: z.literal("core_report"),
  session: z.string().nullable(),
  coherent: z.literal(true),
  answer_set: z.array(z.string()),
});

export const incoherentReport = z.object({
  kind: z.literal("core_report"),
  session: z.string(),
  coherent: z.literal(false),
  core: z.array(z.string()),
  rules: z.array(suspectRule),
  unsupported: z.array(z.string()),
  support_pools: z.record(z.string(), z.array(z.string())),
  conflicting: z.array(z.string()),
});

export const queryReply = z.object({
  kind: z.literal("query"),
  session: z.string(),
  atom: z.string().nullable(),
  pool: z.array(z.string()),
});

export const errorReply = z.object({
  kind: z.literal("error"),
  message: z.string(),
});

export const heartbeat = z.object({
  kind: z.literal("heartbeat"),
});

export const endSessionReply = z.object({
  kind: z.literal("end_session"),
  session: z.string(),
});

export const serverMessage = z.union([
  workspaceReply,
  testsReply,
  runTestReply,
  coherentReport,
  incoherentReport,
  queryReply,
  errorReply,
  heartbeat,
  endSessionReply,
]);

export const clientMessage = z.discriminatedUnion("kind", [
  z.object({ kind: z.literal("list_workspace") }),
  z.object({ kind: z.literal("list_tests") }),
  z.object({ kind: z.literal("run_test"), name: z.string() }),
  z.object({ kind: z.literal("start_debug"), test: z.string().optional() }),
  z.object({ kind: z.literal("answer"), atom: z.string(), holds: z.boolean() }),
  z.object({ kind: z.literal("undo") }),
  z.object({ kind: z.literal("end_session") }),
]);

export type ServerMessage = z.infer<typeof serverMessage>;
export type ClientMessage = z.infer<typeof clientMessage>;
export type CoherentReport = z.infer<typeof coherentReport>;
export type IncoherentReport = z.infer<typeof incoherentReport>;
export type SuspectRule = z.infer<typeof suspectRule>;
export type RuleInstance = z.infer<typeof ruleInstance>;
export type WorkspaceFile = z.infer<typeof workspaceFile>;
export type TestCase = z.infer<typeof testCase>;

export function parseServerLine(line: string): ServerMessage | null {
  let value: unknown;
  try {
    value = JSON.parse(line);
  } catch {
    return null;
  }
  const parsed = serverMessage.safeParse(value);
  return parsed.success ? parsed.data : null;
}
