// Wire-up: socket -> view model -> DOM.  Configuration is host/port,
// taken from the page's query string (?host=…&port=…) with the page's
// own hostname and the server's default port as fallbacks.
import { connect } from "./transport.js";
import { render } from "./render.js";
import type { Handlers, ViewOptions } from "./render.js";
import {
  applyServer,
  endSession,
  initialState,
  sendUndo,
  startDebug,
  submitAnswers,
  toggleMark,
} from "./viewModel.js";
import type { UiState } from "./viewModel.js";

const params = new URLSearchParams(location.search);
const host = params.get("host") ?? (location.hostname || "127.0.0.1");
const port = Number(params.get("port") ?? "8642");

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app element");

let state: UiState = initialState;
const view: ViewOptions = { selectedFile: null, connection: "closed" };

const transport = connect({
  host,
  port,
  onMessage(msg) {
    state = applyServer(state, msg);
    repaint();
  },
  onStatus(status) {
    view.connection = status;
    if (status === "open") {
      transport.send({ kind: "list_workspace" });
      transport.send({ kind: "list_tests" });
    }
    repaint();
  },
});

const handlers: Handlers = {
  selectFile(path) {
    view.selectedFile = path;
    repaint();
  },
  runTest(name) {
    transport.send({ kind: "run_test", name });
  },
  startDebug(test) {
    const out = startDebug(state, test);
    if (out === null) return;
    if (transport.send(out.message)) {
      state = out.next;
      repaint();
    }
  },
  toggleMark(atom, mark) {
    state = toggleMark(state, atom, mark);
    repaint();
  },
  submit() {
    const submission = submitAnswers(state);
    if (submission === null) return;
    for (const message of submission.messages) transport.send(message);
    state = submission.next;
    repaint();
  },
  undo() {
    const out = sendUndo(state);
    if (out === null) return;
    if (transport.send(out.message)) {
      state = out.next;
      repaint();
    }
  },
  endSession() {
    const out = endSession(state);
    if (out === null) return;
    transport.send(out.message);
  },
};

function repaint(): void {
  render(root as HTMLElement, state, view, handlers);
}

repaint();
