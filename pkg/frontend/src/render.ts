// DOM rendering.  Everything is rebuilt from the view model on each
// change — at this scale (one file pane, nine query rows) that is far
// simpler than reconciling, and it keeps the render honest: what you
// see is exactly the state.
import type { SuspectRule } from "./protocol.js";
import type { HighlightSpan, Mark, UiState } from "./viewModel.js";
import {
  canSubmit,
  highlightedSpans,
  missingSupport,
  queryEntries,
} from "./viewModel.js";

export interface Handlers {
  selectFile(path: string): void;
  runTest(name: string): void;
  startDebug(test: string | undefined): void;
  toggleMark(atom: string, mark: Mark): void;
  submit(): void;
  undo(): void;
  endSession(): void;
}

export interface ViewOptions {
  /** File shown in the editor; render-local, not part of the session. */
  selectedFile: string | null;
  connection: "open" | "closed";
}

export function render(
  root: HTMLElement,
  state: UiState,
  view: ViewOptions,
  handlers: Handlers,
): void {
  root.replaceChildren(
    renderHeader(state, view, handlers),
    renderNotices(state),
    renderMain(state, view, handlers),
  );
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(
  label: string,
  onClick: () => void,
  disabled = false,
  className = "",
): HTMLButtonElement {
  const b = el("button", className, label);
  b.disabled = disabled;
  b.addEventListener("click", onClick);
  return b;
}

// -- header and notices ----------------------------------------------------

function renderHeader(
  state: UiState,
  view: ViewOptions,
  handlers: Handlers,
): HTMLElement {
  const header = el("header");
  header.append(el("h1", "", "aspdebug"));

  const status = el("span", `conn ${view.connection}`);
  status.textContent = view.connection === "open" ? "connected" : "offline";
  header.append(status);

  if (state.session !== null) {
    header.append(el("span", "session", `session ${state.session}`));
    header.append(
      button("undo", handlers.undo, state.awaitingReport, "ghost"),
      button("end session", handlers.endSession, state.awaitingReport, "ghost"),
    );
  }
  if (state.awaitingReport) {
    header.append(el("span", "busy", "working…"));
  }
  return header;
}

function renderNotices(state: UiState): HTMLElement {
  const box = el("div", "notices");
  if (state.answerSet !== null) {
    const banner = el("div", "banner");
    banner.append(
      el("strong", "", "expectations satisfied"),
      el("span", "", " — answer set: " + state.answerSet.join("  ")),
    );
    box.append(banner);
  }
  if (state.staleNotice !== null) {
    box.append(el("div", "stale", state.staleNotice));
  }
  return box;
}

// -- the four views ---------------------------------------------------------

function renderMain(
  state: UiState,
  view: ViewOptions,
  handlers: Handlers,
): HTMLElement {
  const main = el("main");
  const side = el("div", "side");
  side.append(renderWorkspace(state, view, handlers));
  side.append(renderTests(state, handlers));
  main.append(side, renderEditor(state, view), renderQueries(state, handlers));
  return main;
}

function renderWorkspace(
  state: UiState,
  view: ViewOptions,
  handlers: Handlers,
): HTMLElement {
  const panel = el("section", "panel workspace");
  panel.append(el("h2", "", "workspace"));
  if (state.workspace.length === 0) {
    panel.append(el("p", "dim", "no files"));
    return panel;
  }
  const list = el("ul");
  for (const file of state.workspace) {
    const item = el("li");
    const pick = button(file.name, () => handlers.selectFile(file.path));
    if (file.path === shownFile(state, view)) pick.classList.add("selected");
    item.append(pick);
    list.append(item);
  }
  panel.append(list);
  return panel;
}

function renderTests(state: UiState, handlers: Handlers): HTMLElement {
  const panel = el("section", "panel tests");
  panel.append(el("h2", "", "tests"));
  const debugLocked = state.awaitingReport || state.session !== null;

  const whole = el("div", "test-row");
  whole.append(
    button("debug program", () => handlers.startDebug(undefined), debugLocked),
  );
  panel.append(whole);

  for (const test of state.tests) {
    const row = el("div", "test-row");
    row.append(el("code", "", test.name));
    const verdict = state.testResults[test.name];
    if (verdict !== undefined) {
      row.append(el("span", `verdict ${verdict}`, verdict.toUpperCase()));
    }
    row.append(
      button("run", () => handlers.runTest(test.name)),
      button("debug", () => handlers.startDebug(test.name), debugLocked),
    );
    if (test.literals.length > 0) {
      row.append(el("div", "dim", "expects: " + test.literals.join(", ")));
    }
    panel.append(row);
  }
  return panel;
}

function shownFile(state: UiState, view: ViewOptions): string | null {
  if (view.selectedFile !== null) return view.selectedFile;
  const spans = highlightedSpans(state);
  if (spans.length > 0) return spans[0].file;
  return state.workspace.length > 0 ? state.workspace[0].path : null;
}

function renderEditor(state: UiState, view: ViewOptions): HTMLElement {
  const panel = el("section", "panel editor");
  const path = shownFile(state, view);
  panel.append(el("h2", "", path === null ? "editor" : path));
  if (path === null) {
    panel.append(el("p", "dim", "connect to a server to see its program"));
    return panel;
  }
  const file = state.workspace.find((f) => f.path === path);
  if (file === undefined) {
    panel.append(el("p", "dim", "file is not in the workspace"));
    return panel;
  }

  const rulesById = new Map<number, SuspectRule>();
  for (const rule of state.report?.rules ?? []) rulesById.set(rule.id, rule);
  const spans = highlightedSpans(state)
    .filter((s) => s.file === path)
    .sort((a, b) => a.start - b.start);

  const pre = el("pre", "source");
  let cursor = 0;
  for (const span of spans) {
    if (span.start < cursor || span.end > file.text.length) continue;
    pre.append(file.text.slice(cursor, span.start));
    const mark = el("mark", "suspect", file.text.slice(span.start, span.end));
    const rule = rulesById.get(span.ruleId);
    if (rule !== undefined) attachHover(mark, rule);
    pre.append(mark);
    cursor = span.end;
  }
  pre.append(file.text.slice(cursor));
  panel.append(pre);
  return panel;
}

/** Hover card: every substitution of the rule with its ground version. */
function attachHover(mark: HTMLElement, rule: SuspectRule): void {
  let card: HTMLElement | null = null;
  mark.addEventListener("mouseenter", () => {
    card = el("div", "hovercard");
    card.append(el("div", "hovertitle", `rule ${rule.id}: ${rule.text}`));
    for (const instance of rule.instances) {
      const line = el("div", "instance");
      const bindings = Object.entries(instance.substitution)
        .map(([variable, term]) => `${variable}=${term}`)
        .join(", ");
      line.append(
        el("code", "subst", `{${bindings}}`),
        el("code", "", instance.text),
      );
      card.append(line);
    }
    mark.append(card);
  });
  mark.addEventListener("mouseleave", () => {
    card?.remove();
    card = null;
  });
}

function renderQueries(state: UiState, handlers: Handlers): HTMLElement {
  const panel = el("section", "panel queries");
  panel.append(el("h2", "", "queries"));

  if (state.report === null && state.session === null) {
    panel.append(el("p", "dim", "start a debug session to get questions"));
  }

  if (state.report !== null) {
    const entries = queryEntries(state);
    if (entries.length > 0) {
      panel.append(el("p", "", "is the atom expected to be true?"));
      for (const entry of entries) {
        const row = el("div", "query-row");
        if (entry.atom === state.queryAtom) row.classList.add("suggested");
        row.append(el("code", "atom", entry.atom));
        const yes = button(
          "✓",
          () => handlers.toggleMark(entry.atom, "check"),
          state.awaitingReport,
          entry.mark === "check" ? "mark on" : "mark",
        );
        const no = button(
          "✗",
          () => handlers.toggleMark(entry.atom, "cross"),
          state.awaitingReport,
          entry.mark === "cross" ? "mark on" : "mark",
        );
        row.append(yes, no);
        panel.append(row);
      }
      panel.append(button("send", handlers.submit, !canSubmit(state), "send"));
    } else if (state.queryAtom === null) {
      panel.append(
        el("p", "dim", "no further questions; the highlighted rules remain suspect"),
      );
    }
  }

  if (state.error !== null) {
    panel.append(el("div", "error", state.error));
  }

  const unsupported = missingSupport(state);
  if (unsupported.length > 0) {
    const support = el("div", "missing-support");
    support.append(el("h3", "", "atoms with no derivation"));
    for (const entry of unsupported) {
      const row = el("div");
      row.append(el("code", "", entry.atom));
      if (entry.pool.length > 0) {
        row.append(el("span", "dim", " could come from: " + entry.pool.join(", ")));
      }
      support.append(row);
    }
    panel.append(support);
  }

  if (state.history.length > 0) {
    const history = el("div", "history");
    history.append(el("h3", "", "answers so far"));
    for (const record of state.history) {
      history.append(
        el("div", "", `${record.atom} — ${record.holds ? "yes" : "no"}`),
      );
    }
    panel.append(history);
  }
  return panel;
}
