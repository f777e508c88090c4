/** Application bootstrap: tabs, keyboard dispatch, refresh wiring. */

import { HttpApi } from "./api.js";
import { actionForKey, isTextInputTarget } from "./keyboard.js";
import { ReviewState } from "./state.js";
import { renderNetwork, renderProgress, renderQueue } from "./views.js";

type Pane = "queue" | "network" | "progress";

function start(): void {
  const api = new HttpApi("");
  const state = new ReviewState(api);
  const doc = document;
  const panes: Record<Pane, HTMLElement> = {
    queue: doc.getElementById("pane-queue")!,
    network: doc.getElementById("pane-network")!,
    progress: doc.getElementById("pane-progress")!,
  };
  let active: Pane = "queue";

  const paint = () => {
    renderQueue(doc, panes.queue, state, api);
    renderNetwork(doc, panes.network, state, (id) => {
      state.focusId = id;
      activate("queue");
    });
    renderProgress(doc, panes.progress, state, api);
  };

  const activate = (pane: Pane) => {
    active = pane;
    for (const [name, element] of Object.entries(panes)) {
      element.classList.toggle("active", name === pane);
    }
    for (const tab of doc.querySelectorAll<HTMLElement>("[data-tab]")) {
      tab.classList.toggle("active", tab.dataset.tab === pane);
    }
    paint();
  };

  for (const tab of doc.querySelectorAll<HTMLElement>("[data-tab]")) {
    tab.addEventListener("click", () => activate(tab.dataset.tab as Pane));
  }

  doc.addEventListener("statechange", paint);
  doc.addEventListener("thresholdchange", (event) => {
    const threshold = (event as CustomEvent<number>).detail;
    state.refresh(threshold).then(paint).catch(console.error);
  });

  doc.addEventListener("keydown", (event) => {
    const target = event.target as HTMLElement | null;
    if (isTextInputTarget(target?.tagName, target?.isContentEditable ?? false)) {
      return;
    }
    const action = actionForKey(event.key);
    if (!action) return;
    event.preventDefault();
    if (action.kind === "move") {
      state.moveFocus(action.step);
      paint();
    } else if (action.kind === "label") {
      if (active !== "queue") activate("queue");
      state.label(action.decision).then(paint).catch(console.error);
      paint(); // optimistic frame
    } else {
      state.retryPending().then(paint).catch(console.error);
    }
  });

  state
    .refresh()
    .then(() => activate("queue"))
    .catch((err) => {
      panes.queue.textContent =
        `Cannot reach the adjudication service: ${err}`;
    });
}

start();
