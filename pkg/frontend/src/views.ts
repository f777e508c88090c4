/** DOM rendering for the three panes: review queue, network, progress.
 * All state lives in ReviewState; these functions only paint it. */

import { decisionColor } from "./colors.js";
import { forceLayout } from "./force.js";
import type { ReviewState } from "./state.js";
import type { ApiClient } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderQueue(
  doc: Document,
  root: HTMLElement,
  state: ReviewState,
  api: ApiClient,
): void {
  root.replaceChildren();
  const items = state.queue();
  if (items.length === 0) {
    root.append(el(doc, "p", "empty", "Queue clear — every scaffold is labeled."));
    return;
  }
  const focus = state.focused();
  if (focus) {
    const card = el(doc, "div", "focus-card");
    const img = el(doc, "img", "depiction");
    img.src = api.depictionUrl(focus.id);
    img.alt = focus.smiles;
    card.append(img);
    const meta = el(doc, "div", "meta");
    meta.append(el(doc, "h2", undefined, focus.id));
    meta.append(el(doc, "code", undefined, focus.smiles));
    meta.append(el(doc, "p", "score",
      `classifier score ${focus.score.toFixed(3)} · ` +
      `${focus.parentIds.length} parent molecule(s)`));
    const parents = el(doc, "div", "parents");
    for (const pid of focus.parentIds.slice(0, 6)) {
      const thumb = el(doc, "img", "thumb");
      thumb.src = api.depictionUrl(pid);
      thumb.alt = pid;
      thumb.title = pid;
      parents.append(thumb);
    }
    meta.append(parents);
    meta.append(el(doc, "p", "hint",
      "a accept · u uncertain · r reject · j/k move · s retry unsynced"));
    card.append(meta);
    root.append(card);
  }
  const list = el(doc, "ol", "queue-list");
  for (const item of items) {
    const row = el(doc, "li",
      item.id === state.focusId ? "queue-row focused" : "queue-row");
    row.dataset.scaffold = item.id;
    const swatch = el(doc, "span", "swatch");
    swatch.style.background = decisionColor(item.decision);
    row.append(swatch);
    row.append(el(doc, "span", "qid", item.id));
    row.append(el(doc, "span", "qscore", item.score.toFixed(3)));
    if (item.unsynced) row.append(el(doc, "span", "unsynced", "unsynced"));
    row.addEventListener("click", () => {
      state.focusId = item.id;
      root.dispatchEvent(new Event("statechange", { bubbles: true }));
    });
    list.append(row);
  }
  root.append(list);
}

export function renderNetwork(
  doc: Document,
  root: HTMLElement,
  state: ReviewState,
  onScaffoldClick: (id: string) => void,
): void {
  root.replaceChildren();
  const scaffolds = state.allScaffolds();
  const molecules = [...state.molecules.values()];
  if (scaffolds.length === 0 && molecules.length === 0) {
    root.append(el(doc, "p", "empty", "No network to show yet."));
    return;
  }
  const width = 900;
  const height = 560;
  const ids = [...scaffolds.map((s) => s.id), ...molecules.map((m) => m.id)];
  const positions = forceLayout(
    ids,
    state.edges.map((e) => ({ a: e.a, b: e.b })),
    { width, height, iterations: 120, seed: 42 },
  );

  const ns = "http://www.w3.org/2000/svg";
  const svg = doc.createElementNS(ns, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "network-svg");
  for (const edge of state.edges) {
    const a = positions.get(edge.a);
    const b = positions.get(edge.b);
    if (!a || !b) continue;
    const line = doc.createElementNS(ns, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("class",
      edge.kind === "similarity" ? "edge-similarity" : "edge-derivation");
    svg.append(line);
  }
  const paint = (id: string, kind: "scaffold" | "molecule",
                 decision: string | null) => {
    const p = positions.get(id);
    if (!p) return;
    const circle = doc.createElementNS(ns, "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", kind === "scaffold" ? "14" : "6");
    circle.setAttribute("fill",
      decisionColor(decision as Parameters<typeof decisionColor>[0]));
    circle.setAttribute("class", `node-${kind}`);
    circle.setAttribute("data-node", id);
    if (kind === "scaffold") {
      circle.addEventListener("click", () => onScaffoldClick(id));
    }
    const title = doc.createElementNS(ns, "title");
    title.textContent = id;
    circle.append(title);
    svg.append(circle);
  };
  for (const m of molecules) paint(m.id, "molecule", m.decision);
  for (const s of scaffolds) paint(s.id, "scaffold", s.decision);
  root.append(svg);

  const bar = el(doc, "div", "network-bar");
  bar.append(el(doc, "span", "netstat",
    `${ids.length} nodes · ${state.edges.length} edges · ` +
    `Dice threshold ${state.threshold.toFixed(2)}`));
  const slider = el(doc, "input") as HTMLInputElement;
  slider.type = "range";
  slider.min = "0";
  slider.max = "1";
  slider.step = "0.05";
  slider.value = String(state.threshold);
  slider.addEventListener("change", () => {
    root.dispatchEvent(new CustomEvent("thresholdchange", {
      bubbles: true,
      detail: Number(slider.value),
    }));
  });
  bar.append(slider);
  root.append(bar);
}

export function renderProgress(
  doc: Document,
  root: HTMLElement,
  state: ReviewState,
  api: ApiClient,
): void {
  root.replaceChildren();
  const counts = state.progress();
  const grid = el(doc, "div", "progress-grid");
  for (const key of ["accept", "uncertain", "reject", "unlabeled"] as const) {
    const cell = el(doc, "div", `progress-cell ${key}`);
    cell.append(el(doc, "div", "count", String(counts[key])));
    cell.append(el(doc, "div", "label", key));
    grid.append(cell);
  }
  root.append(grid);
  if (state.unsyncedCount() > 0) {
    root.append(el(doc, "p", "warning",
      `${state.unsyncedCount()} label(s) unsynced — press s to retry.`));
  }
  const link = el(doc, "a", "export-link", "Download adjudication export");
  link.setAttribute("href", api.exportUrl());
  link.setAttribute("download", "adjudication-export.json");
  root.append(link);
}
