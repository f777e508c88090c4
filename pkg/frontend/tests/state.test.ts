import { describe, expect, it } from "vitest";

import { demoBackend } from "../src/fixture.js";
import { ReviewState } from "../src/state.js";

describe("review state against the scripted service fixture", () => {
  it("orders the queue by descending classifier score", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    expect(state.queue().map((s) => s.id)).toEqual([
      "scaf-1", "scaf-2", "scaf-3",
    ]);
    expect(state.focusId).toBe("scaf-1");
  });

  it("labels the focused scaffold and advances focus", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    const ok = await state.label("accept");
    expect(ok).toBe(true);
    expect(backend.effectiveLabels().get("scaf-1")).toBe("accept");
    expect(state.focusId).toBe("scaf-2");
    expect(state.queue().map((s) => s.id)).toEqual(["scaf-2", "scaf-3"]);
  });

  it("keystroke label persists through service restart and reload", async () => {
    const backend = demoBackend();
    const first = new ReviewState(backend.restart());
    await first.refresh();
    await first.label("reject"); // the keystroke handler calls exactly this

    // Service restart: a new client instance over the same backing log;
    // page reload: a brand-new state hydrated only from the server.
    const reloaded = new ReviewState(backend.restart());
    await reloaded.refresh();
    expect(reloaded.scaffolds.get("scaf-1")?.decision).toBe("reject");
    expect(reloaded.queue().map((s) => s.id)).toEqual(["scaf-2", "scaf-3"]);
  });

  it("last write wins after relabeling (undo via re-submit)", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    await state.label("accept", "scaf-1");
    await state.label("uncertain", "scaf-1");
    expect(backend.effectiveLabels().get("scaf-1")).toBe("uncertain");
  });

  it("failed submissions are flagged unsynced and retried, never lost", async () => {
    const backend = demoBackend();
    const api = backend.restart({ failSubmissions: true });
    const state = new ReviewState(api);
    await state.refresh();

    const ok = await state.label("accept", "scaf-1");
    expect(ok).toBe(false);
    expect(state.unsyncedCount()).toBe(1);
    expect(state.scaffolds.get("scaf-1")?.unsynced).toBe(true);
    expect(backend.labelLog).toHaveLength(0);

    api.failSubmissions = false;
    const synced = await state.retryPending();
    expect(synced).toBe(1);
    expect(state.unsyncedCount()).toBe(0);
    expect(backend.effectiveLabels().get("scaf-1")).toBe("accept");
  });

  it("server state wins over local state on refresh", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    // Another session labels behind our back.
    await backend.restart().submitLabel("scaf-2", "reject");
    await state.refresh();
    expect(state.scaffolds.get("scaf-2")?.decision).toBe("reject");
  });

  it("progress counters match the fixture's effective labels", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    await state.label("accept", "scaf-1");
    await state.label("uncertain", "scaf-2");
    await state.refresh();
    const counts = state.progress();
    expect(counts).toEqual(backend.counts());
  });

  it("moveFocus walks the queue and clamps at both ends", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    state.moveFocus(1);
    expect(state.focusId).toBe("scaf-2");
    state.moveFocus(5);
    expect(state.focusId).toBe("scaf-3");
    state.moveFocus(-10);
    expect(state.focusId).toBe("scaf-1");
  });
});
