/** The UI acceptance criteria, run against the scripted service fixture. */

import { describe, expect, it } from "vitest";

import { demoBackend } from "../src/fixture.js";
import { actionForKey } from "../src/keyboard.js";
import { ReviewState } from "../src/state.js";

describe("UI acceptance", () => {
  it("a keystroke label persists through service restart and page reload", async () => {
    const backend = demoBackend();
    const session = new ReviewState(backend.restart());
    await session.refresh();
    const action = actionForKey("a");
    expect(action).toEqual({ kind: "label", decision: "accept" });
    if (action?.kind !== "label") throw new Error("unreachable");
    await session.label(action.decision);

    // Restart = fresh client over the same backing log;
    // reload = fresh state hydrated only from the server.
    const reloaded = new ReviewState(backend.restart());
    await reloaded.refresh();
    expect(reloaded.scaffolds.get("scaf-1")?.decision).toBe("accept");
  });

  it("network view node/edge counts equal the /network payload", async () => {
    const backend = demoBackend();
    const api = backend.restart();
    const payload = await api.network();
    const state = new ReviewState(api);
    await state.refresh();
    const shown = state.allScaffolds().length + state.molecules.size;
    expect(shown).toBe(payload.nodes.length);
    expect(state.edges.length).toBe(payload.edges.length);
  });

  it("progress counters match the service's effective labels", async () => {
    const backend = demoBackend();
    const state = new ReviewState(backend.restart());
    await state.refresh();
    await state.label("accept", "scaf-1");
    await state.label("reject", "scaf-2");
    await state.label("uncertain", "scaf-2"); // last write wins
    await state.refresh();
    expect(state.progress()).toEqual(backend.counts());
    expect(backend.effectiveLabels().get("scaf-2")).toBe("uncertain");
  });
});
