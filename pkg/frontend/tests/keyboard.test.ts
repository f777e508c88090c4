import { describe, expect, it } from "vitest";

import { actionForKey, isTextInputTarget } from "../src/keyboard.js";

describe("keyboard mapping", () => {
  it("maps one keystroke per decision", () => {
    expect(actionForKey("a")).toEqual({ kind: "label", decision: "accept" });
    expect(actionForKey("u")).toEqual({ kind: "label", decision: "uncertain" });
    expect(actionForKey("r")).toEqual({ kind: "label", decision: "reject" });
  });

  it("maps navigation keys", () => {
    expect(actionForKey("ArrowDown")).toEqual({ kind: "move", step: 1 });
    expect(actionForKey("ArrowUp")).toEqual({ kind: "move", step: -1 });
    expect(actionForKey("j")).toEqual({ kind: "move", step: 1 });
    expect(actionForKey("k")).toEqual({ kind: "move", step: -1 });
    expect(actionForKey("s")).toEqual({ kind: "retry" });
  });

  it("ignores unmapped keys", () => {
    expect(actionForKey("x")).toBeNull();
    expect(actionForKey("Enter")).toBeNull();
  });

  it("suppresses shortcuts while typing in form fields", () => {
    expect(isTextInputTarget("INPUT", false)).toBe(true);
    expect(isTextInputTarget("textarea", false)).toBe(true);
    expect(isTextInputTarget("DIV", true)).toBe(true);
    expect(isTextInputTarget("DIV", false)).toBe(false);
    expect(isTextInputTarget(undefined, false)).toBe(false);
  });
});
