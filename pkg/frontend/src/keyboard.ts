/** Keyboard-first labeling: one keystroke per decision, arrows or j/k
 * to move through the queue. */

import type { Decision } from "./types.js";

export type ReviewAction =
  | { kind: "label"; decision: Decision }
  | { kind: "move"; step: number }
  | { kind: "retry" };

export function actionForKey(key: string): ReviewAction | null {
  switch (key) {
    case "a":
      return { kind: "label", decision: "accept" };
    case "u":
      return { kind: "label", decision: "uncertain" };
    case "r":
      return { kind: "label", decision: "reject" };
    case "ArrowDown":
    case "j":
      return { kind: "move", step: 1 };
    case "ArrowUp":
    case "k":
      return { kind: "move", step: -1 };
    case "s":
      return { kind: "retry" };
    default:
      return null;
  }
}

/** Keystrokes typed into form fields must not label anything. */
export function isTextInputTarget(tagName: string | undefined,
                                  editable: boolean): boolean {
  const tag = (tagName ?? "").toUpperCase();
  return editable || tag === "INPUT" || tag === "TEXTAREA" || tag === "SELECT";
}
