/** Decision color code: pink reject, light blue uncertain, deep blue
 * accept; grey for not-yet-labeled. Applied to scaffolds and propagated
 * to their parent molecules for display. */

import type { Decision } from "./types.js";

export const DECISION_COLORS: Record<Decision, string> = {
  reject: "#e75480",
  uncertain: "#9ecfec",
  accept: "#1f4e9c",
};

export const UNLABELED_COLOR = "#b8b8b8";

export function decisionColor(decision: Decision | null): string {
  return decision === null ? UNLABELED_COLOR : DECISION_COLORS[decision];
}
