/** Review-session state.
 *
 * The server is the authority: this store mirrors the latest network
 * payload, applies labels optimistically while the POST is in flight,
 * and reconciles to whatever the server returns. Failed submissions
 * stay visible in an unsynced queue for retry; nothing is dropped
 * silently.
 */

import type { ApiClient, Decision, NetworkNode, NetworkPayload } from "./types.js";

export interface QueueItem {
  id: string;
  smiles: string;
  depiction: string;
  score: number;
  decision: Decision | null;
  parentIds: string[];
  unsynced: boolean;
}

export interface PendingLabel {
  scaffoldId: string;
  decision: Decision;
}

export class ReviewState {
  scaffolds = new Map<string, QueueItem>();
  molecules = new Map<string, NetworkNode>();
  edges: NetworkPayload["edges"] = [];
  threshold = 0.65;
  focusId: string | null = null;
  pending: PendingLabel[] = [];
  counts: Record<string, number> | null = null;

  constructor(private readonly api: ApiClient) {}

  /** Replace local state with the server's view; server wins conflicts. */
  async refresh(threshold?: number): Promise<void> {
    const payload = await this.api.network(threshold ?? this.threshold);
    this.threshold = payload.threshold;
    this.edges = payload.edges;
    this.molecules.clear();
    const fresh = new Map<string, QueueItem>();
    for (const node of payload.nodes) {
      if (node.kind === "molecule") {
        this.molecules.set(node.id, node);
        continue;
      }
      fresh.set(node.id, {
        id: node.id,
        smiles: node.smiles,
        depiction: node.depiction,
        score: node.score ?? 0.5,
        decision: node.decision,
        parentIds: node.parent_ids ?? [],
        unsynced: false,
      });
    }
    this.scaffolds = fresh;
    if (this.focusId === null || !this.scaffolds.has(this.focusId)) {
      this.focusId = this.queue()[0]?.id ?? null;
    }
  }

  /** Unlabeled scaffolds, most promising first (score desc, id asc). */
  queue(): QueueItem[] {
    return [...this.scaffolds.values()]
      .filter((s) => s.decision === null)
      .sort((a, b) => b.score - a.score || a.id.localeCompare(b.id));
  }

  allScaffolds(): QueueItem[] {
    return [...this.scaffolds.values()].sort(
      (a, b) => b.score - a.score || a.id.localeCompare(b.id),
    );
  }

  focused(): QueueItem | null {
    return this.focusId ? (this.scaffolds.get(this.focusId) ?? null) : null;
  }

  /** Counts derived from the mirrored server decisions. */
  progress(): { accept: number; uncertain: number; reject: number; unlabeled: number } {
    const out = { accept: 0, uncertain: 0, reject: 0, unlabeled: 0 };
    for (const item of this.scaffolds.values()) {
      if (item.decision === null) {
        out.unlabeled += 1;
      } else {
        out[item.decision] += 1;
      }
    }
    return out;
  }

  moveFocus(step: number): void {
    const items = this.queue();
    if (items.length === 0) {
      this.focusId = null;
      return;
    }
    const index = items.findIndex((s) => s.id === this.focusId);
    const next = index === -1 ? 0 : Math.min(Math.max(index + step, 0), items.length - 1);
    this.focusId = items[next].id;
  }

  /** Label the focused scaffold (or an explicit one): optimistic local
   * update, server confirmation, visible retry state on failure. */
  async label(decision: Decision, scaffoldId?: string): Promise<boolean> {
    const id = scaffoldId ?? this.focusId;
    if (!id) return false;
    const item = this.scaffolds.get(id);
    if (!item) return false;

    const queueBefore = this.queue();
    const position = queueBefore.findIndex((s) => s.id === id);

    item.decision = decision; // optimistic
    item.unsynced = true;
    try {
      const response = await this.api.submitLabel(id, decision);
      item.decision = response.stored.decision; // server-confirmed value
      item.unsynced = false;
      this.counts = response.counts;
    } catch {
      this.pending.push({ scaffoldId: id, decision });
      // The optimistic value stays visible but flagged unsynced.
      return false;
    } finally {
      if (this.focusId === id) {
        const queueAfter = this.queue();
        this.focusId =
          queueAfter[Math.min(position, queueAfter.length - 1)]?.id ?? null;
      }
    }
    return true;
  }

  /** Re-submit everything that failed; keeps what still fails. */
  async retryPending(): Promise<number> {
    const work = this.pending;
    this.pending = [];
    let synced = 0;
    for (const entry of work) {
      const ok = await this.label(entry.decision, entry.scaffoldId);
      if (ok) synced += 1;
    }
    return synced;
  }

  unsyncedCount(): number {
    return this.pending.length;
  }
}
