/** Scripted service fixture.
 *
 * Implements the client interface over an in-memory stand-in for the
 * service's files: the candidate payload plus an append-only label log.
 * `restart()` hands back a fresh client over the same backing log —
 * the moral equivalent of killing and restarting the real process.
 */

import type {
  ApiClient,
  Decision,
  LabelResponse,
  NetworkPayload,
  ScaffoldDetail,
} from "./types.js";

export interface FixtureScaffold {
  id: string;
  smiles: string;
  score: number;
  parentIds: string[];
}

export interface FixtureMolecule {
  id: string;
  smiles: string;
  score: number;
  scaffoldIds: string[];
}

export interface FixtureEdge {
  a: string;
  b: string;
  dice_distance: number;
}

export class FixtureBackend {
  readonly labelLog: Array<{ scaffoldId: string; decision: Decision }> = [];

  constructor(
    readonly scaffolds: FixtureScaffold[],
    readonly molecules: FixtureMolecule[],
    readonly similarityEdges: FixtureEdge[],
  ) {}

  effectiveLabels(): Map<string, Decision> {
    const out = new Map<string, Decision>();
    for (const entry of this.labelLog) {
      out.set(entry.scaffoldId, entry.decision);
    }
    return out;
  }

  counts(): Record<string, number> {
    const labels = this.effectiveLabels();
    const out: Record<string, number> = {
      accept: 0,
      uncertain: 0,
      reject: 0,
      unlabeled: this.scaffolds.length - labels.size,
    };
    for (const decision of labels.values()) {
      out[decision] += 1;
    }
    return out;
  }

  restart(options: { failSubmissions?: boolean } = {}): FixtureApi {
    return new FixtureApi(this, options.failSubmissions ?? false);
  }
}

export class FixtureApi implements ApiClient {
  constructor(
    private readonly backend: FixtureBackend,
    public failSubmissions = false,
  ) {}

  async network(threshold = 0.65): Promise<NetworkPayload> {
    const labels = this.backend.effectiveLabels();
    const nodes: NetworkPayload["nodes"] = [];
    for (const s of this.backend.scaffolds) {
      nodes.push({
        id: s.id,
        kind: "scaffold",
        smiles: s.smiles,
        depiction: `/api/v1/depict/${s.id}`,
        decision: labels.get(s.id) ?? null,
        score: s.score,
        parent_ids: s.parentIds,
      });
    }
    for (const m of this.backend.molecules) {
      let inherited: Decision | null = null;
      for (const sid of m.scaffoldIds) {
        const decided = labels.get(sid);
        if (decided) inherited = decided;
      }
      nodes.push({
        id: m.id,
        kind: "molecule",
        smiles: m.smiles,
        depiction: `/api/v1/depict/${m.id}`,
        decision: inherited,
        score: m.score,
      });
    }
    const edges: NetworkPayload["edges"] = [];
    for (const e of this.backend.similarityEdges) {
      if (e.dice_distance < threshold) {
        edges.push({ a: e.a, b: e.b, kind: "similarity",
                     dice_distance: e.dice_distance });
      }
    }
    for (const m of this.backend.molecules) {
      for (const sid of m.scaffoldIds) {
        edges.push({ a: m.id, b: sid, kind: "derivation" });
      }
    }
    return { threshold, nodes, edges };
  }

  async scaffold(id: string): Promise<ScaffoldDetail> {
    const s = this.backend.scaffolds.find((x) => x.id === id);
    if (!s) throw new Error(`unknown scaffold ${id}`);
    const labels = this.backend.effectiveLabels();
    return {
      id: s.id,
      smiles: s.smiles,
      parent_ids: s.parentIds,
      decision: labels.get(s.id) ?? null,
      score: s.score,
      depiction: `/api/v1/depict/${s.id}`,
      parents: this.backend.molecules
        .filter((m) => m.scaffoldIds.includes(s.id))
        .map((m) => ({
          id: m.id,
          smiles: m.smiles,
          classifier_score: m.score,
          descriptors: {},
        })),
    };
  }

  async submitLabel(
    scaffoldId: string,
    decision: Decision,
  ): Promise<LabelResponse> {
    if (this.failSubmissions) {
      throw new Error("network unreachable (scripted failure)");
    }
    if (!this.backend.scaffolds.some((s) => s.id === scaffoldId)) {
      throw new Error(`unknown scaffold ${scaffoldId}`);
    }
    this.backend.labelLog.push({ scaffoldId, decision });
    return {
      stored: {
        scaffold_id: scaffoldId,
        decision,
        annotator: "default",
        timestamp: "fixture",
        note: "",
      },
      counts: this.backend.counts(),
    };
  }

  exportUrl(): string {
    return "/api/v1/export";
  }

  depictionUrl(id: string): string {
    return `/api/v1/depict/${id}`;
  }
}

export function demoBackend(): FixtureBackend {
  const scaffolds: FixtureScaffold[] = [
    { id: "scaf-1", smiles: "C1CC[SH+]C1", score: 0.91,
      parentIds: ["mol-1", "mol-2"] },
    { id: "scaf-2", smiles: "C1CC[SH+]CC1", score: 0.74,
      parentIds: ["mol-3"] },
    { id: "scaf-3", smiles: "c1ccc2ccccc2c1", score: 0.42,
      parentIds: ["mol-2"] },
  ];
  const molecules: FixtureMolecule[] = [
    { id: "mol-1", smiles: "C[S+]1CCCC1", score: 0.93,
      scaffoldIds: ["scaf-1"] },
    { id: "mol-2", smiles: "c1ccc2ccccc2c1CC[S+]1CCCC1", score: 0.88,
      scaffoldIds: ["scaf-1", "scaf-3"] },
    { id: "mol-3", smiles: "CC[S+]1CCCCC1", score: 0.74,
      scaffoldIds: ["scaf-2"] },
  ];
  const edges: FixtureEdge[] = [
    { a: "scaf-1", b: "scaf-2", dice_distance: 0.31 },
    { a: "scaf-1", b: "scaf-3", dice_distance: 0.82 },
  ];
  return new FixtureBackend(scaffolds, molecules, edges);
}
