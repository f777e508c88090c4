/** Shared payload types mirroring the /api/v1 schemas, plus the client
 * interface the views depend on (the HTTP client and the test fixture
 * both implement it). */

export type Decision = "accept" | "uncertain" | "reject";

export const DECISIONS: readonly Decision[] = ["accept", "uncertain", "reject"];

export interface NetworkNode {
  id: string;
  kind: "scaffold" | "molecule";
  smiles: string;
  depiction: string;
  decision: Decision | null;
  score: number | null;
  parent_ids?: string[];
  descriptors?: Record<string, number>;
}

export interface NetworkEdge {
  a: string;
  b: string;
  kind: "similarity" | "derivation";
  dice_distance?: number;
}

export interface NetworkPayload {
  threshold: number;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export interface ScaffoldDetail {
  id: string;
  smiles: string;
  parent_ids: string[];
  decision: Decision | null;
  score: number;
  depiction: string;
  parents: Array<{
    id: string;
    smiles: string;
    classifier_score: number;
    descriptors: Record<string, number>;
  }>;
}

export interface LabelResponse {
  stored: {
    scaffold_id: string;
    decision: Decision;
    annotator: string;
    timestamp: string;
    note: string;
  };
  counts: Record<string, number>;
}

export interface ApiClient {
  network(threshold?: number): Promise<NetworkPayload>;
  scaffold(id: string): Promise<ScaffoldDetail>;
  submitLabel(scaffoldId: string, decision: Decision): Promise<LabelResponse>;
  exportUrl(): string;
  depictionUrl(id: string): string;
}
