/** HTTP client for the adjudication service. */

import type {
  ApiClient,
  Decision,
  LabelResponse,
  NetworkPayload,
  ScaffoldDetail,
} from "./types.js";

export class HttpApi implements ApiClient {
  constructor(private readonly base: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      throw new Error(`${path}: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  network(threshold?: number): Promise<NetworkPayload> {
    const query =
      threshold === undefined ? "" : `?threshold=${threshold.toFixed(3)}`;
    return this.getJson(`/api/v1/network${query}`);
  }

  scaffold(id: string): Promise<ScaffoldDetail> {
    return this.getJson(`/api/v1/scaffolds/${encodeURIComponent(id)}`);
  }

  async submitLabel(
    scaffoldId: string,
    decision: Decision,
  ): Promise<LabelResponse> {
    const response = await fetch(`${this.base}/api/v1/labels`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ scaffold_id: scaffoldId, decision }),
    });
    if (!response.ok) {
      throw new Error(`label submit failed: HTTP ${response.status}`);
    }
    return (await response.json()) as LabelResponse;
  }

  exportUrl(): string {
    return `${this.base}/api/v1/export`;
  }

  depictionUrl(id: string): string {
    return `${this.base}/api/v1/depict/${encodeURIComponent(id)}`;
  }
}
