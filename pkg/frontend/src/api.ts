export type PosCode = "N" | "V" | "J" | "R";

export const POS_CODES: PosCode[] = ["N", "V", "J", "R"];

export interface KeynessRecord {
  rank: number;
  lemma: string;
  pos: PosCode;
  llr: number;
  o_target: number;
  e_target: number;
  o_contrast: number;
  e_contrast: number;
}

export interface GraphEdge {
  a: string;
  b: string;
  w: number;
}

export interface GraphPayload {
  pos: PosCode;
  nodes: string[];
  edges: GraphEdge[];
  threshold: number;
  max_weight: number;
}

export interface EgoPayload {
  pos: PosCode;
  root: string;
  threshold: number;
  radius: number;
  members: string[];
  edges: GraphEdge[];
  labels: Record<string, number>;
}

export interface ClustersPayload {
  pos: PosCode;
  seed: number;
  iterations: number;
  converged: boolean;
  labels: Record<string, number>;
  clusters: Record<string, string[]>;
}

export interface ComponentEntry {
  id: string;
  label: string;
  gloss: string;
  four_ps: string[];
  member_words: [string, string][];
  source_clusters: string[];
  external_links: string[];
}

export interface ComponentsPayload {
  base_uri: string;
  provenance: {
    run_id: string;
    input_digests: [string, string][];
    parameters: [string, string][];
  };
  components: ComponentEntry[];
}

export interface ActionResult {
  applied: boolean;
  kind: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin typed client over the run service. Every method maps to one
 * route; errors arrive as the server's {"error": {code, message}}
 * envelope and are rethrown as ApiError.
 */
export class ApiClient {
  private fetchFn: FetchLike;

  constructor(
    public readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  keyness(top?: number): Promise<{ records: KeynessRecord[] }> {
    return this.getJson(`/api/keyness${top === undefined ? "" : `?top=${top}`}`);
  }

  graph(pos: PosCode, threshold?: number): Promise<GraphPayload> {
    const query = threshold === undefined ? "" : `?threshold=${threshold}`;
    return this.getJson(`/api/graph/${pos}${query}`);
  }

  ego(
    pos: PosCode,
    root: string,
    opts: { threshold?: number; radius?: number } = {},
  ): Promise<EgoPayload> {
    const params = new URLSearchParams();
    if (opts.threshold !== undefined) params.set("threshold", String(opts.threshold));
    if (opts.radius !== undefined) params.set("radius", String(opts.radius));
    const query = params.toString();
    return this.getJson(
      `/api/ego/${pos}/${encodeURIComponent(root)}${query ? `?${query}` : ""}`);
  }

  clusters(pos: PosCode): Promise<ClustersPayload> {
    return this.getJson(`/api/clusters/${pos}`);
  }

  components(): Promise<ComponentsPayload> {
    return this.getJson("/api/components");
  }

  thresholds(): Promise<{ thresholds: Record<string, number> }> {
    return this.getJson("/api/thresholds");
  }

  runmeta(): Promise<Record<string, unknown>> {
    return this.getJson("/api/runmeta");
  }

  turtleUrl(): string {
    return `${this.baseUrl}/api/export/ontology.ttl`;
  }

  async exportTurtle(): Promise<string> {
    const res = await this.fetchFn(this.turtleUrl());
    if (!res.ok) throw await this.toError(res);
    return res.text();
  }

  /** POST one labeling action; the server journals it before replying. */
  async postAction(kind: string, payload: Record<string, unknown>): Promise<ActionResult> {
    const res = await this.fetchFn(`${this.baseUrl}/api/labels`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ kind, payload }),
    });
    if (!res.ok) throw await this.toError(res);
    return res.json() as Promise<ActionResult>;
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path);
    if (!res.ok) throw await this.toError(res);
    return res.json() as Promise<T>;
  }

  private async toError(res: Response): Promise<ApiError> {
    let code = "http_error";
    let message = `request failed with status ${res.status}`;
    try {
      const body = await res.json();
      if (body && body.error) {
        code = body.error.code ?? code;
        message = body.error.message ?? message;
      }
    } catch {
      // non-JSON error body, keep the generic message
    }
    return new ApiError(res.status, code, message);
  }
}
