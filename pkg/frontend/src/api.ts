/* Typed client for the gateway HTTP API.
 *
 * Every non-2xx response carries a {code, message} JSON body; that becomes
 * a GatewayError so callers can branch on the stable code string instead
 * of status numbers.
 */

export class GatewayError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface SourceStatus {
  state: "pending" | "complete" | "error";
  count: number;
  reason: string | null;
}

export interface SessionInfo {
  id: string;
  profile: string;
  source_order: string[];
  sources: Record<string, SourceStatus>;
  total: number;
  created_at: number;
  expires_at: number;
}

export interface ShortRecord {
  recno: number;
  source: string;
  title: string | null;
  object_names: string[];
  date: string | null;
  format_hint: string;
}

export interface RecordPage {
  total: number;
  records: ShortRecord[];
}

export interface AttributeInfo {
  name: string;
  kind: string;
  relations: string[];
}

export interface ProfileInfo {
  id: string;
  attributes: AttributeInfo[];
}

export interface GatewayIndex {
  service: string;
  profiles: string[];
  sources: string[];
}

export interface HeaderInfo {
  naxis1: number;
  naxis2: number;
  bitpix: number;
  cards: { keyword: string; value: boolean | number | string | null; comment: string | null }[];
}

export interface HistogramData {
  nbins: number;
  lo: number;
  hi: number;
  counts: number[];
  out_of_range: number;
}

export interface ClusterResult {
  blocks: string[][];
}

export interface ClusterParams {
  w_link?: number;
  w_kw?: number;
  min_similarity?: number;
  max_block?: number;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function raiseForStatus(resp: Response): Promise<void> {
  if (resp.ok) return;
  let code = "http-error";
  let message = `${resp.status} ${resp.statusText}`;
  try {
    const body = await resp.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
  } catch {
    // not a gateway-shaped error; keep the status line
  }
  throw new GatewayError(resp.status, code, message);
}

export class GatewayClient {
  constructor(
    readonly base: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.base = base.replace(/\/+$/, "");
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.base + path);
    await raiseForStatus(resp);
    return (await resp.json()) as T;
  }

  root(): Promise<GatewayIndex> {
    return this.getJson("/");
  }

  async profiles(): Promise<ProfileInfo[]> {
    const body = await this.getJson<{ profiles: ProfileInfo[] }>("/profiles");
    return body.profiles;
  }

  async openSession(gasl: string, sources?: string[]): Promise<SessionInfo> {
    const query = sources && sources.length ? `?sources=${sources.join(",")}` : "";
    const resp = await this.fetchFn(`${this.base}/sessions${query}`, {
      method: "POST",
      headers: { "content-type": "application/xml" },
      body: gasl,
    });
    await raiseForStatus(resp);
    return (await resp.json()) as SessionInfo;
  }

  session(sid: string): Promise<SessionInfo> {
    return this.getJson(`/sessions/${sid}`);
  }

  records(sid: string, start = 0, count = 25): Promise<RecordPage> {
    return this.getJson(`/sessions/${sid}/records?start=${start}&count=${count}`);
  }

  async recordAml(sid: string, recno: number): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/sessions/${sid}/records/${recno}?form=aml`);
    await raiseForStatus(resp);
    return resp.text();
  }

  async recordHtml(sid: string, recno: number): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/sessions/${sid}/records/${recno}?form=html`);
    await raiseForStatus(resp);
    return resp.text();
  }

  async closeSession(sid: string): Promise<void> {
    const resp = await this.fetchFn(`${this.base}/sessions/${sid}`, { method: "DELETE" });
    await raiseForStatus(resp);
  }

  header(datasetId: string): Promise<HeaderInfo> {
    return this.getJson(`/data/${datasetId}/header`);
  }

  histogram(
    datasetId: string,
    opts: { bins?: number; lo?: number; hi?: number } = {},
  ): Promise<HistogramData> {
    const params = new URLSearchParams();
    if (opts.bins !== undefined) params.set("bins", String(opts.bins));
    if (opts.lo !== undefined) params.set("lo", String(opts.lo));
    if (opts.hi !== undefined) params.set("hi", String(opts.hi));
    const qs = params.toString();
    return this.getJson(`/data/${datasetId}/histogram${qs ? "?" + qs : ""}`);
  }

  thumbnailUrl(datasetId: string, stride: number): string {
    return `${this.base}/data/${datasetId}/thumbnail?stride=${stride}`;
  }

  cutoutUrl(datasetId: string, bbox: string): string {
    return `${this.base}/data/${datasetId}/cutout?bbox=${bbox}`;
  }

  async fetchBinary(url: string): Promise<ArrayBuffer> {
    const resp = await this.fetchFn(url);
    await raiseForStatus(resp);
    return resp.arrayBuffer();
  }

  thumbnail(datasetId: string, stride: number): Promise<ArrayBuffer> {
    return this.fetchBinary(this.thumbnailUrl(datasetId, stride));
  }

  cutout(datasetId: string, bbox: string): Promise<ArrayBuffer> {
    return this.fetchBinary(this.cutoutUrl(datasetId, bbox));
  }

  async clusterSession(
    sid: string,
    recnos: number[] | null = null,
    params: ClusterParams = {},
  ): Promise<ClusterResult> {
    const body: Record<string, unknown> = { session: sid, ...params };
    if (recnos !== null) body.records = recnos;
    return this.postJson("/cluster", body);
  }

  async clusterDocuments(documents: string[], params: ClusterParams = {}): Promise<ClusterResult> {
    return this.postJson("/cluster", { documents, ...params });
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    await raiseForStatus(resp);
    return (await resp.json()) as T;
  }
}

/** Resolve a record's data-href ("/data/{id}" or absolute) to a dataset id. */
export function datasetIdFromHref(href: string): string | null {
  const m = href.match(/\/data\/([^/?#]+)/);
  return m ? m[1] : null;
}
