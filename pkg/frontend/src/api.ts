/** Typed client for the /api/* endpoints. */

export interface Period {
  from: string; // YYYY-MM
  to: string;
}

export interface TagScore {
  tag: string;
  score: number;
}

export interface SiteResult {
  url: string;
  score: number;
  title: string[];
}

export interface VersionResult {
  timestamp: number;
  iso_time: string;
  tags: string[];
  overlap: number;
  wayback_url: string;
}

export interface Meta {
  record_count: number;
  tag_count: number;
  url_count: number;
  month_min: string | null;
  month_max: string | null;
}

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/** Query strings use a fixed parameter order so requests are reproducible. */
function qs(pairs: [string, string][]): string {
  return new URLSearchParams(pairs).toString();
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path);
    const body = (await resp.json()) as Record<string, unknown>;
    if (!resp.ok) {
      const code = typeof body?.code === "string" ? body.code : "internal";
      const message = typeof body?.message === "string" ? body.message : `HTTP ${resp.status}`;
      throw new ApiError(code, message, resp.status);
    }
    return body as T;
  }

  meta(): Promise<Meta> {
    return this.get<Meta>("/api/meta");
  }

  tags(tags: string[], period: Period): Promise<TagScore[]> {
    const query = qs([
      ["tags", tags.join(",")],
      ["from", period.from],
      ["to", period.to],
    ]);
    return this.get<TagScore[]>(`/api/tags?${query}`);
  }

  sites(tags: string[], period: Period): Promise<SiteResult[]> {
    const query = qs([
      ["tags", tags.join(",")],
      ["from", period.from],
      ["to", period.to],
    ]);
    return this.get<SiteResult[]>(`/api/sites?${query}`);
  }

  versions(url: string, tags: string[], period: Period): Promise<VersionResult[]> {
    const query = qs([
      ["url", url],
      ["tags", tags.join(",")],
      ["from", period.from],
      ["to", period.to],
    ]);
    return this.get<VersionResult[]>(`/api/versions?${query}`);
  }
}

export function monthString(year: number, month: number): string {
  return `${String(year).padStart(4, "0")}-${String(month).padStart(2, "0")}`;
}

export function parseMonth(text: string): { year: number; month: number } {
  const m = /^(\d{4})-(\d{2})$/.exec(text);
  if (!m) throw new Error(`not a YYYY-MM month: ${text}`);
  return { year: Number(m[1]), month: Number(m[2]) };
}
