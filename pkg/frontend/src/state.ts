/** Exploration state and the controller driving it.
 *
 * Bar i always holds the ranked tags for the first i query tags and the
 * current period, so bar 0 is the tag overview of the period itself and
 * there are baseQuery.length + 1 bars. Selecting a tag in bar i keeps
 * the first i tags, appends the selection, discards deeper bars and
 * refreshes everything below. Results come in two steps: the ranked
 * site list first, then versions per site, top-ranked site first.
 *
 * Every refresh bumps a generation token; responses from a superseded
 * refresh are dropped, so a slow old query can never overwrite a newer
 * one.
 */

import {
  ApiClient,
  Period,
  SiteResult,
  TagScore,
  VersionResult,
} from "./api";

export interface Bar {
  prefix: string[];
  tags: TagScore[];
}

export interface ResultRow {
  site: SiteResult;
  versions: VersionResult[] | null; // null while loading
  failed: boolean;
}

export interface ExplorationState {
  baseQuery: string[];
  period: Period;
  bars: Bar[];
  results: ResultRow[] | null; // null for an empty query (explore mode)
  frameUrl: string | null;
  selectedSite: string | null;
  selectedVersion: number | null;
  error: string | null;
}

export function parseQueryText(text: string): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const raw of text.split(/[\s,]+/)) {
    const tag = raw.trim().toLowerCase();
    if (tag && !seen.has(tag)) {
      seen.add(tag);
      out.push(tag);
    }
  }
  return out;
}

export class Explorer {
  state: ExplorationState;
  private generation = 0;
  private pending = 0;
  private idleResolvers: (() => void)[] = [];
  private listeners: (() => void)[] = [];

  constructor(
    private readonly api: ApiClient,
    initialPeriod: Period,
  ) {
    this.state = {
      baseQuery: [],
      period: initialPeriod,
      bars: [],
      results: null,
      frameUrl: null,
      selectedSite: null,
      selectedVersion: null,
      error: null,
    };
  }

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  /** Resolves once all in-flight fetches have settled. */
  idle(): Promise<void> {
    if (this.pending === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  private track<T>(promise: Promise<T>): Promise<T> {
    this.pending += 1;
    const release = () => {
      this.pending -= 1;
      if (this.pending === 0) {
        const resolvers = this.idleResolvers;
        this.idleResolvers = [];
        for (const r of resolvers) r();
      }
    };
    promise.then(release, release);
    return promise;
  }

  dismissError(): void {
    this.state.error = null;
    this.notify();
  }

  submitQuery(text: string): Promise<void> {
    return this.refresh(parseQueryText(text), this.state.period);
  }

  selectSuggestion(barIndex: number, tag: string): Promise<void> {
    const bar = this.state.bars[barIndex];
    if (!bar || !bar.tags.some((t) => t.tag === tag)) return Promise.resolve();
    const query = [...this.state.baseQuery.slice(0, barIndex), tag];
    // Re-selecting a tag that is already in the query at this level
    // would rebuild the identical query; skip it.
    if (
      query.length === this.state.baseQuery.length &&
      query.every((t, i) => t === this.state.baseQuery[i])
    ) {
      return Promise.resolve();
    }
    return this.refresh(query, this.state.period);
  }

  setPeriod(period: Period): Promise<void> {
    return this.refresh(this.state.baseQuery, period);
  }

  openVersion(site: string, version: VersionResult): void {
    this.state.frameUrl = version.wayback_url;
    this.state.selectedSite = site;
    this.state.selectedVersion = version.timestamp;
    this.notify();
  }

  /** Clicking a result's title opens its top-ranked version. */
  openTopVersion(row: ResultRow): void {
    if (row.versions && row.versions.length > 0) {
      this.openVersion(row.site.url, row.versions[0]);
    }
  }

  retryVersions(row: ResultRow): Promise<void> {
    const generation = this.generation;
    row.failed = false;
    row.versions = null;
    this.notify();
    return this.track(this.fetchVersionsFor(row, this.state.baseQuery, generation));
  }

  private async fetchVersionsFor(
    row: ResultRow,
    query: string[],
    generation: number,
  ): Promise<void> {
    try {
      const versions = await this.api.versions(row.site.url, query, this.state.period);
      if (generation !== this.generation) return; // stale
      row.versions = versions;
    } catch {
      if (generation !== this.generation) return;
      row.failed = true;
    }
    this.notify();
  }

  private refresh(query: string[], period: Period): Promise<void> {
    const generation = ++this.generation;
    return this.track(this.doRefresh(query, period, generation));
  }

  private async doRefresh(query: string[], period: Period, generation: number): Promise<void> {
    const prefixes: string[][] = [];
    for (let i = 0; i <= query.length; i++) prefixes.push(query.slice(0, i));
    try {
      const barTags = await Promise.all(prefixes.map((p) => this.api.tags(p, period)));
      if (generation !== this.generation) return; // superseded meanwhile
      const sites = query.length > 0 ? await this.api.sites(query, period) : null;
      if (generation !== this.generation) return;

      this.state.baseQuery = query;
      this.state.period = period;
      this.state.bars = prefixes.map((prefix, i) => ({ prefix, tags: barTags[i] }));
      this.state.results = sites
        ? sites.map((site) => ({ site, versions: null, failed: false }))
        : null;
      this.state.error = null;
      this.notify();

      // Step two: versions per visible result, top-ranked site first.
      if (this.state.results) {
        for (const row of this.state.results) {
          await this.fetchVersionsFor(row, query, generation);
          if (generation !== this.generation) return;
        }
      }
    } catch (err) {
      if (generation !== this.generation) return;
      this.state.error = err instanceof Error ? err.message : String(err);
      this.notify(); // banner only; previous bars and results stay
    }
  }
}
