/** DOM rendering and event wiring. No ranking or filtering happens here:
 * whatever order the API returns is the order on screen.
 */

import { Meta, monthString, parseMonth } from "./api";
import { Bar, ExplorationState, Explorer, ResultRow } from "./state";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

interface YearBounds {
  minYear: number;
  maxYear: number;
}

export class View {
  private root: HTMLElement;
  private input!: HTMLInputElement;
  private startYear!: HTMLInputElement;
  private endYear!: HTMLInputElement;
  private startMonth!: HTMLInputElement;
  private endMonth!: HTMLInputElement;
  private periodLabel!: HTMLElement;
  private barsEl!: HTMLElement;
  private resultsEl!: HTMLElement;
  private frameWrap!: HTMLElement;
  private banner!: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly explorer: Explorer,
    bounds: YearBounds,
  ) {
    this.root = root;
    this.buildSkeleton(bounds);
    explorer.onChange(() => this.render());
    this.render();
  }

  static boundsFromMeta(meta: Meta): YearBounds {
    const lo = meta.month_min ? parseMonth(meta.month_min).year : 2003;
    const hi = meta.month_max ? parseMonth(meta.month_max).year : 2011;
    return { minYear: lo, maxYear: hi };
  }

  private buildSkeleton(bounds: YearBounds): void {
    const period = this.explorer.state.period;
    const start = parseMonth(period.from);
    const end = parseMonth(period.to);

    this.input = el("input", {
      class: "query-input",
      type: "search",
      placeholder: "tags, e.g. obama election",
    });
    const searchBtn = el("button", { class: "search-btn" }, "Search");
    searchBtn.addEventListener("click", () => void this.explorer.submitQuery(this.input.value));
    this.input.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter") void this.explorer.submitQuery(this.input.value);
    });

    const yearAttrs = (value: number) => ({
      type: "range",
      min: String(bounds.minYear),
      max: String(bounds.maxYear),
      step: "1",
      value: String(value),
    });
    const monthAttrs = (value: number) => ({
      type: "range",
      min: "1",
      max: "12",
      step: "1",
      value: String(value),
    });
    // Dual-handle year slider: two overlaid range inputs.
    this.startYear = el("input", { ...yearAttrs(start.year), class: "year-start" });
    this.endYear = el("input", { ...yearAttrs(end.year), class: "year-end" });
    this.startMonth = el("input", { ...monthAttrs(start.month), class: "month-start" });
    this.endMonth = el("input", { ...monthAttrs(end.month), class: "month-end" });
    for (const slider of [this.startYear, this.endYear, this.startMonth, this.endMonth]) {
      slider.addEventListener("change", () => this.applyPeriod(slider));
      slider.addEventListener("input", () => this.previewPeriod());
    }
    this.periodLabel = el("span", { class: "period-label" });

    this.banner = el("div", { class: "banner hidden" });
    this.barsEl = el("div", { class: "bars" });
    this.resultsEl = el("div", { class: "results" });
    this.frameWrap = el("div", { class: "frame-wrap" });

    this.root.append(
      el(
        "header",
        { class: "topbar" },
        el("h1", {}, "tempas"),
        el("div", { class: "search-row" }, this.input, searchBtn),
        el(
          "div",
          { class: "sliders" },
          el("label", {}, "years", el("div", { class: "year-range" }, this.startYear, this.endYear)),
          el("label", {}, "start month", this.startMonth),
          el("label", {}, "end month", this.endMonth),
          this.periodLabel,
        ),
      ),
      this.banner,
      this.barsEl,
      el("main", { class: "columns" }, this.resultsEl, this.frameWrap),
    );
  }

  private sliderPeriod(): { from: string; to: string } {
    return {
      from: monthString(Number(this.startYear.value), Number(this.startMonth.value)),
      to: monthString(Number(this.endYear.value), Number(this.endMonth.value)),
    };
  }

  /** Keep start <= end by dragging the opposite handle along. */
  private clampSliders(moved: HTMLInputElement): void {
    const sy = Number(this.startYear.value);
    const ey = Number(this.endYear.value);
    const sm = Number(this.startMonth.value);
    const em = Number(this.endMonth.value);
    if (sy * 12 + sm > ey * 12 + em) {
      const movedStart = moved === this.startYear || moved === this.startMonth;
      if (movedStart) {
        this.endYear.value = this.startYear.value;
        this.endMonth.value = this.startMonth.value;
      } else {
        this.startYear.value = this.endYear.value;
        this.startMonth.value = this.endMonth.value;
      }
    }
  }

  private previewPeriod(): void {
    const p = this.sliderPeriod();
    this.periodLabel.textContent = `${p.from} .. ${p.to}`;
  }

  private applyPeriod(moved: HTMLInputElement): void {
    this.clampSliders(moved);
    this.previewPeriod();
    void this.explorer.setPeriod(this.sliderPeriod());
  }

  private render(): void {
    const state = this.explorer.state;
    this.previewPeriod();
    this.renderBanner(state);
    this.renderBars(state);
    this.renderResults(state);
    this.renderFrame(state);
  }

  private renderBanner(state: ExplorationState): void {
    this.banner.replaceChildren();
    if (!state.error) {
      this.banner.classList.add("hidden");
      return;
    }
    this.banner.classList.remove("hidden");
    const dismiss = el("button", { class: "dismiss" }, "dismiss");
    dismiss.addEventListener("click", () => this.explorer.dismissError());
    this.banner.append(el("span", {}, state.error), dismiss);
  }

  private renderBars(state: ExplorationState): void {
    this.barsEl.replaceChildren();
    state.bars.forEach((bar, index) => this.barsEl.append(this.renderBar(bar, index)));
  }

  private renderBar(bar: Bar, index: number): HTMLElement {
    const label =
      bar.prefix.length === 0 ? "tags in period" : `+ ${bar.prefix.join(" ")}`;
    const chips = bar.tags.map((t) => {
      const chip = el(
        "button",
        { class: "chip", "data-bar-index": String(index), "data-tag": t.tag },
        `${t.tag} `,
        el("span", { class: "count" }, String(t.score)),
      );
      chip.addEventListener("click", () => void this.explorer.selectSuggestion(index, t.tag));
      return chip;
    });
    return el(
      "div",
      { class: index === 0 ? "bar explore-bar" : "bar suggestion-bar", "data-bar-index": String(index) },
      el("span", { class: "bar-label" }, label),
      el("div", { class: "chips" }, ...chips),
    );
  }

  private renderResults(state: ExplorationState): void {
    this.resultsEl.replaceChildren();
    if (state.results === null) {
      this.resultsEl.append(
        el("p", { class: "hint" }, "Pick tags above or search to see ranked websites."),
      );
      return;
    }
    if (state.results.length === 0) {
      this.resultsEl.append(el("p", { class: "hint" }, "No websites match this query and period."));
      return;
    }
    for (const row of state.results) this.resultsEl.append(this.renderRow(row));
  }

  private renderRow(row: ResultRow): HTMLElement {
    const title = el(
      "a",
      { class: "result-title", href: "#", "data-url": row.site.url },
      row.site.title.length > 0 ? row.site.title.join(" ") : row.site.url,
    );
    title.addEventListener("click", (ev) => {
      ev.preventDefault();
      this.explorer.openTopVersion(row);
    });
    const item = el(
      "article",
      { class: "result", "data-url": row.site.url },
      title,
      el("div", { class: "result-url" }, `${row.site.url} (score ${row.site.score})`),
    );

    if (row.failed) {
      const retry = el("button", { class: "retry" }, "retry versions");
      retry.addEventListener("click", () => void this.explorer.retryVersions(row));
      item.append(el("div", { class: "versions-error" }, "versions unavailable ", retry));
      return item;
    }
    if (row.versions === null) {
      item.append(el("div", { class: "versions-loading" }, "loading versions…"));
      return item;
    }
    if (row.versions.length === 0) {
      return item;
    }

    const [top, ...rest] = row.versions;
    const topLink = el(
      "a",
      { class: "version-top", href: "#", "data-timestamp": String(top.timestamp) },
      top.iso_time.slice(0, 10),
    );
    topLink.addEventListener("click", (ev) => {
      ev.preventDefault();
      this.explorer.openVersion(row.site.url, top);
    });
    item.append(
      el(
        "div",
        { class: "top-version" },
        topLink,
        el("span", { class: "version-tags" }, ` ${top.tags.join(" ")}`),
      ),
    );
    if (rest.length > 0) {
      const dates = rest.map((v) => {
        const link = el(
          "a",
          {
            class: "version-date",
            href: "#",
            title: v.tags.join(" "), // tags on hover
            "data-timestamp": String(v.timestamp),
          },
          v.iso_time.slice(0, 10),
        );
        link.addEventListener("click", (ev) => {
          ev.preventDefault();
          this.explorer.openVersion(row.site.url, v);
        });
        return link;
      });
      item.append(el("div", { class: "more-versions" }, ...dates));
    }
    return item;
  }

  private renderFrame(state: ExplorationState): void {
    this.frameWrap.replaceChildren();
    if (!state.frameUrl) {
      this.frameWrap.append(
        el(
          "div",
          { class: "frame-placeholder" },
          "Archived pages open here. Click a result title or a version date.",
        ),
      );
      return;
    }
    this.frameWrap.append(
      el("iframe", { class: "archive-frame", src: state.frameUrl }),
      el(
        "div",
        { class: "frame-link" },
        "archive link: ",
        el("a", { href: state.frameUrl, target: "_blank", rel: "noopener" }, state.frameUrl),
      ),
    );
  }
}
