/** Scripted session against the recorded API: submit "obama", refine with
 * "election", open the first result's second version. The displayed bars
 * and result list must equal fresh API responses, and the archive frame
 * must load exactly the wayback URL the API returned.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, SiteResult, TagScore, VersionResult } from "../src/api";
import { Explorer } from "../src/state";
import { View } from "../src/ui";
import { fixtureBody, recordedFetch } from "./helpers";

const PERIOD = { from: "2005-01", to: "2008-12" };

function tagsKey(tags: string): string {
  return `/api/tags?${new URLSearchParams([["tags", tags], ["from", PERIOD.from], ["to", PERIOD.to]])}`;
}

function sitesKey(tags: string): string {
  return `/api/sites?${new URLSearchParams([["tags", tags], ["from", PERIOD.from], ["to", PERIOD.to]])}`;
}

function versionsKey(url: string, tags: string): string {
  return `/api/versions?${new URLSearchParams([["url", url], ["tags", tags], ["from", PERIOD.from], ["to", PERIOD.to]])}`;
}

function barChips(root: HTMLElement, barIndex: number): { tag: string; score: number }[] {
  const bar = root.querySelector(`.bar[data-bar-index="${barIndex}"]`);
  if (!bar) throw new Error(`no bar ${barIndex}`);
  return [...bar.querySelectorAll(".chip")].map((chip) => ({
    tag: chip.getAttribute("data-tag") ?? "",
    score: Number(chip.querySelector(".count")?.textContent),
  }));
}

describe("scripted exploration session", () => {
  let root: HTMLElement;
  let explorer: Explorer;

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app") as HTMLElement;
    const api = new ApiClient("", recordedFetch());
    explorer = new Explorer(api, { ...PERIOD });
    new View(root, explorer, { minYear: 2005, maxYear: 2008 });
  });

  it("replays submit, refine, and version click against the recording", async () => {
    // Submit "obama" through the real input and button.
    const input = root.querySelector<HTMLInputElement>(".query-input")!;
    input.value = "obama";
    root.querySelector<HTMLButtonElement>(".search-btn")!.click();
    await explorer.idle();

    expect(explorer.state.bars.length).toBe(2); // explore bar + one suggestion bar
    const barOne = fixtureBody<TagScore[]>(tagsKey("obama"));
    expect(barChips(root, 1)).toEqual(barOne.map((t) => ({ tag: t.tag, score: t.score })));
    expect(barOne[0].tag).toBe("election"); // the expected top suggestion

    // Select "election" in the first suggestion bar.
    root
      .querySelector<HTMLButtonElement>('.chip[data-bar-index="1"][data-tag="election"]')!
      .click();
    await explorer.idle();

    // Two suggestion bars, each equal to a fresh API call for its prefix.
    const suggestionBars = root.querySelectorAll(".suggestion-bar");
    expect(suggestionBars.length).toBe(2);
    expect(barChips(root, 1)).toEqual(
      fixtureBody<TagScore[]>(tagsKey("obama")).map((t) => ({ tag: t.tag, score: t.score })),
    );
    expect(barChips(root, 2)).toEqual(
      fixtureBody<TagScore[]>(tagsKey("obama,election")).map((t) => ({
        tag: t.tag,
        score: t.score,
      })),
    );
    // The explore bar also stays consistent with its own fresh call.
    expect(barChips(root, 0)).toEqual(
      fixtureBody<TagScore[]>(tagsKey("")).map((t) => ({ tag: t.tag, score: t.score })),
    );

    // Result list shows exactly the API's sites in API order.
    const sites = fixtureBody<SiteResult[]>(sitesKey("obama,election"));
    const shownUrls = [...root.querySelectorAll(".result")].map((el) =>
      el.getAttribute("data-url"),
    );
    expect(shownUrls).toEqual(sites.map((s) => s.url));

    // Click the first result's second version date.
    const firstResult = root.querySelector(`.result[data-url="${sites[0].url}"]`)!;
    const versions = fixtureBody<VersionResult[]>(versionsKey(sites[0].url, "obama,election"));
    const secondDate = firstResult.querySelector<HTMLAnchorElement>(
      `.version-date[data-timestamp="${versions[1].timestamp}"]`,
    );
    expect(secondDate).not.toBeNull();
    secondDate!.click();

    const frame = root.querySelector<HTMLIFrameElement>(".archive-frame")!;
    expect(frame.src).toBe(versions[1].wayback_url);
    expect(explorer.state.selectedSite).toBe(sites[0].url);
    expect(explorer.state.selectedVersion).toBe(versions[1].timestamp);
  });

  it("renders the top version inline and opens it from the title", async () => {
    const input = root.querySelector<HTMLInputElement>(".query-input")!;
    input.value = "obama election";
    root.querySelector<HTMLButtonElement>(".search-btn")!.click();
    await explorer.idle();

    const sites = fixtureBody<SiteResult[]>(sitesKey("obama,election"));
    const versions = fixtureBody<VersionResult[]>(versionsKey(sites[0].url, "obama,election"));
    const firstResult = root.querySelector(`.result[data-url="${sites[0].url}"]`)!;

    // Title text is the joined title tags from the API.
    expect(firstResult.querySelector(".result-title")!.textContent).toBe(
      sites[0].title.join(" "),
    );
    // Top version shown as date plus its tags inline.
    expect(firstResult.querySelector(".top-version")!.textContent).toContain(
      versions[0].iso_time.slice(0, 10),
    );
    for (const tag of versions[0].tags) {
      expect(firstResult.querySelector(".version-tags")!.textContent).toContain(tag);
    }
    // Remaining versions are dates with the tags in the hover tooltip.
    const dates = firstResult.querySelectorAll(".version-date");
    expect(dates.length).toBe(versions.length - 1);
    expect(dates[0].getAttribute("title")).toBe(versions[1].tags.join(" "));

    firstResult.querySelector<HTMLAnchorElement>(".result-title")!.click();
    const frame = root.querySelector<HTMLIFrameElement>(".archive-frame")!;
    expect(frame.src).toBe(versions[0].wayback_url);
  });

  it("shows only the explore bar for an empty query", async () => {
    await explorer.submitQuery("");
    expect(explorer.state.bars.length).toBe(1);
    expect(root.querySelectorAll(".suggestion-bar").length).toBe(0);
    expect(explorer.state.results).toBeNull();
    expect(root.querySelector(".frame-placeholder")).not.toBeNull();
  });
});

describe("period sliders", () => {
  it("prevents inverted periods by dragging the opposite handle along", async () => {
    document.body.innerHTML = '<div id="app"></div>';
    const root = document.getElementById("app") as HTMLElement;
    const anyEmpty = () =>
      Promise.resolve({ ok: true, status: 200, json: () => Promise.resolve([]) });
    const explorer = new Explorer(new ApiClient("", anyEmpty), { ...PERIOD });
    new View(root, explorer, { minYear: 2005, maxYear: 2008 });

    // Drag the start year past the end year.
    const startYear = root.querySelector<HTMLInputElement>(".year-start")!;
    const endYear = root.querySelector<HTMLInputElement>(".year-end")!;
    const startMonth = root.querySelector<HTMLInputElement>(".month-start")!;
    const endMonth = root.querySelector<HTMLInputElement>(".month-end")!;
    endYear.value = "2006";
    endMonth.value = "6";
    startYear.value = "2008";
    startMonth.value = "9";
    startYear.dispatchEvent(new Event("change"));
    await explorer.idle();

    expect(explorer.state.period.from <= explorer.state.period.to).toBe(true);
    expect(explorer.state.period.from).toBe("2008-09");
    expect(explorer.state.period.to).toBe("2008-09");
  });
});
