/** Bootstrap: read corpus bounds, set the default period, mount the app. */

import { ApiClient, Meta } from "./api";
import { Explorer } from "./state";
import { View } from "./ui";

declare global {
  interface Window {
    TEMPAS_API_BASE?: string;
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const api = new ApiClient(window.TEMPAS_API_BASE ?? "");

  let meta: Meta;
  try {
    meta = await api.meta();
  } catch {
    meta = { record_count: 0, tag_count: 0, url_count: 0, month_min: null, month_max: null };
  }
  const from = meta.month_min ?? "2003-01";
  const to = meta.month_max ?? "2011-03";

  const explorer = new Explorer(api, { from, to });
  new View(root, explorer, View.boundsFromMeta(meta));
  void explorer.submitQuery(""); // initial explore bar for the period
}

void boot();
