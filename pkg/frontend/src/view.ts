/* Small pure view helpers for the session and histogram panels; the page
 * assembles these strings and draws the numbers, keeping no truth of its
 * own beyond the latest gateway responses.
 */

import { HistogramData, SessionInfo, ShortRecord } from "./api.js";

/** One status badge per source, in dispatch order. */
export function statusBadges(info: SessionInfo): { source: string; label: string; state: string }[] {
  return info.source_order.map((source) => {
    const st = info.sources[source];
    let label: string;
    if (st.state === "complete") label = `${source}: ${st.count} records`;
    else if (st.state === "error") label = `${source}: error (${st.reason ?? "unknown"})`;
    else label = `${source}: searching`;
    return { source, label, state: st.state };
  });
}

export function shortRecordLine(r: ShortRecord): string {
  const names = r.object_names.length ? ` (${r.object_names.join(", ")})` : "";
  const date = r.date !== null ? ` ${r.date}` : "";
  return `${r.title ?? "(untitled)"}${names}${date}`;
}

export interface HistogramBar {
  left: number;
  right: number;
  count: number;
  /** Height fraction relative to the fullest bin; 0 when all bins are empty. */
  frac: number;
}

export function histogramBars(h: HistogramData): HistogramBar[] {
  const width = (h.hi - h.lo) / h.nbins;
  const peak = Math.max(0, ...h.counts);
  return h.counts.map((count, i) => ({
    left: h.lo + i * width,
    right: h.lo + (i + 1) * width,
    count,
    frac: peak > 0 ? count / peak : 0,
  }));
}
