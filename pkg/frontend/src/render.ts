/**
 * Figure builders: CSV text in, SVG document out.
 */

import { readDist, readResults, type ResultRow } from "./csv.js";
import { bestKey, bestS, groupMeans, type GroupMean } from "./aggregate.js";
import { lineChart, type Series } from "./svg.js";

export const FIGURE_KINDS = ["sa_vs_k", "throughput_vs_k", "cdf_validation"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

// line-style convention: SCP solid, CARP dashed, URP dotted
export const POLICY_STYLE: Record<string, { stroke: string; dash?: string }> = {
  scp: { stroke: "#1f6fb4" },
  carp: { stroke: "#c23b22", dash: "6,4" },
  urp: { stroke: "#2e8540", dash: "2,4" },
};

function styleFor(policy: string): { stroke: string; dash?: string } {
  return POLICY_STYLE[policy] ?? { stroke: "#555555" };
}

function byPolicyThenS(a: GroupMean, b: GroupMean): number {
  return a.policy.localeCompare(b.policy) || a.S - b.S || a.K - b.K;
}

function saVsK(rows: ResultRow[]): string {
  const means = [...groupMeans(rows)].sort(byPolicyThenS);
  const series: Series[] = [];
  let cur: { policy: string; S: number } | null = null;
  let sIndex = 0;
  for (const g of means) {
    if (cur === null || cur.policy !== g.policy || cur.S !== g.S) {
      sIndex = cur !== null && cur.policy === g.policy ? sIndex + 1 : 0;
      cur = { policy: g.policy, S: g.S };
      const st = styleFor(g.policy);
      series.push({
        label: `${g.policy.toUpperCase()}, S=${g.S}`,
        x: [],
        y: [],
        stroke: st.stroke,
        dash: st.dash,
        // extra S values per policy share the dash style; fade them apart
        opacity: sIndex === 0 ? undefined : Math.max(0.35, 1 - 0.35 * sIndex),
        markers: true,
      });
    }
    const s = series[series.length - 1] as Series;
    s.x.push(g.K);
    s.y.push(g.meanSa);
  }
  return lineChart({
    title: "Mean successful access attempts",
    xLabel: "contending UEs K",
    yLabel: "mean SA",
    series,
  });
}

function throughputVsK(rows: ResultRow[]): string {
  const means = groupMeans(rows);
  const best = bestS(means);
  const perPolicy = new Map<string, { K: number; th: number }[]>();
  for (const g of best.values()) {
    let pts = perPolicy.get(g.policy);
    if (pts === undefined) {
      pts = [];
      perPolicy.set(g.policy, pts);
    }
    pts.push({ K: g.K, th: g.meanThroughput });
  }
  const series: Series[] = [...perPolicy.keys()].sort().map((policy) => {
    const pts = (perPolicy.get(policy) as { K: number; th: number }[]).sort(
      (a, b) => a.K - b.K,
    );
    const st = styleFor(policy);
    return {
      label: `${policy.toUpperCase()}, best S`,
      x: pts.map((p) => p.K),
      y: pts.map((p) => p.th),
      stroke: st.stroke,
      dash: st.dash,
      markers: true,
    };
  });
  return lineChart({
    title: "Optimal mean throughput over S",
    xLabel: "contending UEs K",
    yLabel: "throughput [packet/slot]",
    series,
  });
}

function cdfValidation(text: string): string {
  const rows = readDist(text);
  if (rows.length === 0) {
    throw new Error("no data rows in CSV");
  }
  // pathloss spans orders of magnitude; plot the x axis in dB
  const x: number[] = [];
  const cdf: number[] = [];
  const ecdf: number[] = [];
  for (const r of rows) {
    const db = 10 * Math.log10(r.beta);
    if (!Number.isFinite(db)) continue;
    x.push(db);
    cdf.push(r.cdf);
    ecdf.push(r.empiricalCdf);
  }
  const series: Series[] = [
    { label: "analytic CDF", x, y: cdf, stroke: "#1f6fb4" },
    { label: "empirical CDF", x, y: ecdf, stroke: "#c23b22", dash: "2,4", markers: true },
  ];
  return lineChart({
    title: "Pathloss distribution check",
    xLabel: "pathloss [dB]",
    yLabel: "CDF",
    series,
  });
}

/** Build the SVG for one figure kind from raw CSV text. */
export function render(kind: FigureKind, csvText: string): string {
  if (kind === "cdf_validation") {
    return cdfValidation(csvText);
  }
  const rows = readResults(csvText);
  if (rows.length === 0) {
    throw new Error("no data rows in CSV");
  }
  return kind === "sa_vs_k" ? saVsK(rows) : throughputVsK(rows);
}
