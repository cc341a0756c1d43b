/**
 * Hand-rolled SVG line charts. No drawing dependency: the figures are
 * simple enough (axes, ticks, polylines, legend) that string assembly
 * keeps the output readable and the package dependency-free.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  stroke: string;
  /** stroke-dasharray; omit for a solid line */
  dash?: string;
  opacity?: number;
  markers?: boolean;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width?: number;
  height?: number;
}

const XML_ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&apos;",
};

export function escapeXml(s: string): string {
  return s.replace(/[&<>"']/g, (ch) => XML_ESCAPES[ch] ?? ch);
}

/** Tick positions with a 1/2/5 step covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, n = 6): number[] {
  if (!(hi > lo)) {
    // degenerate span: widen around the value
    const pad = Math.max(1, Math.abs(lo));
    hi = lo + pad;
    lo = lo - pad;
  }
  const raw = (hi - lo) / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10) * mag;
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9);
  for (let i = first; i * step <= hi + step * 1e-9; i++) {
    ticks.push(i * step);
  }
  return ticks;
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

const r2 = (v: number): number => Math.round(v * 100) / 100;

/** Render a line chart to an SVG document string. */
export function lineChart(spec: ChartSpec): string {
  const w = spec.width ?? 720;
  const h = spec.height ?? 480;
  const m = { top: 44, right: 24, bottom: 54, left: 70 };

  const xs: number[] = [];
  const ys: number[] = [];
  for (const s of spec.series) {
    if (s.x.length !== s.y.length) {
      throw new Error(`series "${s.label}" has mismatched x/y lengths`);
    }
    for (let i = 0; i < s.x.length; i++) {
      const xv = s.x[i] as number;
      const yv = s.y[i] as number;
      if (Number.isFinite(xv) && Number.isFinite(yv)) {
        xs.push(xv);
        ys.push(yv);
      }
    }
  }
  if (xs.length === 0) {
    throw new Error("nothing to plot: no finite data points");
  }

  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (xHi === xLo) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  if (yHi === yLo) {
    const pad = Math.max(0.5, Math.abs(yHi) * 0.1);
    yLo -= pad;
    yHi += pad;
  } else {
    const pad = (yHi - yLo) * 0.05;
    yLo -= pad;
    yHi += pad;
  }

  const plotW = w - m.left - m.right;
  const plotH = h - m.top - m.bottom;
  const sx = (x: number) => r2(m.left + ((x - xLo) / (xHi - xLo)) * plotW);
  const sy = (y: number) => r2(h - m.bottom - ((y - yLo) / (yHi - yLo)) * plotH);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${w} ${h}" ` +
      `font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${w}" height="${h}" fill="white"/>`);
  parts.push(
    `<text x="${w / 2}" y="${m.top - 18}" text-anchor="middle" font-size="14">` +
      `${escapeXml(spec.title)}</text>`,
  );

  // gridlines and y ticks
  for (const t of niceTicks(yLo, yHi)) {
    const y = sy(t);
    parts.push(
      `<line x1="${m.left}" y1="${y}" x2="${w - m.right}" y2="${y}" stroke="#dddddd"/>`,
    );
    parts.push(
      `<text x="${m.left - 8}" y="${y + 4}" text-anchor="end" font-size="11">` +
        `${fmtTick(t)}</text>`,
    );
  }
  // x ticks
  for (const t of niceTicks(xLo, xHi)) {
    const x = sx(t);
    parts.push(
      `<line x1="${x}" y1="${h - m.bottom}" x2="${x}" y2="${h - m.bottom + 5}" stroke="#333333"/>`,
    );
    parts.push(
      `<text x="${x}" y="${h - m.bottom + 18}" text-anchor="middle" font-size="11">` +
        `${fmtTick(t)}</text>`,
    );
  }
  // axes
  parts.push(
    `<line x1="${m.left}" y1="${m.top}" x2="${m.left}" y2="${h - m.bottom}" stroke="#333333"/>`,
  );
  parts.push(
    `<line x1="${m.left}" y1="${h - m.bottom}" x2="${w - m.right}" y2="${h - m.bottom}" stroke="#333333"/>`,
  );
  parts.push(
    `<text x="${m.left + plotW / 2}" y="${h - 14}" text-anchor="middle">` +
      `${escapeXml(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${m.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${m.top + plotH / 2})">${escapeXml(spec.yLabel)}</text>`,
  );

  // series
  for (const s of spec.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      const xv = s.x[i] as number;
      const yv = s.y[i] as number;
      if (Number.isFinite(xv) && Number.isFinite(yv)) {
        pts.push(`${sx(xv)},${sy(yv)}`);
      }
    }
    if (pts.length === 0) continue;
    const dash = s.dash === undefined ? "" : ` stroke-dasharray="${s.dash}"`;
    const op = s.opacity === undefined ? "" : ` opacity="${s.opacity}"`;
    parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${s.stroke}" ` +
        `stroke-width="1.8"${dash}${op}/>`,
    );
    if (s.markers) {
      for (const p of pts) {
        const [px, py] = p.split(",");
        parts.push(`<circle cx="${px}" cy="${py}" r="2.2" fill="${s.stroke}"${op}/>`);
      }
    }
  }

  // legend, top-right inside the plot area
  const legendX = w - m.right - 190;
  spec.series.forEach((s, i) => {
    const y = m.top + 12 + i * 18;
    const dash = s.dash === undefined ? "" : ` stroke-dasharray="${s.dash}"`;
    const op = s.opacity === undefined ? "" : ` opacity="${s.opacity}"`;
    parts.push(
      `<line x1="${legendX}" y1="${y}" x2="${legendX + 30}" y2="${y}" ` +
        `stroke="${s.stroke}" stroke-width="1.8"${dash}${op}/>`,
    );
    parts.push(
      `<text x="${legendX + 38}" y="${y + 4}" font-size="11">${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
