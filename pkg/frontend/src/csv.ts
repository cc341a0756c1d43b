/**
 * Readers for the simulator's CSV outputs.
 *
 * The harness never quotes fields (policy names and numbers only), so a
 * plain comma split parses the files exactly. Numbers are written with
 * round-trip precision on the Python side; Number() recovers the same
 * doubles here.
 */

export class SchemaError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: no header row");
  }
  const header = (lines[0] as string).split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  rows.forEach((r, i) => {
    if (r.length !== header.length) {
      throw new SchemaError(
        `line ${i + 2} has ${r.length} fields, expected ${header.length}`,
      );
    }
  });
  return { header, rows };
}

export function columnIndex(table: Table, name: string): number {
  const i = table.header.indexOf(name);
  if (i < 0) {
    throw new SchemaError(`missing column "${name}"`);
  }
  return i;
}

function toNumber(field: string, column: string, line: number): number {
  const x = Number(field);
  if (field.trim() === "" || Number.isNaN(x)) {
    throw new SchemaError(`bad number "${field}" in column "${column}" at line ${line}`);
  }
  return x;
}

export interface ResultRow {
  policy: string;
  K: number;
  S: number;
  drop: number;
  sa: number;
  durationSlots: number;
  throughput: number;
}

/** Parse the main campaign file (one row per protocol round). */
export function readResults(text: string): ResultRow[] {
  const t = parseCsv(text);
  const c = {
    policy: columnIndex(t, "policy"),
    K: columnIndex(t, "K"),
    S: columnIndex(t, "S"),
    drop: columnIndex(t, "drop"),
    sa: columnIndex(t, "sa"),
    duration: columnIndex(t, "duration_slots"),
    throughput: columnIndex(t, "throughput"),
  };
  return t.rows.map((r, i) => ({
    policy: r[c.policy] as string,
    K: toNumber(r[c.K] as string, "K", i + 2),
    S: toNumber(r[c.S] as string, "S", i + 2),
    drop: toNumber(r[c.drop] as string, "drop", i + 2),
    sa: toNumber(r[c.sa] as string, "sa", i + 2),
    durationSlots: toNumber(r[c.duration] as string, "duration_slots", i + 2),
    throughput: toNumber(r[c.throughput] as string, "throughput", i + 2),
  }));
}

export interface SummaryRow {
  policy: string;
  K: number;
  S: number;
  nDrops: number;
  meanSa: number;
  meanThroughput: number;
  best: number;
}

/** Parse the per-(policy, K, S) summary the harness writes alongside. */
export function readSummary(text: string): SummaryRow[] {
  const t = parseCsv(text);
  const c = {
    policy: columnIndex(t, "policy"),
    K: columnIndex(t, "K"),
    S: columnIndex(t, "S"),
    nDrops: columnIndex(t, "n_drops"),
    meanSa: columnIndex(t, "mean_sa"),
    meanThroughput: columnIndex(t, "mean_throughput"),
    best: columnIndex(t, "best"),
  };
  return t.rows.map((r, i) => ({
    policy: r[c.policy] as string,
    K: toNumber(r[c.K] as string, "K", i + 2),
    S: toNumber(r[c.S] as string, "S", i + 2),
    nDrops: toNumber(r[c.nDrops] as string, "n_drops", i + 2),
    meanSa: toNumber(r[c.meanSa] as string, "mean_sa", i + 2),
    meanThroughput: toNumber(r[c.meanThroughput] as string, "mean_throughput", i + 2),
    best: toNumber(r[c.best] as string, "best", i + 2),
  }));
}

export interface DistRow {
  beta: number;
  cdf: number;
  pdf: number;
  empiricalCdf: number;
}

/** Parse a pathloss-distribution table (`dist` subcommand output). */
export function readDist(text: string): DistRow[] {
  const t = parseCsv(text);
  const c = {
    beta: columnIndex(t, "beta"),
    cdf: columnIndex(t, "cdf"),
    pdf: columnIndex(t, "pdf"),
    ecdf: columnIndex(t, "empirical_cdf"),
  };
  return t.rows.map((r, i) => ({
    beta: toNumber(r[c.beta] as string, "beta", i + 2),
    cdf: toNumber(r[c.cdf] as string, "cdf", i + 2),
    pdf: toNumber(r[c.pdf] as string, "pdf", i + 2),
    empiricalCdf: toNumber(r[c.ecdf] as string, "empirical_cdf", i + 2),
  }));
}
