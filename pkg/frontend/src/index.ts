// Typed wrapper around the clucmp CLI. All numerical work happens in the
// Python package; this module only serializes clusterings to the CLI's JSON
// schema, invokes `clucmp compare`, and parses the report back. Nothing is
// recomputed on the Node side, so both languages always agree bit for bit.
//
// Usage:
//   import { boundSimilarity, boundElementScores } from "clucmp-bindings";
//
//   const a = { clusters: { x: [1, 2], y: [3] } };
//   const b = { clusters: { p: [1], q: [2, 3] } };
//   await boundSimilarity(a, b, "elsim");        // 0.5
//   await boundElementScores(a, b);              // { "1": 0.5, "2": 0.5, "3": 0.5 }
//
// The `clucmp` executable must be on PATH (pip install the core package), or
// point CLUCMP_BIN at it, e.g. CLUCMP_BIN="python3 -m clucmp.cli".

import { execFile } from "node:child_process";
import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export type ElementId = string | number;

/** Cluster membership map plus optional parent->child hierarchy edges. */
export interface BoundClustering {
  clusters: Record<string, readonly ElementId[]>;
  hierarchy?: ReadonlyArray<readonly [string, string]>;
}

export const MEASURES = [
  "elsim",
  "ri",
  "ari",
  "jaccard",
  "fmeasure",
  "nmi_min",
  "nmi_sqrt",
  "nmi_avg",
  "nmi_max",
  "vi",
  "onmi",
] as const;

export type MeasureName = (typeof MEASURES)[number];

export interface CompareParams {
  /** restart probability complement, (0,1); default 0.9 */
  alpha?: number;
  /** hierarchy zoom exponent; default 8 */
  r?: number;
}

/** Base error for any failed CLI invocation; carries the process stderr. */
export class ClucmpError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** Exit code 2: unreadable file, malformed clustering JSON, or bad usage. */
export class InvalidInputError extends ClucmpError {}

/** Exit code 3: the two clusterings cover different element sets. */
export class UniverseMismatchError extends ClucmpError {}

/** Exit code 4: measure cannot accept the input, e.g. ari on overlaps. */
export class MeasureInputUnsupportedError extends ClucmpError {}

interface CompareReport {
  measure: string;
  params: { alpha: number; r: number };
  score: number;
  element_scores?: Record<string, number>;
}

function clusteringToJson(c: BoundClustering): string {
  const clusters: Record<string, string[]> = {};
  for (const [cid, members] of Object.entries(c.clusters)) {
    clusters[cid] = members.map(String);
  }
  const hierarchy = c.hierarchy
    ? c.hierarchy.map(([parent, child]) => [parent, child])
    : null;
  return JSON.stringify({ clusters, hierarchy });
}

function cliCommand(): string[] {
  const override = process.env.CLUCMP_BIN;
  if (override && override.trim() !== "") {
    return override.trim().split(/\s+/);
  }
  return ["clucmp"];
}

function toClucmpError(err: unknown): ClucmpError {
  const e = err as { code?: number | string; stderr?: string; message?: string };
  const detail = (e.stderr ?? e.message ?? "").trim() || "clucmp invocation failed";
  switch (e.code) {
    case 2:
      return new InvalidInputError(detail);
    case 3:
      return new UniverseMismatchError(detail);
    case 4:
      return new MeasureInputUnsupportedError(detail);
    default:
      return new ClucmpError(detail);
  }
}

async function runCompare(
  a: BoundClustering,
  b: BoundClustering,
  measure: string,
  params: CompareParams,
  withElements: boolean,
): Promise<CompareReport> {
  const dir = await mkdtemp(join(tmpdir(), "clucmp-"));
  try {
    const fileA = join(dir, "a.json");
    const fileB = join(dir, "b.json");
    await Promise.all([
      writeFile(fileA, clusteringToJson(a)),
      writeFile(fileB, clusteringToJson(b)),
    ]);
    const [cmd, ...prefix] = cliCommand();
    const args = [
      ...prefix,
      "compare",
      fileA,
      fileB,
      "--measure",
      measure,
      "--alpha",
      String(params.alpha ?? 0.9),
      "--r",
      String(params.r ?? 8),
    ];
    if (withElements) {
      args.push("--element-scores");
    }
    let stdout: string;
    try {
      ({ stdout } = await execFileAsync(cmd, args, { maxBuffer: 64 * 1024 * 1024 }));
    } catch (err) {
      throw toClucmpError(err);
    }
    return JSON.parse(stdout) as CompareReport;
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

/** Score two clusterings with one measure; same value the CLI would print. */
export async function boundSimilarity(
  a: BoundClustering,
  b: BoundClustering,
  measure: MeasureName = "elsim",
  params: CompareParams = {},
): Promise<number> {
  const report = await runCompare(a, b, measure, params, false);
  return report.score;
}

/** Per-element similarity map (element-centric measure only). Keys are the
 *  element ids as strings, matching the CLI's JSON output. */
export async function boundElementScores(
  a: BoundClustering,
  b: BoundClustering,
  params: CompareParams = {},
): Promise<Record<string, number>> {
  const report = await runCompare(a, b, "elsim", params, true);
  if (!report.element_scores) {
    throw new ClucmpError("compare report is missing element_scores");
  }
  return report.element_scores;
}
