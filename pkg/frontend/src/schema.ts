/**
 * Sweep-CSV parsing and validation.
 *
 * Expected schema (one header comment line, then a header row):
 *   k,m,Q,gamma,eta,N,K,s,rho,stable
 */

import Papa from "papaparse";

export interface SweepRow {
  k: number;
  m: number;
  Q: number;
  gamma: number;
  eta: number;
  N: number;
  K: number;
  s: number;
  rho: number;
  stable: number;
}

export const REQUIRED_COLUMNS = [
  "k", "m", "Q", "gamma", "eta", "N", "K", "s", "rho", "stable",
] as const;

export class SchemaError extends Error {
  readonly missing: string[];
  constructor(missing: string[]) {
    super(`CSV schema mismatch; missing columns: ${missing.join(", ")}`);
    this.missing = missing;
  }
}

export function parseSweepCsv(text: string): SweepRow[] {
  const body = text
    .split("\n")
    .filter((line) => !line.startsWith("#"))
    .join("\n");
  const parsed = Papa.parse<Record<string, string>>(body, {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  const missing = REQUIRED_COLUMNS.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError([...missing]);
  }
  return parsed.data.map((raw) => {
    const row: SweepRow = {
      k: Number(raw.k),
      m: Number(raw.m),
      Q: Number(raw.Q),
      gamma: Number(raw.gamma),
      eta: Number(raw.eta),
      N: Number(raw.N),
      K: Number(raw.K),
      s: Number(raw.s),
      rho: Number(raw.rho),
      stable: Number(raw.stable),
    };
    for (const [key, value] of Object.entries(row)) {
      if (!Number.isFinite(value)) {
        throw new Error(`non-numeric value in column ${key}: ${raw[key]}`);
      }
    }
    return row;
  });
}
