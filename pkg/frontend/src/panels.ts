/**
 * Panel definitions for the canned figure bundles.
 *
 * Every panel selects a subset of sweep rows (one scheme/grid/rate
 * combination), draws one curve per corrector count Q, and is rendered
 * to its own SVG file.
 */

import { SweepRow } from "./schema.js";

export type AxisMode = "linear" | "semilog-x";

export interface PanelSpec {
  /** file stem, e.g. "fig5_bdf3_ext3" */
  id: string;
  title: string;
  axis: AxisMode;
  match: (row: SweepRow) => boolean;
}

const SCHEMES: Array<[number, number]> = [
  [1, 1], [2, 1], [2, 2], [3, 1], [3, 2], [3, 3],
];

function schemePanel(
  bundle: string,
  k: number,
  m: number,
  eta: number,
  N: number,
  K: number,
  extra = "",
  axis: AxisMode = "linear",
): PanelSpec {
  return {
    id: `${bundle}_bdf${k}_ext${m}${extra ? "_" + extra : ""}`,
    title: `BDF${k}/EXT${m}${extra ? ` (${extra})` : ""}, N=${N}, K=${K}, eta=${eta}`,
    axis,
    match: (r) =>
      r.k === k && r.m === m && r.eta === eta && r.N === N && r.K === K && r.gamma === 1.0,
  };
}

function etaPanel(bundle: string, eta: number, K: number): PanelSpec {
  return {
    id: `${bundle}_eta${eta}`,
    title: `BDF3/EXT3, eta=${eta}, N=32, K=${K}`,
    axis: "semilog-x",
    match: (r) =>
      r.k === 3 && r.m === 3 && r.eta === eta && r.N === 32 && r.K === K && r.gamma === 1.0,
  };
}

export function bundlePanels(bundle: string): PanelSpec[] {
  switch (bundle) {
    case "fig5":
      return SCHEMES.map(([k, m]) => schemePanel("fig5", k, m, 1, 32, 5));
    case "fig6":
      return [3, 5, 7].flatMap((K) =>
        [[2, 2], [3, 2], [3, 3]].map(([k, m]) => schemePanel("fig6", k, m, 1, 32, K, `k${K}`)),
      );
    case "fig7":
      return ([[32, 5], [65, 10], [98, 15]] as const).flatMap(([N, K]) =>
        [[2, 2], [3, 2], [3, 3]].map(([k, m]) => schemePanel("fig7", k, m, 1, N, K, `n${N}`)),
      );
    case "fig8":
      return [
        {
          id: "fig8_original",
          title: "BDF3/EXT3, N=32, K=5, original corrector",
          axis: "linear",
          match: (r) =>
            r.k === 3 && r.m === 3 && r.eta === 1 && r.N === 32 && r.K === 5 && r.gamma === 1.0,
        },
        {
          // plain sweeps for odd Q, blended final sweep (gamma = 0.5) for even Q
          id: "fig8_improved",
          title: "BDF3/EXT3, N=32, K=5, blended final corrector (gamma=0.5)",
          axis: "linear",
          match: (r) =>
            r.k === 3 && r.m === 3 && r.eta === 1 && r.N === 32 && r.K === 5 &&
            r.gamma === (r.Q % 2 === 0 ? 0.5 : 1.0),
        },
      ];
    case "fig10":
      return SCHEMES.map(([k, m]) => schemePanel("fig10", k, m, 2, 32, 5));
    case "fig11":
      return [1, 2, 3, 4, 5, 10].map((eta) => etaPanel("fig11", eta, 5));
    case "fig12":
      return [1, 2, 3, 4, 5, 10].map((eta) => etaPanel("fig12", eta, 10));
    default:
      throw new Error(`unknown bundle: ${bundle}`);
  }
}

export const BUNDLES = ["fig5", "fig6", "fig7", "fig8", "fig10", "fig11", "fig12"] as const;
