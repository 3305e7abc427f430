/* Display formatting for record fields. */

import { Band, Measurement } from "./aml.js";
import { SkyPosition, toEquatorial, toGalactic } from "./skycoords.js";

/** "2.3 ± 0.1 Jy"; without an uncertainty just "2.3 Jy". */
export function formatMeasurement(m: Measurement): string {
  const v = String(m.value);
  return m.uncertainty !== null ? `${v} ± ${m.uncertainty} ${m.unit}` : `${v} ${m.unit}`;
}

export function formatBand(b: Band): string {
  return `${b.value} ${b.unit}`;
}

function frameText(p: SkyPosition): string {
  return `${p.system} ${p.lon.toFixed(4)} ${p.lat.toFixed(4)}`;
}

/** The stored frame first, then the converted one: "eq A B (gal L B)". */
export function formatPositionBoth(p: SkyPosition): string {
  const other = p.system === "eq" ? toGalactic(p) : toEquatorial(p);
  return `${frameText(p)} (${frameText(other)})`;
}
