/* Sky positions and the J2000 equatorial <-> galactic rotation.
 *
 * Mirrors the gateway's conversion exactly (same defining constants, same
 * closed-form expressions) so positions shown in the second frame agree
 * with what a server round trip would return.  Angles are degrees.
 */

export const NGP_RA = 192.85948; // right ascension of the north galactic pole
export const NGP_DEC = 27.12825; // declination of the north galactic pole
export const NCP_GLON = 122.93192; // galactic longitude of the north celestial pole

export type SkySystem = "eq" | "gal";

export interface SkyPosition {
  system: SkySystem;
  lon: number;
  lat: number;
}

const rad = (d: number) => (d * Math.PI) / 180;
const deg = (r: number) => (r * 180) / Math.PI;

function normLon(lon: number, lat: number): number {
  // longitude is degenerate at the poles; canonical form is 0
  if (Math.abs(lat) === 90) return 0;
  let l = lon % 360;
  if (l < 0) l += 360;
  if (l === 360) l = 0;
  return l;
}

export function makePosition(system: SkySystem, lon: number, lat: number): SkyPosition {
  if (system !== "eq" && system !== "gal") {
    throw new Error(`unknown coordinate system ${JSON.stringify(system)}`);
  }
  if (!(lat >= -90 && lat <= 90)) {
    throw new Error(`latitude ${lat} out of range [-90, 90]`);
  }
  return { system, lon: normLon(lon, lat), lat };
}

const clamp1 = (x: number) => Math.min(1, Math.max(-1, x));

export function equatorialToGalactic(p: SkyPosition): SkyPosition {
  if (p.system !== "eq") throw new Error("expected an equatorial position");
  const ra = rad(p.lon);
  const dec = rad(p.lat);
  const raP = rad(NGP_RA);
  const decP = rad(NGP_DEC);

  const sinB =
    Math.sin(decP) * Math.sin(dec) + Math.cos(decP) * Math.cos(dec) * Math.cos(ra - raP);
  const b = Math.asin(clamp1(sinB));
  const y = Math.cos(dec) * Math.sin(ra - raP);
  const x =
    Math.cos(decP) * Math.sin(dec) - Math.sin(decP) * Math.cos(dec) * Math.cos(ra - raP);
  const l = rad(NCP_GLON) - Math.atan2(y, x);
  return makePosition("gal", deg(l), deg(b));
}

export function galacticToEquatorial(p: SkyPosition): SkyPosition {
  if (p.system !== "gal") throw new Error("expected a galactic position");
  const l = rad(p.lon);
  const b = rad(p.lat);
  const raP = rad(NGP_RA);
  const decP = rad(NGP_DEC);
  const dl = rad(NCP_GLON) - l;

  const sinDec =
    Math.sin(decP) * Math.sin(b) + Math.cos(decP) * Math.cos(b) * Math.cos(dl);
  const dec = Math.asin(clamp1(sinDec));
  const y = Math.cos(b) * Math.sin(dl);
  const x = Math.cos(decP) * Math.sin(b) - Math.sin(decP) * Math.cos(b) * Math.cos(dl);
  const ra = raP + Math.atan2(y, x);
  return makePosition("eq", deg(ra), deg(dec));
}

export function toGalactic(p: SkyPosition): SkyPosition {
  return p.system === "gal" ? p : equatorialToGalactic(p);
}

export function toEquatorial(p: SkyPosition): SkyPosition {
  return p.system === "eq" ? p : galacticToEquatorial(p);
}

/** Great-circle separation in degrees, stable at small angles. */
export function angularSeparation(a: SkyPosition, b: SkyPosition): number {
  if (a.system !== b.system) {
    a = toGalactic(a);
    b = toGalactic(b);
  }
  const lon1 = rad(a.lon);
  const lat1 = rad(a.lat);
  const lon2 = rad(b.lon);
  const lat2 = rad(b.lat);
  const dlon = lon2 - lon1;
  const num = Math.hypot(
    Math.cos(lat2) * Math.sin(dlon),
    Math.cos(lat1) * Math.sin(lat2) - Math.sin(lat1) * Math.cos(lat2) * Math.cos(dlon),
  );
  const den =
    Math.sin(lat1) * Math.sin(lat2) + Math.cos(lat1) * Math.cos(lat2) * Math.cos(dlon);
  return deg(Math.atan2(num, den));
}
