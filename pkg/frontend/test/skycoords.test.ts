import { describe, expect, it } from "vitest";

import {
  angularSeparation,
  equatorialToGalactic,
  galacticToEquatorial,
  makePosition,
} from "../src/skycoords.js";

// J2000 galactic center, from the standard literature value
const CENTER_RA = 266.4051;
const CENTER_DEC = -28.936175;

describe("frame conversion", () => {
  it("maps the galactic center to the literature equatorial position", () => {
    const eq = galacticToEquatorial(makePosition("gal", 0, 0));
    expect(Math.abs(eq.lon - CENTER_RA)).toBeLessThan(1e-3);
    expect(Math.abs(eq.lat - CENTER_DEC)).toBeLessThan(1e-3);
  });

  it("agrees with the gateway conversion on known positions", () => {
    // values computed by the server implementation
    const g = equatorialToGalactic(makePosition("eq", 187.27279853184646, 2.0523310950727405));
    expect(g.lon).toBeCloseTo(289.93933199451857, 9);
    expect(g.lat).toBeCloseTo(64.35889735477048, 9);

    const m31 = equatorialToGalactic(makePosition("eq", 10.684708, 41.26875));
    expect(m31.lon).toBeCloseTo(121.1743218098794, 9);
    expect(m31.lat).toBeCloseTo(-21.573311145794946, 9);
  });

  it("round trips to float precision", () => {
    let worst = 0;
    for (let i = 0; i < 500; i++) {
      // low-discrepancy sweep of the sphere away from the exact poles
      const lon = (i * 360) / 499;
      const lat = -89.9 + (i * 179.8) / 499;
      const p = makePosition("eq", lon, lat);
      const back = galacticToEquatorial(equatorialToGalactic(p));
      const dlon = Math.abs(((back.lon - p.lon + 540) % 360) - 180);
      const err = Math.hypot(dlon * Math.cos((p.lat * Math.PI) / 180), back.lat - p.lat);
      worst = Math.max(worst, err);
    }
    expect(worst).toBeLessThan(1e-9);
  });

  it("normalizes longitude into [0, 360)", () => {
    expect(makePosition("eq", -30, 10).lon).toBe(330);
    expect(makePosition("eq", 720.5, 10).lon).toBe(0.5);
    expect(makePosition("eq", 123, 90).lon).toBe(0);
  });

  it("rejects out-of-range latitude and unknown systems", () => {
    expect(() => makePosition("eq", 0, 91)).toThrow();
    expect(() => makePosition("nope" as never, 0, 0)).toThrow();
  });
});

describe("angularSeparation", () => {
  it("is zero between a point and itself and symmetric", () => {
    const a = makePosition("eq", 10.5, -3.25);
    const b = makePosition("eq", 200, 45);
    expect(angularSeparation(a, a)).toBe(0);
    expect(angularSeparation(a, b)).toBeCloseTo(angularSeparation(b, a), 12);
  });

  it("measures along a meridian exactly", () => {
    const a = makePosition("eq", 50, 10);
    const b = makePosition("eq", 50, 35);
    expect(angularSeparation(a, b)).toBeCloseTo(25, 10);
  });

  it("is frame independent", () => {
    const a = makePosition("eq", 187.3, 2.05);
    const b = makePosition("eq", 190.1, -4.4);
    const sep = angularSeparation(a, b);
    const sepMixed = angularSeparation(equatorialToGalactic(a), b);
    expect(sepMixed).toBeCloseTo(sep, 9);
  });
});
