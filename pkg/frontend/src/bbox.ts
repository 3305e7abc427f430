/* Region selection: screen-space drags on a decimated thumbnail mapped to
 * pixel bounding boxes on the full image.
 */

export interface BBox {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** A drag in thumbnail coordinates (canvas pixels, one unit per thumbnail cell). */
export interface DragRect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/**
 * Map a drag on a stride-k thumbnail to the full-image pixel bbox.
 *
 * Each thumbnail cell (u, v) stands for the k x k pixel block starting at
 * (k*u, k*v); a drag selects every cell its rectangle touches, corner cells
 * inclusive.  Returns null for a degenerate (zero-area) drag.
 */
export function dragToBBox(
  drag: DragRect,
  stride: number,
  width: number,
  height: number,
): BBox | null {
  if (drag.x0 === drag.x1 || drag.y0 === drag.y1) return null;
  const u0 = Math.max(0, Math.floor(Math.min(drag.x0, drag.x1)));
  const v0 = Math.max(0, Math.floor(Math.min(drag.y0, drag.y1)));
  const u1 = Math.floor(Math.max(drag.x0, drag.x1));
  const v1 = Math.floor(Math.max(drag.y0, drag.y1));
  // the last block a partial edge cell stands for may overhang; clamp to extent
  const x1 = Math.min(stride * u1 + stride - 1, width - 1);
  const y1 = Math.min(stride * v1 + stride - 1, height - 1);
  const x0 = Math.min(stride * u0, x1);
  const y0 = Math.min(stride * v0, y1);
  return { x0, y0, x1, y1 };
}

export function bboxParam(b: BBox): string {
  return `${b.x0},${b.y0},${b.x1},${b.y1}`;
}
