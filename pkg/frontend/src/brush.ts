// Circular brush rasterization onto the pixel grid. A pixel belongs to a
// stroke when its center lies inside the circle; the same rule generates
// the committed probe fixture, so strokes replay identically everywhere.

export interface BrushStroke {
  cx: number;
  cy: number;
  radius: number;
}

export function rasterizeBrush(stroke: BrushStroke, dims: number[]): number[] {
  const [h, w] = dims;
  const r2 = stroke.radius * stroke.radius;
  const out: number[] = [];
  for (let row = 0; row < h; row += 1) {
    for (let col = 0; col < w; col += 1) {
      const dy = row - stroke.cy;
      const dx = col - stroke.cx;
      if (dy * dy + dx * dx <= r2) out.push(row * w + col);
    }
  }
  return out;
}

export function applyStroke(
  annotation: Set<number>,
  stroke: BrushStroke,
  dims: number[],
  erase = false,
): Set<number> {
  const next = new Set(annotation);
  for (const index of rasterizeBrush(stroke, dims)) {
    if (erase) next.delete(index);
    else next.add(index);
  }
  return next;
}
