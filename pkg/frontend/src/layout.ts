import type { GraphEdge } from "./api.js";

export interface LayoutPoint {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  padding?: number;
  /** Nodes held at a fixed position (the ego root, typically). */
  pinned?: Map<string, LayoutPoint>;
  /** Positions from the last layout; surviving nodes start there. */
  previous?: Map<string, LayoutPoint>;
}

// FNV-1a. Each node seeds its own generator from its label, so the
// starting position of a word never depends on what else is shown.
export function hashLabel(label: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < label.length; i++) {
    h ^= label.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Force-directed layout, spring/repulsion style, run for a fixed
 * number of iterations with a linear cooling schedule. No randomness
 * beyond the per-label seeding of initial positions, so the same
 * graph always lands in the same picture.
 */
export function computeLayout(
  nodes: string[],
  edges: GraphEdge[],
  opts: LayoutOptions,
): Map<string, LayoutPoint> {
  const { width, height } = opts;
  const padding = opts.padding ?? 36;
  const iterations = opts.iterations ?? 250;
  const order = [...nodes].sort();

  const pos = new Map<string, LayoutPoint>();
  for (const node of order) {
    const pinnedAt = opts.pinned?.get(node);
    if (pinnedAt) {
      pos.set(node, { x: pinnedAt.x, y: pinnedAt.y });
      continue;
    }
    const prev = opts.previous?.get(node);
    if (prev) {
      pos.set(node, { x: prev.x, y: prev.y });
      continue;
    }
    const rand = mulberry32(hashLabel(node));
    pos.set(node, {
      x: padding + rand() * (width - 2 * padding),
      y: padding + rand() * (height - 2 * padding),
    });
  }
  if (order.length < 2) return pos;

  const k = 0.85 * Math.sqrt((width * height) / order.length);
  let temperature = Math.min(width, height) / 8;
  const cooling = temperature / (iterations + 1);

  for (let round = 0; round < iterations; round++) {
    const disp = new Map<string, LayoutPoint>();
    for (const node of order) disp.set(node, { x: 0, y: 0 });

    for (let i = 0; i < order.length; i++) {
      const a = pos.get(order[i])!;
      const da = disp.get(order[i])!;
      for (let j = i + 1; j < order.length; j++) {
        const b = pos.get(order[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 0.01) {
          // coincident points; nudge apart along a fixed direction
          dx = 0.01;
          dy = 0.02;
          dist = Math.hypot(dx, dy);
        }
        const repulsion = (k * k) / dist;
        const db = disp.get(order[j])!;
        da.x += (dx / dist) * repulsion;
        da.y += (dy / dist) * repulsion;
        db.x -= (dx / dist) * repulsion;
        db.y -= (dy / dist) * repulsion;
      }
    }

    for (const edge of edges) {
      const a = pos.get(edge.a);
      const b = pos.get(edge.b);
      if (!a || !b) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      // heavier edges pull harder, so tight pairs sit close
      const attraction = ((dist * dist) / k) * (0.35 + edge.w);
      const fx = (dx / dist) * attraction;
      const fy = (dy / dist) * attraction;
      const da = disp.get(edge.a)!;
      const db = disp.get(edge.b)!;
      da.x -= fx;
      da.y -= fy;
      db.x += fx;
      db.y += fy;
    }

    for (const node of order) {
      if (opts.pinned?.has(node)) continue;
      const d = disp.get(node)!;
      const len = Math.max(Math.hypot(d.x, d.y), 0.01);
      const step = Math.min(len, temperature);
      const p = pos.get(node)!;
      p.x = Math.min(Math.max(p.x + (d.x / len) * step, padding), width - padding);
      p.y = Math.min(Math.max(p.y + (d.y / len) * step, padding), height - padding);
    }
    temperature = Math.max(temperature - cooling, 0.5);
  }
  return pos;
}
