import { describe, expect, it } from "vitest";
import type { GraphEdge } from "../src/api.js";
import { computeLayout, hashLabel, mulberry32 } from "../src/layout.js";

const SIZE = { width: 800, height: 600 };

function triangle(): { nodes: string[]; edges: GraphEdge[] } {
  return {
    nodes: ["idea", "notion", "concept"],
    edges: [
      { a: "concept", b: "idea", w: 0.6 },
      { a: "idea", b: "notion", w: 0.5 },
    ],
  };
}

describe("hashing and generator", () => {
  it("hashLabel is stable and spreads labels", () => {
    expect(hashLabel("idea")).toBe(hashLabel("idea"));
    expect(hashLabel("idea")).not.toBe(hashLabel("notion"));
  });

  it("mulberry32 repeats its stream for a seed", () => {
    const a = mulberry32(42);
    const b = mulberry32(42);
    const streamA = [a(), a(), a()];
    const streamB = [b(), b(), b()];
    expect(streamA).toEqual(streamB);
    for (const value of streamA) {
      expect(value).toBeGreaterThanOrEqual(0);
      expect(value).toBeLessThan(1);
    }
  });
});

describe("computeLayout", () => {
  it("is deterministic for the same input", () => {
    const { nodes, edges } = triangle();
    const first = computeLayout(nodes, edges, SIZE);
    const second = computeLayout(nodes, edges, SIZE);
    expect([...first.entries()]).toEqual([...second.entries()]);
  });

  it("a node's start never depends on its neighbours", () => {
    const alone = computeLayout(["idea"], [], { ...SIZE, iterations: 0 });
    const crowd = computeLayout(["idea", "notion", "concept"], [], {
      ...SIZE,
      iterations: 0,
    });
    expect(crowd.get("idea")).toEqual(alone.get("idea"));
  });

  it("honors previous positions as starting points", () => {
    const previous = new Map([["idea", { x: 123, y: 456 }]]);
    const placed = computeLayout(["idea", "notion"], [], {
      ...SIZE,
      iterations: 0,
      previous,
    });
    expect(placed.get("idea")).toEqual({ x: 123, y: 456 });
    expect(placed.get("notion")).not.toEqual({ x: 123, y: 456 });
  });

  it("keeps pinned nodes exactly where they were put", () => {
    const { nodes, edges } = triangle();
    const pinned = new Map([["idea", { x: 400, y: 300 }]]);
    const placed = computeLayout(nodes, edges, { ...SIZE, pinned });
    expect(placed.get("idea")).toEqual({ x: 400, y: 300 });
  });

  it("keeps every node inside the padded frame", () => {
    const nodes = Array.from({ length: 24 }, (_, i) => `w${i}`);
    const edges: GraphEdge[] = [];
    for (let i = 1; i < nodes.length; i++) {
      edges.push({ a: nodes[0], b: nodes[i], w: 0.9 });
    }
    const placed = computeLayout(nodes, edges, { ...SIZE, padding: 30 });
    for (const point of placed.values()) {
      expect(point.x).toBeGreaterThanOrEqual(30);
      expect(point.x).toBeLessThanOrEqual(SIZE.width - 30);
      expect(point.y).toBeGreaterThanOrEqual(30);
      expect(point.y).toBeLessThanOrEqual(SIZE.height - 30);
      expect(Number.isFinite(point.x)).toBe(true);
      expect(Number.isFinite(point.y)).toBe(true);
    }
  });

  it("pulls an edge's endpoints closer than strangers", () => {
    // two tight pairs and one loner; within-pair distances should
    // come out well under the cross-pair ones
    const nodes = ["a1", "a2", "b1", "b2", "loner"];
    const edges: GraphEdge[] = [
      { a: "a1", b: "a2", w: 0.9 },
      { a: "b1", b: "b2", w: 0.9 },
    ];
    const placed = computeLayout(nodes, edges, SIZE);
    const dist = (p: string, q: string) => {
      const a = placed.get(p)!;
      const b = placed.get(q)!;
      return Math.hypot(a.x - b.x, a.y - b.y);
    };
    expect(dist("a1", "a2")).toBeLessThan(dist("a1", "b1"));
    expect(dist("b1", "b2")).toBeLessThan(dist("b2", "a2"));
  });
});
