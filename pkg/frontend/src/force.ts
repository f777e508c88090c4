/** Deterministic force-directed layout.
 *
 * Nodes repel pairwise, edges pull toward a rest length, and a weak
 * centering force keeps components on screen; positions start on a
 * seeded ring so every run of the same graph lands identically.
 */

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
}

export interface LayoutEdge {
  a: string;
  b: string;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
  seed: number;
  restLength?: number;
}

/** Small deterministic PRNG (mulberry32). */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  ids: string[],
  edges: LayoutEdge[],
  options: LayoutOptions,
): Map<string, LayoutNode> {
  const { width, height, iterations, seed } = options;
  const rest = options.restLength ?? Math.min(width, height) / 8;
  const rng = mulberry32(seed);
  const nodes = new Map<string, LayoutNode>();
  const radius = Math.min(width, height) * 0.35;
  ids.forEach((id, index) => {
    const angle = (2 * Math.PI * index) / Math.max(1, ids.length);
    nodes.set(id, {
      id,
      x: width / 2 + radius * Math.cos(angle) + (rng() - 0.5) * 8,
      y: height / 2 + radius * Math.sin(angle) + (rng() - 0.5) * 8,
    });
  });

  const pairs = edges
    .map((e) => [nodes.get(e.a), nodes.get(e.b)] as const)
    .filter((pair): pair is readonly [LayoutNode, LayoutNode] =>
      pair[0] !== undefined && pair[1] !== undefined);

  const list = [...nodes.values()];
  for (let iter = 0; iter < iterations; iter++) {
    const temperature = 1.0 - iter / Math.max(1, iterations);
    const fx = new Map<string, number>();
    const fy = new Map<string, number>();
    for (const node of list) {
      fx.set(node.id, 0);
      fy.set(node.id, 0);
    }
    for (let i = 0; i < list.length; i++) {
      for (let j = i + 1; j < list.length; j++) {
        const a = list[i];
        const b = list[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 0.01 * (i - j);
          dy = 0.013;
          d2 = dx * dx + dy * dy;
        }
        const push = (rest * rest) / d2;
        fx.set(a.id, fx.get(a.id)! + dx * push);
        fy.set(a.id, fy.get(a.id)! + dy * push);
        fx.set(b.id, fx.get(b.id)! - dx * push);
        fy.set(b.id, fy.get(b.id)! - dy * push);
      }
    }
    for (const [a, b] of pairs) {
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const pull = (d - rest) / d * 0.06;
      fx.set(a.id, fx.get(a.id)! + dx * pull);
      fy.set(a.id, fy.get(a.id)! + dy * pull);
      fx.set(b.id, fx.get(b.id)! - dx * pull);
      fy.set(b.id, fy.get(b.id)! - dy * pull);
    }
    for (const node of list) {
      const gx = (width / 2 - node.x) * 0.01;
      const gy = (height / 2 - node.y) * 0.01;
      const stepX = (fx.get(node.id)! * 0.02 + gx) * temperature;
      const stepY = (fy.get(node.id)! * 0.02 + gy) * temperature;
      const cap = rest * 0.5;
      node.x += Math.max(-cap, Math.min(cap, stepX));
      node.y += Math.max(-cap, Math.min(cap, stepY));
      node.x = Math.max(10, Math.min(width - 10, node.x));
      node.y = Math.max(10, Math.min(height - 10, node.y));
    }
  }
  return nodes;
}
