/** Layered drawing of a strength-order diagram.
 *
 * The service reports equivalence classes and cover edges; this module
 * only assigns coordinates.  The edge list in the resulting view is the
 * service's list, untouched, and the renderer draws exactly those pairs.
 */

import type { DiagramPayload } from "./api.js";

export interface PlacedClass {
  labels: string[];
  layer: number;
  x: number;
  y: number;
}

export interface DiagramView {
  side: "node" | "edge";
  classes: string[][];
  edges: [string[], string[]][];
  layers: string[][][];
  placed: PlacedClass[];
  width: number;
  height: number;
}

const WIDTH = 640;
const ROW_GAP = 90;
const MARGIN = 50;

function classKey(labels: string[]): string {
  return JSON.stringify(labels);
}

/** Longest-path layering: a class sits one row above the deepest class
 * it covers, weakest classes on the bottom row.
 */
export function layoutDiagram(payload: DiagramPayload): DiagramView {
  const keys = payload.classes.map(classKey);
  const index = new Map<string, number>(keys.map((k, i) => [k, i]));
  const incoming: number[][] = payload.classes.map(() => []);
  for (const [below, above] of payload.edges) {
    const b = index.get(classKey(below));
    const a = index.get(classKey(above));
    if (b === undefined || a === undefined) {
      throw new Error("diagram edge mentions a class that is not listed");
    }
    incoming[a]!.push(b);
  }

  const depth = new Array<number>(payload.classes.length).fill(-1);
  const onStack = new Set<number>();
  const measure = (i: number): number => {
    const known = depth[i]!;
    if (known >= 0) return known;
    if (onStack.has(i)) throw new Error("the order diagram contains a cycle");
    onStack.add(i);
    let d = 0;
    for (const b of incoming[i]!) d = Math.max(d, measure(b) + 1);
    onStack.delete(i);
    depth[i] = d;
    return d;
  };
  payload.classes.forEach((_, i) => measure(i));

  const maxDepth = depth.reduce((m, d) => Math.max(m, d), 0);
  const layers: string[][][] = Array.from({ length: maxDepth + 1 }, () => []);
  const slot = new Array<number>(payload.classes.length).fill(0);
  payload.classes.forEach((cls, i) => {
    const d = depth[i]!;
    slot[i] = layers[d]!.length;
    layers[d]!.push(cls);
  });

  const height = 2 * MARGIN + maxDepth * ROW_GAP;
  const placed: PlacedClass[] = payload.classes.map((cls, i) => {
    const d = depth[i]!;
    const row = layers[d]!;
    return {
      labels: cls,
      layer: d,
      x: (WIDTH * (slot[i]! + 1)) / (row.length + 1),
      y: MARGIN + (maxDepth - d) * ROW_GAP,
    };
  });

  return {
    side: payload.side,
    classes: payload.classes,
    edges: payload.edges,
    layers,
    placed,
    width: WIDTH,
    height,
  };
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Draw the view as standalone SVG markup. */
export function diagramSvg(view: DiagramView): string {
  const at = new Map<string, PlacedClass>(view.placed.map((p) => [classKey(p.labels), p]));
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${view.width} ${view.height}"` +
      ` width="${view.width}" height="${view.height}">`,
  ];
  for (const [below, above] of view.edges) {
    const b = at.get(classKey(below))!;
    const a = at.get(classKey(above))!;
    parts.push(
      `<line x1="${b.x}" y1="${b.y - 14}" x2="${a.x}" y2="${a.y + 14}"` +
        ` stroke="#888" stroke-width="1.5"/>`,
    );
  }
  for (const p of view.placed) {
    const text = escapeXml(p.labels.join(" "));
    const w = Math.max(34, 10 * p.labels.join(" ").length + 14);
    parts.push(
      `<g><rect x="${p.x - w / 2}" y="${p.y - 14}" width="${w}" height="28" rx="6"` +
        ` fill="#f4f1ea" stroke="#555"/>` +
        `<text x="${p.x}" y="${p.y + 5}" text-anchor="middle"` +
        ` font-family="monospace" font-size="14">${text}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}
