/** HTML fragments for the page, built as plain strings.
 *
 * Renderings, witnesses, diagrams and error messages are inserted
 * exactly as the service sent them (escaped, never reworded).
 */

import type { SessionNode } from "./session.js";
import type { FixedPointBadge } from "./session.js";
import type { ZeroRoundPayload } from "./api.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function provenanceTitle(sets: string[][]): string {
  return sets.map((set) => `{${set.join(" ")}}`).join(" ");
}

/** One chip per label; hovering a label produced by a step reveals the
 * parent sets it was interned from.
 */
export function labelChips(
  labels: string[],
  provenance?: Record<string, string[][]>,
): string {
  const chips = labels.map((label) => {
    const sets = provenance?.[label];
    const title = sets ? ` title="${escapeHtml(provenanceTitle(sets))}"` : "";
    return `<span class="chip"${title}>${escapeHtml(label)}</span>`;
  });
  return `<div class="chips">${chips.join("")}</div>`;
}

export function problemPanel(heading: string, text: string): string {
  return (
    `<section class="panel"><h3>${escapeHtml(heading)}</h3>` +
    `<pre class="problem">${escapeHtml(text)}</pre></section>`
  );
}

export function compareView(
  left: { heading: string; text: string },
  right: { heading: string; text: string },
): string {
  return (
    `<div class="compare">` +
    problemPanel(left.heading, left.text) +
    problemPanel(right.heading, right.text) +
    `</div>`
  );
}

export function errorBanner(detail: string, size?: number): string {
  const suffix = size === undefined ? "" : ` (size ${size})`;
  return `<div class="error">${escapeHtml(detail + suffix)}</div>`;
}

export function zeroRoundLine(payload: ZeroRoundPayload): string {
  const text = payload.solvable
    ? `zero-round solvable; witness ${(payload.witness ?? []).join(" ")}`
    : "not zero-round solvable";
  return `<div class="verdict">${escapeHtml(text)}</div>`;
}

export function badgeHtml(badge: FixedPointBadge | null): string {
  if (!badge) return "";
  if (!badge.map) return `<span class="badge">fixed point</span>`;
  const rows = Object.entries(badge.map)
    .map(([from, to]) => `${escapeHtml(from)} &rarr; ${escapeHtml(to)}`)
    .join(", ");
  return `<span class="badge" title="${rows}">fixed point</span> <small>${rows}</small>`;
}

export function actionLabel(node: SessionNode): string {
  const a = node.action;
  switch (a.kind) {
    case "paste":
      return "paste";
    case "step":
      return "step";
    case "merge":
      return `merge ${a.groups.map((g) => `{${g.join(" ")}}`).join(" ")}`;
    case "rename":
      return "rename";
  }
}

export interface TreeSource {
  roots: string[];
  nodes: Map<string, SessionNode>;
  currentId: string | null;
  compareId: string | null;
}

/** The whole exploration history as nested lists, one li per problem. */
export function historyTree(source: TreeSource): string {
  const item = (id: string): string => {
    const node = source.nodes.get(id);
    if (!node) return "";
    const classes = ["hnode"];
    if (id === source.currentId) classes.push("current");
    if (id === source.compareId) classes.push("pinned");
    const children = node.children.length
      ? `<ul>${node.children.map(item).join("")}</ul>`
      : "";
    return (
      `<li><span class="${classes.join(" ")}" data-node-id="${node.id}">` +
      `${escapeHtml(actionLabel(node))} &middot; <code>${node.handle}</code>` +
      `</span>${children}</li>`
    );
  };
  return `<ul class="history">${source.roots.map(item).join("")}</ul>`;
}
