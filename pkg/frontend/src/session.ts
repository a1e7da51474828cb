/** Exploration state: a forest of problems connected by the actions that
 * produced them.
 *
 * Every rendering stored here came out of a service response unchanged.
 * The only label bookkeeping done locally is the composition of merge and
 * rename maps when a chain is exported, which never touches constraints.
 */

import type {
  DiagramPayload,
  FixedPointVerdict,
  ProblemPayload,
  ZeroRoundPayload,
} from "./api.js";

export type Action =
  | { kind: "paste" }
  | { kind: "step" }
  | { kind: "merge"; groups: string[][] }
  | { kind: "rename"; map: Record<string, string> };

export interface SessionNode {
  id: string;
  parent: string | null;
  children: string[];
  action: Action;
  handle: string;
  render: string;
  condensed?: string;
  labels: string[];
  delta: number;
  rank: number;
  provenance?: Record<string, string[][]>;
}

export interface ViewPrefs {
  condensed: boolean;
  diagramSide: "node" | "edge";
}

export interface ExportedChain {
  start: string;
  directives: Record<string, unknown>[];
}

export interface FixedPointBadge {
  map: Record<string, string> | null;
}

/** The slice of the HTTP client the session relies on. */
export interface Api {
  postProblem(text: string, cap?: number): Promise<ProblemPayload>;
  getProblem(handle: string, condensed?: boolean): Promise<ProblemPayload>;
  step(handle: string, cap?: number): Promise<ProblemPayload>;
  diagram(handle: string, side: "node" | "edge"): Promise<DiagramPayload>;
  merge(handle: string, groups: string[][]): Promise<ProblemPayload>;
  rename(handle: string, map: Record<string, string>): Promise<ProblemPayload>;
  zeroRound(handle: string): Promise<ZeroRoundPayload>;
  verifyFixedPoint(delta: number, rank: number, cap?: number): Promise<FixedPointVerdict>;
}

let nextId = 0;

export class ExplorerSession {
  readonly nodes = new Map<string, SessionNode>();
  readonly roots: string[] = [];
  currentId: string | null = null;
  compareId: string | null = null;
  readonly prefs: ViewPrefs = { condensed: false, diagramSide: "edge" };

  private inflight = false;

  constructor(private readonly api: Api) {}

  get pending(): boolean {
    return this.inflight;
  }

  get current(): SessionNode | null {
    return this.currentId === null ? null : this.nodes.get(this.currentId) ?? null;
  }

  node(id: string): SessionNode {
    const n = this.nodes.get(id);
    if (!n) throw new Error(`unknown session node ${id}`);
    return n;
  }

  select(id: string): void {
    this.node(id);
    this.currentId = id;
  }

  compareWith(id: string | null): void {
    if (id !== null) this.node(id);
    this.compareId = id;
  }

  /** Nodes from a root down to `id`, inclusive. */
  path(id: string): SessionNode[] {
    const out: SessionNode[] = [];
    let cur: string | null = id;
    while (cur !== null) {
      const n = this.node(cur);
      out.push(n);
      cur = n.parent;
    }
    out.reverse();
    return out;
  }

  async paste(text: string, cap?: number): Promise<SessionNode> {
    return this.mutate(async () => {
      const payload = await this.api.postProblem(text, cap);
      return this.add(null, { kind: "paste" }, payload);
    });
  }

  async step(cap?: number): Promise<SessionNode> {
    return this.mutate(async () => {
      const from = this.requireCurrent();
      const payload = await this.api.step(from.handle, cap);
      return this.add(from.id, { kind: "step" }, payload);
    });
  }

  async merge(groups: string[][]): Promise<SessionNode> {
    return this.mutate(async () => {
      const from = this.requireCurrent();
      const payload = await this.api.merge(from.handle, groups);
      return this.add(from.id, { kind: "merge", groups }, payload);
    });
  }

  async rename(map: Record<string, string>): Promise<SessionNode> {
    return this.mutate(async () => {
      const from = this.requireCurrent();
      const payload = await this.api.rename(from.handle, map);
      return this.add(from.id, { kind: "rename", map }, payload);
    });
  }

  /** Read-only queries may run while no view state changes. */

  zeroRound(): Promise<ZeroRoundPayload> {
    return this.api.zeroRound(this.requireCurrent().handle);
  }

  diagram(side?: "node" | "edge"): Promise<DiagramPayload> {
    return this.api.diagram(this.requireCurrent().handle, side ?? this.prefs.diagramSide);
  }

  async condensedRender(id?: string): Promise<string> {
    const n = id === undefined ? this.requireCurrent() : this.node(id);
    if (n.condensed === undefined) {
      const payload = await this.api.getProblem(n.handle, true);
      n.condensed = payload.render;
    }
    return n.condensed;
  }

  /** Ask the service whether the current problem is the certified fixed
   * point for its degree and rank, or the immediate step of it.  The
   * comparison is between renderings the service produced; the renaming
   * in the badge is the service's own certificate.
   */
  async fixedPointBadge(): Promise<FixedPointBadge | null> {
    const n = this.requireCurrent();
    let verdict: FixedPointVerdict;
    try {
      verdict = await this.api.verifyFixedPoint(n.delta, n.rank);
    } catch {
      return null;
    }
    if (!verdict.ok) return null;
    if (n.render === verdict.problem) return { map: null };
    if (n.action.kind === "step" && n.parent !== null) {
      const parent = this.node(n.parent);
      if (parent.render === verdict.problem) return { map: verdict.map };
    }
    return null;
  }

  /** Flatten the path to the current problem into a directive list the
   * command line replays: one directive per step, with any merges and
   * renames that followed the step folded into a single canonical
   * merge-then-rename pair.  Leading edits before the first step are
   * already reflected in the start rendering.  A chain replay halts on a
   * zero-round solvable problem, so branches past one will not replay.
   */
  exportChain(): ExportedChain {
    const cur = this.requireCurrent();
    const path = this.path(cur.id);
    const firstStep = path.findIndex((n) => n.action.kind === "step");
    if (firstStep < 0) {
      return { start: cur.render, directives: [] };
    }
    const startNode = path[firstStep - 1];
    if (!startNode) throw new Error("a step cannot open a session");
    const directives: Record<string, unknown>[] = [];
    let fold: Map<string, string> | null = null;
    const flush = () => {
      if (fold !== null) directives.push(canonicalDirective(fold));
    };
    for (const n of path.slice(firstStep)) {
      const a = n.action;
      if (a.kind === "step") {
        flush();
        fold = new Map(n.labels.map((l) => [l, l]));
      } else if (a.kind === "merge") {
        const rep = new Map<string, string>();
        for (const group of a.groups) {
          const names = [...group].sort();
          const first = names[0]!;
          for (const m of names) rep.set(m, first);
        }
        for (const [orig, curLabel] of fold!) {
          fold!.set(orig, rep.get(curLabel) ?? curLabel);
        }
      } else if (a.kind === "rename") {
        for (const [orig, curLabel] of fold!) {
          const renamed = a.map[curLabel];
          if (renamed === undefined) {
            throw new Error(`rename lost track of label ${curLabel}`);
          }
          fold!.set(orig, renamed);
        }
      } else {
        throw new Error("a paste cannot appear below the first step");
      }
    }
    flush();
    return { start: startNode.render, directives };
  }

  private requireCurrent(): SessionNode {
    const n = this.current;
    if (!n) throw new Error("no problem loaded");
    return n;
  }

  private add(parent: string | null, action: Action, payload: ProblemPayload): SessionNode {
    const node: SessionNode = {
      id: `n${nextId++}`,
      parent,
      children: [],
      action,
      handle: payload.handle,
      render: payload.render,
      labels: payload.labels,
      delta: payload.delta,
      rank: payload.rank,
      provenance: payload.provenance,
    };
    this.nodes.set(node.id, node);
    if (parent === null) {
      this.roots.push(node.id);
    } else {
      this.node(parent).children.push(node.id);
    }
    this.currentId = node.id;
    return node;
  }

  private async mutate<T>(f: () => Promise<T>): Promise<T> {
    if (this.inflight) {
      throw new Error("another action is still running");
    }
    this.inflight = true;
    try {
      return await f();
    } finally {
      this.inflight = false;
    }
  }
}

/** Turn a composed label map (label of the stepped problem to its final
 * name) into the equivalent single merge-then-rename directive.
 */
function canonicalDirective(fold: Map<string, string>): Record<string, unknown> {
  const fibers = new Map<string, string[]>();
  for (const [orig, value] of fold) {
    const fiber = fibers.get(value);
    if (fiber) fiber.push(orig);
    else fibers.set(value, [orig]);
  }
  const merge: string[][] = [];
  const rename: Record<string, string> = {};
  let renameNeeded = false;
  for (const [value, members] of fibers) {
    const names = [...members].sort();
    if (names.length > 1) merge.push(names);
    const postMerge = names[0]!;
    rename[postMerge] = value;
    if (postMerge !== value) renameNeeded = true;
  }
  merge.sort((a, b) => (a[0]! < b[0]! ? -1 : a[0]! > b[0]! ? 1 : 0));
  const directive: Record<string, unknown> = {};
  if (merge.length > 0) directive.merge = merge;
  if (renameNeeded) directive.rename = rename;
  return directive;
}
