import { describe, expect, it } from "vitest";

import type {
  DiagramPayload,
  FixedPointVerdict,
  ProblemPayload,
  ZeroRoundPayload,
} from "../src/api.js";
import { ExplorerSession } from "../src/session.js";
import type { Api } from "../src/session.js";

let seq = 0;

function payload(over: Partial<ProblemPayload> = {}): ProblemPayload {
  seq += 1;
  return {
    handle: `h${seq}`,
    labels: ["L0", "L1", "L2"],
    delta: 3,
    rank: 2,
    render: `render ${seq}\n`,
    ...over,
  };
}

type Queued = ProblemPayload | (() => Promise<ProblemPayload>);

class FakeApi implements Api {
  calls: string[] = [];
  queued: Queued[] = [];
  verdict: FixedPointVerdict = { ok: false, map: null, problem: "" };
  verdictError: Error | null = null;
  zero: ZeroRoundPayload = { handle: "", solvable: false, witness: null };
  condensedText = "condensed\n";
  condensedCalls = 0;

  private take(kind: string): Promise<ProblemPayload> {
    this.calls.push(kind);
    const next = this.queued.shift();
    if (!next) return Promise.reject(new Error(`nothing queued for ${kind}`));
    return typeof next === "function" ? next() : Promise.resolve(next);
  }

  postProblem(text: string): Promise<ProblemPayload> {
    return this.take(`paste ${text.split("\n")[0]}`);
  }

  getProblem(handle: string, condensed = false): Promise<ProblemPayload> {
    if (condensed) this.condensedCalls += 1;
    return Promise.resolve(payload({ handle, render: this.condensedText }));
  }

  step(handle: string): Promise<ProblemPayload> {
    return this.take(`step ${handle}`);
  }

  diagram(handle: string, side: "node" | "edge"): Promise<DiagramPayload> {
    return Promise.resolve({ handle, side, classes: [], edges: [] });
  }

  merge(handle: string, groups: string[][]): Promise<ProblemPayload> {
    return this.take(`merge ${handle} ${JSON.stringify(groups)}`);
  }

  rename(handle: string, map: Record<string, string>): Promise<ProblemPayload> {
    return this.take(`rename ${handle} ${JSON.stringify(map)}`);
  }

  zeroRound(handle: string): Promise<ZeroRoundPayload> {
    return Promise.resolve({ ...this.zero, handle });
  }

  verifyFixedPoint(): Promise<FixedPointVerdict> {
    return this.verdictError
      ? Promise.reject(this.verdictError)
      : Promise.resolve(this.verdict);
  }
}

function fresh(): { api: FakeApi; session: ExplorerSession } {
  const api = new FakeApi();
  return { api, session: new ExplorerSession(api) };
}

describe("history tree", () => {
  it("grows a branch when acting from an earlier problem", async () => {
    const { api, session } = fresh();
    api.queued.push(payload(), payload(), payload());
    const root = await session.paste("x\n---\ny\n");
    await session.step();
    session.select(root.id);
    const merged = await session.merge([["L0", "L1"]]);

    expect(session.node(root.id).children).toHaveLength(2);
    expect(session.path(merged.id).map((n) => n.id)).toEqual([root.id, merged.id]);
    expect(session.currentId).toBe(merged.id);
  });

  it("keeps one node per action even when a handle reappears", async () => {
    const { api, session } = fresh();
    const back = payload({ handle: "same" });
    api.queued.push(payload({ handle: "same" }), payload({ handle: "other" }), back);
    await session.paste("p\n");
    await session.rename({ L0: "A", L1: "B", L2: "C" });
    const again = await session.rename({ A: "L0", B: "L1", C: "L2" });

    expect(again.handle).toBe("same");
    expect(session.nodes.size).toBe(3);
    expect(session.path(again.id)).toHaveLength(3);
  });

  it("rejects a second action while one is in flight", async () => {
    const { api, session } = fresh();
    api.queued.push(payload());
    await session.paste("p\n");

    let release: (p: ProblemPayload) => void = () => {};
    api.queued.push(() => new Promise((res) => (release = res)));
    const slow = session.step();
    expect(session.pending).toBe(true);
    await expect(session.merge([["L0", "L1"]])).rejects.toThrow(/still running/);
    release(payload());
    await slow;
    expect(session.pending).toBe(false);
  });
});

describe("chain export", () => {
  it("exports a bare step as one empty directive", async () => {
    const { api, session } = fresh();
    const pasted = payload({ render: "start\n" });
    api.queued.push(pasted, payload());
    await session.paste("start\n");
    await session.step();

    expect(session.exportChain()).toEqual({ start: "start\n", directives: [{}] });
  });

  it("exports a session without steps as a start and nothing else", async () => {
    const { api, session } = fresh();
    api.queued.push(payload({ render: "only\n" }));
    await session.paste("only\n");

    expect(session.exportChain()).toEqual({ start: "only\n", directives: [] });
  });

  it("absorbs edits made before the first step into the start text", async () => {
    const { api, session } = fresh();
    api.queued.push(payload(), payload({ render: "merged\n" }), payload());
    await session.paste("orig\n");
    await session.merge([["L0", "L1"]]);
    await session.step();

    expect(session.exportChain()).toEqual({ start: "merged\n", directives: [{}] });
  });

  it("folds a merge and a rename after one step into one directive", async () => {
    const { api, session } = fresh();
    api.queued.push(
      payload(),
      payload({ labels: ["L0", "L1", "L2"] }),
      payload({ labels: ["L0", "L1"] }),
      payload({ labels: ["A", "B"] }),
    );
    await session.paste("p\n");
    await session.step();
    await session.merge([["L1", "L2"]]);
    await session.rename({ L0: "A", L1: "B" });

    expect(session.exportChain().directives).toEqual([
      { merge: [["L1", "L2"]], rename: { L0: "A", L1: "B" } },
    ]);
  });

  it("composes consecutive renames", async () => {
    const { api, session } = fresh();
    api.queued.push(
      payload(),
      payload({ labels: ["L0", "L1"] }),
      payload({ labels: ["X", "Y"] }),
      payload({ labels: ["Q", "R"] }),
    );
    await session.paste("p\n");
    await session.step();
    await session.rename({ L0: "X", L1: "Y" });
    await session.rename({ X: "Q", Y: "R" });

    expect(session.exportChain().directives).toEqual([
      { rename: { L0: "Q", L1: "R" } },
    ]);
  });

  it("collapses a rename and its inverse into a bare step", async () => {
    const { api, session } = fresh();
    api.queued.push(
      payload(),
      payload({ labels: ["L0", "L1"] }),
      payload({ labels: ["X", "Y"] }),
      payload({ labels: ["L0", "L1"] }),
    );
    await session.paste("p\n");
    await session.step();
    await session.rename({ L0: "X", L1: "Y" });
    await session.rename({ X: "L0", Y: "L1" });

    expect(session.exportChain().directives).toEqual([{}]);
  });

  it("emits a merge alone when the representative keeps its name", async () => {
    const { api, session } = fresh();
    api.queued.push(
      payload(),
      payload({ labels: ["L0", "L1", "L2"] }),
      payload({ labels: ["L0", "L1"] }),
    );
    await session.paste("p\n");
    await session.step();
    await session.merge([["L0", "L2"]]);

    expect(session.exportChain().directives).toEqual([{ merge: [["L0", "L2"]] }]);
  });

  it("opens a fresh directive for each step", async () => {
    const { api, session } = fresh();
    api.queued.push(
      payload(),
      payload({ labels: ["L0", "L1", "L2"] }),
      payload({ labels: ["L0", "L1"] }),
      payload({ labels: ["M0", "M1"] }),
    );
    await session.paste("p\n");
    await session.step();
    await session.merge([["L1", "L2"]]);
    await session.step();

    expect(session.exportChain().directives).toEqual([
      { merge: [["L1", "L2"]] },
      {},
    ]);
  });

  it("only exports the path to the current problem, not siblings", async () => {
    const { api, session } = fresh();
    const root = payload({ render: "root\n" });
    api.queued.push(root, payload(), payload());
    const rootNode = await session.paste("root\n");
    await session.step();
    session.select(rootNode.id);
    await session.step();

    expect(session.exportChain()).toEqual({ start: "root\n", directives: [{}] });
  });
});

describe("fixed point badge", () => {
  it("marks the certified problem itself without a renaming", async () => {
    const { api, session } = fresh();
    const p = payload({ render: "fp\n" });
    api.queued.push(p);
    await session.paste("fp\n");
    api.verdict = { ok: true, map: { A: "B" }, problem: "fp\n" };

    expect(await session.fixedPointBadge()).toEqual({ map: null });
  });

  it("marks the step of the certified problem and shows the renaming", async () => {
    const { api, session } = fresh();
    api.queued.push(payload({ render: "fp\n" }), payload({ render: "stepped\n" }));
    await session.paste("fp\n");
    await session.step();
    api.verdict = { ok: true, map: { L0: "M" }, problem: "fp\n" };

    expect(await session.fixedPointBadge()).toEqual({ map: { L0: "M" } });
  });

  it("stays quiet when the certificate does not apply", async () => {
    const { api, session } = fresh();
    api.queued.push(payload({ render: "other\n" }));
    await session.paste("other\n");
    api.verdict = { ok: true, map: {}, problem: "fp\n" };
    expect(await session.fixedPointBadge()).toBeNull();

    api.verdict = { ok: false, map: null, problem: "other\n" };
    expect(await session.fixedPointBadge()).toBeNull();

    api.verdictError = new Error("service unavailable");
    expect(await session.fixedPointBadge()).toBeNull();
  });
});

describe("condensed rendering", () => {
  it("fetches the condensed form once and caches it", async () => {
    const { api, session } = fresh();
    api.queued.push(payload());
    await session.paste("p\n");

    expect(await session.condensedRender()).toBe("condensed\n");
    expect(await session.condensedRender()).toBe("condensed\n");
    expect(api.condensedCalls).toBe(1);
  });
});
