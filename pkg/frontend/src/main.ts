/** Page wiring: one ExplorerSession, one action in flight at a time. */

import { ApiError, Client } from "./api.js";
import { diagramSvg, layoutDiagram } from "./diagram.js";
import {
  badgeHtml,
  compareView,
  errorBanner,
  historyTree,
  labelChips,
  problemPanel,
  zeroRoundLine,
} from "./render.js";
import { ExplorerSession } from "./session.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function defaultBase(): string {
  return location.protocol.startsWith("http")
    ? location.origin
    : "http://127.0.0.1:8008";
}

function parseGroups(text: string): string[][] {
  return text
    .split(";")
    .map((part) => part.trim().split(/\s+/).filter(Boolean))
    .filter((g) => g.length > 0);
}

function parseRenames(text: string): Record<string, string> {
  const map: Record<string, string> = {};
  for (const pair of text.trim().split(/\s+/).filter(Boolean)) {
    const [from, to] = pair.split("=");
    if (!from || !to) throw new Error(`expected OLD=NEW, got "${pair}"`);
    map[from] = to;
  }
  return map;
}

function start(): void {
  const baseInput = el<HTMLInputElement>("base");
  baseInput.value = defaultBase();

  let session = new ExplorerSession(new Client(baseInput.value));
  el<HTMLButtonElement>("connect").addEventListener("click", () => {
    session = new ExplorerSession(new Client(baseInput.value));
    void refresh();
  });

  const status = el<HTMLSpanElement>("status");
  const notice = el<HTMLDivElement>("notice");
  const problemBox = el<HTMLDivElement>("problem");
  const historyBox = el<HTMLDivElement>("historybox");
  const diagramBox = el<HTMLDivElement>("diagrambox");
  const buttons = () =>
    Array.from(document.querySelectorAll<HTMLButtonElement>("button[data-action]"));

  async function refresh(): Promise<void> {
    historyBox.innerHTML = historyTree(session);
    const node = session.current;
    if (!node) {
      problemBox.innerHTML = "<p>paste a problem to begin</p>";
      return;
    }
    const text = session.prefs.condensed
      ? await session.condensedRender()
      : node.render;
    const compare = session.compareId !== null ? session.node(session.compareId) : null;
    problemBox.innerHTML = compare
      ? compareView(
          { heading: `pinned ${compare.handle}`, text: compare.render },
          { heading: node.handle, text },
        )
      : problemPanel(node.handle, text);
    problemBox.insertAdjacentHTML("beforeend", labelChips(node.labels, node.provenance));
  }

  /** Serialize mutations; while one runs, buttons are disabled and the
   * status line is polled with the elapsed time.
   */
  async function act(work: () => Promise<void>): Promise<void> {
    if (session.pending) return;
    notice.innerHTML = "";
    for (const b of buttons()) b.disabled = true;
    const started = Date.now();
    status.textContent = "working 0.0s";
    const ticker = window.setInterval(() => {
      status.textContent = `working ${((Date.now() - started) / 1000).toFixed(1)}s`;
    }, 100);
    try {
      await work();
    } catch (err) {
      if (err instanceof ApiError) {
        notice.innerHTML = errorBanner(err.detail, err.size);
      } else {
        notice.innerHTML = errorBanner(String(err));
      }
    } finally {
      window.clearInterval(ticker);
      status.textContent = "";
      for (const b of buttons()) b.disabled = false;
      await refresh();
    }
  }

  async function showBadge(): Promise<void> {
    const badge = await session.fixedPointBadge();
    if (badge) notice.innerHTML = badgeHtml(badge);
  }

  el<HTMLButtonElement>("paste").addEventListener("click", () =>
    act(async () => {
      await session.paste(el<HTMLTextAreaElement>("input").value);
      void showBadge();
    }),
  );

  el<HTMLButtonElement>("step").addEventListener("click", () =>
    act(async () => {
      await session.step();
      void showBadge();
    }),
  );

  el<HTMLButtonElement>("merge").addEventListener("click", () =>
    act(async () => {
      await session.merge(parseGroups(el<HTMLInputElement>("groups").value));
    }),
  );

  el<HTMLButtonElement>("rename").addEventListener("click", () =>
    act(async () => {
      await session.rename(parseRenames(el<HTMLInputElement>("renames").value));
    }),
  );

  el<HTMLButtonElement>("zeroround").addEventListener("click", () =>
    act(async () => {
      notice.innerHTML = zeroRoundLine(await session.zeroRound());
    }),
  );

  el<HTMLButtonElement>("diagram").addEventListener("click", () =>
    act(async () => {
      const payload = await session.diagram();
      diagramBox.innerHTML = diagramSvg(layoutDiagram(payload));
    }),
  );

  el<HTMLInputElement>("condensed").addEventListener("change", (ev) => {
    session.prefs.condensed = (ev.target as HTMLInputElement).checked;
    void refresh();
  });

  el<HTMLSelectElement>("side").addEventListener("change", (ev) => {
    session.prefs.diagramSide = (ev.target as HTMLSelectElement).value as
      | "node"
      | "edge";
  });

  el<HTMLButtonElement>("pin").addEventListener("click", () => {
    session.compareWith(session.compareId === null ? session.currentId : null);
    void refresh();
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    try {
      const chain = session.exportChain();
      const blob = new Blob([JSON.stringify(chain, null, 2)], {
        type: "application/json",
      });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "chain.json";
      a.click();
      URL.revokeObjectURL(a.href);
      notice.innerHTML =
        "<div class='verdict'>saved chain.json; split it into a start file and a" +
        " directive list, then replay with" +
        " <code>relim analyze chain start.txt --directives directives.json</code></div>";
    } catch (err) {
      notice.innerHTML = errorBanner(String(err));
    }
  });

  historyBox.addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-node-id]");
    if (target instanceof HTMLElement && target.dataset.nodeId) {
      session.select(target.dataset.nodeId);
      void refresh();
    }
  });

  void refresh();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
