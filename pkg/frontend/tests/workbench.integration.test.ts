// @vitest-environment happy-dom
//
// End to end against a real server: build a demo run, serve it on an
// ephemeral port, and walk the full curation loop through the DOM the
// way an analyst would. Needs the conceptminer CLI on PATH.
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { WorkbenchHandle, initWorkbench } from "../src/main.js";

const frontendRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");
const repoRoot = path.resolve(frontendRoot, "..");

let tmp: string;
let journalPath: string;
let server: ChildProcess | null = null;
let base = "";
let handle: WorkbenchHandle;

function freshSession(): WorkbenchHandle {
  document.body.innerHTML = '<div id="app"></div>';
  return initWorkbench(document);
}

function q<T extends Element>(selector: string): T {
  const el = document.querySelector(selector);
  if (!el) throw new Error(`no element matches ${selector}`);
  return el as T;
}

function click(el: Element): void {
  el.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

beforeAll(async () => {
  tmp = mkdtempSync(path.join(tmpdir(), "workbench-it-"));
  const runDir = path.join(tmp, "out");
  journalPath = path.join(tmp, "labels.jsonl");

  const pipeline = spawnSync(
    "conceptminer",
    ["pipeline", "--config", "demos/demo.conf", "--output-dir", runDir],
    { cwd: repoRoot, encoding: "utf8", timeout: 90_000 },
  );
  if (pipeline.status !== 0) {
    throw new Error(`pipeline failed (${pipeline.status}): ${pipeline.stderr}`);
  }

  if (!existsSync(path.join(frontendRoot, "dist", "index.html"))) {
    const build = spawnSync("npm", ["run", "build"], {
      cwd: frontendRoot, encoding: "utf8", timeout: 180_000,
    });
    if (build.status !== 0) {
      throw new Error(`workbench build failed: ${build.stderr}`);
    }
  }

  server = spawn(
    "conceptminer",
    ["serve", "--run-dir", runDir, "--journal", journalPath, "--port", "0",
     "--static-dir", path.join(frontendRoot, "dist")],
    { cwd: repoRoot, env: { ...process.env, PYTHONUNBUFFERED: "1" } },
  );
  base = await new Promise<string>((resolve, reject) => {
    let seen = "";
    const timer = setTimeout(
      () => reject(new Error(`server never announced its port: ${seen}`)), 30_000);
    server!.stdout!.on("data", (chunk) => {
      seen += String(chunk);
      const match = seen.match(/on (http:\/\/[\d.]+:\d+)\//);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    server!.stderr!.on("data", (chunk) => { seen += String(chunk); });
    server!.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited before announcing (${code}): ${seen}`));
    });
  });

  // point the simulated browser at the server so the page is served
  // same-origin, exactly as `conceptminer serve --static-dir` does
  const happyDom = (globalThis as unknown as {
    happyDOM?: { setURL(url: string): void };
  }).happyDOM;
  if (!happyDom) throw new Error("happy-dom runtime API not available");
  happyDom.setURL(base + "/");
}, 180_000);

afterAll(() => {
  if (server) server.kill();
  if (tmp) rmSync(tmp, { recursive: true, force: true });
});

describe("workbench against a served demo run", () => {
  it("serves the shell and loads the noun graph", async () => {
    const shell = await fetch("/");
    expect(shell.ok).toBe(true);
    expect(await shell.text()).toContain('id="app"');

    handle = freshSession();
    await handle.workbench.flush();
    const snap = handle.workbench.snapshot();
    expect(snap.error).toBeNull();
    expect(snap.state.activePos).toBe("N");
    expect(snap.posNodes).toContain("idea");
    expect(snap.state.maxWeight).toBeGreaterThan(0);
    expect(snap.runId).toMatch(/^[0-9a-f]{12}$/);
    const drawn = document.querySelectorAll("#graph g[data-node]");
    expect(drawn.length).toBe(snap.posNodes.length);
  }, 30_000);

  it("raising the threshold strips the ego view down to the root", async () => {
    const rootSelect = q<HTMLSelectElement>("#root-select");
    rootSelect.value = "idea";
    rootSelect.dispatchEvent(new Event("change", { bubbles: true }));
    await handle.workbench.flush();
    let nodes = [...document.querySelectorAll("#graph g[data-node]")];
    expect(nodes.length).toBeGreaterThan(1);

    const slider = q<HTMLInputElement>("#threshold");
    slider.value = slider.max;
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    slider.dispatchEvent(new Event("change", { bubbles: true }));
    await handle.workbench.flush();

    nodes = [...document.querySelectorAll("#graph g[data-node]")];
    expect(nodes.map((n) => n.getAttribute("data-node"))).toEqual(["idea"]);
    const snap = handle.workbench.snapshot();
    expect(snap.state.threshold).toBeCloseTo(snap.state.maxWeight, 10);
    expect(snap.error).toBeNull();
  }, 30_000);

  it("assigns the cluster around novelty to Originality", async () => {
    const row = [...document.querySelectorAll("#clusters li.cluster-row")].find(
      (li) => li.querySelector(".cluster-members")!
        .textContent!.split(", ").includes("novelty"));
    expect(row).toBeDefined();
    const clusterId = Number((row as HTMLElement).dataset.cluster);
    click(row!);
    expect(handle.workbench.snapshot().state.selectedCluster).toBe(clusterId);

    // panels re-render on every state change, so re-query after clicks
    click(q('#components li.component-row[data-component="originality"] .component-head'));
    const assign = q<HTMLButtonElement>("#components .assign-button");
    expect(assign.disabled).toBe(false);
    click(assign);
    await handle.workbench.flush();

    const snap = handle.workbench.snapshot();
    expect(snap.error).toBeNull();
    const originality = snap.components.find((c) => c.id === "originality")!;
    const words = originality.member_words.map(([lemma]) => lemma).sort();
    expect(words).toEqual(["imagination", "novelty", "originality"]);
    expect(q("#components .member-words").textContent).toContain("novelty (N)");

    const actions = readFileSync(journalPath, "utf8").trim().split("\n")
      .map((line) => JSON.parse(line));
    const assigns = actions.filter((a) => a.kind === "assign_cluster");
    expect(assigns.length).toBe(1);
    expect(assigns[0].payload).toEqual({
      component_id: "originality", pos: "N", cluster_id: clusterId,
    });
    expect(actions.some((a) => a.kind === "set_threshold")).toBe(true);
  }, 30_000);

  it("a fresh session restores the assignment and threshold", async () => {
    handle = freshSession();
    await handle.workbench.flush();
    const snap = handle.workbench.snapshot();
    expect(snap.error).toBeNull();

    const originality = snap.components.find((c) => c.id === "originality")!;
    const words = originality.member_words.map(([lemma]) => lemma);
    expect(words).toContain("novelty");
    const badge = q('#components li.component-row[data-component="originality"] .count');
    expect(badge.textContent).toBe("3");

    expect(snap.state.threshold).toBeCloseTo(snap.state.maxWeight, 10);
    const slider = q<HTMLInputElement>("#threshold");
    expect(parseFloat(slider.value)).toBeCloseTo(snap.state.maxWeight, 3);
    // whole-graph view at the stored cutoff: every node, one edge left
    expect(document.querySelectorAll("#graph g[data-node]").length)
      .toBe(snap.posNodes.length);
    expect(document.querySelectorAll("#graph line.gv-edge").length).toBe(1);
  }, 30_000);

  it("exports Turtle carrying the new membership", async () => {
    const res = await fetch(handle.api.turtleUrl());
    expect(res.ok).toBe(true);
    const ttl = await res.text();
    const start = ttl.indexOf("onto:originality ");
    expect(start).toBeGreaterThan(-1);
    const end = ttl.indexOf("\n\n", start);
    const block = ttl.slice(start, end === -1 ? undefined : end);
    expect(block).toContain("onto:memberWord");
    expect(block).toContain('"novelty (N)"');
    expect(block).toContain('"imagination (N)"');
  }, 30_000);
});
