import { ApiClient, POS_CODES, PosCode } from "./api.js";
import { Workbench, WorkbenchSnapshot } from "./app.js";
import { ClusterPanel } from "./clusters.js";
import { ComponentsPanel } from "./components.js";
import { GraphView } from "./graphview.js";

export interface WorkbenchHandle {
  workbench: Workbench;
  api: ApiClient;
}

const POS_NAMES: Record<PosCode, string> = {
  N: "Nouns",
  V: "Verbs",
  J: "Adjectives",
  R: "Adverbs",
};

/**
 * Build the workbench UI inside the page's #app element and start
 * loading. The api base is empty in production (same origin as the
 * serving process); tests point it at a server they spawned.
 */
export function initWorkbench(doc: Document, apiBase = ""): WorkbenchHandle {
  const mount = doc.getElementById("app");
  if (!mount) throw new Error("missing #app element");
  mount.innerHTML = "";

  const header = doc.createElement("header");
  const title = doc.createElement("h1");
  title.textContent = "Concept Workbench";
  header.appendChild(title);

  const tabs = doc.createElement("nav");
  tabs.className = "pos-tabs";
  const tabButtons = new Map<PosCode, HTMLButtonElement>();
  for (const pos of POS_CODES) {
    const button = doc.createElement("button");
    button.type = "button";
    button.className = "pos-tab";
    button.dataset.pos = pos;
    button.textContent = POS_NAMES[pos];
    tabs.appendChild(button);
    tabButtons.set(pos, button);
  }
  header.appendChild(tabs);

  const controls = doc.createElement("div");
  controls.className = "controls";

  const rootSelect = doc.createElement("select");
  rootSelect.id = "root-select";
  controls.appendChild(rootSelect);

  const sliderWrap = doc.createElement("label");
  sliderWrap.className = "threshold-wrap";
  sliderWrap.appendChild(doc.createTextNode("threshold"));
  const slider = doc.createElement("input");
  slider.type = "range";
  slider.id = "threshold";
  slider.min = "0";
  sliderWrap.appendChild(slider);
  const sliderValue = doc.createElement("output");
  sliderValue.id = "threshold-value";
  sliderWrap.appendChild(sliderValue);
  controls.appendChild(sliderWrap);

  const exportLink = doc.createElement("a");
  exportLink.id = "export-link";
  exportLink.textContent = "Export Turtle";
  exportLink.target = "_blank";
  controls.appendChild(exportLink);

  const runLabel = doc.createElement("span");
  runLabel.className = "run-id";
  controls.appendChild(runLabel);

  header.appendChild(controls);
  mount.appendChild(header);

  const banner = doc.createElement("div");
  banner.id = "banner";
  banner.hidden = true;
  const bannerText = doc.createElement("span");
  banner.appendChild(bannerText);
  const bannerClose = doc.createElement("button");
  bannerClose.type = "button";
  bannerClose.textContent = "dismiss";
  banner.appendChild(bannerClose);
  mount.appendChild(banner);

  const row = doc.createElement("div");
  row.className = "main-row";
  const graphPanel = doc.createElement("section");
  graphPanel.className = "graph-panel";
  const svg = doc.createElementNS("http://www.w3.org/2000/svg", "svg") as SVGSVGElement;
  svg.id = "graph";
  graphPanel.appendChild(svg);
  row.appendChild(graphPanel);

  const side = doc.createElement("aside");
  side.className = "side-panels";
  const clustersBox = doc.createElement("div");
  clustersBox.id = "clusters";
  side.appendChild(clustersBox);
  const componentsBox = doc.createElement("div");
  componentsBox.id = "components";
  side.appendChild(componentsBox);
  row.appendChild(side);
  mount.appendChild(row);

  const api = new ApiClient(apiBase);
  const workbench = new Workbench(api);
  const graphView = new GraphView(svg);
  const clusterPanel = new ClusterPanel(clustersBox);
  const componentsPanel = new ComponentsPanel(componentsBox);

  exportLink.href = api.turtleUrl();

  for (const [pos, button] of tabButtons) {
    button.addEventListener("click", () => {
      workbench.setPos(pos);
    });
  }
  rootSelect.addEventListener("change", () => {
    workbench.setRoot(rootSelect.value === "" ? null : rootSelect.value);
  });
  slider.addEventListener("input", () => {
    workbench.previewThreshold(parseFloat(slider.value));
  });
  slider.addEventListener("change", () => {
    workbench.commitThreshold();
  });
  bannerClose.addEventListener("click", () => workbench.dismissError());
  graphView.onNodeClick = (id) => workbench.selectClusterOfNode(id);
  clusterPanel.onSelect = (id) => workbench.selectCluster(id);
  componentsPanel.onSelect = (id) => workbench.selectComponent(id);
  componentsPanel.onAssign = () => {
    workbench.assignSelected();
  };
  componentsPanel.onSaveGloss = (id, gloss, fourPs) => {
    workbench.saveGloss(id, gloss, fourPs);
  };

  let lastPosNodes = "";
  workbench.onChange((snapshot: WorkbenchSnapshot) => {
    for (const [pos, button] of tabButtons) {
      button.classList.toggle("active", pos === snapshot.state.activePos);
    }

    // rebuild the root choices only when the node set changes, so an
    // open dropdown is not yanked shut by unrelated refreshes
    const key = `${snapshot.state.activePos}:${snapshot.posNodes.join(",")}`;
    if (key !== lastPosNodes) {
      lastPosNodes = key;
      rootSelect.innerHTML = "";
      const wholeGraph = doc.createElement("option");
      wholeGraph.value = "";
      wholeGraph.textContent = "(whole graph)";
      rootSelect.appendChild(wholeGraph);
      for (const node of snapshot.posNodes) {
        const option = doc.createElement("option");
        option.value = node;
        option.textContent = node;
        rootSelect.appendChild(option);
      }
    }
    rootSelect.value = snapshot.state.root ?? "";

    const max = snapshot.state.maxWeight;
    slider.max = max > 0 ? max.toFixed(4) : "0";
    slider.step = max > 0 ? (max / 200).toFixed(5) : "0.001";
    slider.value = String(snapshot.state.threshold);
    sliderValue.textContent = snapshot.state.threshold.toFixed(3);

    if (snapshot.view) graphView.update(snapshot.view);
    clusterPanel.update(snapshot.clusters, snapshot.state.selectedCluster);
    componentsPanel.update(
      snapshot.components,
      snapshot.state.selectedComponent,
      snapshot.state.selectedCluster !== null,
    );

    banner.hidden = snapshot.error === null;
    bannerText.textContent = snapshot.error ?? "";
    runLabel.textContent = snapshot.runId ? `run ${snapshot.runId}` : "";
  });

  workbench.start();
  return { workbench, api };
}
