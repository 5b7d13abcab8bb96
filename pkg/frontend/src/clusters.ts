import type { ClustersPayload } from "./api.js";
import { clusterColor } from "./graphview.js";

/**
 * Flat list of the active category's clusters. Clicking a row toggles
 * the selection; the selected cluster is what an assign sends.
 */
export class ClusterPanel {
  onSelect: ((clusterId: number | null) => void) | null = null;

  constructor(private container: HTMLElement) {}

  update(payload: ClustersPayload | null, selected: number | null): void {
    const doc = this.container.ownerDocument;
    this.container.innerHTML = "";
    const heading = doc.createElement("h2");
    heading.textContent = "Clusters";
    this.container.appendChild(heading);
    if (!payload) return;

    const note = doc.createElement("p");
    note.className = "panel-note";
    note.textContent = payload.converged
      ? `seed ${payload.seed}, settled after ${payload.iterations} rounds`
      : `seed ${payload.seed}, stopped at ${payload.iterations} rounds`;
    this.container.appendChild(note);

    const list = doc.createElement("ul");
    list.className = "cluster-list";
    const ids = Object.keys(payload.clusters)
      .map(Number)
      .sort((x, y) => payload.clusters[String(y)].length - payload.clusters[String(x)].length || x - y);
    for (const id of ids) {
      const members = payload.clusters[String(id)];
      const item = doc.createElement("li");
      item.className = "cluster-row" + (selected === id ? " selected" : "");
      item.dataset.cluster = String(id);

      const swatch = doc.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = clusterColor(id);
      item.appendChild(swatch);

      const text = doc.createElement("span");
      text.className = "cluster-members";
      text.textContent = members.join(", ");
      item.appendChild(text);

      const count = doc.createElement("span");
      count.className = "count";
      count.textContent = String(members.length);
      item.appendChild(count);

      item.addEventListener("click", () => {
        if (this.onSelect) this.onSelect(selected === id ? null : id);
      });
      list.appendChild(item);
    }
    this.container.appendChild(list);
  }
}
