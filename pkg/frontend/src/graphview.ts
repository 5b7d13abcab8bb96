import type { GraphEdge } from "./api.js";
import { computeLayout, LayoutPoint } from "./layout.js";

export const VIEW_WIDTH = 920;
export const VIEW_HEIGHT = 640;

const SVG_NS = "http://www.w3.org/2000/svg";

// Golden-angle hue walk: well separated colors for small id ranges,
// and the same id always gets the same color as the cluster panel.
export function clusterColor(clusterId: number): string {
  const hue = (clusterId * 137.508) % 360;
  return `hsl(${hue.toFixed(1)}, 62%, 48%)`;
}

export interface ViewNode {
  id: string;
  llr: number;
  cluster: number | null;
  isRoot: boolean;
  inSelectedCluster: boolean;
}

export interface ViewGraph {
  nodes: ViewNode[];
  edges: GraphEdge[];
}

/**
 * SVG renderer for one similarity or ego graph. Keeps element
 * identity across updates so CSS transitions carry nodes to their
 * new positions instead of redrawing from scratch.
 */
export class GraphView {
  onNodeClick: ((id: string) => void) | null = null;

  private edgeLayer: SVGGElement;
  private nodeLayer: SVGGElement;
  private nodeElements = new Map<string, SVGGElement>();
  private edgeElements = new Map<string, SVGLineElement>();
  private positions = new Map<string, LayoutPoint>();
  private emptyNote: SVGTextElement;

  constructor(private svg: SVGSVGElement) {
    svg.setAttribute("viewBox", `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`);
    svg.setAttribute("preserveAspectRatio", "xMidYMid meet");
    this.edgeLayer = this.svg.ownerDocument.createElementNS(SVG_NS, "g") as SVGGElement;
    this.nodeLayer = this.svg.ownerDocument.createElementNS(SVG_NS, "g") as SVGGElement;
    this.edgeLayer.setAttribute("class", "gv-edges");
    this.nodeLayer.setAttribute("class", "gv-nodes");
    svg.appendChild(this.edgeLayer);
    svg.appendChild(this.nodeLayer);
    this.emptyNote = this.svg.ownerDocument.createElementNS(SVG_NS, "text") as SVGTextElement;
    this.emptyNote.setAttribute("class", "gv-empty");
    this.emptyNote.setAttribute("x", String(VIEW_WIDTH / 2));
    this.emptyNote.setAttribute("y", String(VIEW_HEIGHT / 2));
    this.emptyNote.setAttribute("text-anchor", "middle");
    this.emptyNote.textContent = "no nodes at this threshold";
    svg.appendChild(this.emptyNote);
    this.emptyNote.style.display = "none";
  }

  update(graph: ViewGraph): void {
    const ids = graph.nodes.map((n) => n.id);
    const root = graph.nodes.find((n) => n.isRoot);
    const pinned = root
      ? new Map([[root.id, { x: VIEW_WIDTH / 2, y: VIEW_HEIGHT / 2 }]])
      : undefined;
    const carried = ids.filter((id) => this.positions.has(id)).length;
    // refine gently when most of the picture survives, otherwise lay
    // out from scratch; both paths are deterministic
    const iterations = carried >= ids.length * 0.6 && carried > 0 ? 80 : 250;
    this.positions = computeLayout(ids, graph.edges, {
      width: VIEW_WIDTH,
      height: VIEW_HEIGHT,
      iterations,
      pinned,
      previous: this.positions,
    });

    this.emptyNote.style.display = ids.length === 0 ? "" : "none";
    this.renderEdges(graph.edges);
    this.renderNodes(graph.nodes);
  }

  positionOf(id: string): LayoutPoint | undefined {
    return this.positions.get(id);
  }

  private renderEdges(edges: GraphEdge[]): void {
    const doc = this.svg.ownerDocument;
    const maxW = edges.reduce((m, e) => Math.max(m, e.w), 0) || 1;
    const seen = new Set<string>();
    for (const edge of edges) {
      const key = `${edge.a}|${edge.b}`;
      seen.add(key);
      let line = this.edgeElements.get(key);
      if (!line) {
        line = doc.createElementNS(SVG_NS, "line") as SVGLineElement;
        line.setAttribute("class", "gv-edge");
        const title = doc.createElementNS(SVG_NS, "title");
        line.appendChild(title);
        this.edgeLayer.appendChild(line);
        this.edgeElements.set(key, line);
      }
      const a = this.positions.get(edge.a)!;
      const b = this.positions.get(edge.b)!;
      line.setAttribute("x1", a.x.toFixed(1));
      line.setAttribute("y1", a.y.toFixed(1));
      line.setAttribute("x2", b.x.toFixed(1));
      line.setAttribute("y2", b.y.toFixed(1));
      line.setAttribute("stroke-width", (1 + 3.5 * (edge.w / maxW)).toFixed(2));
      line.firstChild!.textContent = `${edge.a} / ${edge.b}: ${edge.w.toFixed(3)}`;
    }
    for (const [key, line] of [...this.edgeElements]) {
      if (!seen.has(key)) {
        line.remove();
        this.edgeElements.delete(key);
      }
    }
  }

  private renderNodes(nodes: ViewNode[]): void {
    const doc = this.svg.ownerDocument;
    const maxLlr = nodes.reduce((m, n) => Math.max(m, n.llr), 0);
    const seen = new Set<string>();
    for (const node of nodes) {
      seen.add(node.id);
      let group = this.nodeElements.get(node.id);
      if (!group) {
        group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
        group.setAttribute("data-node", node.id);
        const circle = doc.createElementNS(SVG_NS, "circle");
        const label = doc.createElementNS(SVG_NS, "text");
        const title = doc.createElementNS(SVG_NS, "title");
        label.setAttribute("class", "gv-label");
        label.setAttribute("text-anchor", "middle");
        group.appendChild(circle);
        group.appendChild(label);
        group.appendChild(title);
        group.addEventListener("click", () => {
          if (this.onNodeClick) this.onNodeClick(node.id);
        });
        this.nodeLayer.appendChild(group);
        this.nodeElements.set(node.id, group);
      }
      const classes = ["gv-node"];
      if (node.isRoot) classes.push("gv-root");
      if (node.inSelectedCluster) classes.push("gv-selected");
      group.setAttribute("class", classes.join(" "));

      const radius = maxLlr > 0 ? 7 + 11 * Math.sqrt(node.llr / maxLlr) : 9;
      const point = this.positions.get(node.id)!;
      group.style.transform = `translate(${point.x.toFixed(1)}px, ${point.y.toFixed(1)}px)`;

      const circle = group.children[0] as SVGCircleElement;
      circle.setAttribute("r", radius.toFixed(1));
      circle.setAttribute("fill", node.cluster === null ? "#8a8f98" : clusterColor(node.cluster));

      const label = group.children[1] as SVGTextElement;
      label.setAttribute("y", (radius + 13).toFixed(1));
      label.textContent = node.id;

      const title = group.children[2] as SVGTitleElement;
      title.textContent = node.cluster === null
        ? `${node.id}  (llr ${node.llr.toFixed(2)})`
        : `${node.id}  (llr ${node.llr.toFixed(2)}, cluster ${node.cluster})`;
    }
    for (const [id, group] of [...this.nodeElements]) {
      if (!seen.has(id)) {
        group.remove();
        this.nodeElements.delete(id);
      }
    }
  }
}
