import {
  ApiClient,
  ApiError,
  ClustersPayload,
  ComponentEntry,
  GraphEdge,
  PosCode,
} from "./api.js";
import {
  ViewState,
  initialViewState,
  withCluster,
  withComponent,
  withGraphBounds,
  withPos,
  withRoot,
  withThreshold,
} from "./state.js";
import type { ViewGraph } from "./graphview.js";

export interface WorkbenchSnapshot {
  state: ViewState;
  posNodes: string[];
  view: ViewGraph | null;
  clusters: ClustersPayload | null;
  components: ComponentEntry[];
  error: string | null;
  runId: string;
}

interface CurrentView {
  nodes: string[];
  edges: GraphEdge[];
  labels: Record<string, number>;
  root: string | null;
}

/**
 * Holds the whole workbench state and talks to the API. The UI layer
 * renders snapshots and calls the methods below; nothing in here
 * touches the DOM. All server-bound work funnels through one promise
 * chain, so actions land on the journal in the order the analyst
 * made them, and flush() gives tests a settled point to assert at.
 *
 * The state here is a cache, never the truth: any snapshot can be
 * rebuilt from the API alone, which is what makes reloads safe.
 */
export class Workbench {
  private state: ViewState = initialViewState();
  private chain: Promise<void> = Promise.resolve();
  private listeners: ((snapshot: WorkbenchSnapshot) => void)[] = [];

  private llrByNode = new Map<string, number>();
  private storedThresholds: Record<string, number> = {};
  private posNodes: string[] = [];
  private current: CurrentView | null = null;
  private clustersByPos = new Map<PosCode, ClustersPayload>();
  private components: ComponentEntry[] = [];
  private error: string | null = null;
  private runId = "";

  constructor(private api: ApiClient) {}

  onChange(listener: (snapshot: WorkbenchSnapshot) => void): void {
    this.listeners.push(listener);
  }

  /** Resolves when every queued operation so far has finished. */
  flush(): Promise<void> {
    return this.chain;
  }

  snapshot(): WorkbenchSnapshot {
    return {
      state: this.state,
      posNodes: [...this.posNodes],
      view: this.buildView(),
      clusters: this.clustersByPos.get(this.state.activePos) ?? null,
      components: this.components,
      error: this.error,
      runId: this.runId,
    };
  }

  start(): Promise<void> {
    return this.enqueue(async () => {
      const [keyness, components, thresholds, runmeta] = await Promise.all([
        this.api.keyness(),
        this.api.components(),
        this.api.thresholds(),
        this.api.runmeta(),
      ]);
      for (const record of keyness.records) {
        this.llrByNode.set(`${record.pos}:${record.lemma}`, record.llr);
      }
      this.components = components.components;
      this.storedThresholds = thresholds.thresholds;
      this.runId = String(runmeta["run_id"] ?? "");
      await this.loadPosInner(this.state.activePos);
    });
  }

  setPos(pos: PosCode): Promise<void> {
    return this.enqueue(() => this.loadPosInner(pos));
  }

  setRoot(root: string | null): Promise<void> {
    return this.enqueue(async () => {
      this.state = withRoot(this.state, root);
      await this.refreshInner();
    });
  }

  /** Live slider movement: refetch the view, nothing journaled. */
  previewThreshold(value: number): Promise<void> {
    return this.enqueue(async () => {
      this.state = withThreshold(this.state, value);
      await this.refreshInner();
    });
  }

  /** Slider release: persist the setting for this category. */
  commitThreshold(): Promise<void> {
    return this.enqueue(async () => {
      const pos = this.state.activePos;
      const threshold = this.state.threshold;
      try {
        await this.api.postAction("set_threshold", { pos, threshold });
        this.storedThresholds[pos] = threshold;
        this.error = null;
      } catch (err) {
        this.error = describeError(err);
      }
      this.emit();
    });
  }

  selectCluster(clusterId: number | null): void {
    this.state = withCluster(this.state, clusterId);
    this.emit();
  }

  selectComponent(componentId: string | null): void {
    this.state = withComponent(this.state, componentId);
    this.emit();
  }

  /** Toggle the cluster that a clicked node belongs to. */
  selectClusterOfNode(lemma: string): void {
    const clusters = this.clustersByPos.get(this.state.activePos);
    if (!clusters) return;
    const label = clusters.labels[lemma];
    if (label === undefined) return;
    this.selectCluster(this.state.selectedCluster === label ? null : label);
  }

  /**
   * Assign the selected cluster to the selected component. The panel
   * is bumped optimistically and snapped back if the server says no.
   */
  assignSelected(): Promise<void> {
    return this.enqueue(async () => {
      const componentId = this.state.selectedComponent;
      const clusterId = this.state.selectedCluster;
      const clusters = this.clustersByPos.get(this.state.activePos);
      if (componentId === null || clusterId === null || !clusters) return;

      const before = this.components;
      const lemmas = clusters.clusters[String(clusterId)] ?? [];
      this.components = patchMembers(before, componentId, lemmas, this.state.activePos);
      this.emit();
      try {
        await this.api.postAction("assign_cluster", {
          component_id: componentId,
          pos: this.state.activePos,
          cluster_id: clusterId,
        });
        await this.reloadComponents();
        this.error = null;
      } catch (err) {
        this.components = before;
        this.error = describeError(err);
      }
      this.emit();
    });
  }

  saveGloss(componentId: string, gloss: string, fourPs: string[]): Promise<void> {
    return this.enqueue(async () => {
      try {
        await this.api.postAction("edit_gloss", {
          component_id: componentId,
          gloss,
          four_ps: fourPs,
        });
        await this.reloadComponents();
        this.error = null;
      } catch (err) {
        this.error = describeError(err);
      }
      this.emit();
    });
  }

  dismissError(): void {
    this.error = null;
    this.emit();
  }

  // -- internals -------------------------------------------------------

  private enqueue(task: () => Promise<void>): Promise<void> {
    const next = this.chain.then(task, task);
    this.chain = next.catch((err) => {
      // a failed refetch must not wedge the queue
      this.error = describeError(err);
      this.emit();
    });
    return this.chain;
  }

  private async loadPosInner(pos: PosCode): Promise<void> {
    const base = await this.api.graph(pos);
    if (!this.clustersByPos.has(pos)) {
      this.clustersByPos.set(pos, await this.api.clusters(pos));
    }
    this.posNodes = base.nodes;
    this.state = withGraphBounds(withPos(this.state, pos), base.max_weight);
    const stored = this.storedThresholds[pos];
    if (stored !== undefined) {
      this.state = withThreshold(this.state, stored);
    }
    if (this.state.threshold > 0) {
      await this.refreshInner();
      return;
    }
    const labels = this.clustersByPos.get(pos)!.labels;
    this.current = { nodes: base.nodes, edges: base.edges, labels, root: null };
    this.error = null;
    this.emit();
  }

  private async refreshInner(): Promise<void> {
    const { activePos, root, threshold } = this.state;
    try {
      if (root !== null) {
        const ego = await this.api.ego(activePos, root, { threshold, radius: 1 });
        this.current = {
          nodes: ego.members,
          edges: ego.edges,
          labels: ego.labels,
          root: ego.root,
        };
      } else {
        const graph = await this.api.graph(activePos, threshold);
        const labels = this.clustersByPos.get(activePos)?.labels ?? {};
        this.current = { nodes: graph.nodes, edges: graph.edges, labels, root: null };
      }
      this.error = null;
    } catch (err) {
      // keep the last good view on screen
      this.error = describeError(err);
    }
    this.emit();
  }

  private async reloadComponents(): Promise<void> {
    const payload = await this.api.components();
    this.components = payload.components;
  }

  private buildView(): ViewGraph | null {
    if (!this.current) return null;
    const { activePos, selectedCluster } = this.state;
    return {
      nodes: this.current.nodes.map((id) => {
        const cluster = this.current!.labels[id] ?? null;
        return {
          id,
          llr: this.llrByNode.get(`${activePos}:${id}`) ?? 0,
          cluster,
          isRoot: id === this.current!.root,
          inSelectedCluster: selectedCluster !== null && cluster === selectedCluster,
        };
      }),
      edges: this.current.edges,
    };
  }

  private emit(): void {
    const snapshot = this.snapshot();
    for (const listener of this.listeners) listener(snapshot);
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}

function patchMembers(
  components: ComponentEntry[],
  componentId: string,
  lemmas: string[],
  pos: PosCode,
): ComponentEntry[] {
  return components.map((component) => {
    if (component.id !== componentId) return component;
    const have = new Set(component.member_words.map(([l, p]) => `${l}|${p}`));
    const added = lemmas
      .filter((lemma) => !have.has(`${lemma}|${pos}`))
      .map((lemma) => [lemma, pos] as [string, string]);
    return { ...component, member_words: [...component.member_words, ...added] };
  });
}
