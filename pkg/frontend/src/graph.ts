import type { GraphSnapshot } from './types.js';

export interface GraphCallbacks {
  /** Clicking a frontier node issues transition 'd'. */
  onExpandNode(nodeId: string): void;
  imageUri(id: string): string;
}

interface LayoutNode {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

/**
 * Node-link view of the similarity graph. Layout is a small force-directed
 * arrangement computed client side; it is cosmetic only, the engine emits no
 * coordinates. Edge stroke width encodes the similarity score.
 */
export class GraphView {
  private positions = new Map<string, LayoutNode>();

  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: GraphCallbacks,
    private readonly width = 800,
    private readonly height = 600,
  ) {}

  render(graph: GraphSnapshot): void {
    this.layout(graph);
    this.container.innerHTML = '';

    const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    svg.setAttribute('viewBox', `0 0 ${this.width} ${this.height}`);
    svg.classList.add('similarity-graph');

    for (const [u, v, score] of graph.edges) {
      const a = this.positions.get(u)!;
      const b = this.positions.get(v)!;
      const line = document.createElementNS('http://www.w3.org/2000/svg', 'line');
      line.setAttribute('x1', a.x.toFixed(1));
      line.setAttribute('y1', a.y.toFixed(1));
      line.setAttribute('x2', b.x.toFixed(1));
      line.setAttribute('y2', b.y.toFixed(1));
      line.setAttribute('stroke-width', (0.5 + 4 * score).toFixed(2));
      line.dataset.score = score.toFixed(4);
      line.classList.add('graph-edge');
      svg.appendChild(line);
    }

    const frontier = new Set(graph.frontier);
    for (const nodeId of graph.nodes) {
      svg.appendChild(this.renderNode(nodeId, frontier.has(nodeId)));
    }
    this.container.appendChild(svg);
  }

  private renderNode(nodeId: string, inFrontier: boolean): SVGElement {
    const pos = this.positions.get(nodeId)!;
    const group = document.createElementNS('http://www.w3.org/2000/svg', 'g');
    group.classList.add('graph-node');
    if (inFrontier) group.classList.add('frontier');
    group.dataset.imageId = nodeId;
    group.setAttribute('transform', `translate(${pos.x.toFixed(1)}, ${pos.y.toFixed(1)})`);

    const image = document.createElementNS('http://www.w3.org/2000/svg', 'image');
    image.setAttribute('href', this.callbacks.imageUri(nodeId));
    image.setAttribute('x', '-24');
    image.setAttribute('y', '-24');
    image.setAttribute('width', '48');
    image.setAttribute('height', '48');
    group.appendChild(image);

    const label = document.createElementNS('http://www.w3.org/2000/svg', 'text');
    label.textContent = nodeId;
    label.setAttribute('y', '38');
    group.appendChild(label);

    group.addEventListener('click', () => {
      if (group.classList.contains('frontier')) {
        this.callbacks.onExpandNode(nodeId);
      }
    });
    return group;
  }

  /** Keep positions stable across renders; new nodes start near the center. */
  private layout(graph: GraphSnapshot): void {
    const alive = new Set(graph.nodes);
    for (const id of [...this.positions.keys()]) {
      if (!alive.has(id)) this.positions.delete(id);
    }
    let seed = 0;
    let added = false;
    for (const id of graph.nodes) {
      if (!this.positions.has(id)) {
        added = true;
        // deterministic pseudo-random scatter so tests are reproducible
        seed += 1;
        const angle = (seed * 2.399963) % (2 * Math.PI); // golden angle
        const radius = 40 + 18 * Math.sqrt(seed);
        this.positions.set(id, {
          id,
          x: this.width / 2 + radius * Math.cos(angle),
          y: this.height / 2 + radius * Math.sin(angle),
          vx: 0,
          vy: 0,
        });
      }
    }
    // only relax the layout when the node set changed, so a plain re-render
    // leaves every node exactly where the user last saw it
    if (added) this.simulate(graph, 120);
  }

  private simulate(graph: GraphSnapshot, iterations: number): void {
    const nodes = graph.nodes.map((id) => this.positions.get(id)!);
    const springLength = 120;
    for (let step = 0; step < iterations; step++) {
      for (const a of nodes) {
        for (const b of nodes) {
          if (a === b) continue;
          const dx = a.x - b.x;
          const dy = a.y - b.y;
          const d2 = Math.max(dx * dx + dy * dy, 25);
          const push = 2000 / d2;
          a.vx += (dx / Math.sqrt(d2)) * push;
          a.vy += (dy / Math.sqrt(d2)) * push;
        }
      }
      for (const [u, v, score] of graph.edges) {
        const a = this.positions.get(u)!;
        const b = this.positions.get(v)!;
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
        const pull = 0.02 * score * (dist - springLength);
        a.vx += (dx / dist) * pull;
        a.vy += (dy / dist) * pull;
        b.vx -= (dx / dist) * pull;
        b.vy -= (dy / dist) * pull;
      }
      for (const node of nodes) {
        node.x = Math.min(this.width - 30, Math.max(30, node.x + node.vx * 0.4));
        node.y = Math.min(this.height - 30, Math.max(30, node.y + node.vy * 0.4));
        node.vx *= 0.5;
        node.vy *= 0.5;
      }
    }
  }
}
