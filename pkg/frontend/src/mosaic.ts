import type { Judgment, MosaicSnapshot } from './types.js';
import type { ViewState } from './state.js';

export interface MosaicCallbacks {
  /** One gesture, one transition: submits pending judgments then 'k'. */
  onNextMosaic(judgments: Record<string, Judgment>): void;
  onOpenGraph(): void;
  onCreateAlbum(): void;
  imageUri(id: string): string;
}

const JUDGMENT_GLYPH: Record<Judgment, string> = {
  positive: '✓',
  negative: '✗',
  neutral: '·',
};

/** Interactive mosaic grid with a tri-state choose/reject/no-opinion control per tile. */
export class MosaicView {
  constructor(
    private readonly container: HTMLElement,
    private readonly state: ViewState,
    private readonly callbacks: MosaicCallbacks,
  ) {}

  render(mosaic: MosaicSnapshot): void {
    this.container.innerHTML = '';
    const grid = document.createElement('div');
    grid.className = 'mosaic-grid';
    grid.dataset.round = String(mosaic.round);

    for (const tileId of mosaic.tiles) {
      grid.appendChild(this.renderTile(tileId));
    }
    this.container.appendChild(grid);
    this.container.appendChild(this.renderActions());
  }

  private renderTile(tileId: string): HTMLElement {
    const tile = document.createElement('figure');
    tile.className = 'mosaic-tile';
    tile.dataset.imageId = tileId;

    const img = document.createElement('img');
    img.src = this.callbacks.imageUri(tileId);
    img.alt = tileId;
    img.onerror = () => {
      img.removeAttribute('src');
      tile.classList.add('thumb-missing');
    };
    tile.appendChild(img);

    const control = document.createElement('button');
    control.className = 'tristate';
    this.paintControl(control, this.state.judgmentOf(tileId));
    control.addEventListener('click', () => {
      const judgment = this.state.cycleJudgment(tileId);
      this.paintControl(control, judgment);
      this.refreshActions();
    });
    tile.appendChild(control);
    return tile;
  }

  private paintControl(control: HTMLElement, judgment: Judgment): void {
    control.dataset.judgment = judgment;
    control.textContent = JUDGMENT_GLYPH[judgment];
    control.setAttribute('aria-label', `judgment: ${judgment}`);
  }

  private renderActions(): HTMLElement {
    const bar = document.createElement('div');
    bar.className = 'mosaic-actions';

    const next = document.createElement('button');
    next.className = 'next-mosaic';
    next.textContent = 'Propose next mosaic';
    next.addEventListener('click', () => {
      if (next.hasAttribute('disabled')) return;
      this.callbacks.onNextMosaic(this.state.takeJudgments());
    });
    bar.appendChild(next);

    const graph = document.createElement('button');
    graph.className = 'open-graph';
    graph.textContent = 'View as graph';
    graph.addEventListener('click', () => this.callbacks.onOpenGraph());
    bar.appendChild(graph);

    const album = document.createElement('button');
    album.className = 'album-from-mosaic';
    album.textContent = 'Save mosaic as album';
    album.addEventListener('click', () => this.callbacks.onCreateAlbum());
    bar.appendChild(album);

    this.refreshActions(bar);
    return bar;
  }

  /** "Next mosaic" mirrors the engine's NoFeedback rule: disabled until a judgment exists. */
  private refreshActions(bar?: HTMLElement): void {
    const scope = bar ?? this.container;
    const next = scope.querySelector<HTMLButtonElement>('.next-mosaic');
    if (!next) return;
    const mayProceed = this.state.hasFeedback() || this.state.snapshot?.current_query != null;
    if (mayProceed) {
      next.removeAttribute('disabled');
    } else {
      next.setAttribute('disabled', '');
    }
  }
}
