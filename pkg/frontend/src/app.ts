import { ApiClient, ApiError } from './api.js';
import { AlbumShelf } from './albums.js';
import { GraphView } from './graph.js';
import { MosaicView } from './mosaic.js';
import { ViewState } from './state.js';
import type { AlbumDoc, Judgment } from './types.js';

export interface AppElements {
  main: HTMLElement;
  status: HTMLElement;
}

/**
 * Top-level controller: one active session per tab; every state-changing
 * gesture maps to exactly one transition letter on the service.
 */
export class App {
  readonly state = new ViewState();
  private readonly mosaicView: MosaicView;
  private readonly graphView: GraphView;
  private readonly albumShelf: AlbumShelf;
  private imageUris = new Map<string, string>();
  private albums: AlbumDoc[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly elements: AppElements,
  ) {
    this.mosaicView = new MosaicView(this.elements.main, this.state, {
      onNextMosaic: (judgments) => void this.nextMosaic(judgments),
      onOpenGraph: () => void this.openGraphFromMosaic(),
      onCreateAlbum: () => void this.createAlbumFromMosaic(),
      imageUri: (id) => this.imageUri(id),
    });
    this.graphView = new GraphView(this.elements.main, {
      onExpandNode: (nodeId) => void this.expandNode(nodeId),
      imageUri: (id) => this.imageUri(id),
    });
    this.albumShelf = new AlbumShelf(this.elements.main, {
      onCreateFromGroups: (name, annotation) => void this.createAlbumFromGroups(name, annotation),
      onSearchFromAlbum: (albumId) => void this.searchFromAlbum(albumId),
    });
  }

  async start(): Promise<void> {
    const session = await this.api.createSession();
    this.state.acknowledge(session);
    const page = await this.api.listImages(0, 500);
    for (const item of page.items) this.imageUris.set(item.id, item.uri);
    this.setStatus(`session ${session.id} ready (${page.total} images)`);
  }

  imageUri(id: string): string {
    return this.imageUris.get(id) ?? '';
  }

  // --- gestures (one transition each) --------------------------------------

  async exploreFromImage(imageId: string): Promise<void> {
    await this.transition('b', { image: imageId });
    this.showMosaic();
  }

  async nextMosaic(judgments: Record<string, Judgment>): Promise<void> {
    await this.transition('k', { judgments });
    this.showMosaic();
  }

  async openGraphFromMosaic(): Promise<void> {
    await this.transition('h', { origin: 'mosaic' });
    this.showGraph();
  }

  async expandNode(nodeId: string): Promise<void> {
    await this.transition('d', { node: nodeId });
    this.showGraph();
  }

  async createAlbumFromGroups(name: string, annotation: string): Promise<void> {
    const album = await this.transition('i', { origin: 'groups', name, annotation });
    if (album) this.albums.push(album);
    await this.showAlbums();
  }

  async createAlbumFromMosaic(): Promise<void> {
    const album = await this.transition('i', { origin: 'mosaic', name: 'mosaic snapshot' });
    if (album) this.albums.push(album);
    await this.showAlbums();
  }

  async searchFromAlbum(albumId: string): Promise<void> {
    await this.transition('j', { album: albumId });
    this.showRanked();
  }

  // --- rendering ------------------------------------------------------------

  showMosaic(): void {
    this.state.view = 'mosaic';
    const mosaic = this.state.snapshot?.mosaic;
    if (mosaic) this.mosaicView.render(mosaic);
  }

  showGraph(): void {
    this.state.view = 'graph';
    const graph = this.state.snapshot?.graph;
    if (graph) this.graphView.render(graph);
  }

  async showAlbums(): Promise<void> {
    this.state.view = 'albums';
    this.albums = (await this.api.listAlbums()).albums;
    const groups = this.state.snapshot?.groups ?? { positive: [], negative: [], neutral: [] };
    this.albumShelf.render(this.albums, groups);
  }

  showRanked(): void {
    this.state.view = 'ranked';
    const ranked = this.state.snapshot?.ranked ?? [];
    const main = this.elements.main;
    main.innerHTML = '';
    const list = document.createElement('ol');
    list.className = 'ranked-list';
    for (const [imageId, score] of ranked) {
      const item = document.createElement('li');
      item.dataset.imageId = imageId;
      item.dataset.score = score.toFixed(4);
      item.textContent = `${imageId} — ${score.toFixed(4)}`;
      list.appendChild(item);
    }
    main.appendChild(list);
  }

  showGroups(): void {
    this.state.view = 'groups';
    const groups = this.state.snapshot?.groups;
    const main = this.elements.main;
    main.innerHTML = '';
    for (const tray of ['positive', 'negative', 'neutral'] as const) {
      const section = document.createElement('section');
      section.className = `group-tray ${tray}`;
      const heading = document.createElement('h3');
      heading.textContent = `${tray} (${groups?.[tray].length ?? 0})`;
      section.appendChild(heading);
      for (const imageId of groups?.[tray] ?? []) {
        const img = document.createElement('img');
        img.src = this.imageUri(imageId);
        img.alt = imageId;
        img.dataset.imageId = imageId;
        section.appendChild(img);
      }
      main.appendChild(section);
    }
  }

  private async transition(
    letter: 'a' | 'b' | 'c' | 'd' | 'e' | 'f' | 'g' | 'h' | 'i' | 'j' | 'k',
    args: Record<string, unknown>,
  ): Promise<AlbumDoc | undefined> {
    if (!this.state.sessionId) throw new Error('no active session');
    try {
      const response = await this.api.transition(this.state.sessionId, letter, args);
      this.state.acknowledge(response.session);
      this.setStatus(`transition ${letter} ok`);
      return response.album;
    } catch (error) {
      if (error instanceof ApiError) {
        this.setStatus(`error [${error.code}] ${error.message}`, true);
        return undefined;
      }
      throw error;
    }
  }

  private setStatus(text: string, isError = false): void {
    this.elements.status.textContent = text;
    this.elements.status.classList.toggle('error', isError);
  }
}
