import type { AlbumDoc, GroupsSnapshot } from './types.js';

export interface AlbumShelfCallbacks {
  /** Create-from-groups issues transition 'i' with origin "groups". */
  onCreateFromGroups(name: string, annotation: string): void;
  /** Opening a search from an album issues transition 'j'. */
  onSearchFromAlbum(albumId: string): void;
}

/**
 * Album shelf: create from the current positive group, open a search from a
 * stored album. Deletion is deliberately absent.
 */
export class AlbumShelf {
  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: AlbumShelfCallbacks,
  ) {}

  render(albums: AlbumDoc[], groups: GroupsSnapshot): void {
    this.container.innerHTML = '';
    this.container.appendChild(this.renderCreateForm(groups));

    const shelf = document.createElement('ul');
    shelf.className = 'album-shelf';
    for (const album of albums) {
      shelf.appendChild(this.renderEntry(album));
    }
    this.container.appendChild(shelf);
  }

  private renderCreateForm(groups: GroupsSnapshot): HTMLElement {
    const form = document.createElement('div');
    form.className = 'album-create';

    const name = document.createElement('input');
    name.className = 'album-name';
    name.placeholder = 'Album name';
    form.appendChild(name);

    const annotation = document.createElement('input');
    annotation.className = 'album-annotation';
    annotation.placeholder = 'Annotation';
    form.appendChild(annotation);

    const create = document.createElement('button');
    create.className = 'album-create-button';
    create.textContent = `Create from ${groups.positive.length} positive image(s)`;
    // empty source would be refused by the engine: mirror it as a disabled action
    if (groups.positive.length === 0) create.setAttribute('disabled', '');
    create.addEventListener('click', () => {
      if (create.hasAttribute('disabled')) return;
      this.callbacks.onCreateFromGroups(name.value || 'untitled', annotation.value);
    });
    form.appendChild(create);
    return form;
  }

  private renderEntry(album: AlbumDoc): HTMLElement {
    const entry = document.createElement('li');
    entry.className = 'album-entry';
    entry.dataset.albumId = album.id;

    const title = document.createElement('span');
    title.className = 'album-title';
    title.textContent = `${album.name} (${album.images.length} image(s))`;
    title.title = album.annotation;
    entry.appendChild(title);

    const open = document.createElement('button');
    open.className = 'album-search';
    open.textContent = 'Search from album';
    open.addEventListener('click', () => this.callbacks.onSearchFromAlbum(album.id));
    entry.appendChild(open);
    return entry;
  }
}
