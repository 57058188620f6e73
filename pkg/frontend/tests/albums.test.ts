import { beforeEach, describe, expect, it, vi } from 'vitest';
import { AlbumShelf } from '../src/albums.js';
import type { AlbumDoc } from '../src/types.js';

const albums: AlbumDoc[] = [
  {
    id: 'album-0001',
    name: 'warm interiors',
    annotation: 'study set',
    created_from: 'groups',
    created_at: '2024-01-01T00:00:00+00:00',
    images: ['img-001', 'img-002'],
  },
];

describe('AlbumShelf', () => {
  let container: HTMLElement;
  const callbacks = {
    onCreateFromGroups: vi.fn(),
    onSearchFromAlbum: vi.fn(),
  };

  beforeEach(() => {
    vi.clearAllMocks();
    container = document.createElement('div');
  });

  it('disables creation while the positive group is empty', () => {
    new AlbumShelf(container, callbacks).render(albums, {
      positive: [],
      negative: ['img-009'],
      neutral: [],
    });
    const create = container.querySelector<HTMLButtonElement>('.album-create-button')!;
    expect(create.hasAttribute('disabled')).toBe(true);
    create.click();
    expect(callbacks.onCreateFromGroups).not.toHaveBeenCalled();
  });

  it('creates an album from the positive group with the typed name', () => {
    new AlbumShelf(container, callbacks).render(albums, {
      positive: ['img-001'],
      negative: [],
      neutral: [],
    });
    container.querySelector<HTMLInputElement>('.album-name')!.value = 'shortlist';
    container.querySelector<HTMLInputElement>('.album-annotation')!.value = 'first pass';
    container.querySelector<HTMLButtonElement>('.album-create-button')!.click();
    expect(callbacks.onCreateFromGroups).toHaveBeenCalledWith('shortlist', 'first pass');
  });

  it('lists stored albums and launches a search from one', () => {
    new AlbumShelf(container, callbacks).render(albums, {
      positive: [],
      negative: [],
      neutral: [],
    });
    const entry = container.querySelector<HTMLElement>('.album-entry')!;
    expect(entry.dataset.albumId).toBe('album-0001');
    entry.querySelector<HTMLButtonElement>('.album-search')!.click();
    expect(callbacks.onSearchFromAlbum).toHaveBeenCalledWith('album-0001');
  });
});
