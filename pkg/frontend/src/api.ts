import type {
  AlbumDoc,
  ApiErrorPayload,
  ImageDoc,
  SessionSnapshot,
  TransitionLetter,
  TransitionResponse,
} from './types.js';

/** Service error with the stable machine-readable code surfaced to the UI. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, payload: ApiErrorPayload) {
    super(payload.message);
    this.code = payload.code;
    this.status = status;
    this.detail = payload.detail;
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, data as ApiErrorPayload);
    }
    return data as T;
  }

  health(): Promise<{ status: string; corpus_size: number; thesaurus_version: string }> {
    return this.request('GET', '/health');
  }

  listImages(offset = 0, limit = 50): Promise<{ total: number; items: ImageDoc[] }> {
    return this.request('GET', `/images?offset=${offset}&limit=${limit}`);
  }

  getImage(id: string): Promise<ImageDoc> {
    return this.request('GET', `/images/${encodeURIComponent(id)}`);
  }

  createSession(restriction?: string[]): Promise<SessionSnapshot> {
    return this.request('POST', '/sessions', restriction ? { restriction } : {});
  }

  getSession(id: string): Promise<SessionSnapshot> {
    return this.request('GET', `/sessions/${encodeURIComponent(id)}`);
  }

  transition(
    sessionId: string,
    letter: TransitionLetter,
    args: Record<string, unknown> = {},
  ): Promise<TransitionResponse> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/transitions`, {
      letter,
      arguments: args,
    });
  }

  listAlbums(): Promise<{ albums: AlbumDoc[] }> {
    return this.request('GET', '/albums');
  }

  getAlbum(id: string): Promise<AlbumDoc> {
    return this.request('GET', `/albums/${encodeURIComponent(id)}`);
  }
}
