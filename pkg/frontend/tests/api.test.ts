import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiClient, ApiError } from '../src/api.js';

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

describe('ApiClient', () => {
  afterEach(() => vi.restoreAllMocks());

  it('posts transitions with the letter/arguments envelope', async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse(200, { session: { id: 's-1' } }),
    );
    vi.stubGlobal('fetch', fetchMock);

    const client = new ApiClient('http://x');
    await client.transition('s-1', 'd', { node: 'img-003' });

    expect(fetchMock).toHaveBeenCalledWith('http://x/sessions/s-1/transitions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ letter: 'd', arguments: { node: 'img-003' } }),
    });
  });

  it('surfaces the stable error code from service refusals', async () => {
    vi.stubGlobal('fetch', vi.fn().mockResolvedValue(
      jsonResponse(409, { code: 'no_mosaic', message: 'no mosaic to fold' }),
    ));

    const client = new ApiClient('http://x');
    const failure = await client.transition('s-1', 'f').catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).code).toBe('no_mosaic');
    expect((failure as ApiError).status).toBe(409);
  });

  it('encodes path segments in image and session lookups', async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, {}));
    vi.stubGlobal('fetch', fetchMock);

    await new ApiClient('http://x').getImage('img with space');
    expect(fetchMock.mock.calls[0][0]).toBe('http://x/images/img%20with%20space');
  });
});
