import { ApiClient } from './api.js';
import { App } from './app.js';

const base = new URLSearchParams(window.location.search).get('api') ?? 'http://127.0.0.1:8000';

const app = new App(new ApiClient(base), {
  main: document.getElementById('main')!,
  status: document.getElementById('status')!,
});

void app.start().then(async () => {
  // land on the album shelf until the user picks a starting image
  await app.showAlbums();
});

declare global {
  interface Window {
    refnav: App;
  }
}
window.refnav = app;
