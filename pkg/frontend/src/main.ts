/** Browser entry point: wire the store, API client, and panels together. */

import { ApiClient } from "./api.js";
import { Dispatcher, Store } from "./state.js";
import { UI } from "./ui.js";

export function start(root: HTMLElement, apiBase = ""): { store: Store; ui: UI } {
  const store = new Store();
  const api = new ApiClient(apiBase);
  const dispatcher = new Dispatcher(store, api);
  const ui = new UI(root, store, dispatcher);
  api
    .meta()
    .then((meta) => store.update({ meta }))
    .catch((err) =>
      store.update({
        error: `palette service unreachable: ${err instanceof Error ? err.message : String(err)}`,
      }),
    );
  return { store, ui };
}

const root = typeof document !== "undefined" ? document.getElementById("app") : null;
// the page can point at an API on another origin via <div id="app" data-api="...">
if (root) start(root, root.dataset.api ?? "");
