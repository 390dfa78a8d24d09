import { AnnotationApi } from "./api.js";
import { bindKeyboard } from "./keyboard.js";
import { ScreenController } from "./state.js";
import { render } from "./view.js";

const params = new URLSearchParams(window.location.search);
const api = new AnnotationApi(params.get("api") ?? "http://127.0.0.1:8077");
const controller = new ScreenController(api);

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

controller.onChange(() => render(root, controller, api));
bindKeyboard(window, controller);

controller.init().catch((error) => {
  root.textContent =
    `Could not reach the annotation service (${api.baseUrl}): ${error}. ` +
    "Start it with: dialact serve --corpus CORPUS_DIR --port 8077";
});
