import { Client } from "./api.js";
import { App } from "./app.js";
import { render } from "./render.js";

// Served from the same origin as the API (boxends serve --ui-dir), so the
// client needs no base URL. ?api=... overrides it for development.
const base = new URLSearchParams(window.location.search).get("api") ?? "";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app element");

const app = new App(new Client(base), (state) => {
  root.innerHTML = render(state);
});

root.innerHTML = render(app.state);

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-act]");
  if (target === null) return;
  switch (target.dataset.act) {
    case "evaluate":
      return; // the form submit handler takes it
    case "start":
      event.preventDefault();
      void app.startSession();
      return;
    case "open":
      void app.open(target.dataset.component ?? "");
      return;
    case "keep":
      void app.keep();
      return;
    case "giveup":
      void app.giveUp();
      return;
    case "dismiss":
      app.dismissToast();
      return;
  }
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLElement;
  if (form.dataset.act === "evaluate-form") {
    event.preventDefault();
    void app.evaluate();
  }
});

root.addEventListener("input", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.id === "position") app.setPosition(input.value);
});

// Slider and radios re-render on change, not on every input event, so a
// drag in progress is not torn out of the document mid-gesture.
root.addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.id === "advantage") {
    app.setAdvantage(Number(input.value));
  } else if (input.name === "role" && (input.value === "opener" || input.value === "controller")) {
    app.setRole(input.value);
  }
});
