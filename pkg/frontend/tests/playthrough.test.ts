import { beforeEach, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { App } from "../src/app.js";
import { render } from "../src/render.js";
import { fakeFetch, fixture } from "./helpers.js";

// Replays the recorded 12+10l game (advantage +3, human opening): open the
// 10-loop, engine keeps; open the 12-chain, engine takes everything. The
// UI must show the engine's keep, the 6-4 box count after the first
// exchange, and a final 18-7 for the engine.
describe("playing the 12+10l line", () => {
  let app: App;
  let actions: string[];

  beforeEach(() => {
    actions = [fixture("action_open_10l.json"), fixture("action_open_12.json")];
    const routed = fakeFetch((path, body) => {
      const position = (body as { position?: string } | null)?.position;
      if (path === "/evaluate") {
        return { status: 200, body: fixture(`evaluate_${position}.json`) };
      }
      if (path === "/best-move") {
        return { status: 200, body: fixture(`best-move_${position}.json`) };
      }
      if (path === "/sessions") {
        return { status: 200, body: fixture("session_create.json") };
      }
      if (path === "/sessions/1/actions") {
        const next = actions.shift();
        if (next !== undefined) return { status: 200, body: next };
        return { status: 409, body: fixture("action_stale.json") };
      }
      throw new Error(`unrouted request to ${path}`);
    });
    app = new App(new Client("", routed));
    app.setPosition("12+10l");
    app.setAdvantage(3);
  });

  it("walks the line to the recorded final score", async () => {
    await app.startSession();
    expect(app.state.sessionId).toBe(1);
    expect(app.state.session?.totals).toEqual([3, 0]);
    // The what-if panel follows the session position automatically.
    expect(app.state.evaluation?.position).toBe("12+10l");

    let html = render(app.state);
    expect(html).toContain("you: opener");
    expect(html).toContain("pick a component to open");

    await app.open("10l");
    // First exchange of the line: engine keeps, box count 6-4 for it.
    expect(app.state.session?.boxes).toEqual([4, 6]);
    expect(app.state.session?.totals).toEqual([7, 6]);
    html = render(app.state);
    expect(html).toContain("engine: keep control");
    expect(html).toContain("boxes you 4 &middot; engine 6");
    // The panel moved on to the remaining 12-chain.
    expect(app.state.evaluation?.position).toBe("12");

    await app.open("12");
    expect(app.state.session?.terminal).toBe(true);
    expect(app.state.session?.totals).toEqual([7, 18]);
    html = render(app.state);
    expect(html).toContain("engine: take everything");
    expect(html).toContain("Game over: 18-7 to the engine.");
  });

  it("turns a stale double-submit into a toast, not a state change", async () => {
    await app.startSession();
    await app.open("10l");
    await app.open("12");
    const before = app.state.session;

    await app.open("12");
    expect(app.state.toast).toBe("version 2 is stale (now 4)");
    expect(app.state.session).toBe(before);
    const html = render(app.state);
    expect(html).toContain(`class="toast"`);
    expect(html).toContain("version 2 is stale");
    // The banner is still up underneath the toast.
    expect(html).toContain("Game over: 18-7 to the engine.");

    app.dismissToast();
    expect(render(app.state)).not.toContain(`class="toast"`);
  });

  it("renders every displayed number straight from the response fields", async () => {
    await app.startSession();
    await app.open("10l");
    const state = app.state.session!;
    const html = render(app.state);
    for (const total of state.totals) expect(html).toContain(String(total));
    for (const count of state.boxes) expect(html).toContain(String(count));
    expect(html).toContain(`advantage +${state.prior_advantage}`);
  });
});
