/** End-to-end gate for the viewer against the bundled Euler-line document.
 *
 * Tolerances here are contractual: do not loosen them to make a run green.
 */

import { readFileSync } from "node:fs";
import { expect, test } from "vitest";

import { agreementError } from "../src/geometry";
import { project, render } from "../src/render";
import { dragPoint, load, seek } from "../src/state";
import { factKey } from "../src/types";

const VP = { width: 880, height: 520 };

const euler = (): string =>
  readFileSync(new URL("./fixtures/euler.json", import.meta.url), "utf8");

test("criterion 8: Euler document plays end to end under drag", () => {
  // loads
  let state = load(euler());
  expect(state.doc.goal.args).toEqual(["G", "H", "O"]);
  expect(state.doc.steps.length).toBeGreaterThan(0);

  // load-time interpreter agreement at 1e-9
  expect(state.warning).toBeNull();
  const agree = agreementError(state.figure, state.doc.witness.coords);
  expect(agree).toBeLessThanOrEqual(1e-9);
  console.log(`PASS criterion 8: interpreter agreement ${agree.toExponential(2)} <= 1e-9`);

  // stepping reaches the final step, goal emphasized, no rendering exceptions
  for (let i = 0; i < state.doc.steps.length; i++) {
    state = seek(state, i);
    render(state, VP);
  }
  expect(state.currentStep).toBe(state.doc.steps.length - 1);
  const svg = render(state, VP);
  const cur = svg.match(/<g class="stepfacts cur"[^>]*data-facts="([^"]*)"/);
  expect(cur).not.toBeNull();
  expect(cur![1]!.split(";")).toContain(factKey(state.doc.goal));
  console.log(
    `PASS criterion 8: stepping reached ${state.doc.steps[state.currentStep]!.id} ` +
    "with the goal emphasized");

  // 20 scripted non-degenerate drags of A keep O, G, H collinear within 0.5 px
  const proj = project(state.initialFigure, VP);
  const [ax, ay] = state.doc.witness.coords["A"]!;
  let checked = 0;
  let worst = 0;
  for (let i = 0; checked < 20 && i < 40; i++) {
    const ang = (2 * Math.PI * i) / 20;
    const r = 0.45 + 0.25 * (i % 4);
    const dragged = dragPoint(state, "A", ax + r * Math.cos(ang), ay + r * Math.sin(ang));
    if (dragged.degenerate) continue; // the script only counts non-degenerate positions
    render(dragged, VP); // must not throw mid-drag
    const [o, g, h] = ["O", "G", "H"].map((l) => proj.toPx(dragged.figure.coords.get(l)!));
    const num = Math.abs(
      (h![0] - o![0]) * (g![1] - o![1]) - (h![1] - o![1]) * (g![0] - o![0]));
    const offPx = num / Math.hypot(h![0] - o![0], h![1] - o![1]);
    worst = Math.max(worst, offPx);
    expect(offPx).toBeLessThanOrEqual(0.5);
    checked++;
  }
  expect(checked).toBe(20);
  console.log(
    `PASS criterion 8: 20 drags of A keep O, G, H collinear ` +
    `(worst ${worst.toExponential(2)} px <= 0.5 px)`);
});
