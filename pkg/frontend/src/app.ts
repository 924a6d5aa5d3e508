/** Browser shell: mounts the player, wires controls, playback, and drags.
 *
 * The page embeds the document in `#pww-document` and provides `#app`
 * (created here if missing).  Everything visual is injected, so the
 * bundle works inside a single self-contained HTML file.
 */

import { dragPoint, load, seek, tick, togglePlay, type ViewState } from "./state";
import { freePointAt, project, render, renderCaption } from "./render";

const CSS = `
#app { font: 15px/1.45 system-ui, sans-serif; color: #222; max-width: 920px;
  margin: 0 auto; padding: 12px; }
.pww-header { font-size: 19px; font-weight: 600; margin: 4px 0 10px; }
.pww-error { background: #fdecea; color: #86201b; border: 1px solid #f2b8b5;
  padding: 12px 16px; border-radius: 6px; white-space: pre-wrap; }
.pww-warning { background: #fff7e0; color: #7a5d00; border: 1px solid #eedc9a;
  padding: 6px 10px; border-radius: 6px; margin-bottom: 8px; }
.pww-figure { border: 1px solid #ddd; border-radius: 6px; background: #fff;
  height: 520px; touch-action: none; }
.pww-figure svg { display: block; cursor: default; }
.pww-caption { min-height: 3em; padding: 10px 2px; }
.pww-caption .pt-name { font-weight: 700; color: #0b63c5; }
.pww-controls { display: flex; gap: 8px; align-items: center; margin: 6px 0; }
.pww-controls button { font: inherit; padding: 3px 12px; border-radius: 5px;
  border: 1px solid #bbb; background: #f6f6f6; cursor: pointer; }
.pww-controls button:hover { background: #ececec; }
.pww-controls input[type=range] { flex: 1; }
.pww-step-label { min-width: 8em; text-align: right; color: #555;
  font-variant-numeric: tabular-nums; }
.base-line { stroke: #c9c9c9; stroke-width: 1; }
.base-circle { stroke: #c9c9c9; stroke-width: 1; fill: none; }
.aux { stroke-dasharray: 4 3; opacity: 0.75; }
.pt-dot { fill: #333; }
.pt-dot.free { fill: #0b63c5; cursor: grab; }
.pt-dot.aux { fill: #999; }
.pt-label { font: 13px system-ui, sans-serif; fill: #333; user-select: none; }
.pt-label.aux { fill: #999; font-size: 11px; }
.stepfacts .seg { stroke-width: 2; stroke: #9aa7b5; }
.stepfacts .hl-line { stroke-width: 1.5; stroke: #9aa7b5; }
.stepfacts .hl-circle { stroke-width: 1.5; stroke: #9aa7b5; fill: none; }
.stepfacts .hl-pt { fill: none; stroke: #9aa7b5; stroke-width: 1.5; }
.stepfacts .tick, .stepfacts .arc { stroke: #9aa7b5; stroke-width: 1.5; fill: none; }
.stepfacts.dep .seg, .stepfacts.dep .hl-line, .stepfacts.dep .hl-circle,
.stepfacts.dep .hl-pt, .stepfacts.dep .tick, .stepfacts.dep .arc {
  stroke: #7fb069; stroke-width: 2.25; }
.stepfacts.cur .seg, .stepfacts.cur .hl-line, .stepfacts.cur .hl-circle,
.stepfacts.cur .hl-pt, .stepfacts.cur .tick, .stepfacts.cur .arc {
  stroke: #e4572e; stroke-width: 2.75; }
.degenerate-msg { font: 14px system-ui, sans-serif; fill: #86201b; }
.pww-degenerate { color: #86201b; padding: 4px 2px; }
`;

const VIEWPORT = { width: 880, height: 520 };

function el(tag: string, cls: string, parent: HTMLElement): HTMLElement {
  const node = document.createElement(tag);
  node.className = cls;
  parent.appendChild(node);
  return node;
}

function showError(app: HTMLElement, message: string): void {
  app.innerHTML = "";
  const panel = el("div", "pww-error", app);
  panel.textContent = `cannot load proof document: ${message}`;
}

function main(): void {
  let app = document.getElementById("app");
  if (!app) {
    app = document.createElement("div");
    app.id = "app";
    document.body.appendChild(app);
  }
  const style = document.createElement("style");
  style.textContent = CSS;
  document.head.appendChild(style);

  const data = document.getElementById("pww-document");
  if (!data || !data.textContent) {
    showError(app, "this page has no embedded pww-document block");
    return;
  }
  let state: ViewState;
  try {
    state = load(data.textContent);
  } catch (e) {
    showError(app, e instanceof Error ? e.message : String(e));
    return;
  }

  app.innerHTML = "";
  const header = el("div", "pww-header", app);
  header.textContent = state.doc.goal.text;
  if (state.warning) {
    el("div", "pww-warning", app).textContent = `warning: ${state.warning}`;
  }
  const figureHost = el("div", "pww-figure", app);
  const degenerateBox = el("div", "pww-degenerate", app);
  const caption = el("div", "pww-caption", app);
  const controls = el("div", "pww-controls", app);
  const prevBtn = el("button", "", controls);
  prevBtn.textContent = "⏮";
  const playBtn = el("button", "", controls);
  const nextBtn = el("button", "", controls);
  nextBtn.textContent = "⏭";
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = String(state.doc.steps.length - 1);
  controls.appendChild(slider);
  const stepLabel = el("span", "pww-step-label", controls);

  const proj = project(state.initialFigure, VIEWPORT);
  let timer: ReturnType<typeof setInterval> | null = null;

  function syncTimer(): void {
    const want = state.playState.mode === "playing";
    if (want && timer === null) {
      timer = setInterval(() => update(tick(state)), state.playState.msPerStep);
    } else if (!want && timer !== null) {
      clearInterval(timer);
      timer = null;
    }
  }

  function update(next: ViewState): void {
    state = next;
    figureHost.innerHTML = render(state, VIEWPORT);
    const step = state.doc.steps[state.currentStep]!;
    caption.innerHTML = renderCaption(step);
    stepLabel.textContent = `${step.id} / s${state.doc.steps.length} · ${step.rule}`;
    slider.value = String(state.currentStep);
    playBtn.textContent = state.playState.mode === "playing" ? "⏸" : "▶";
    degenerateBox.textContent = state.degenerate
      ? `degenerate position: ${state.degenerate}` : "";
    syncTimer();
  }

  prevBtn.addEventListener("click", () => update(seek(state, state.currentStep - 1)));
  nextBtn.addEventListener("click", () => update(seek(state, state.currentStep + 1)));
  playBtn.addEventListener("click", () => update(togglePlay(state)));
  slider.addEventListener("input", () => update(seek(state, Number(slider.value))));
  document.addEventListener("keydown", (e) => {
    if (e.key === "ArrowLeft") update(seek(state, state.currentStep - 1));
    else if (e.key === "ArrowRight") update(seek(state, state.currentStep + 1));
    else if (e.key === " ") { e.preventDefault(); update(togglePlay(state)); }
  });

  function pointerPx(e: PointerEvent): [number, number] {
    const svg = figureHost.querySelector("svg");
    const rect = (svg ?? figureHost).getBoundingClientRect();
    return [
      ((e.clientX - rect.left) * VIEWPORT.width) / rect.width,
      ((e.clientY - rect.top) * VIEWPORT.height) / rect.height,
    ];
  }

  let dragging: string | null = null;
  figureHost.addEventListener("pointerdown", (e) => {
    const [px, py] = pointerPx(e);
    dragging = freePointAt(state, proj, px, py, 14);
    if (dragging) figureHost.setPointerCapture(e.pointerId);
  });
  figureHost.addEventListener("pointermove", (e) => {
    if (!dragging) return;
    const [wx, wy] = proj.fromPx(pointerPx(e));
    update(dragPoint(state, dragging, wx, wy));
  });
  const endDrag = (): void => { dragging = null; };
  figureHost.addEventListener("pointerup", endDrag);
  figureHost.addEventListener("pointercancel", endDrag);

  update(state);
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", main);
} else {
  main();
}
