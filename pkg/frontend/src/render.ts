/** Pure SVG rendering: no DOM access, strings in -> strings out.
 *
 * Rendering at step i is cumulative: every fact of steps <= i is drawn,
 * the current step's shapes are emphasized (`cur`), the shapes of its
 * premises are ghost-highlighted (`dep`), everything older is `old`.
 * The world-to-screen fit is anchored to the figure at load time so the
 * view does not jump while a point is dragged.
 */

import {
  circumcenter, DegenerateFigure, dist, factDegenerate,
  type Figure,
} from "./geometry";
import { factKey, type ProofStep, type Vec2 } from "./types";
import type { ViewState } from "./state";

export interface Viewport { width: number; height: number }

export interface Projection {
  toPx(v: Vec2): [number, number];
  fromPx(p: [number, number]): Vec2;
  scale: number;
}

/** Fixed fit: figure bounding box plus a 10% margin, centered, y up. */
export function project(figure: Figure, vp: Viewport): Projection {
  let lox = Infinity, loy = Infinity, hix = -Infinity, hiy = -Infinity;
  for (const [x, y] of figure.coords.values()) {
    lox = Math.min(lox, x); loy = Math.min(loy, y);
    hix = Math.max(hix, x); hiy = Math.max(hiy, y);
  }
  for (const c of figure.circles.values()) {
    lox = Math.min(lox, c.center[0] - c.r); loy = Math.min(loy, c.center[1] - c.r);
    hix = Math.max(hix, c.center[0] + c.r); hiy = Math.max(hiy, c.center[1] + c.r);
  }
  if (!Number.isFinite(lox)) { lox = loy = -1; hix = hiy = 1; }
  const w = hix - lox;
  const h = hiy - loy;
  const pad = Math.max(w, h) > 0 ? 0.1 * Math.max(w, h) : 1;
  const scale = Math.min(vp.width / (w + 2 * pad), vp.height / (h + 2 * pad));
  const offX = (vp.width - scale * (w + 2 * pad)) / 2;
  const offY = (vp.height - scale * (h + 2 * pad)) / 2;
  return {
    scale,
    toPx: ([x, y]) => [
      offX + scale * (x - lox + pad),
      vp.height - (offY + scale * (y - loy + pad)),
    ],
    fromPx: ([px, py]) => [
      (px - offX) / scale + lox - pad,
      (vp.height - py - offY) / scale + loy - pad,
    ],
  };
}

const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
   .replace(/"/g, "&quot;");

const n2 = (x: number): string => {
  if (!Number.isFinite(x)) return "0";
  const r = Math.round(x * 100) / 100;
  return Object.is(r, -0) ? "0" : r.toString();
};

/** Caption HTML: `{L}` placeholders become styled point labels. */
export function renderCaption(step: ProofStep): string {
  return esc(step.caption).replace(
    /\{([A-Za-z_][A-Za-z0-9_]*)\}/g,
    '<span class="pt-name">$1</span>',
  );
}

/** The free point within `radius` px of the pointer, nearest first. */
export function freePointAt(
  state: ViewState, proj: Projection, px: number, py: number, radius: number,
): string | null {
  let best: string | null = null;
  let bestD = radius;
  for (const label of state.freePoints) {
    const p = state.figure.coords.get(label);
    if (!p) continue;
    const [x, y] = proj.toPx(p);
    const d = Math.hypot(x - px, y - py);
    if (d <= bestD) { bestD = d; best = label; }
  }
  return best;
}

function extendedLine(
  basePx: [number, number], dirPx: [number, number], vp: Viewport, cls: string,
): string {
  const n = Math.hypot(dirPx[0], dirPx[1]);
  if (n === 0) return "";
  const u = [dirPx[0] / n, dirPx[1] / n];
  const reach = 2 * (vp.width + vp.height);
  return `<line class="${cls}" x1="${n2(basePx[0] - reach * u[0]!)}" y1="${n2(basePx[1] - reach * u[1]!)}" x2="${n2(basePx[0] + reach * u[0]!)}" y2="${n2(basePx[1] + reach * u[1]!)}"/>`;
}

function segment(a: [number, number], b: [number, number], cls: string): string {
  return `<line class="${cls}" x1="${n2(a[0])}" y1="${n2(a[1])}" x2="${n2(b[0])}" y2="${n2(b[1])}"/>`;
}

function tickGroup(
  a: [number, number], b: [number, number], classId: number,
): string {
  const ux = b[0] - a[0];
  const uy = b[1] - a[1];
  const n = Math.hypot(ux, uy);
  if (n === 0) return "";
  const u = [ux / n, uy / n];
  const w = [-u[1]!, u[0]!];
  const m = [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
  const count = classId + 1;
  const parts: string[] = [];
  for (let i = 0; i < count; i++) {
    const off = (i - (count - 1) / 2) * 5;
    const cx = m[0]! + off * u[0]!;
    const cy = m[1]! + off * u[1]!;
    parts.push(
      `<line class="tick" x1="${n2(cx - 4 * w[0]!)}" y1="${n2(cy - 4 * w[1]!)}" x2="${n2(cx + 4 * w[0]!)}" y2="${n2(cy + 4 * w[1]!)}"/>`,
    );
  }
  return parts.join("");
}

/** Wrap an angle difference into (-pi, pi]. */
function wrapPi(x: number): number {
  x = ((x % (2 * Math.PI)) + 2 * Math.PI) % (2 * Math.PI);
  if (x > Math.PI) x -= 2 * Math.PI;
  return x;
}

function angleArcs(
  v: [number, number], e1: [number, number], e2: [number, number], classId: number,
): string {
  const a1 = Math.atan2(e1[1] - v[1], e1[0] - v[0]);
  const a2 = Math.atan2(e2[1] - v[1], e2[0] - v[0]);
  const sweep = wrapPi(a2 - a1);
  if (sweep === 0) return "";
  const flag = sweep > 0 ? 1 : 0;
  const parts: string[] = [];
  for (let i = 0; i <= classId; i++) {
    const r = 13 + 4 * i;
    const sx = v[0] + r * Math.cos(a1);
    const sy = v[1] + r * Math.sin(a1);
    const ex = v[0] + r * Math.cos(a1 + sweep);
    const ey = v[1] + r * Math.sin(a1 + sweep);
    parts.push(
      `<path class="arc" d="M ${n2(sx)} ${n2(sy)} A ${r} ${r} 0 0 ${flag} ${n2(ex)} ${n2(ey)}"/>`,
    );
  }
  return parts.join("");
}

function stepShapes(
  state: ViewState, step: ProofStep, proj: Projection, vp: Viewport, cls: string,
): string {
  const fig = state.figure;
  const P = (l: string): Vec2 | undefined => fig.coords.get(l);
  const px = (l: string): [number, number] | null => {
    const p = P(l);
    return p ? proj.toPx(p) : null;
  };
  const h = step.highlight;
  const parts: string[] = [];

  for (const [p, q] of h.lines) {
    const a = px(p);
    const b = px(q);
    if (a && b) {
      parts.push(extendedLine(a, [b[0] - a[0], b[1] - a[1]], vp, "hl-line"));
    }
  }
  for (const tri of h.circles) {
    const [pa, pb, pc] = tri.map(P);
    if (!pa || !pb || !pc) continue;
    let center: Vec2;
    try {
      center = circumcenter(pa, pb, pc, tri.join(""));
    } catch (e) {
      if (e instanceof DegenerateFigure) continue;
      throw e;
    }
    const c = proj.toPx(center);
    parts.push(
      `<circle class="hl-circle" cx="${n2(c[0])}" cy="${n2(c[1])}" r="${n2(proj.scale * dist(center, pa))}"/>`,
    );
  }
  for (const [p, q] of h.segments) {
    const a = px(p);
    const b = px(q);
    if (a && b) parts.push(segment(a, b, "seg"));
  }
  for (const p of h.points) {
    const a = px(p);
    if (a) {
      parts.push(`<circle class="hl-pt" cx="${n2(a[0])}" cy="${n2(a[1])}" r="5"/>`);
    }
  }

  // marks are suppressed for facts that are degenerate at this position
  const degenerate = step.facts.some((f) => factDegenerate(fig, f));
  if (!degenerate) {
    for (const [[p, q], classId] of h.tickMarks) {
      const a = px(p);
      const b = px(q);
      if (a && b) parts.push(tickGroup(a, b, classId));
    }
    for (const [v, e1, e2, classId] of h.angleMarks) {
      const pv = px(v);
      const p1 = px(e1);
      const p2 = px(e2);
      if (pv && p1 && p2) parts.push(angleArcs(pv, p1, p2, classId));
    }
  }

  const facts = step.facts.map(factKey).join(";");
  const badge = degenerate ? ' data-degenerate="1"' : "";
  return `<g class="stepfacts ${cls}" data-step="${step.id}" data-facts="${esc(facts)}"${badge}>${parts.join("")}</g>`;
}

/** Render the complete SVG for the current state. */
export function render(state: ViewState, vp: Viewport): string {
  const proj = project(state.initialFigure, vp);
  const fig = state.figure;
  const parts: string[] = [];

  // base layer: every constructed object, quietly
  for (const [label, line] of fig.lines) {
    const b = proj.toPx(line.base);
    const d: [number, number] = [line.dir[0] * proj.scale, -line.dir[1] * proj.scale];
    parts.push(extendedLine(b, d, vp, `base-line${label.startsWith("_") ? " aux" : ""}`));
  }
  for (const [label, c] of fig.circles) {
    const ctr = proj.toPx(c.center);
    parts.push(
      `<circle class="base-circle${label.startsWith("_") ? " aux" : ""}" cx="${n2(ctr[0])}" cy="${n2(ctr[1])}" r="${n2(c.r * proj.scale)}"/>`,
    );
  }

  // accumulated step shapes: old, then premises of the current step, then current
  const steps = state.doc.steps;
  const cur = state.currentStep;
  const curStep = steps[cur]!;
  const depIds = new Set(curStep.deps);
  const old: string[] = [];
  const dep: string[] = [];
  for (let i = 0; i < cur; i++) {
    const s = steps[i]!;
    (depIds.has(s.id) ? dep : old).push(stepShapes(state, s, proj, vp, depIds.has(s.id) ? "dep" : "old"));
  }
  parts.push(...old, ...dep, stepShapes(state, curStep, proj, vp, "cur"));

  // points above everything
  for (const [label, p] of fig.coords) {
    const [x, y] = proj.toPx(p);
    const aux = label.startsWith("_");
    const free = state.freePoints.has(label);
    parts.push(
      `<circle class="pt-dot${aux ? " aux" : ""}${free ? " free" : ""}" data-point="${esc(label)}" cx="${n2(x)}" cy="${n2(y)}" r="${free ? 4 : 3}"/>`,
      `<text class="pt-label${aux ? " aux" : ""}" x="${n2(x + 6)}" y="${n2(y - 6)}">${esc(label)}</text>`,
    );
  }

  let body = parts.join("\n");
  if (state.degenerate) {
    body = `<g class="dim" opacity="0.3">${body}</g>` +
      `<text class="degenerate-msg" x="12" y="24">degenerate position: ${esc(state.degenerate)}</text>`;
  }
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${vp.width} ${vp.height}" width="100%" height="100%" preserveAspectRatio="xMidYMid meet">${body}</svg>`;
}
