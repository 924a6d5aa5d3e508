/** Closed-form construction executor and numeric fact evaluation.
 *
 * This mirrors the producer's witness semantics exactly (the pww-1 schema
 * fixes the closed forms), so a document re-executed here lands on the
 * embedded coordinates to within floating-point noise.  Points defined as
 * "on" a carrier keep the path parameter implied by the embedded witness
 * and follow the carrier when free points are dragged.
 */

import type { ConstructionStep, FactRef, Vec2 } from "./types";
import { STEP_KINDS } from "./types";

export const DEG_TOL = 1e-6;

export interface LineObj { base: Vec2; dir: Vec2 }
export interface CircleObj { center: Vec2; r: number }

export interface Figure {
  coords: Map<string, Vec2>;
  lines: Map<string, LineObj>;
  circles: Map<string, CircleObj>;
}

export type PathParam =
  | { kind: "line"; t: number }
  | { kind: "circle"; phi: number };

export class DegenerateFigure extends Error {
  constructor(public stepLabel: string, message: string) {
    super(message);
  }
}

const sub = (a: Vec2, b: Vec2): Vec2 => [a[0] - b[0], a[1] - b[1]];
const cross = (a: Vec2, b: Vec2): number => a[0] * b[1] - a[1] * b[0];
const dot = (a: Vec2, b: Vec2): number => a[0] * b[0] + a[1] * b[1];
const norm = (a: Vec2): number => Math.hypot(a[0], a[1]);
export const dist = (a: Vec2, b: Vec2): number => Math.hypot(a[0] - b[0], a[1] - b[1]);
const rot90 = (a: Vec2): Vec2 => [-a[1], a[0]];

/** Mathematical modulo (result in [0, m) for m > 0), like Python's %. */
const mod = (x: number, m: number): number => ((x % m) + m) % m;

function lineLine(p: Vec2, d: Vec2, q: Vec2, e: Vec2, label: string): Vec2 {
  const den = cross(d, e);
  const nd = norm(d);
  const ne = norm(e);
  if (nd === 0 || ne === 0 || Math.abs(den) / (nd * ne) < DEG_TOL) {
    throw new DegenerateFigure(label, `the lines through ${label} are parallel`);
  }
  const t = cross(sub(q, p), e) / den;
  return [p[0] + t * d[0], p[1] + t * d[1]];
}

export function circumcenter(a: Vec2, b: Vec2, c: Vec2, label: string): Vec2 {
  const ab = sub(b, a);
  const ac = sub(c, a);
  const den = 2 * cross(ab, ac);
  const nab = norm(ab);
  const nac = norm(ac);
  if (nab === 0 || nac === 0 || Math.abs(den) / (2 * nab * nac) < DEG_TOL) {
    throw new DegenerateFigure(label, `circle ${label} has collinear defining points`);
  }
  const sqAb = dot(ab, ab);
  const sqAc = dot(ac, ac);
  const ux = (ac[1] * sqAb - ab[1] * sqAc) / den;
  const uy = (ab[0] * sqAc - ac[0] * sqAb) / den;
  return [a[0] + ux, a[1] + uy];
}

export interface ExecuteOptions {
  /** Coordinates for every FreePoint label. */
  anchors: Map<string, Vec2>;
  /** Path parameters for PointOnLine labels; recovered from the witness when absent. */
  params?: Map<string, PathParam>;
  /** Embedded witness coordinates, required to recover missing params. */
  witnessCoords?: Record<string, [number, number]>;
}

export interface ExecuteResult {
  figure: Figure;
  params: Map<string, PathParam>;
}

/** Replay the construction steps; throws DegenerateFigure on a collapsed step. */
export function executeSteps(steps: ConstructionStep[], opts: ExecuteOptions): ExecuteResult {
  const coords = new Map<string, Vec2>();
  const lines = new Map<string, LineObj>();
  const circles = new Map<string, CircleObj>();
  const params = new Map<string, PathParam>(opts.params ?? []);

  const pt = (l: string): Vec2 => coords.get(l)!;

  for (const s of steps) {
    const { kind, label, args } = s;
    if (kind === "FreePoint") {
      const p = opts.anchors.get(label);
      if (!p) throw new Error(`no coordinates for free point ${label}`);
      coords.set(label, p);
    } else if (kind === "PointOnLine") {
      const carrier = args[0]!;
      const line = lines.get(carrier);
      if (line) {
        const nd = norm(line.dir);
        if (nd < DEG_TOL) {
          throw new DegenerateFigure(label, `the carrier of ${label} collapsed`);
        }
        const u: Vec2 = [line.dir[0] / nd, line.dir[1] / nd];
        let param = params.get(label);
        if (!param) {
          const p0 = opts.witnessCoords?.[label];
          if (!p0) throw new Error(`no path parameter for ${label}`);
          param = { kind: "line", t: dot(sub(p0, line.base), u) };
          params.set(label, param);
        }
        if (param.kind !== "line") throw new Error(`${label}: carrier kind changed`);
        coords.set(label, [
          line.base[0] + param.t * u[0],
          line.base[1] + param.t * u[1],
        ]);
      } else {
        const circle = circles.get(carrier)!;
        let param = params.get(label);
        if (!param) {
          const p0 = opts.witnessCoords?.[label];
          if (!p0) throw new Error(`no path parameter for ${label}`);
          param = {
            kind: "circle",
            phi: Math.atan2(p0[1] - circle.center[1], p0[0] - circle.center[0]),
          };
          params.set(label, param);
        }
        if (param.kind !== "circle") throw new Error(`${label}: carrier kind changed`);
        coords.set(label, [
          circle.center[0] + circle.r * Math.cos(param.phi),
          circle.center[1] + circle.r * Math.sin(param.phi),
        ]);
      }
    } else if (kind === "Midpoint") {
      const a = pt(args[0]!);
      const b = pt(args[1]!);
      if (dist(a, b) < DEG_TOL) {
        throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
      }
      coords.set(label, [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2]);
    } else if (kind === "LineThrough") {
      const a = pt(args[0]!);
      const b = pt(args[1]!);
      if (dist(a, b) < DEG_TOL) {
        throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
      }
      lines.set(label, { base: a, dir: sub(b, a) });
    } else if (kind === "ParallelLine") {
      lines.set(label, { base: pt(args[0]!), dir: lines.get(args[1]!)!.dir });
    } else if (kind === "PerpLine") {
      lines.set(label, { base: pt(args[0]!), dir: rot90(lines.get(args[1]!)!.dir) });
    } else if (kind === "PerpBisector") {
      const a = pt(args[0]!);
      const b = pt(args[1]!);
      if (dist(a, b) < DEG_TOL) {
        throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
      }
      lines.set(label, {
        base: [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2],
        dir: rot90(sub(b, a)),
      });
    } else if (kind === "Intersect") {
      const l1 = lines.get(args[0]!)!;
      const l2 = lines.get(args[1]!)!;
      coords.set(label, lineLine(l1.base, l1.dir, l2.base, l2.dir, label));
    } else if (kind === "Circumcircle") {
      const a = pt(args[0]!);
      const center = circumcenter(a, pt(args[1]!), pt(args[2]!), label);
      circles.set(label, { center, r: dist(center, a) });
    } else if (kind === "CircleCenterThrough") {
      const o = pt(args[0]!);
      const r = dist(o, pt(args[1]!));
      if (r < DEG_TOL) {
        throw new DegenerateFigure(label, `circle ${label} has zero radius`);
      }
      circles.set(label, { center: o, r });
    } else {
      throw new Error(`unknown step kind ${kind}`);
    }
  }
  return { figure: { coords, lines, circles }, params };
}

/** Labels of draggable (free) points. */
export function freePointLabels(steps: ConstructionStep[]): Set<string> {
  return new Set(steps.filter((s) => s.kind === "FreePoint").map((s) => s.label));
}

export function anchorsFromWitness(
  steps: ConstructionStep[],
  coords: Record<string, [number, number]>,
): Map<string, Vec2> {
  const anchors = new Map<string, Vec2>();
  for (const s of steps) {
    if (s.kind === "FreePoint") anchors.set(s.label, coords[s.label]!);
  }
  return anchors;
}

/** Max coordinate deviation between a recomputed figure and the witness. */
export function agreementError(
  figure: Figure,
  coords: Record<string, [number, number]>,
): number {
  let worst = 0;
  for (const [label, xy] of Object.entries(coords)) {
    const p = figure.coords.get(label);
    if (!p) return Infinity;
    worst = Math.max(worst, Math.abs(p[0] - xy[0]), Math.abs(p[1] - xy[1]));
  }
  return worst;
}

// -- numeric fact evaluation ---------------------------------------------------

const ratio = (num: number, den: number): number =>
  den > 0 ? num / den : num === 0 ? 0 : Infinity;

/** Direction of the line ab, modulo a half turn. */
const dirAngle = (a: Vec2, b: Vec2): number =>
  mod(Math.atan2(b[1] - a[1], b[0] - a[0]), Math.PI);

/** Reduce an angle difference into (-pi/2, pi/2]. */
function wrapHalf(x: number): number {
  x = mod(x, Math.PI);
  if (x > Math.PI / 2) x -= Math.PI;
  return x;
}

function collResidual(a: Vec2, b: Vec2, c: Vec2): number {
  return ratio(Math.abs(cross(sub(b, a), sub(c, a))), norm(sub(b, a)) * norm(sub(c, a)));
}

function eqangleResidual(P: (l: string) => Vec2, args: string[]): number {
  const p = args.map(P);
  const d1 = dirAngle(p[0]!, p[1]!);
  const d2 = dirAngle(p[2]!, p[3]!);
  const d3 = dirAngle(p[4]!, p[5]!);
  const d4 = dirAngle(p[6]!, p[7]!);
  return Math.abs(wrapHalf(d2 - d1 - (d4 - d3)));
}

/** Scale-free residual of a fact on a figure; the fact holds when small. */
export function evalResidual(figure: Figure, f: FactRef): number {
  const P = (l: string): Vec2 => figure.coords.get(l)!;
  const a = f.args;
  switch (f.pred) {
    case "coll":
      return collResidual(P(a[0]!), P(a[1]!), P(a[2]!));
    case "para": {
      const u = sub(P(a[1]!), P(a[0]!));
      const v = sub(P(a[3]!), P(a[2]!));
      return ratio(Math.abs(cross(u, v)), norm(u) * norm(v));
    }
    case "perp": {
      const u = sub(P(a[1]!), P(a[0]!));
      const v = sub(P(a[3]!), P(a[2]!));
      return ratio(Math.abs(dot(u, v)), norm(u) * norm(v));
    }
    case "cong": {
      const d1 = dist(P(a[0]!), P(a[1]!));
      const d2 = dist(P(a[2]!), P(a[3]!));
      return ratio(Math.abs(d1 - d2), Math.max(d1, d2));
    }
    case "midp": {
      const m = P(a[0]!);
      const x = P(a[1]!);
      const y = P(a[2]!);
      const want: Vec2 = [(x[0] + y[0]) / 2, (x[1] + y[1]) / 2];
      return ratio(dist(m, want), dist(x, y));
    }
    case "cyclic": {
      const [pa, pb, pc, pd] = a.map(P) as [Vec2, Vec2, Vec2, Vec2];
      const d1 = dirAngle(pc, pa) - dirAngle(pc, pb);
      const d2 = dirAngle(pd, pa) - dirAngle(pd, pb);
      return Math.abs(wrapHalf(d1 - d2));
    }
    case "circle": {
      const o = P(a[0]!);
      const rs = a.slice(1).map((x) => dist(o, P(x)));
      const top = Math.max(...rs);
      return ratio(top - Math.min(...rs), top);
    }
    case "eqangle":
      return eqangleResidual(P, a);
    case "eqratio": {
      const d = [0, 2, 4, 6].map((i) => dist(P(a[i]!), P(a[i + 1]!)));
      if (Math.min(...d) <= 0) return Infinity;
      return Math.abs(Math.log(d[0]!) - Math.log(d[1]!) - Math.log(d[2]!) + Math.log(d[3]!));
    }
    case "simtri": {
      const r1 = eqangleResidual(P, [a[0]!, a[1]!, a[0]!, a[2]!, a[3]!, a[4]!, a[3]!, a[5]!]);
      const r2 = eqangleResidual(P, [a[1]!, a[0]!, a[1]!, a[2]!, a[4]!, a[3]!, a[4]!, a[5]!]);
      return Math.max(r1, r2);
    }
    case "contri": {
      const sim = evalResidual(figure, { pred: "simtri", args: a, text: "" });
      const base = evalResidual(
        figure, { pred: "cong", args: [a[0]!, a[1]!, a[3]!, a[4]!], text: "" });
      return Math.max(sim, base);
    }
    default:
      return Infinity;
  }
}

/** Distinct point pairs whose lengths the fact's residual depends on. */
function factSegments(f: FactRef): [string, string][] {
  const a = f.args;
  switch (f.pred) {
    case "coll":
      return [[a[0]!, a[1]!], [a[0]!, a[2]!]];
    case "para": case "perp": case "cong":
      return [[a[0]!, a[1]!], [a[2]!, a[3]!]];
    case "midp":
      return [[a[1]!, a[2]!]];
    case "cyclic":
      return [[a[2]!, a[0]!], [a[2]!, a[1]!], [a[3]!, a[0]!], [a[3]!, a[1]!]];
    case "circle":
      return [[a[0]!, a[1]!], [a[0]!, a[2]!], [a[0]!, a[3]!]];
    case "eqangle": case "eqratio":
      return [[a[0]!, a[1]!], [a[2]!, a[3]!], [a[4]!, a[5]!], [a[6]!, a[7]!]];
    case "simtri": case "contri":
      return [[a[0]!, a[1]!], [a[0]!, a[2]!], [a[1]!, a[2]!],
              [a[3]!, a[4]!], [a[3]!, a[5]!], [a[4]!, a[5]!]];
    default:
      return [];
  }
}

/** Max point separation, used as the scale for degeneracy checks. */
export function figureScale(figure: Figure): number {
  let lo: Vec2 = [Infinity, Infinity];
  let hi: Vec2 = [-Infinity, -Infinity];
  for (const p of figure.coords.values()) {
    lo = [Math.min(lo[0], p[0]), Math.min(lo[1], p[1])];
    hi = [Math.max(hi[0], p[0]), Math.max(hi[1], p[1])];
  }
  return Math.hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

/** True when a fact cannot be meaningfully marked at the current figure:
 * a defining segment collapsed (relative to figure size) or the residual
 * is undefined. */
export function factDegenerate(figure: Figure, f: FactRef): boolean {
  const scale = figureScale(figure);
  if (!(scale > 0)) return true;
  for (const [p, q] of factSegments(f)) {
    const a = figure.coords.get(p);
    const b = figure.coords.get(q);
    if (!a || !b || dist(a, b) < DEG_TOL * scale) return true;
  }
  return !Number.isFinite(evalResidual(figure, f));
}
