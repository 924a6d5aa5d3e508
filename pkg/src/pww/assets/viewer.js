"use strict";
(() => {
  var __defProp = Object.defineProperty;
  var __defNormalProp = (obj, key, value) => key in obj ? __defProp(obj, key, { enumerable: true, configurable: true, writable: true, value }) : obj[key] = value;
  var __publicField = (obj, key, value) => __defNormalProp(obj, typeof key !== "symbol" ? key + "" : key, value);

  // src/geometry.ts
  var DEG_TOL = 1e-6;
  var DegenerateFigure = class extends Error {
    constructor(stepLabel, message) {
      super(message);
      __publicField(this, "stepLabel", stepLabel);
    }
  };
  var sub = (a, b) => [a[0] - b[0], a[1] - b[1]];
  var cross = (a, b) => a[0] * b[1] - a[1] * b[0];
  var dot = (a, b) => a[0] * b[0] + a[1] * b[1];
  var norm = (a) => Math.hypot(a[0], a[1]);
  var dist = (a, b) => Math.hypot(a[0] - b[0], a[1] - b[1]);
  var rot90 = (a) => [-a[1], a[0]];
  var mod = (x, m) => (x % m + m) % m;
  function lineLine(p, d, q, e, label) {
    const den = cross(d, e);
    const nd = norm(d);
    const ne = norm(e);
    if (nd === 0 || ne === 0 || Math.abs(den) / (nd * ne) < DEG_TOL) {
      throw new DegenerateFigure(label, `the lines through ${label} are parallel`);
    }
    const t = cross(sub(q, p), e) / den;
    return [p[0] + t * d[0], p[1] + t * d[1]];
  }
  function circumcenter(a, b, c, label) {
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
  function executeSteps(steps, opts) {
    const coords = /* @__PURE__ */ new Map();
    const lines = /* @__PURE__ */ new Map();
    const circles = /* @__PURE__ */ new Map();
    const params = new Map(opts.params ?? []);
    const pt = (l) => coords.get(l);
    for (const s of steps) {
      const { kind, label, args } = s;
      if (kind === "FreePoint") {
        const p = opts.anchors.get(label);
        if (!p) throw new Error(`no coordinates for free point ${label}`);
        coords.set(label, p);
      } else if (kind === "PointOnLine") {
        const carrier = args[0];
        const line = lines.get(carrier);
        if (line) {
          const nd = norm(line.dir);
          if (nd < DEG_TOL) {
            throw new DegenerateFigure(label, `the carrier of ${label} collapsed`);
          }
          const u = [line.dir[0] / nd, line.dir[1] / nd];
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
            line.base[1] + param.t * u[1]
          ]);
        } else {
          const circle = circles.get(carrier);
          let param = params.get(label);
          if (!param) {
            const p0 = opts.witnessCoords?.[label];
            if (!p0) throw new Error(`no path parameter for ${label}`);
            param = {
              kind: "circle",
              phi: Math.atan2(p0[1] - circle.center[1], p0[0] - circle.center[0])
            };
            params.set(label, param);
          }
          if (param.kind !== "circle") throw new Error(`${label}: carrier kind changed`);
          coords.set(label, [
            circle.center[0] + circle.r * Math.cos(param.phi),
            circle.center[1] + circle.r * Math.sin(param.phi)
          ]);
        }
      } else if (kind === "Midpoint") {
        const a = pt(args[0]);
        const b = pt(args[1]);
        if (dist(a, b) < DEG_TOL) {
          throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
        }
        coords.set(label, [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2]);
      } else if (kind === "LineThrough") {
        const a = pt(args[0]);
        const b = pt(args[1]);
        if (dist(a, b) < DEG_TOL) {
          throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
        }
        lines.set(label, { base: a, dir: sub(b, a) });
      } else if (kind === "ParallelLine") {
        lines.set(label, { base: pt(args[0]), dir: lines.get(args[1]).dir });
      } else if (kind === "PerpLine") {
        lines.set(label, { base: pt(args[0]), dir: rot90(lines.get(args[1]).dir) });
      } else if (kind === "PerpBisector") {
        const a = pt(args[0]);
        const b = pt(args[1]);
        if (dist(a, b) < DEG_TOL) {
          throw new DegenerateFigure(label, `${args[0]} and ${args[1]} coincide`);
        }
        lines.set(label, {
          base: [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2],
          dir: rot90(sub(b, a))
        });
      } else if (kind === "Intersect") {
        const l1 = lines.get(args[0]);
        const l2 = lines.get(args[1]);
        coords.set(label, lineLine(l1.base, l1.dir, l2.base, l2.dir, label));
      } else if (kind === "Circumcircle") {
        const a = pt(args[0]);
        const center = circumcenter(a, pt(args[1]), pt(args[2]), label);
        circles.set(label, { center, r: dist(center, a) });
      } else if (kind === "CircleCenterThrough") {
        const o = pt(args[0]);
        const r = dist(o, pt(args[1]));
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
  function freePointLabels(steps) {
    return new Set(steps.filter((s) => s.kind === "FreePoint").map((s) => s.label));
  }
  function anchorsFromWitness(steps, coords) {
    const anchors = /* @__PURE__ */ new Map();
    for (const s of steps) {
      if (s.kind === "FreePoint") anchors.set(s.label, coords[s.label]);
    }
    return anchors;
  }
  function agreementError(figure, coords) {
    let worst = 0;
    for (const [label, xy] of Object.entries(coords)) {
      const p = figure.coords.get(label);
      if (!p) return Infinity;
      worst = Math.max(worst, Math.abs(p[0] - xy[0]), Math.abs(p[1] - xy[1]));
    }
    return worst;
  }
  var ratio = (num, den) => den > 0 ? num / den : num === 0 ? 0 : Infinity;
  var dirAngle = (a, b) => mod(Math.atan2(b[1] - a[1], b[0] - a[0]), Math.PI);
  function wrapHalf(x) {
    x = mod(x, Math.PI);
    if (x > Math.PI / 2) x -= Math.PI;
    return x;
  }
  function collResidual(a, b, c) {
    return ratio(Math.abs(cross(sub(b, a), sub(c, a))), norm(sub(b, a)) * norm(sub(c, a)));
  }
  function eqangleResidual(P, args) {
    const p = args.map(P);
    const d1 = dirAngle(p[0], p[1]);
    const d2 = dirAngle(p[2], p[3]);
    const d3 = dirAngle(p[4], p[5]);
    const d4 = dirAngle(p[6], p[7]);
    return Math.abs(wrapHalf(d2 - d1 - (d4 - d3)));
  }
  function evalResidual(figure, f) {
    const P = (l) => figure.coords.get(l);
    const a = f.args;
    switch (f.pred) {
      case "coll":
        return collResidual(P(a[0]), P(a[1]), P(a[2]));
      case "para": {
        const u = sub(P(a[1]), P(a[0]));
        const v = sub(P(a[3]), P(a[2]));
        return ratio(Math.abs(cross(u, v)), norm(u) * norm(v));
      }
      case "perp": {
        const u = sub(P(a[1]), P(a[0]));
        const v = sub(P(a[3]), P(a[2]));
        return ratio(Math.abs(dot(u, v)), norm(u) * norm(v));
      }
      case "cong": {
        const d1 = dist(P(a[0]), P(a[1]));
        const d2 = dist(P(a[2]), P(a[3]));
        return ratio(Math.abs(d1 - d2), Math.max(d1, d2));
      }
      case "midp": {
        const m = P(a[0]);
        const x = P(a[1]);
        const y = P(a[2]);
        const want = [(x[0] + y[0]) / 2, (x[1] + y[1]) / 2];
        return ratio(dist(m, want), dist(x, y));
      }
      case "cyclic": {
        const [pa, pb, pc, pd] = a.map(P);
        const d1 = dirAngle(pc, pa) - dirAngle(pc, pb);
        const d2 = dirAngle(pd, pa) - dirAngle(pd, pb);
        return Math.abs(wrapHalf(d1 - d2));
      }
      case "circle": {
        const o = P(a[0]);
        const rs = a.slice(1).map((x) => dist(o, P(x)));
        const top = Math.max(...rs);
        return ratio(top - Math.min(...rs), top);
      }
      case "eqangle":
        return eqangleResidual(P, a);
      case "eqratio": {
        const d = [0, 2, 4, 6].map((i) => dist(P(a[i]), P(a[i + 1])));
        if (Math.min(...d) <= 0) return Infinity;
        return Math.abs(Math.log(d[0]) - Math.log(d[1]) - Math.log(d[2]) + Math.log(d[3]));
      }
      case "simtri": {
        const r1 = eqangleResidual(P, [a[0], a[1], a[0], a[2], a[3], a[4], a[3], a[5]]);
        const r2 = eqangleResidual(P, [a[1], a[0], a[1], a[2], a[4], a[3], a[4], a[5]]);
        return Math.max(r1, r2);
      }
      case "contri": {
        const sim = evalResidual(figure, { pred: "simtri", args: a, text: "" });
        const base = evalResidual(
          figure,
          { pred: "cong", args: [a[0], a[1], a[3], a[4]], text: "" }
        );
        return Math.max(sim, base);
      }
      default:
        return Infinity;
    }
  }
  function factSegments(f) {
    const a = f.args;
    switch (f.pred) {
      case "coll":
        return [[a[0], a[1]], [a[0], a[2]]];
      case "para":
      case "perp":
      case "cong":
        return [[a[0], a[1]], [a[2], a[3]]];
      case "midp":
        return [[a[1], a[2]]];
      case "cyclic":
        return [[a[2], a[0]], [a[2], a[1]], [a[3], a[0]], [a[3], a[1]]];
      case "circle":
        return [[a[0], a[1]], [a[0], a[2]], [a[0], a[3]]];
      case "eqangle":
      case "eqratio":
        return [[a[0], a[1]], [a[2], a[3]], [a[4], a[5]], [a[6], a[7]]];
      case "simtri":
      case "contri":
        return [
          [a[0], a[1]],
          [a[0], a[2]],
          [a[1], a[2]],
          [a[3], a[4]],
          [a[3], a[5]],
          [a[4], a[5]]
        ];
      default:
        return [];
    }
  }
  function figureScale(figure) {
    let lo = [Infinity, Infinity];
    let hi = [-Infinity, -Infinity];
    for (const p of figure.coords.values()) {
      lo = [Math.min(lo[0], p[0]), Math.min(lo[1], p[1])];
      hi = [Math.max(hi[0], p[0]), Math.max(hi[1], p[1])];
    }
    return Math.hypot(hi[0] - lo[0], hi[1] - lo[1]);
  }
  function factDegenerate(figure, f) {
    const scale = figureScale(figure);
    if (!(scale > 0)) return true;
    for (const [p, q] of factSegments(f)) {
      const a = figure.coords.get(p);
      const b = figure.coords.get(q);
      if (!a || !b || dist(a, b) < DEG_TOL * scale) return true;
    }
    return !Number.isFinite(evalResidual(figure, f));
  }

  // src/types.ts
  var SchemaError = class extends Error {
  };
  var STEP_KINDS = {
    FreePoint: [0, "P"],
    PointOnLine: [1, "P"],
    Midpoint: [2, "P"],
    LineThrough: [2, "L"],
    ParallelLine: [2, "L"],
    PerpLine: [2, "L"],
    PerpBisector: [2, "L"],
    Intersect: [2, "P"],
    Circumcircle: [3, "C"],
    CircleCenterThrough: [2, "C"]
  };
  var PRED_ARITY = {
    coll: 3,
    para: 4,
    perp: 4,
    cong: 4,
    midp: 3,
    cyclic: 4,
    circle: 4,
    eqangle: 8,
    eqratio: 8,
    simtri: 6,
    contri: 6
  };
  function fail(msg) {
    throw new SchemaError(msg);
  }
  function isRecord(x) {
    return typeof x === "object" && x !== null && !Array.isArray(x);
  }
  function strings(x, what) {
    if (!Array.isArray(x) || x.some((s) => typeof s !== "string")) {
      fail(`${what} must be an array of strings`);
    }
    return x;
  }
  function checkFact(x, what) {
    if (!isRecord(x)) fail(`${what} must be an object`);
    const pred = x["pred"];
    if (typeof pred !== "string" || !(pred in PRED_ARITY)) {
      fail(`${what}: unknown predicate ${JSON.stringify(pred)}`);
    }
    const args = strings(x["args"], `${what}.args`);
    if (args.length !== PRED_ARITY[pred]) {
      fail(`${what}: ${pred} expects ${PRED_ARITY[pred]} points`);
    }
    if (typeof x["text"] !== "string") fail(`${what}.text must be a string`);
    return { pred, args, text: x["text"] };
  }
  function checkPair(x, what) {
    const a = strings(x, what);
    if (a.length !== 2) fail(`${what} must have 2 labels`);
    return [a[0], a[1]];
  }
  function checkHighlight(x, what) {
    if (!isRecord(x)) fail(`${what} must be an object`);
    const points = strings(x["points"], `${what}.points`);
    const segMixed = x["segments"];
    if (!Array.isArray(segMixed)) fail(`${what}.segments must be an array`);
    const segments = segMixed.map((p, i) => checkPair(p, `${what}.segments[${i}]`));
    const linesMixed = x["lines"];
    if (!Array.isArray(linesMixed)) fail(`${what}.lines must be an array`);
    const lines = linesMixed.map((p, i) => checkPair(p, `${what}.lines[${i}]`));
    const circMixed = x["circles"];
    if (!Array.isArray(circMixed)) fail(`${what}.circles must be an array`);
    const circles = circMixed.map((c, i) => {
      const a = strings(c, `${what}.circles[${i}]`);
      if (a.length !== 3) fail(`${what}.circles[${i}] must have 3 labels`);
      return [a[0], a[1], a[2]];
    });
    const angMixed = x["angleMarks"];
    if (!Array.isArray(angMixed)) fail(`${what}.angleMarks must be an array`);
    const angleMarks = angMixed.map((m, i) => {
      if (!Array.isArray(m) || m.length !== 4 || typeof m[0] !== "string" || typeof m[1] !== "string" || typeof m[2] !== "string" || typeof m[3] !== "number") {
        fail(`${what}.angleMarks[${i}] must be [vertex, end, end, classId]`);
      }
      return [m[0], m[1], m[2], m[3]];
    });
    const tickMixed = x["tickMarks"];
    if (!Array.isArray(tickMixed)) fail(`${what}.tickMarks must be an array`);
    const tickMarks = tickMixed.map((m, i) => {
      if (!Array.isArray(m) || m.length !== 2 || typeof m[1] !== "number") {
        fail(`${what}.tickMarks[${i}] must be [[p, q], classId]`);
      }
      return [checkPair(m[0], `${what}.tickMarks[${i}][0]`), m[1]];
    });
    return { points, segments, lines, circles, angleMarks, tickMarks };
  }
  function parseDocument(text) {
    let raw;
    try {
      raw = JSON.parse(text);
    } catch (e) {
      fail(`not valid JSON: ${e instanceof Error ? e.message : String(e)}`);
    }
    if (!isRecord(raw)) fail("document must be a JSON object");
    if (raw["version"] !== "pww-1") {
      fail(`unsupported version ${JSON.stringify(raw["version"])} (expected "pww-1")`);
    }
    const cRaw = raw["construction"];
    if (!isRecord(cRaw) || !Array.isArray(cRaw["steps"])) {
      fail("construction.steps must be an array");
    }
    const defined = /* @__PURE__ */ new Map();
    const steps = cRaw["steps"].map((s, i) => {
      if (!isRecord(s)) fail(`construction step ${i} must be an object`);
      const kind = s["kind"];
      if (typeof kind !== "string" || !(kind in STEP_KINDS)) {
        fail(`construction step ${i}: unknown kind ${JSON.stringify(kind)}`);
      }
      const [nargs, cls] = STEP_KINDS[kind];
      const label = s["label"];
      if (typeof label !== "string" || !label) {
        fail(`construction step ${i}: missing label`);
      }
      if (defined.has(label)) fail(`construction step ${i}: duplicate label ${label}`);
      const args = strings(s["args"], `construction step ${i} args`);
      if (args.length !== nargs) {
        fail(`construction step ${i}: ${kind} expects ${nargs} args`);
      }
      for (const a of args) {
        if (!defined.has(a)) fail(`construction step ${i}: undefined reference ${a}`);
      }
      defined.set(label, cls);
      return { kind, label, args };
    });
    const wRaw = raw["witness"];
    if (!isRecord(wRaw) || typeof wRaw["seed"] !== "number" || !isRecord(wRaw["coords"])) {
      fail("witness must carry a seed and a coords map");
    }
    const coords = {};
    for (const [label, xy] of Object.entries(wRaw["coords"])) {
      if (!Array.isArray(xy) || xy.length !== 2 || typeof xy[0] !== "number" || typeof xy[1] !== "number" || !Number.isFinite(xy[0]) || !Number.isFinite(xy[1])) {
        fail(`witness.coords[${label}] must be two finite numbers`);
      }
      coords[label] = [xy[0], xy[1]];
    }
    for (const [label, cls] of defined) {
      if (cls === "P" && !(label in coords)) {
        fail(`witness.coords is missing point ${label}`);
      }
    }
    const goal = checkFact(raw["goal"], "goal");
    for (const a of goal.args) {
      if (defined.get(a) !== "P") fail(`goal references unknown point ${a}`);
    }
    const sRaw = raw["steps"];
    if (!Array.isArray(sRaw) || sRaw.length === 0) {
      fail("steps must be a non-empty array");
    }
    const seen = /* @__PURE__ */ new Set();
    const proofSteps = sRaw.map((s, i) => {
      const what = `step ${i + 1}`;
      if (!isRecord(s)) fail(`${what} must be an object`);
      const id = s["id"];
      if (typeof id !== "string" || !/^s[1-9][0-9]*$/.test(id)) {
        fail(`${what}: bad id ${JSON.stringify(id)}`);
      }
      if (seen.has(id)) fail(`${what}: duplicate id ${id}`);
      if (typeof s["rule"] !== "string") fail(`${what}: missing rule`);
      if (!Array.isArray(s["facts"])) fail(`${what}: facts must be an array`);
      const facts = s["facts"].map((f, j) => checkFact(f, `${what}.facts[${j}]`));
      const deps = strings(s["deps"], `${what}.deps`);
      for (const d of deps) {
        if (!seen.has(d)) fail(`${what}: dep ${d} is not an earlier step`);
      }
      const highlight = checkHighlight(s["highlight"], `${what}.highlight`);
      for (const p of highlight.points) {
        if (defined.get(p) !== "P") fail(`${what}: highlight of unknown point ${p}`);
      }
      if (typeof s["caption"] !== "string") fail(`${what}: missing caption`);
      seen.add(id);
      return { id, rule: s["rule"], facts, deps, highlight, caption: s["caption"] };
    });
    const statsRaw = raw["stats"];
    if (!isRecord(statsRaw) || typeof statsRaw["levels"] !== "number" || typeof statsRaw["totalFactsExplored"] !== "number") {
      fail("stats must carry levels and totalFactsExplored");
    }
    return {
      version: "pww-1",
      construction: { steps },
      witness: { seed: wRaw["seed"], coords },
      goal,
      steps: proofSteps,
      stats: {
        levels: statsRaw["levels"],
        totalFactsExplored: statsRaw["totalFactsExplored"]
      }
    };
  }
  function factKey(f) {
    return `${f.pred} ${f.args.join(" ")}`;
  }

  // src/state.ts
  var AGREEMENT_TOL = 1e-9;
  function load(text) {
    const doc = parseDocument(text);
    const steps = doc.construction.steps;
    const anchors = anchorsFromWitness(steps, doc.witness.coords);
    const { figure, params } = executeSteps(steps, {
      anchors,
      witnessCoords: doc.witness.coords
    });
    const err = agreementError(figure, doc.witness.coords);
    const warning = err <= AGREEMENT_TOL ? null : `interpreter disagrees with the embedded witness by ${err.toExponential(3)}`;
    return {
      doc,
      currentStep: 0,
      dragOverrides: /* @__PURE__ */ new Map(),
      playState: { mode: "paused", msPerStep: 1200 },
      figure,
      initialFigure: figure,
      params,
      freePoints: freePointLabels(steps),
      warning,
      degenerate: null
    };
  }
  function seek(state, stepIndex) {
    const last = state.doc.steps.length - 1;
    const i = Math.max(0, Math.min(last, Math.trunc(stepIndex)));
    return { ...state, currentStep: i };
  }
  function togglePlay(state) {
    const mode = state.playState.mode === "playing" ? "paused" : "playing";
    return { ...state, playState: { ...state.playState, mode } };
  }
  function tick(state) {
    if (state.playState.mode !== "playing") return state;
    if (state.currentStep >= state.doc.steps.length - 1) {
      return { ...state, playState: { ...state.playState, mode: "paused" } };
    }
    return seek(state, state.currentStep + 1);
  }
  function dragPoint(state, label, x, y) {
    if (!state.freePoints.has(label)) {
      throw new Error(`${label} is not a free point`);
    }
    const dragOverrides = new Map(state.dragOverrides);
    dragOverrides.set(label, [x, y]);
    const anchors = anchorsFromWitness(state.doc.construction.steps, state.doc.witness.coords);
    for (const [l, p] of dragOverrides) anchors.set(l, p);
    try {
      const { figure } = executeSteps(state.doc.construction.steps, {
        anchors,
        params: state.params
      });
      return { ...state, dragOverrides, figure, degenerate: null };
    } catch (e) {
      if (e instanceof DegenerateFigure) {
        return { ...state, dragOverrides, degenerate: e.message };
      }
      throw e;
    }
  }

  // src/render.ts
  function project(figure, vp) {
    let lox = Infinity, loy = Infinity, hix = -Infinity, hiy = -Infinity;
    for (const [x, y] of figure.coords.values()) {
      lox = Math.min(lox, x);
      loy = Math.min(loy, y);
      hix = Math.max(hix, x);
      hiy = Math.max(hiy, y);
    }
    for (const c of figure.circles.values()) {
      lox = Math.min(lox, c.center[0] - c.r);
      loy = Math.min(loy, c.center[1] - c.r);
      hix = Math.max(hix, c.center[0] + c.r);
      hiy = Math.max(hiy, c.center[1] + c.r);
    }
    if (!Number.isFinite(lox)) {
      lox = loy = -1;
      hix = hiy = 1;
    }
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
        vp.height - (offY + scale * (y - loy + pad))
      ],
      fromPx: ([px, py]) => [
        (px - offX) / scale + lox - pad,
        (vp.height - py - offY) / scale + loy - pad
      ]
    };
  }
  var esc = (s) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
  var n2 = (x) => {
    if (!Number.isFinite(x)) return "0";
    const r = Math.round(x * 100) / 100;
    return Object.is(r, -0) ? "0" : r.toString();
  };
  function renderCaption(step) {
    return esc(step.caption).replace(
      /\{([A-Za-z_][A-Za-z0-9_]*)\}/g,
      '<span class="pt-name">$1</span>'
    );
  }
  function freePointAt(state, proj, px, py, radius) {
    let best = null;
    let bestD = radius;
    for (const label of state.freePoints) {
      const p = state.figure.coords.get(label);
      if (!p) continue;
      const [x, y] = proj.toPx(p);
      const d = Math.hypot(x - px, y - py);
      if (d <= bestD) {
        bestD = d;
        best = label;
      }
    }
    return best;
  }
  function extendedLine(basePx, dirPx, vp, cls) {
    const n = Math.hypot(dirPx[0], dirPx[1]);
    if (n === 0) return "";
    const u = [dirPx[0] / n, dirPx[1] / n];
    const reach = 2 * (vp.width + vp.height);
    return `<line class="${cls}" x1="${n2(basePx[0] - reach * u[0])}" y1="${n2(basePx[1] - reach * u[1])}" x2="${n2(basePx[0] + reach * u[0])}" y2="${n2(basePx[1] + reach * u[1])}"/>`;
  }
  function segment(a, b, cls) {
    return `<line class="${cls}" x1="${n2(a[0])}" y1="${n2(a[1])}" x2="${n2(b[0])}" y2="${n2(b[1])}"/>`;
  }
  function tickGroup(a, b, classId) {
    const ux = b[0] - a[0];
    const uy = b[1] - a[1];
    const n = Math.hypot(ux, uy);
    if (n === 0) return "";
    const u = [ux / n, uy / n];
    const w = [-u[1], u[0]];
    const m = [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
    const count = classId + 1;
    const parts = [];
    for (let i = 0; i < count; i++) {
      const off = (i - (count - 1) / 2) * 5;
      const cx = m[0] + off * u[0];
      const cy = m[1] + off * u[1];
      parts.push(
        `<line class="tick" x1="${n2(cx - 4 * w[0])}" y1="${n2(cy - 4 * w[1])}" x2="${n2(cx + 4 * w[0])}" y2="${n2(cy + 4 * w[1])}"/>`
      );
    }
    return parts.join("");
  }
  function wrapPi(x) {
    x = (x % (2 * Math.PI) + 2 * Math.PI) % (2 * Math.PI);
    if (x > Math.PI) x -= 2 * Math.PI;
    return x;
  }
  function angleArcs(v, e1, e2, classId) {
    const a1 = Math.atan2(e1[1] - v[1], e1[0] - v[0]);
    const a2 = Math.atan2(e2[1] - v[1], e2[0] - v[0]);
    const sweep = wrapPi(a2 - a1);
    if (sweep === 0) return "";
    const flag = sweep > 0 ? 1 : 0;
    const parts = [];
    for (let i = 0; i <= classId; i++) {
      const r = 13 + 4 * i;
      const sx = v[0] + r * Math.cos(a1);
      const sy = v[1] + r * Math.sin(a1);
      const ex = v[0] + r * Math.cos(a1 + sweep);
      const ey = v[1] + r * Math.sin(a1 + sweep);
      parts.push(
        `<path class="arc" d="M ${n2(sx)} ${n2(sy)} A ${r} ${r} 0 0 ${flag} ${n2(ex)} ${n2(ey)}"/>`
      );
    }
    return parts.join("");
  }
  function stepShapes(state, step, proj, vp, cls) {
    const fig = state.figure;
    const P = (l) => fig.coords.get(l);
    const px = (l) => {
      const p = P(l);
      return p ? proj.toPx(p) : null;
    };
    const h = step.highlight;
    const parts = [];
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
      let center;
      try {
        center = circumcenter(pa, pb, pc, tri.join(""));
      } catch (e) {
        if (e instanceof DegenerateFigure) continue;
        throw e;
      }
      const c = proj.toPx(center);
      parts.push(
        `<circle class="hl-circle" cx="${n2(c[0])}" cy="${n2(c[1])}" r="${n2(proj.scale * dist(center, pa))}"/>`
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
  function render(state, vp) {
    const proj = project(state.initialFigure, vp);
    const fig = state.figure;
    const parts = [];
    for (const [label, line] of fig.lines) {
      const b = proj.toPx(line.base);
      const d = [line.dir[0] * proj.scale, -line.dir[1] * proj.scale];
      parts.push(extendedLine(b, d, vp, `base-line${label.startsWith("_") ? " aux" : ""}`));
    }
    for (const [label, c] of fig.circles) {
      const ctr = proj.toPx(c.center);
      parts.push(
        `<circle class="base-circle${label.startsWith("_") ? " aux" : ""}" cx="${n2(ctr[0])}" cy="${n2(ctr[1])}" r="${n2(c.r * proj.scale)}"/>`
      );
    }
    const steps = state.doc.steps;
    const cur = state.currentStep;
    const curStep = steps[cur];
    const depIds = new Set(curStep.deps);
    const old = [];
    const dep = [];
    for (let i = 0; i < cur; i++) {
      const s = steps[i];
      (depIds.has(s.id) ? dep : old).push(stepShapes(state, s, proj, vp, depIds.has(s.id) ? "dep" : "old"));
    }
    parts.push(...old, ...dep, stepShapes(state, curStep, proj, vp, "cur"));
    for (const [label, p] of fig.coords) {
      const [x, y] = proj.toPx(p);
      const aux = label.startsWith("_");
      const free = state.freePoints.has(label);
      parts.push(
        `<circle class="pt-dot${aux ? " aux" : ""}${free ? " free" : ""}" data-point="${esc(label)}" cx="${n2(x)}" cy="${n2(y)}" r="${free ? 4 : 3}"/>`,
        `<text class="pt-label${aux ? " aux" : ""}" x="${n2(x + 6)}" y="${n2(y - 6)}">${esc(label)}</text>`
      );
    }
    let body = parts.join("\n");
    if (state.degenerate) {
      body = `<g class="dim" opacity="0.3">${body}</g><text class="degenerate-msg" x="12" y="24">degenerate position: ${esc(state.degenerate)}</text>`;
    }
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${vp.width} ${vp.height}" width="100%" height="100%" preserveAspectRatio="xMidYMid meet">${body}</svg>`;
  }

  // src/app.ts
  var CSS = `
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
  var VIEWPORT = { width: 880, height: 520 };
  function el(tag, cls, parent) {
    const node = document.createElement(tag);
    node.className = cls;
    parent.appendChild(node);
    return node;
  }
  function showError(app, message) {
    app.innerHTML = "";
    const panel = el("div", "pww-error", app);
    panel.textContent = `cannot load proof document: ${message}`;
  }
  function main() {
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
    let state;
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
    prevBtn.textContent = "\u23EE";
    const playBtn = el("button", "", controls);
    const nextBtn = el("button", "", controls);
    nextBtn.textContent = "\u23ED";
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = String(state.doc.steps.length - 1);
    controls.appendChild(slider);
    const stepLabel = el("span", "pww-step-label", controls);
    const proj = project(state.initialFigure, VIEWPORT);
    let timer = null;
    function syncTimer() {
      const want = state.playState.mode === "playing";
      if (want && timer === null) {
        timer = setInterval(() => update(tick(state)), state.playState.msPerStep);
      } else if (!want && timer !== null) {
        clearInterval(timer);
        timer = null;
      }
    }
    function update(next) {
      state = next;
      figureHost.innerHTML = render(state, VIEWPORT);
      const step = state.doc.steps[state.currentStep];
      caption.innerHTML = renderCaption(step);
      stepLabel.textContent = `${step.id} / s${state.doc.steps.length} \xB7 ${step.rule}`;
      slider.value = String(state.currentStep);
      playBtn.textContent = state.playState.mode === "playing" ? "\u23F8" : "\u25B6";
      degenerateBox.textContent = state.degenerate ? `degenerate position: ${state.degenerate}` : "";
      syncTimer();
    }
    prevBtn.addEventListener("click", () => update(seek(state, state.currentStep - 1)));
    nextBtn.addEventListener("click", () => update(seek(state, state.currentStep + 1)));
    playBtn.addEventListener("click", () => update(togglePlay(state)));
    slider.addEventListener("input", () => update(seek(state, Number(slider.value))));
    document.addEventListener("keydown", (e) => {
      if (e.key === "ArrowLeft") update(seek(state, state.currentStep - 1));
      else if (e.key === "ArrowRight") update(seek(state, state.currentStep + 1));
      else if (e.key === " ") {
        e.preventDefault();
        update(togglePlay(state));
      }
    });
    function pointerPx(e) {
      const svg = figureHost.querySelector("svg");
      const rect = (svg ?? figureHost).getBoundingClientRect();
      return [
        (e.clientX - rect.left) * VIEWPORT.width / rect.width,
        (e.clientY - rect.top) * VIEWPORT.height / rect.height
      ];
    }
    let dragging = null;
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
    const endDrag = () => {
      dragging = null;
    };
    figureHost.addEventListener("pointerup", endDrag);
    figureHost.addEventListener("pointercancel", endDrag);
    update(state);
  }
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", main);
  } else {
    main();
  }
})();
