/** pww-1 document types and schema validation.
 *
 * The viewer trusts nothing: a document is fully validated before any
 * rendering happens, so a bad file produces one error panel and never a
 * partial figure.
 */

export type Vec2 = readonly [number, number];

export interface ConstructionStep {
  kind: string;
  label: string;
  args: string[];
}

export interface FactRef {
  pred: string;
  args: string[];
  text: string;
}

export interface Highlight {
  points: string[];
  segments: [string, string][];
  lines: [string, string][];
  circles: [string, string, string][];
  angleMarks: [string, string, string, number][];
  tickMarks: [[string, string], number][];
}

export interface ProofStep {
  id: string;
  rule: string;
  facts: FactRef[];
  deps: string[];
  highlight: Highlight;
  caption: string;
}

export interface ProofDocument {
  version: "pww-1";
  construction: { steps: ConstructionStep[] };
  witness: { seed: number; coords: Record<string, [number, number]> };
  goal: FactRef;
  steps: ProofStep[];
  stats: { levels: number; totalFactsExplored: number };
}

export class SchemaError extends Error {}

/** kind -> [argument count, object class it defines]. */
export const STEP_KINDS: Record<string, [number, "P" | "L" | "C"]> = {
  FreePoint: [0, "P"],
  PointOnLine: [1, "P"],
  Midpoint: [2, "P"],
  LineThrough: [2, "L"],
  ParallelLine: [2, "L"],
  PerpLine: [2, "L"],
  PerpBisector: [2, "L"],
  Intersect: [2, "P"],
  Circumcircle: [3, "C"],
  CircleCenterThrough: [2, "C"],
};

const PRED_ARITY: Record<string, number> = {
  coll: 3, para: 4, perp: 4, cong: 4, midp: 3, cyclic: 4, circle: 4,
  eqangle: 8, eqratio: 8, simtri: 6, contri: 6,
};

function fail(msg: string): never {
  throw new SchemaError(msg);
}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function strings(x: unknown, what: string): string[] {
  if (!Array.isArray(x) || x.some((s) => typeof s !== "string")) {
    fail(`${what} must be an array of strings`);
  }
  return x as string[];
}

function checkFact(x: unknown, what: string): FactRef {
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

function checkPair(x: unknown, what: string): [string, string] {
  const a = strings(x, what);
  if (a.length !== 2) fail(`${what} must have 2 labels`);
  return [a[0]!, a[1]!];
}

function checkHighlight(x: unknown, what: string): Highlight {
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
    return [a[0]!, a[1]!, a[2]!] as [string, string, string];
  });
  const angMixed = x["angleMarks"];
  if (!Array.isArray(angMixed)) fail(`${what}.angleMarks must be an array`);
  const angleMarks = angMixed.map((m, i) => {
    if (!Array.isArray(m) || m.length !== 4 || typeof m[0] !== "string" ||
        typeof m[1] !== "string" || typeof m[2] !== "string" ||
        typeof m[3] !== "number") {
      fail(`${what}.angleMarks[${i}] must be [vertex, end, end, classId]`);
    }
    return [m[0], m[1], m[2], m[3]] as [string, string, string, number];
  });
  const tickMixed = x["tickMarks"];
  if (!Array.isArray(tickMixed)) fail(`${what}.tickMarks must be an array`);
  const tickMarks = tickMixed.map((m, i) => {
    if (!Array.isArray(m) || m.length !== 2 || typeof m[1] !== "number") {
      fail(`${what}.tickMarks[${i}] must be [[p, q], classId]`);
    }
    return [checkPair(m[0], `${what}.tickMarks[${i}][0]`), m[1]] as
      [[string, string], number];
  });
  return { points, segments, lines, circles, angleMarks, tickMarks };
}

/** Parse and validate a pww-1 JSON document. Throws SchemaError. */
export function parseDocument(text: string): ProofDocument {
  let raw: unknown;
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
  const defined = new Map<string, "P" | "L" | "C">();
  const steps: ConstructionStep[] = cRaw["steps"].map((s, i) => {
    if (!isRecord(s)) fail(`construction step ${i} must be an object`);
    const kind = s["kind"];
    if (typeof kind !== "string" || !(kind in STEP_KINDS)) {
      fail(`construction step ${i}: unknown kind ${JSON.stringify(kind)}`);
    }
    const [nargs, cls] = STEP_KINDS[kind]!;
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
  const coords: Record<string, [number, number]> = {};
  for (const [label, xy] of Object.entries(wRaw["coords"])) {
    if (!Array.isArray(xy) || xy.length !== 2 ||
        typeof xy[0] !== "number" || typeof xy[1] !== "number" ||
        !Number.isFinite(xy[0]) || !Number.isFinite(xy[1])) {
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
  const seen = new Set<string>();
  const proofSteps: ProofStep[] = sRaw.map((s, i) => {
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
  if (!isRecord(statsRaw) || typeof statsRaw["levels"] !== "number" ||
      typeof statsRaw["totalFactsExplored"] !== "number") {
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
      totalFactsExplored: statsRaw["totalFactsExplored"],
    },
  };
}

/** Stable one-line key for a fact, used to match shapes across steps. */
export function factKey(f: FactRef): string {
  return `${f.pred} ${f.args.join(" ")}`;
}
