"""Proof documents: extraction, linearization, JSON, and the HTML bundle.

A proof document ("pww-1") is the shareable artifact: the construction, one
numeric witness, and an ordered list of visual steps, each with highlights,
mark classes, and a caption.  Captions keep their `{Label}` placeholders so a
viewer can style point names; the plain-text rendering is carried alongside
in each fact's `text` field.

Serialization is byte-deterministic: fixed key order, two-space indent, and
floats printed with 17 significant digits (enough to round-trip doubles).
"""

from __future__ import annotations

import json
import re
from importlib import resources

from .construction import Construction
from .engine import Derivation, FactStore, SaturationReport, materialize
from .facts import Fact
from .witness import eval_fact

FORMAT_VERSION = "pww-1"
_MAX_CHASE_DEPS = 6


class DocumentError(ValueError):
    """The document violates the pww-1 contract."""


# -- captions -----------------------------------------------------------------

# built positionally from canonical fact args; {X} marks a styled point label
_FACT_TEMPLATES = {
    "coll": "{0}, {1}, {2} are collinear",
    "para": "{0}{1} is parallel to {2}{3}",
    "perp": "{0}{1} is perpendicular to {2}{3}",
    "cong": "|{0}{1}| = |{2}{3}|",
    "midp": "{0} is the midpoint of {1}{2}",
    "cyclic": "{0}, {1}, {2}, {3} lie on one circle",
    "circle": "{0} is the center of the circle through {1}, {2}, {3}",
    "eqangle": "angle ({0}{1}, {2}{3}) equals angle ({4}{5}, {6}{7})",
    "eqratio": "{0}{1} : {2}{3} = {4}{5} : {6}{7}",
    "simtri": "triangles {0}{1}{2} and {3}{4}{5} are similar",
    "contri": "triangles {0}{1}{2} and {3}{4}{5} are congruent",
}

_RULE_PREFIX = {
    "construction": "Given: ",
    "R01": "A midpoint lies on its segment and splits it evenly: ",
    "R02": "Equal halves on one line form a midpoint: ",
    "R03": "Midsegment: ",
    "R04": "Two points equidistant from the endpoints: ",
    "R05": "Equidistant from three points: ",
    "R06": "Radii of one circle: ",
    "R07": "Angle in a semicircle: ",
    "R08": "A right angle spans a diameter: ",
    "R09": "Inscribed angles on one chord: ",
    "R10": "Equal inscribed angles: ",
    "R11": "Isosceles, so base angles match: ",
    "R12": "Base angles match, so isosceles: ",
    "R13": "Two angle pairs match: ",
    "R14": "Matching parts of similar triangles: ",
    "R15": "A matching angle between matching ratios: ",
    "R16": "Similar with one side congruent: ",
    "R17": "Equal directions through a shared point: ",
    "chase-angle": "Angle chase: ",
    "chase-length": "Ratio chase: ",
    "merge": "Combining known relations: ",
}


def _caption(rule: str, f: Fact | None) -> str:
    prefix = _RULE_PREFIX.get(rule, "")
    if f is None:
        return "Combine the relations marked so far"
    body = _FACT_TEMPLATES[f.pred].format(*("{%s}" % a for a in f.args))
    return prefix + body


# -- highlights ----------------------------------------------------------------


def _pairs_of(f: Fact) -> list[tuple[str, str]]:
    a = f.args
    if f.pred in ("para", "perp", "cong"):
        return [(a[0], a[1]), (a[2], a[3])]
    if f.pred in ("eqangle", "eqratio"):
        return [(a[0], a[1]), (a[2], a[3]), (a[4], a[5]), (a[6], a[7])]
    if f.pred == "midp":
        return [(a[1], a[0]), (a[0], a[2])]
    if f.pred in ("simtri", "contri"):
        t1, t2 = a[:3], a[3:]
        return [(t1[0], t1[1]), (t1[1], t1[2]), (t1[0], t1[2]),
                (t2[0], t2[1]), (t2[1], t2[2]), (t2[0], t2[2])]
    return []


def _angle_instances(f: Fact) -> list[tuple[str, str, str]]:
    """(vertex, ray endpoint, ray endpoint) for each half that has a vertex."""
    out = []
    a = f.args
    halves = [(a[0], a[1], a[2], a[3]), (a[4], a[5], a[6], a[7])] \
        if f.pred == "eqangle" else [(a[0], a[1], a[2], a[3])] \
        if f.pred == "perp" else []
    for p, q, r, t in halves:
        shared = {p, q} & {r, t}
        if len(shared) == 1:
            v = shared.pop()
            e1 = q if p == v else p
            e2 = t if r == v else r
            out.append((v, e1, e2))
    return out


class _MarkClasses:
    """Union-find assigning shared mark ids to equal segments and angles."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.ids: dict = {}

    def _find(self, k):
        self.parent.setdefault(k, k)
        while self.parent[k] != k:
            k = self.parent[k]
        return k

    def union(self, a, b) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[rb] = ra

    def mark_id(self, k) -> int:
        r = self._find(k)
        if r not in self.ids:
            self.ids[r] = len(self.ids)
        return self.ids[r]


def _collect_marks(facts: list[Fact]) -> tuple[_MarkClasses, _MarkClasses]:
    ticks, angles = _MarkClasses(), _MarkClasses()

    def s(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a < b else (b, a)

    for f in facts:
        a = f.args
        if f.pred == "cong":
            ticks.union(s(a[0], a[1]), s(a[2], a[3]))
        elif f.pred == "midp":
            ticks.union(s(a[1], a[0]), s(a[0], a[2]))
        elif f.pred == "contri":
            for (p, q), (r, t) in zip(_pairs_of(f)[:3], _pairs_of(f)[3:]):
                ticks.union(s(p, q), s(r, t))
        inst = _angle_instances(f)
        if f.pred == "eqangle" and len(inst) == 2:
            k1 = (inst[0][0], frozenset(inst[0][1:]))
            k2 = (inst[1][0], frozenset(inst[1][1:]))
            angles.union(k1, k2)
        elif f.pred == "perp":
            for v, e1, e2 in inst:
                angles.union((v, frozenset((e1, e2))), "__right__")
    return ticks, angles


def _highlight(facts: list[Fact], ticks: _MarkClasses,
               angles: _MarkClasses) -> dict:
    points: list[str] = []
    segments: list[list[str]] = []
    lines: list[list[str]] = []
    circles: list[list[str]] = []
    angle_marks: list[list] = []
    tick_marks: list[list] = []

    def s(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a < b else (b, a)

    for f in facts:
        a = f.args
        for p in a:
            if p not in points:
                points.append(p)
        for pair in _pairs_of(f):
            sp = list(s(*pair))
            if sp not in segments:
                segments.append(sp)
        if f.pred == "coll":
            rep = [a[0], a[-1]]
            if rep not in lines:
                lines.append(rep)
        if f.pred == "cyclic":
            rep = list(a[:3])
            if rep not in circles:
                circles.append(rep)
        if f.pred == "circle":
            rep = list(a[1:])
            if rep not in circles:
                circles.append(rep)
        if f.pred == "cong":
            for pair in (s(a[0], a[1]), s(a[2], a[3])):
                tick_marks.append([list(pair), ticks.mark_id(pair)])
        elif f.pred == "midp":
            for pair in (s(a[1], a[0]), s(a[0], a[2])):
                tick_marks.append([list(pair), ticks.mark_id(pair)])
        elif f.pred == "contri":
            for (p, q), (r, t) in zip(_pairs_of(f)[:3], _pairs_of(f)[3:]):
                tick_marks.append([list(s(p, q)), ticks.mark_id(s(p, q))])
                tick_marks.append([list(s(r, t)), ticks.mark_id(s(r, t))])
        for v, e1, e2 in _angle_instances(f):
            angle_marks.append([v, e1, e2,
                                angles.mark_id((v, frozenset((e1, e2))))])
    return {"points": points, "segments": segments, "lines": lines,
            "circles": circles, "angleMarks": angle_marks,
            "tickMarks": tick_marks}


# -- extraction and linearization ------------------------------------------------


def goal_node(s: FactStore, d: Derivation) -> int:
    """Ensure the goal derivation exists as a DAG node; returns its id."""
    fid = materialize(s, d)
    if fid is None:
        raise DocumentError("goal fact fails on the witness")
    return fid


def extract_proof(s: FactStore, goal_fid: int) -> list[int]:
    """Node ids reachable backward from the goal, in insertion order."""
    needed: set[int] = set()
    stack = [goal_fid]
    while stack:
        fid = stack.pop()
        if fid in needed:
            continue
        if fid < 0 or fid >= len(s.nodes):
            raise DocumentError(f"dangling premise id {fid}")
        needed.add(fid)
        stack.extend(s.nodes[fid].just.premises)
    return sorted(needed)


def _step_rule(s: FactStore, fid: int) -> str:
    j = s.nodes[fid].just
    if j.kind == "construction":
        return "construction"
    if j.kind == "rule":
        return j.rule_id or "rule"
    if j.kind == "chase":
        return f"chase-{j.system}" if j.system else "chase-angle"
    return "merge"


def linearize(s: FactStore, fids: list[int]) -> list[dict]:
    """Turn pruned DAG nodes into ordered proof steps (with chase splitting)."""
    order = sorted(fids, key=lambda i: (s.nodes[i].level, i))
    facts = [s.nodes[i].fact for i in order]
    ticks, angles = _collect_marks(facts)

    steps: list[dict] = []
    step_id_of: dict[int, str] = {}

    def next_id() -> str:
        return f"s{len(steps) + 1}"

    for fid in order:
        node = s.nodes[fid]
        rule = _step_rule(s, fid)
        deps = [step_id_of[p] for p in node.just.premises]
        # long chase certificates are grouped into digestible sub-steps
        while len(deps) > _MAX_CHASE_DEPS:
            head, deps = deps[:_MAX_CHASE_DEPS], deps[_MAX_CHASE_DEPS:]
            gid = next_id()
            steps.append({
                "id": gid,
                "rule": rule,
                "facts": [],
                "deps": head,
                "highlight": _highlight([], ticks, angles),
                "caption": _caption(rule, None),
            })
            deps.insert(0, gid)
        sid = next_id()
        step_id_of[fid] = sid
        steps.append({
            "id": sid,
            "rule": rule,
            "facts": [{"pred": node.fact.pred, "args": list(node.fact.args),
                       "text": node.fact.render()}],
            "deps": deps,
            "highlight": _highlight([node.fact], ticks, angles),
            "caption": _caption(rule, node.fact),
        })
    return steps


def build_document(s: FactStore, report: SaturationReport,
                   goal_deriv: Derivation) -> dict:
    """Assemble and validate a pww-1 document from a successful proof."""
    gfid = goal_node(s, goal_deriv)
    fids = extract_proof(s, gfid)
    steps = linearize(s, fids)
    c = s.construction
    goal_fact = s.nodes[gfid].fact
    doc = {
        "version": FORMAT_VERSION,
        "construction": {
            "steps": [{"kind": st.kind, "label": st.label,
                       "args": list(st.args)} for st in c.steps],
        },
        "witness": {
            "seed": s.witness.seed,
            "coords": {p: [s.witness.coords[p][0], s.witness.coords[p][1]]
                       for p in sorted(s.witness.coords)},
        },
        "goal": {"pred": goal_fact.pred, "args": list(goal_fact.args),
                 "text": goal_fact.render()},
        "steps": steps,
        "stats": {"levels": report.levels,
                  "totalFactsExplored": report.facts + len(s.rejected)},
    }
    _validate_document(doc)
    # displayed facts must hold on the document's own witness
    for fid in fids:
        if not eval_fact(s.witness, s.nodes[fid].fact, s.tol):
            raise DocumentError(
                f"step fact {s.nodes[fid].fact.render()} fails on the witness")
    return doc


# -- document validation ----------------------------------------------------------


def _validate_document(doc: object) -> None:
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    required = ("version", "construction", "witness", "goal", "steps", "stats")
    for key in required:
        if key not in doc:
            raise DocumentError(f"missing key {key!r}")
    if doc["version"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported version {doc['version']!r}")
    steps = doc["steps"]
    if not isinstance(steps, list) or not steps:
        raise DocumentError("steps must be a nonempty list")
    labels = {st["label"] for st in doc["construction"]["steps"]}
    seen: set[str] = set()
    for step in steps:
        for key in ("id", "rule", "facts", "deps", "highlight", "caption"):
            if key not in step:
                raise DocumentError(f"step missing key {key!r}")
        for dep in step["deps"]:
            if dep not in seen:
                raise DocumentError(
                    f"step {step['id']} depends on {dep!r} which is not earlier")
        seen.add(step["id"])
        hl = step["highlight"]
        named = list(hl["points"])
        for group in (hl["segments"], hl["lines"], hl["circles"]):
            for entry in group:
                named.extend(entry)
        for p in named:
            if p not in labels:
                raise DocumentError(f"highlighted point {p!r} not constructed")
    goal = doc["goal"]
    last = steps[-1]
    if not any(f["pred"] == goal["pred"] and f["args"] == goal["args"]
               for f in last["facts"]):
        raise DocumentError("last step does not introduce the goal")


# -- serialization -----------------------------------------------------------------


def _json_value(v: object, indent: int) -> str:
    pad = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad}  {json.dumps(k, ensure_ascii=False)}: '
                 f'{_json_value(x, indent + 1)}' for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list):
        if not v:
            return "[]"
        flat = all(not isinstance(x, (dict, list)) for x in v)
        if flat:
            return "[" + ", ".join(_json_value(x, 0) for x in v) + "]"
        items = [f"{pad}  {_json_value(x, indent + 1)}" for x in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        out = format(v, ".17g")
        return out
    if isinstance(v, (int, str)):
        return json.dumps(v, ensure_ascii=False)
    raise DocumentError(f"unserializable value of type {type(v).__name__}")


def serialize(doc: dict) -> str:
    """Deterministic pww-1 JSON text (fixed key order, 17-digit floats)."""
    _validate_document(doc)
    return _json_value(doc, 0) + "\n"


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from None
    _validate_document(doc)
    return doc


# -- HTML bundle --------------------------------------------------------------------


def viewer_assets() -> str:
    """The prebuilt viewer bundle shipped inside the package."""
    ref = resources.files("pww").joinpath("assets/viewer.js")
    if not ref.is_file():
        raise DocumentError(
            "viewer assets missing: build the frontend bundle first "
            "(see frontend/README.md) and re-install")
    return ref.read_text(encoding="utf-8")


def render_html(doc: dict) -> str:
    """One self-contained HTML file: document JSON plus the inline viewer."""
    payload = serialize(doc).replace("</", "<\\/")
    viewer = viewer_assets().replace("</script", "<\\/script")
    title = doc["goal"]["text"]
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
</head>
<body>
<div id="app"></div>
<script type="application/json" id="pww-document">
{payload}</script>
<script>
{viewer}
</script>
</body>
</html>
"""
