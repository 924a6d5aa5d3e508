"""Numeric instantiation of constructions and tolerance-based fact checks.

Free points are sampled from the unit square; every derived object has a
closed form.  A sample that makes any step degenerate is thrown away and
redrawn from a new derived seed, so downstream code can assume the model
is usable.  All predicate residuals are normalized so that verdicts are
invariant under translation, rotation and scaling of the whole figure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .construction import Construction, GoalStatement, carrier_map
from .facts import Fact, FactError, make_fact

Vec = tuple[float, float]

_RESAMPLE_LIMIT = 100


@dataclass(frozen=True)
class Tolerances:
    """Comparison thresholds shared across the pipeline."""

    eq_tol: float = 1e-9
    deg_tol: float = 1e-6
    samples: int = 10


@dataclass
class NumericModel:
    """Coordinates for every point of a construction, plus carrier geometry."""

    seed: int
    coords: dict[str, Vec]
    lines: dict[str, tuple[Vec, Vec]] = field(default_factory=dict)  # base, dir
    circles: dict[str, tuple[Vec, float]] = field(default_factory=dict)
    derived: dict[str, bool] = field(default_factory=dict)


class DegenerateConstruction(ValueError):
    """Raised when no nondegenerate witness was found within the retry budget."""


def _sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def _dot(a: Vec, b: Vec) -> float:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a: Vec, b: Vec) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _norm(a: Vec) -> float:
    return math.hypot(a[0], a[1])


def _rot90(a: Vec) -> Vec:
    return (-a[1], a[0])


def _dist(a: Vec, b: Vec) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


class _StepDegenerate(Exception):
    pass


def _line_line(p: Vec, d: Vec, q: Vec, e: Vec, deg_tol: float) -> Vec:
    den = _cross(d, e)
    nd, ne = _norm(d), _norm(e)
    if nd == 0.0 or ne == 0.0 or abs(den) / (nd * ne) < deg_tol:
        raise _StepDegenerate
    t = _cross(_sub(q, p), e) / den
    return (p[0] + t * d[0], p[1] + t * d[1])


def _circumcenter(a: Vec, b: Vec, c: Vec, deg_tol: float) -> Vec:
    ab, ac = _sub(b, a), _sub(c, a)
    den = 2.0 * _cross(ab, ac)
    nab, nac = _norm(ab), _norm(ac)
    if nab == 0.0 or nac == 0.0 or abs(den) / (2.0 * nab * nac) < deg_tol:
        raise _StepDegenerate
    sq_ab = _dot(ab, ab)
    sq_ac = _dot(ac, ac)
    ux = (ac[1] * sq_ab - ab[1] * sq_ac) / den
    uy = (ab[0] * sq_ac - ac[0] * sq_ab) / den
    return (a[0] + ux, a[1] + uy)


def _build(c: Construction, rng: random.Random, deg_tol: float) -> NumericModel:
    coords: dict[str, Vec] = {}
    lines: dict[str, tuple[Vec, Vec]] = {}
    circles: dict[str, tuple[Vec, float]] = {}
    derived: dict[str, bool] = {}

    def line_of(label: str) -> tuple[Vec, Vec]:
        return lines[label]

    for s in c.steps:
        k, args = s.kind, s.args
        if k == "FreePoint":
            coords[s.label] = (rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
            derived[s.label] = False
        elif k == "PointOnLine":
            if args[0] in lines:
                base, d = line_of(args[0])
                nd = _norm(d)
                if nd < deg_tol:
                    raise _StepDegenerate
                t = rng.uniform(-1.0, 1.0)
                coords[s.label] = (base[0] + t * d[0] / nd, base[1] + t * d[1] / nd)
            else:
                ctr, r = circles[args[0]]
                phi = rng.uniform(0.0, 2.0 * math.pi)
                coords[s.label] = (ctr[0] + r * math.cos(phi), ctr[1] + r * math.sin(phi))
            derived[s.label] = True
        elif k == "Midpoint":
            a, b = coords[args[0]], coords[args[1]]
            if _dist(a, b) < deg_tol:
                raise _StepDegenerate
            coords[s.label] = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            derived[s.label] = True
        elif k == "LineThrough":
            a, b = coords[args[0]], coords[args[1]]
            if _dist(a, b) < deg_tol:
                raise _StepDegenerate
            lines[s.label] = (a, _sub(b, a))
        elif k == "ParallelLine":
            p = coords[args[0]]
            _, d = line_of(args[1])
            lines[s.label] = (p, d)
        elif k == "PerpLine":
            p = coords[args[0]]
            _, d = line_of(args[1])
            lines[s.label] = (p, _rot90(d))
        elif k == "PerpBisector":
            a, b = coords[args[0]], coords[args[1]]
            if _dist(a, b) < deg_tol:
                raise _StepDegenerate
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            lines[s.label] = (mid, _rot90(_sub(b, a)))
        elif k == "Intersect":
            p, d = line_of(args[0])
            q, e = line_of(args[1])
            coords[s.label] = _line_line(p, d, q, e, deg_tol)
            derived[s.label] = True
        elif k == "Circumcircle":
            a, b, cc = coords[args[0]], coords[args[1]], coords[args[2]]
            ctr = _circumcenter(a, b, cc, deg_tol)
            circles[s.label] = (ctr, _dist(ctr, a))
        elif k == "CircleCenterThrough":
            o, a = coords[args[0]], coords[args[1]]
            r = _dist(o, a)
            if r < deg_tol:
                raise _StepDegenerate
            circles[s.label] = (o, r)
        else:  # pragma: no cover - validated constructions
            raise ValueError(f"unknown step kind {k!r}")
    return NumericModel(0, coords, lines, circles, derived)


def instantiate(c: Construction, seed: int, t: Tolerances = Tolerances()) -> NumericModel:
    """Sample a nondegenerate witness; deterministic for a given seed."""
    for attempt in range(_RESAMPLE_LIMIT):
        rng = random.Random(seed * 1_000_003 + attempt)
        try:
            m = _build(c, rng, t.deg_tol)
        except _StepDegenerate:
            continue
        m.seed = seed
        return m
    raise DegenerateConstruction(
        f"no nondegenerate witness in {_RESAMPLE_LIMIT} samples (seed {seed})"
    )


# -- predicate evaluation ------------------------------------------------------


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0.0 else (0.0 if num == 0.0 else math.inf)


def _dir_angle(a: Vec, b: Vec) -> float:
    # direction of line ab, modulo a half turn
    return math.atan2(b[1] - a[1], b[0] - a[0]) % math.pi


def _wrap_half(x: float) -> float:
    # reduce an angle difference into (-pi/2, pi/2]
    x = x % math.pi
    if x > math.pi / 2:
        x -= math.pi
    return x


def _coll_residual(a: Vec, b: Vec, c: Vec) -> float:
    return _ratio(abs(_cross(_sub(b, a), _sub(c, a))), _norm(_sub(b, a)) * _norm(_sub(c, a)))


def _eqangle_residual(m: NumericModel, args: tuple[str, ...]) -> float:
    p = [m.coords[x] for x in args]
    d1 = _dir_angle(p[0], p[1])
    d2 = _dir_angle(p[2], p[3])
    d3 = _dir_angle(p[4], p[5])
    d4 = _dir_angle(p[6], p[7])
    return abs(_wrap_half((d2 - d1) - (d4 - d3)))


def _residual(m: NumericModel, f: Fact) -> float:
    """Scale-free residual; the fact holds when this is below eq_tol."""
    a = f.args
    P = m.coords
    if f.pred == "coll":
        return _coll_residual(P[a[0]], P[a[1]], P[a[2]])
    if f.pred == "para":
        u = _sub(P[a[1]], P[a[0]])
        v = _sub(P[a[3]], P[a[2]])
        return _ratio(abs(_cross(u, v)), _norm(u) * _norm(v))
    if f.pred == "perp":
        u = _sub(P[a[1]], P[a[0]])
        v = _sub(P[a[3]], P[a[2]])
        return _ratio(abs(_dot(u, v)), _norm(u) * _norm(v))
    if f.pred == "cong":
        d1 = _dist(P[a[0]], P[a[1]])
        d2 = _dist(P[a[2]], P[a[3]])
        return _ratio(abs(d1 - d2), max(d1, d2))
    if f.pred == "midp":
        mid, x, y = P[a[0]], P[a[1]], P[a[2]]
        want = ((x[0] + y[0]) / 2, (x[1] + y[1]) / 2)
        return _ratio(_dist(mid, want), _dist(x, y))
    if f.pred == "cyclic":
        # equal directed angles subtended by the last two vertices
        pa, pb, pc, pd = (P[x] for x in a)
        d1 = _dir_angle(pc, pa) - _dir_angle(pc, pb)
        d2 = _dir_angle(pd, pa) - _dir_angle(pd, pb)
        return abs(_wrap_half(d1 - d2))
    if f.pred == "circle":
        o = P[a[0]]
        r = [_dist(o, P[x]) for x in a[1:]]
        top = max(r)
        return _ratio(max(r) - min(r), top)
    if f.pred == "eqangle":
        return _eqangle_residual(m, a)
    if f.pred == "eqratio":
        d = [_dist(P[a[i]], P[a[i + 1]]) for i in (0, 2, 4, 6)]
        if min(d) <= 0.0:
            return math.inf
        return abs(math.log(d[0]) - math.log(d[1]) - math.log(d[2]) + math.log(d[3]))
    if f.pred == "simtri":
        r1 = _eqangle_residual(m, (a[0], a[1], a[0], a[2], a[3], a[4], a[3], a[5]))
        r2 = _eqangle_residual(m, (a[1], a[0], a[1], a[2], a[4], a[3], a[4], a[5]))
        return max(r1, r2)
    if f.pred == "contri":
        sim = _residual(m, Fact("simtri", a))
        base = _residual(m, make_fact("cong", (a[0], a[1], a[3], a[4])))
        return max(sim, base)
    raise FactError(f"unknown predicate {f.pred!r}")


def eval_fact(m: NumericModel, f: Fact, t: Tolerances = Tolerances()) -> bool:
    """True when the fact holds on the witness within eq_tol."""
    return _residual(m, f) < t.eq_tol


def noncollinear(m: NumericModel, a: str, b: str, c: str, t: Tolerances) -> bool:
    """Side condition guard: clearly not collinear on the witness."""
    if len({a, b, c}) < 3:
        return False
    return _coll_residual(m.coords[a], m.coords[b], m.coords[c]) >= t.deg_tol


def distinct(m: NumericModel, a: str, b: str, t: Tolerances) -> bool:
    return a != b and _dist(m.coords[a], m.coords[b]) >= t.deg_tol


# -- conjecture checking -------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of a numeric conjecture check."""

    kind: str  # "holds" | "refuted" | "degenerate"
    witness: NumericModel | None = None


def check_conjecture(
    c: Construction,
    g: GoalStatement,
    t: Tolerances = Tolerances(),
    seed: int = 0,
) -> Verdict:
    """Evaluate the goal on t.samples independent witnesses."""
    fact = g.to_fact()
    for i in range(t.samples):
        try:
            m = instantiate(c, seed + i, t)
        except DegenerateConstruction:
            return Verdict("degenerate")
        if not eval_fact(m, fact, t):
            return Verdict("refuted", witness=m)
    return Verdict("holds")


# -- relation scanning ---------------------------------------------------------

_RELATE_ORDER = [
    "coll", "para", "perp", "cong", "midp", "cyclic",
    "circle", "eqangle", "eqratio", "simtri", "contri",
]


def _candidate_facts(points: list[str]) -> list[Fact]:
    """All nontrivial predicate instances over a small selection."""
    pts = sorted(points)
    seen: set[Fact] = set()
    out: list[Fact] = []

    def add(pred: str, args: tuple[str, ...]) -> None:
        try:
            f = make_fact(pred, args)
        except FactError:
            return
        if f not in seen:
            seen.add(f)
            out.append(f)

    for trio in combinations(pts, 3):
        add("coll", trio)
        for mid in trio:
            rest = tuple(x for x in trio if x != mid)
            add("midp", (mid,) + rest)
    for quad in combinations(pts, 4):
        add("cyclic", quad)
        for o in quad:
            add("circle", (o,) + tuple(x for x in quad if x != o))
    pairs = list(combinations(pts, 2))
    for s1, s2 in combinations(pairs, 2):
        add("para", s1 + s2)
        add("perp", s1 + s2)
        add("cong", s1 + s2)
    if len(pts) <= 6:  # the 8-point predicates explode on large selections
        for s1, s2 in permutations(pairs, 2):
            for s3, s4 in permutations(pairs, 2):
                if (s1, s2) == (s3, s4) or {s1, s2} == {s3, s4}:
                    continue
                add("eqangle", s1 + s2 + s3 + s4)
                add("eqratio", s1 + s2 + s3 + s4)
    if 6 <= len(pts) <= 8:
        for t1 in combinations(pts, 3):
            rest = [x for x in pts if x not in t1]
            for t2 in permutations(rest, 3):
                add("simtri", t1 + t2)
                add("contri", t1 + t2)
    return out


def relate(
    c: Construction,
    selection: list[str],
    t: Tolerances = Tolerances(),
    seed: int = 0,
) -> list[GoalStatement]:
    """Relations among the selected labels that hold on every sample.

    Carrier labels in the selection stand for their incident points.
    """
    carriers = carrier_map(c)
    points: list[str] = []
    for lab in selection:
        if lab in carriers:
            for p in carriers[lab].points:
                if p not in points:
                    points.append(p)
        elif lab not in points:
            points.append(lab)
    candidates = _candidate_facts(points)
    models = []
    for i in range(t.samples):
        models.append(instantiate(c, seed + i, t))
    held = [f for f in candidates if all(eval_fact(m, f, t) for m in models)]
    held.sort(key=lambda f: (_RELATE_ORDER.index(f.pred), f.args))
    return [GoalStatement(f.pred, f.args) for f in held]
