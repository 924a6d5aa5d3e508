"""Straight-line construction programs over points, lines and circles.

A construction is an ordered list of steps; each step defines exactly one
new label from earlier labels.  Macros (circumcenter, centroid, ...) are
expanded by the parser, so everything downstream sees primitive steps only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .facts import PREDICATES, Fact, FactError, make_fact

# step kind -> (argument kinds, kind of the defined label)
# argument kind letters: P point, L line, C circle, O line-or-circle
STEP_KINDS: dict[str, tuple[str, str]] = {
    "FreePoint": ("", "P"),
    "PointOnLine": ("O", "P"),
    "Midpoint": ("PP", "P"),
    "LineThrough": ("PP", "L"),
    "ParallelLine": ("PL", "L"),
    "PerpLine": ("PL", "L"),
    "PerpBisector": ("PP", "L"),
    "Intersect": ("LL", "P"),
    "Circumcircle": ("PPP", "C"),
    "CircleCenterThrough": ("PP", "C"),
}


@dataclass(frozen=True)
class Step:
    """One construction step: kind, the label it defines, its arguments."""

    kind: str
    label: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class GoalStatement:
    """A conjectured relation to check or prove."""

    pred: str
    args: tuple[str, ...]

    def to_fact(self) -> Fact:
        return make_fact(self.pred, self.args)

    def render(self) -> str:
        return f"{self.pred} {' '.join(self.args)}"


@dataclass
class Construction:
    """A validated sequence of primitive steps plus an optional goal."""

    steps: tuple[Step, ...]
    goal: GoalStatement | None = None
    label_kinds: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.label_kinds:
            # tolerate unknown kinds here so validate() can report them
            self.label_kinds = {
                s.label: STEP_KINDS.get(s.kind, ("", "?"))[1] for s in self.steps
            }

    @property
    def points(self) -> list[str]:
        return [s.label for s in self.steps if self.label_kinds.get(s.label) == "P"]

    @property
    def free_points(self) -> list[str]:
        return [s.label for s in self.steps if s.kind == "FreePoint"]


@dataclass(frozen=True)
class Diagnostic:
    """A validation finding tied to a step index."""

    step_index: int
    message: str


# -- validation --------------------------------------------------------------


def validate(c: Construction) -> list[Diagnostic]:
    """Check label uniqueness, reference order and argument kinds."""
    out: list[Diagnostic] = []
    kinds: dict[str, str] = {}
    for i, s in enumerate(c.steps):
        sig = STEP_KINDS.get(s.kind)
        if sig is None:
            out.append(Diagnostic(i, f"unknown step kind {s.kind!r}"))
            continue
        want, defines = sig
        if s.label in kinds:
            out.append(Diagnostic(i, f"label {s.label!r} already defined"))
        if len(s.args) != len(want):
            out.append(Diagnostic(i, f"{s.kind} expects {len(want)} arguments"))
        else:
            for a, k in zip(s.args, want):
                got = kinds.get(a)
                if got is None:
                    out.append(Diagnostic(i, f"undefined reference {a!r}"))
                elif k == "O":
                    if got == "P":
                        out.append(Diagnostic(i, f"{a!r} must be a line or circle"))
                elif got != k:
                    names = {"P": "point", "L": "line", "C": "circle"}
                    out.append(Diagnostic(i, f"{a!r} must be a {names[k]}"))
            if len(set(s.args)) != len(s.args):
                out.append(Diagnostic(i, "identical arguments in step"))
        kinds[s.label] = defines
    if not any(s.kind == "FreePoint" for s in c.steps):
        out.append(Diagnostic(0, "construction has no free point"))
    if c.goal is not None:
        last = max(len(c.steps) - 1, 0)
        arity = PREDICATES.get(c.goal.pred)
        if arity is None:
            out.append(Diagnostic(last, f"unknown goal predicate {c.goal.pred!r}"))
        elif len(c.goal.args) != arity:
            out.append(Diagnostic(last, f"goal {c.goal.pred} expects {arity} points"))
        else:
            for a in c.goal.args:
                if kinds.get(a) != "P":
                    out.append(Diagnostic(last, f"goal argument {a!r} is not a point"))
            try:
                c.goal.to_fact()
            except FactError as e:
                out.append(Diagnostic(last, f"bad goal: {e}"))
    return out


# -- macro desugaring ---------------------------------------------------------

# macro name -> (argument kinds, template)
# Template steps use $0 for the macro's defined label, $1.. for its arguments
# and _name for generated labels local to one expansion.
MACROS: dict[str, tuple[str, list[tuple[str, str, tuple[str, ...]]]]] = {
    "circumcenter": (
        "PPP",
        [
            ("PerpBisector", "_p1", ("$1", "$2")),
            ("PerpBisector", "_p2", ("$2", "$3")),
            ("Intersect", "$0", ("_p1", "_p2")),
        ],
    ),
    "centroid": (
        "PPP",
        [
            ("Midpoint", "_Ma", ("$2", "$3")),
            ("Midpoint", "_Mb", ("$1", "$3")),
            ("LineThrough", "_ma", ("$1", "_Ma")),
            ("LineThrough", "_mb", ("$2", "_Mb")),
            ("Intersect", "$0", ("_ma", "_mb")),
        ],
    ),
    "orthocenter": (
        "PPP",
        [
            ("LineThrough", "_a", ("$2", "$3")),
            ("LineThrough", "_b", ("$1", "$3")),
            ("PerpLine", "_h1", ("$1", "_a")),
            ("PerpLine", "_h2", ("$2", "_b")),
            ("Intersect", "$0", ("_h1", "_h2")),
        ],
    ),
    "foot": (
        "PL",
        [
            ("PerpLine", "_q", ("$1", "$2")),
            ("Intersect", "$0", ("_q", "$2")),
        ],
    ),
    "median": (
        "PPP",
        [
            ("Midpoint", "_m", ("$2", "$3")),
            ("LineThrough", "$0", ("$1", "_m")),
        ],
    ),
}


def expand_macro(
    name: str, label: str, args: tuple[str, ...], taken: set[str]
) -> list[Step]:
    """Expand one macro use into primitive steps with fresh generated labels."""
    _, template = MACROS[name]
    locals_needed = sorted(
        {t for _, t, _ in template if t.startswith("_")}
        | {a for _, _, aa in template for a in aa if a.startswith("_")}
    )
    suffix = ""
    n = 1
    while any(loc + suffix in taken for loc in locals_needed):
        n += 1
        suffix = f"_{n}"
    mapping = {loc: loc + suffix for loc in locals_needed}
    mapping["$0"] = label
    for i, a in enumerate(args, start=1):
        mapping[f"${i}"] = a
    steps = []
    for kind, lab, aa in template:
        steps.append(
            Step(kind, mapping.get(lab, lab), tuple(mapping.get(a, a) for a in aa))
        )
    return steps


# -- printing -----------------------------------------------------------------

_KIND_TO_STMT = {
    "FreePoint": "point",
    "PointOnLine": "on",
    "Midpoint": "midpoint",
    "LineThrough": "line",
    "ParallelLine": "parallel",
    "PerpLine": "perpendicular",
    "PerpBisector": "perpbisector",
    "Intersect": "intersect",
    "Circumcircle": "circumcircle",
    "CircleCenterThrough": "circle",
}


def to_dsl(c: Construction) -> str:
    """Print a construction as primitive statements; parses back unchanged."""
    lines = []
    for s in c.steps:
        lines.append(" ".join((_KIND_TO_STMT[s.kind], s.label) + s.args))
    if c.goal is not None:
        lines.append(f"goal {c.goal.render()}")
    return "\n".join(lines) + "\n"


# -- carrier incidence and fact seeding ---------------------------------------


@dataclass
class CarrierInfo:
    """What the construction says about one carrier line or circle."""

    kind: str  # "line" | "circle"
    points: list[str] = field(default_factory=list)
    through: tuple[str, str] | None = None
    para_to: str | None = None
    perp_to: str | None = None
    perpbis_of: tuple[str, str] | None = None
    center: str | None = None


def _define_carrier(s: Step) -> CarrierInfo | None:
    if s.kind == "LineThrough":
        return CarrierInfo("line", [s.args[0], s.args[1]], through=(s.args[0], s.args[1]))
    if s.kind == "ParallelLine":
        return CarrierInfo("line", [s.args[0]], para_to=s.args[1])
    if s.kind == "PerpLine":
        return CarrierInfo("line", [s.args[0]], perp_to=s.args[1])
    if s.kind == "PerpBisector":
        return CarrierInfo("line", [], perpbis_of=(s.args[0], s.args[1]))
    if s.kind == "Circumcircle":
        return CarrierInfo("circle", list(s.args))
    if s.kind == "CircleCenterThrough":
        return CarrierInfo("circle", [s.args[1]], center=s.args[0])
    return None


def carrier_map(c: Construction) -> dict[str, CarrierInfo]:
    """Collect, per carrier label, its defining relation and incident points."""
    info: dict[str, CarrierInfo] = {}
    for s in c.steps:
        ci = _define_carrier(s)
        if ci is not None:
            info[s.label] = ci
        elif s.kind == "PointOnLine":
            info[s.args[0]].points.append(s.label)
        elif s.kind == "Intersect":
            info[s.args[0]].points.append(s.label)
            info[s.args[1]].points.append(s.label)
    return info


def seed_facts(c: Construction) -> list[tuple[Fact, int]]:
    """Facts that hold by construction, each tied to the completing step.

    Walks the steps once, materializing a point-level fact as soon as the
    labels needed to state it exist.  A carrier line with fewer than two
    incident points cannot be named by points, so its defining relation is
    withheld until a second point lands on it (if ever).
    """
    info: dict[str, CarrierInfo] = {}
    out: list[tuple[Fact, int]] = []
    emitted: set[Fact] = set()

    def emit(i: int, pred: str, args: tuple[str, ...]) -> None:
        try:
            f = make_fact(pred, args)
        except FactError:
            return  # repeated labels make the instance vacuous, skip it
        if f not in emitted:
            emitted.add(f)
            out.append((f, i))

    def line_pair(label: str) -> tuple[str, str] | None:
        ci = info.get(label)
        if ci is None or ci.kind != "line" or len(ci.points) < 2:
            return None
        return (ci.points[0], ci.points[1])

    def sweep(i: int) -> None:
        # emit every line relation whose two sides are now point-expressible
        for lab in info:
            ci = info[lab]
            if ci.kind != "line":
                continue
            pair = line_pair(lab)
            if pair is None:
                continue
            if ci.para_to is not None:
                other = line_pair(ci.para_to)
                if other is not None:
                    emit(i, "para", pair + other)
            if ci.perp_to is not None:
                other = line_pair(ci.perp_to)
                if other is not None:
                    emit(i, "perp", pair + other)
            if ci.perpbis_of is not None:
                emit(i, "perp", pair + ci.perpbis_of)

    def landed(i: int, p: str, carrier: str) -> None:
        ci = info[carrier]
        if ci.kind == "circle":
            if ci.center is not None and ci.points:
                emit(i, "cong", (ci.center, p, ci.center, ci.points[0]))
            if len(ci.points) >= 3:
                emit(i, "cyclic", (ci.points[0], ci.points[1], ci.points[2], p))
            ci.points.append(p)
            return
        if ci.perpbis_of is not None:
            a, b = ci.perpbis_of
            emit(i, "cong", (p, a, p, b))
        ci.points.append(p)
        if len(ci.points) >= 3:
            emit(i, "coll", (ci.points[0], ci.points[1], p))

    for i, s in enumerate(c.steps):
        if s.kind == "Midpoint":
            emit(i, "midp", (s.label, s.args[0], s.args[1]))
            continue
        ci = _define_carrier(s)
        if ci is not None:
            info[s.label] = ci
        elif s.kind == "PointOnLine":
            landed(i, s.label, s.args[0])
        elif s.kind == "Intersect":
            landed(i, s.label, s.args[0])
            landed(i, s.label, s.args[1])
        sweep(i)
    return out
