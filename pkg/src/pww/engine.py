"""Forward-chaining deduction over geometric facts.

The store keeps four synchronized views of what is known:

* maximal collinear point classes (one direction variable each) and
  maximal concyclic point classes, both merged as facts arrive;
* a proof forest over segments for congruence chains;
* two exact linear systems, directions modulo a half turn and log lengths,
  fed one row per inserted relational fact;
* the fact DAG itself, one node per fact with its justification.

Every inserted fact is evaluated on the numeric witness first; a fact that
fails there is recorded and dropped, which firewalls the symbolic store
against degenerate rule matches.  Queries answer from the structures, so
anything they return carries a justification built from stored nodes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .construction import Construction, seed_facts
from .facts import Fact, make_fact
from .linear import Certificate, LinearSystem, Row
from .witness import NumericModel, Tolerances, eval_fact

_HALF = Fraction(1, 2)
_ONE = Fraction(1)


class EngineError(RuntimeError):
    """An internal invariant failed (for example a false seeded fact)."""


@dataclass(frozen=True)
class Justification:
    """Why a fact holds: construction semantics, a rule, or linear algebra."""

    kind: str  # "construction" | "rule" | "chase" | "classes"
    step_index: int | None = None
    rule_id: str | None = None
    premises: tuple[int, ...] = ()
    system: str | None = None  # "angle" | "length"
    certificate: Certificate | None = None


@dataclass
class DagNode:
    fid: int
    fact: Fact
    just: Justification
    level: int


@dataclass
class Derivation:
    """A positive query answer, precise enough to become a DAG node."""

    fact: Fact
    kind: str  # "stored" | "classes" | "forest" | "chase"
    fid: int | None = None
    premises: tuple[int, ...] = ()
    system: str | None = None
    certificate: Certificate | None = None


@dataclass(frozen=True)
class SaturationLimits:
    max_levels: int = 12
    max_facts: int = 100_000
    time_budget_s: float = 10.0


@dataclass(frozen=True)
class SaturationReport:
    levels: int
    facts: int
    stopped: str  # "fixpoint" | "levelcap" | "factcap" | "timecap"
    elapsed_ms: int

    def line(self) -> str:
        return (
            f"levels={self.levels} facts={self.facts} "
            f"stopped={self.stopped} elapsed_ms={self.elapsed_ms}"
        )


# -- collinear point classes ----------------------------------------------------


@dataclass
class LineClass:
    cid: int  # also the direction variable of this class
    points: list[str]
    log: list[int] = field(default_factory=list)  # fact ids shaping the class


class LineClasses:
    """Maximal collinear point sets; any two share at most one point."""

    def __init__(self) -> None:
        self.classes: list[LineClass | None] = []
        self.pair: dict[frozenset[str], int] = {}

    def alive(self) -> list[LineClass]:
        return [c for c in self.classes if c is not None]

    def find_pair(self, a: str, b: str) -> int | None:
        return self.pair.get(frozenset((a, b)))

    def class_of_pair(self, a: str, b: str) -> int:
        """The class through two points, created on demand."""
        cid = self.find_pair(a, b)
        if cid is not None:
            return cid
        cid = len(self.classes)
        self.classes.append(LineClass(cid, [a, b]))
        self.pair[frozenset((a, b))] = cid
        return cid

    def containing(self, pts: tuple[str, ...]) -> LineClass | None:
        cid = self.find_pair(pts[0], pts[1])
        if cid is None:
            return None
        cls = self.classes[cid]
        assert cls is not None
        if all(p in cls.points for p in pts):
            return cls
        return None

    def attach(self, cid: int, p: str, fid: int) -> list[tuple[int, int]]:
        """Put p on class cid, merging overlapping classes.

        Returns merge events as (kept class id, absorbed class id) so the
        caller can glue the corresponding direction variables.
        """
        cls = self.classes[cid]
        assert cls is not None
        if p not in cls.points:
            cls.points.append(p)
            cls.log.append(fid)
        return self._normalize(fid)

    def _normalize(self, fid: int) -> list[tuple[int, int]]:
        # merge any two classes sharing two points, until stable
        events: list[tuple[int, int]] = []
        changed = True
        while changed:
            changed = False
            live = self.alive()
            for i in range(len(live)):
                for j in range(i + 1, len(live)):
                    a, b = live[i], live[j]
                    if len(set(a.points) & set(b.points)) >= 2:
                        keep, gone = (a, b) if a.cid < b.cid else (b, a)
                        for q in gone.points:
                            if q not in keep.points:
                                keep.points.append(q)
                        keep.log.extend(gone.log)
                        keep.log.append(fid)
                        self.classes[gone.cid] = None
                        events.append((keep.cid, gone.cid))
                        changed = True
                        break
                if changed:
                    break
        # rebuild the pair index for affected classes
        self.pair = {}
        for c in self.alive():
            for i in range(len(c.points)):
                for j in range(i + 1, len(c.points)):
                    self.pair[frozenset((c.points[i], c.points[j]))] = c.cid
        return events


# -- concyclic point classes ----------------------------------------------------


@dataclass
class CircleClass:
    cid: int
    points: list[str]
    centers: list[str] = field(default_factory=list)
    log: list[int] = field(default_factory=list)


class CircleClasses:
    """Maximal concyclic point sets; any two share at most two points."""

    def __init__(self) -> None:
        self.classes: list[CircleClass | None] = []

    def alive(self) -> list[CircleClass]:
        return [c for c in self.classes if c is not None]

    def containing(self, pts: tuple[str, ...]) -> CircleClass | None:
        for c in self.alive():
            if all(p in c.points for p in pts):
                return c
        return None

    def ensure(self, pts: tuple[str, ...], fid: int, center: str | None = None) -> CircleClass:
        """Record that pts are concyclic (optionally with a known center)."""
        best: CircleClass | None = None
        for c in self.alive():
            if len(set(c.points) & set(pts)) >= 3 or all(p in c.points for p in pts):
                best = c
                break
        if best is None:
            best = CircleClass(len(self.classes), list(pts))
            self.classes.append(best)
            best.log.append(fid)
        else:
            for p in pts:
                if p not in best.points:
                    best.points.append(p)
                    best.log.append(fid)
        if center is not None and center not in best.centers:
            best.centers.append(center)
            best.log.append(fid)
        self._normalize(fid)
        return best

    def _normalize(self, fid: int) -> None:
        changed = True
        while changed:
            changed = False
            live = self.alive()
            for i in range(len(live)):
                for j in range(i + 1, len(live)):
                    a, b = live[i], live[j]
                    if len(set(a.points) & set(b.points)) >= 3:
                        keep, gone = (a, b) if a.cid < b.cid else (b, a)
                        for q in gone.points:
                            if q not in keep.points:
                                keep.points.append(q)
                        for q in gone.centers:
                            if q not in keep.centers:
                                keep.centers.append(q)
                        keep.log.extend(gone.log)
                        keep.log.append(fid)
                        self.classes[gone.cid] = None
                        changed = True
                        break
                if changed:
                    break


# -- congruence proof forest -----------------------------------------------------

Seg = tuple[str, str]


def seg(a: str, b: str) -> Seg:
    return (a, b) if a < b else (b, a)


class ProofForest:
    """Union-find whose union edges remember the fact that caused them.

    Edges point child -> parent; edge[child] is the fact id asserting the
    congruence between child and parent.  Paths are never compressed, so
    explain() can read justifications straight off the tree.
    """

    def __init__(self) -> None:
        self.parent: dict[Seg, Seg] = {}
        self.edge: dict[Seg, int] = {}

    def _ensure(self, k: Seg) -> None:
        if k not in self.parent:
            self.parent[k] = k

    def _path(self, k: Seg) -> list[Seg]:
        self._ensure(k)
        path = [k]
        while self.parent[path[-1]] != path[-1]:
            path.append(self.parent[path[-1]])
        return path

    def find(self, k: Seg) -> Seg:
        return self._path(k)[-1]

    def same(self, a: Seg, b: Seg) -> bool:
        return self.find(a) == self.find(b)

    def _reroot(self, k: Seg) -> None:
        """Reverse parent pointers so k becomes the root of its tree."""
        path = self._path(k)
        for child, par in zip(path, path[1:]):
            self.parent[par] = child
            self.edge[par] = self.edge.pop(child)
        self.parent[k] = k

    def union(self, a: Seg, b: Seg, fid: int) -> bool:
        self._ensure(a)
        if self.find(a) == self.find(b):
            return False
        self._reroot(b)
        self.parent[b] = a
        self.edge[b] = fid
        return True

    def explain(self, a: Seg, b: Seg) -> list[int]:
        """Fact ids whose congruences chain a to b (empty if a == b)."""
        pa, pb = self._path(a), self._path(b)
        if pa[-1] != pb[-1]:
            raise EngineError(f"segments {a} and {b} are not linked")
        in_a = {k: i for i, k in enumerate(pa)}
        lca = next(k for k in pb if k in in_a)
        fids: list[int] = []
        for k in pa[: in_a[lca]]:
            fids.append(self.edge[k])
        for k in pb:
            if k == lca:
                break
            fids.append(self.edge[k])
        return sorted(set(fids))

    def classes(self) -> list[list[Seg]]:
        """Equivalence classes with two or more segments, deterministic order."""
        by_root: dict[Seg, list[Seg]] = {}
        for k in sorted(self.parent):
            by_root.setdefault(self.find(k), []).append(k)
        return [v for _, v in sorted(by_root.items()) if len(v) >= 2]


# -- the fact store ---------------------------------------------------------------


class FactStore:
    def __init__(self, construction: Construction, witness: NumericModel,
                 tol: Tolerances | None = None) -> None:
        self.construction = construction
        self.witness = witness
        self.tol = tol or Tolerances()
        self.nodes: list[DagNode] = []
        self.by_fact: dict[Fact, int] = {}
        self.by_pred: dict[str, list[int]] = {}
        self.lines = LineClasses()
        self.circles = CircleClasses()
        self.forest = ProofForest()
        self.dirs = LinearSystem(mod_one=True)
        self.lens = LinearSystem(mod_one=False)
        self.dir_tag_fid: dict[int, int] = {}
        self.len_tag_fid: dict[int, int] = {}
        self._seg_var: dict[Seg, int] = {}
        self._next_dir_tag = 0
        self._next_len_tag = 0
        self.level = 0
        self.rejected: list[tuple[Fact, str]] = []

    # variable allocation

    def dir_var(self, a: str, b: str) -> int:
        return self.lines.class_of_pair(a, b)

    def len_var(self, a: str, b: str) -> int:
        k = seg(a, b)
        if k not in self._seg_var:
            self._seg_var[k] = len(self._seg_var)
        return self._seg_var[k]

    # row construction (shared by insertion and query)

    def dir_row(self, f: Fact) -> tuple[Row, Fraction]:
        row: Row = {}

        def bump(v: int, c: int) -> None:
            row[v] = row.get(v, Fraction(0)) + c
            if row[v] == 0:
                del row[v]

        a = f.args
        if f.pred == "para":
            bump(self.dir_var(a[0], a[1]), 1)
            bump(self.dir_var(a[2], a[3]), -1)
            return row, Fraction(0)
        if f.pred == "perp":
            bump(self.dir_var(a[0], a[1]), 1)
            bump(self.dir_var(a[2], a[3]), -1)
            return row, _HALF
        if f.pred == "eqangle":
            # (d2 - d1) - (d4 - d3) = 0
            bump(self.dir_var(a[0], a[1]), -1)
            bump(self.dir_var(a[2], a[3]), 1)
            bump(self.dir_var(a[4], a[5]), 1)
            bump(self.dir_var(a[6], a[7]), -1)
            return row, Fraction(0)
        raise EngineError(f"no direction row for {f.pred}")

    def len_row(self, f: Fact) -> tuple[Row, Fraction]:
        row: Row = {}

        def bump(v: int, c: int) -> None:
            row[v] = row.get(v, Fraction(0)) + c
            if row[v] == 0:
                del row[v]

        a = f.args
        if f.pred == "cong":
            bump(self.len_var(a[0], a[1]), 1)
            bump(self.len_var(a[2], a[3]), -1)
            return row, Fraction(0)
        if f.pred == "eqratio":
            # log|s1| - log|s2| - log|s3| + log|s4| = 0
            bump(self.len_var(a[0], a[1]), 1)
            bump(self.len_var(a[2], a[3]), -1)
            bump(self.len_var(a[4], a[5]), -1)
            bump(self.len_var(a[6], a[7]), 1)
            return row, Fraction(0)
        raise EngineError(f"no length row for {f.pred}")

    def _cert_premises(self, system: str, cert: Certificate) -> tuple[int, ...]:
        tagmap = self.dir_tag_fid if system == "angle" else self.len_tag_fid
        return tuple(sorted({tagmap[t] for t, _ in cert.terms}))


def _structurally_known(s: FactStore, f: Fact) -> bool:
    a = f.args
    if f.pred == "coll":
        return s.lines.containing(a) is not None
    if f.pred == "cyclic":
        return s.circles.containing(a) is not None
    if f.pred == "cong":
        return s.forest.same(seg(a[0], a[1]), seg(a[2], a[3]))
    if f.pred in ("para", "perp", "eqangle"):
        row, const = s.dir_row(f)
        return s.dirs.query(row, const) is not None
    if f.pred == "eqratio":
        row, const = s.len_row(f)
        return s.lens.query(row, const) is not None
    return False


def insert_fact(s: FactStore, f: Fact, just: Justification,
                materialize: bool = False) -> tuple[str, int | None]:
    """Add one fact to the store.

    Returns ("known", fid-or-None) when nothing new is learned,
    ("rejected", None) when the witness refutes the fact, and
    ("new", fid) after storing.  With materialize=True a fact that is
    derivable but not stored verbatim is stored anyway, so it can serve
    as a premise node in the proof DAG.
    """
    if f in s.by_fact:
        return "known", s.by_fact[f]
    if not materialize and _structurally_known(s, f):
        return "known", None
    if not eval_fact(s.witness, f, s.tol):
        s.rejected.append((f, just.rule_id or just.kind))
        return "rejected", None

    fid = len(s.nodes)
    s.nodes.append(DagNode(fid, f, just, s.level))
    s.by_fact[f] = fid
    s.by_pred.setdefault(f.pred, []).append(fid)
    a = f.args

    if f.pred == "coll":
        cid = s.lines.class_of_pair(a[0], a[1])
        events = s.lines.attach(cid, a[2], fid)
        for keep, gone in events:
            tag = s._next_dir_tag
            s._next_dir_tag += 1
            s.dirs.add_row(tag, {keep: _ONE, gone: -_ONE}, Fraction(0))
            s.dir_tag_fid[tag] = fid
    elif f.pred in ("para", "perp", "eqangle"):
        row, const = s.dir_row(f)
        tag = s._next_dir_tag
        s._next_dir_tag += 1
        s.dirs.add_row(tag, row, const)
        s.dir_tag_fid[tag] = fid
    elif f.pred in ("cong", "eqratio"):
        row, const = s.len_row(f)
        tag = s._next_len_tag
        s._next_len_tag += 1
        s.lens.add_row(tag, row, const)
        s.len_tag_fid[tag] = fid
        if f.pred == "cong":
            s.forest.union(seg(a[0], a[1]), seg(a[2], a[3]), fid)
    elif f.pred == "midp":
        m, x, y = a
        fold = Justification(kind="rule", rule_id="R01", premises=(fid,))
        insert_fact(s, make_fact("coll", (m, x, y)), fold, materialize=True)
        insert_fact(s, make_fact("cong", (m, x, m, y)), fold, materialize=True)
    elif f.pred == "cyclic":
        s.circles.ensure(a, fid)
    elif f.pred == "circle":
        s.circles.ensure(a[1:], fid, center=a[0])
    # simtri / contri are plain DAG nodes; rules read them from by_pred
    return "new", fid


def query(s: FactStore, f: Fact) -> Derivation | None:
    """Is f derivable right now?  Answers carry a reusable justification."""
    fid = s.by_fact.get(f)
    if fid is not None:
        return Derivation(f, "stored", fid=fid, premises=(fid,))
    a = f.args
    if f.pred == "coll":
        cls = s.lines.containing(a)
        if cls is not None:
            return Derivation(f, "classes", premises=tuple(sorted(set(cls.log))))
        return None
    if f.pred == "cyclic":
        cc = s.circles.containing(a)
        if cc is not None:
            return Derivation(f, "classes", premises=tuple(sorted(set(cc.log))))
        return None
    if f.pred == "cong":
        s1, s2 = seg(a[0], a[1]), seg(a[2], a[3])
        if s.forest.same(s1, s2):
            return Derivation(f, "forest", premises=tuple(s.forest.explain(s1, s2)))
        row, const = s.len_row(f)
        cert = s.lens.query(row, const)
        if cert is not None:
            return Derivation(f, "chase", premises=s._cert_premises("length", cert),
                              system="length", certificate=cert)
        return None
    if f.pred == "eqratio":
        row, const = s.len_row(f)
        cert = s.lens.query(row, const)
        if cert is not None:
            return Derivation(f, "chase", premises=s._cert_premises("length", cert),
                              system="length", certificate=cert)
        return None
    if f.pred in ("para", "perp", "eqangle"):
        row, const = s.dir_row(f)
        cert = s.dirs.query(row, const)
        if cert is not None:
            return Derivation(f, "chase", premises=s._cert_premises("angle", cert),
                              system="angle", certificate=cert)
        return None
    return None


def materialize(s: FactStore, d: Derivation) -> int | None:
    """Turn a query answer into a DAG node (reusing a stored one)."""
    if d.kind == "stored":
        assert d.fid is not None
        return d.fid
    kind = "chase" if d.kind == "chase" else "classes"
    just = Justification(kind=kind, premises=d.premises,
                         system=d.system, certificate=d.certificate)
    outcome, fid = insert_fact(s, d.fact, just, materialize=True)
    if outcome == "rejected":
        return None
    assert fid is not None
    return fid


def init_store(c: Construction, witness: NumericModel,
               tol: Tolerances | None = None) -> FactStore:
    """Seed a store with the construction's defining facts (level 0)."""
    s = FactStore(c, witness, tol)
    for f, step_index in seed_facts(c):
        just = Justification(kind="construction", step_index=step_index)
        outcome, _ = insert_fact(s, f, just)
        if outcome == "rejected":
            raise EngineError(f"seeded fact {f.render()} fails on the witness")
    return s


def saturate(s: FactStore, limits: SaturationLimits | None = None) -> SaturationReport:
    """Run rules level by level until nothing new appears or a cap hits."""
    from . import rules  # local import; rules needs the store types above

    lim = limits or SaturationLimits()
    t0 = time.monotonic()
    stopped = "fixpoint"
    state = rules.MatchState(s)
    level = 0
    while True:
        if level >= lim.max_levels:
            stopped = "levelcap"
            break
        if time.monotonic() - t0 > lim.time_budget_s:
            stopped = "timecap"
            break
        level += 1
        s.level = level
        before = len(s.nodes)
        conclusions = rules.match_all(state)
        conclusions.sort(key=lambda c: (c.rule_id, c.fact))
        capped = False
        for concl in conclusions:
            if len(s.nodes) >= lim.max_facts:
                stopped = "factcap"
                capped = True
                break
            if time.monotonic() - t0 > lim.time_budget_s:
                stopped = "timecap"
                capped = True
                break
            premise_fids: list[int] = []
            ok = True
            for p in concl.premises:
                if isinstance(p, int):
                    premise_fids.append(p)
                    continue
                pf = materialize(s, p)
                if pf is None:
                    ok = False
                    break
                premise_fids.append(pf)
            if not ok:
                continue
            just = Justification(kind="rule", rule_id=concl.rule_id,
                                 premises=tuple(premise_fids))
            insert_fact(s, concl.fact, just)
        if capped:
            break
        if len(s.nodes) == before:
            level -= 1  # an empty level is the fixpoint, not progress
            break
    elapsed_ms = int(round((time.monotonic() - t0) * 1000))
    report = SaturationReport(level, len(s.nodes), stopped, elapsed_ms)
    return report


def prove(c: Construction, goal: Fact, witness: NumericModel,
          tol: Tolerances | None = None,
          limits: SaturationLimits | None = None,
          ) -> tuple[FactStore, SaturationReport, Derivation | None]:
    s = init_store(c, witness, tol)
    report = saturate(s, limits)
    return s, report, query(s, goal)
