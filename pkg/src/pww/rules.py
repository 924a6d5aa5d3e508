"""The deduction rule catalog.

Each matcher proposes conclusions as (rule id, fact, premises).  Premises are
either ids of stored facts or Derivations obtained from engine.query; the
saturation loop materializes the latter into DAG nodes before inserting the
conclusion, so every rule application cites facts that exist in the proof.

Converse rules (R08, R10, R12, R13, R15) are guided by the numeric witness:
candidate shapes are read off the coordinates first and the required premises
are then certified symbolically.  A candidate that cannot be certified simply
does not fire; the witness never justifies anything by itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .engine import Derivation, FactStore, query, seg
from .facts import Fact, make_fact
from .witness import eval_fact, noncollinear

_ROT = ((0, 1, 2), (1, 2, 0), (2, 0, 1))

# quantization grid for similar-triangle shape signatures; genuine matches
# agree to ~1e-12, so a 1e-5 cell with neighbor probing cannot lose them
_SIG_SCALE = 1e5
_SIG_SLACK = 2.5e-5
_MAX_TRI_CANDIDATES = 2000


@dataclass
class Conclusion:
    rule_id: str
    fact: Fact
    premises: tuple[int | Derivation, ...]


def _shape(pa: tuple[float, float], pb: tuple[float, float],
           pc: tuple[float, float]) -> complex:
    za, zb, zc = complex(*pa), complex(*pb), complex(*pc)
    return (zc - za) / (zb - za)


def _canon_tri_pair(t1: tuple[str, str, str], t2: tuple[str, str, str],
                    ) -> tuple[str, ...]:
    reps = []
    for r in _ROT:
        a = tuple(t1[i] for i in r)
        b = tuple(t2[i] for i in r)
        reps.append(a + b)
        reps.append(b + a)
    return min(reps)


class MatchState:
    """Per-saturation scratch: witness-derived candidates and proposal dedupe."""

    def __init__(self, s: FactStore) -> None:
        self.s = s
        self.proposed: set[tuple[str, Fact]] = set()
        self.tri_candidates = self._find_similar_triples()

    def _find_similar_triples(self) -> list[tuple[str, ...]]:
        s = self.s
        w = s.witness
        pts = sorted(w.coords)
        tol = s.tol
        triples: list[tuple[str, str, str]] = []
        sigs: dict[tuple[str, str, str], complex] = {}
        buckets: dict[tuple[int, int], list[tuple[str, str, str]]] = {}
        for a in pts:
            for b in pts:
                if b == a:
                    continue
                for c in pts:
                    if c == a or c == b:
                        continue
                    if not noncollinear(w, a, b, c, tol):
                        continue
                    t = (a, b, c)
                    z = _shape(w.coords[a], w.coords[b], w.coords[c])
                    triples.append(t)
                    sigs[t] = z
                    key = (round(z.real * _SIG_SCALE), round(z.imag * _SIG_SCALE))
                    buckets.setdefault(key, []).append(t)
        found: set[tuple[str, ...]] = set()
        for t in triples:
            z = sigs[t]
            kx = round(z.real * _SIG_SCALE)
            ky = round(z.imag * _SIG_SCALE)
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for u in buckets.get((kx + dx, ky + dy), ()):
                        if u == t:
                            continue
                        if abs(sigs[u] - z) > _SIG_SLACK:
                            continue
                        cand = _canon_tri_pair(t, u)
                        if cand[:3] == cand[3:]:
                            continue
                        found.add(cand)
        out = []
        for cand in sorted(found):
            f = make_fact("simtri", cand)
            if eval_fact(w, f, tol):
                out.append(f.args)
            if len(out) >= _MAX_TRI_CANDIDATES:
                break
        return out


def _equidistances(s: FactStore) -> dict[tuple[str, str], list[str]]:
    """pair (X, Y) -> apexes P with |PX| = |PY| known in the forest."""
    out: dict[tuple[str, str], list[str]] = {}
    for cls in s.forest.classes():
        by_apex: dict[str, list[str]] = {}
        for a, b in cls:
            by_apex.setdefault(a, []).append(b)
            by_apex.setdefault(b, []).append(a)
        for apex in sorted(by_apex):
            partners = sorted(set(by_apex[apex]))
            for x, y in combinations(partners, 2):
                out.setdefault((x, y), []).append(apex)
    return out


def match_all(state: MatchState) -> list[Conclusion]:
    s = state.s
    out: list[Conclusion] = []

    def propose(rule_id: str, fact: Fact,
                premises: tuple[int | Derivation, ...]) -> None:
        key = (rule_id, fact)
        if key in state.proposed or fact in s.by_fact:
            return
        state.proposed.add(key)
        out.append(Conclusion(rule_id, fact, premises))

    def ncoll(*pts: str) -> bool:
        return noncollinear(s.witness, *pts, s.tol)

    equid = _equidistances(s)

    _match_midpoints(s, propose, ncoll)
    _match_equidistance(s, propose, ncoll, equid)
    _match_circles(s, propose, ncoll)
    _match_cyclic(s, propose, ncoll)
    _match_isosceles(s, propose, ncoll, equid)
    _match_similarity(state, propose)
    _match_direction_closure(s, propose)
    return out


# -- midpoints (R02, R03) ---------------------------------------------------------


def _match_midpoints(s, propose, ncoll) -> None:
    # R02: cong(MA,MB) and coll(M,A,B) make M the midpoint of AB
    for cls in s.forest.classes():
        by_apex: dict[str, list[str]] = {}
        for a, b in cls:
            by_apex.setdefault(a, []).append(b)
            by_apex.setdefault(b, []).append(a)
        for m in sorted(by_apex):
            for a, b in combinations(sorted(set(by_apex[m])), 2):
                if m in (a, b):
                    continue
                qcoll = query(s, make_fact("coll", (m, a, b)))
                if qcoll is None:
                    continue
                qcong = query(s, make_fact("cong", (m, a, m, b)))
                if qcong is None:
                    continue
                propose("R02", make_fact("midp", (m, a, b)), (qcong, qcoll))

    # R03: two midpoints from a shared vertex give the midline
    mids = [s.nodes[i] for i in s.by_pred.get("midp", ())]
    for i, n1 in enumerate(mids):
        m1, x1, y1 = n1.fact.args
        for n2 in mids[i + 1:]:
            m2, x2, y2 = n2.fact.args
            if {x1, y1} == {x2, y2}:
                continue
            for shared in sorted({x1, y1} & {x2, y2}):
                b = y1 if shared == x1 else x1
                c = y2 if shared == x2 else x2
                if m1 == m2 or b == c:
                    continue
                propose("R03", make_fact("para", (m1, m2, b, c)),
                        (n1.fid, n2.fid))
                propose("R03", make_fact(
                    "eqratio", (shared, m1, shared, b, shared, m2, shared, c)),
                    (n1.fid, n2.fid))


# -- equidistance geometry (R04, R05) ----------------------------------------------


def _match_equidistance(s, propose, ncoll, equid) -> None:
    for (x, y), apexes in sorted(equid.items()):
        # R04: two points equidistant from X and Y span a perpendicular to XY
        for p, q in combinations(apexes, 2):
            if p in (x, y) or q in (x, y):
                continue
            qp = query(s, make_fact("cong", (p, x, p, y)))
            qq = query(s, make_fact("cong", (q, x, q, y)))
            if qp is None or qq is None:
                continue
            propose("R04", make_fact("perp", (p, q, x, y)), (qp, qq))

    # R05: a point equidistant from three others is a circle center
    by_apex: dict[str, set[str]] = {}
    for (x, y), apexes in equid.items():
        for p in apexes:
            by_apex.setdefault(p, set()).update((x, y))
    for o in sorted(by_apex):
        partners = sorted(by_apex[o] - {o})
        for a, b, c in combinations(partners, 3):
            if not ncoll(a, b, c):
                continue
            q1 = query(s, make_fact("cong", (o, a, o, b)))
            q2 = query(s, make_fact("cong", (o, b, o, c)))
            if q1 is None or q2 is None:
                continue
            propose("R05", make_fact("circle", (o, a, b, c)), (q1, q2))


# -- circles with a known center (R06, R07, R08) ------------------------------------


def _match_circles(s, propose, ncoll) -> None:
    for fid in s.by_pred.get("circle", ()):
        node = s.nodes[fid]
        o, a, b, c = node.fact.args
        # R06: the center is equidistant from the circle's points
        for x, y in combinations((a, b, c), 2):
            propose("R06", make_fact("cong", (o, x, o, y)), (fid,))
        cc = s.circles.containing((a, b, c))
        if cc is not None:
            for d in cc.points:
                if d in (a, b, c) or d == o:
                    continue
                qcyc = query(s, make_fact("cyclic", (a, b, c, d)))
                if qcyc is None:
                    continue
                propose("R06", make_fact("cong", (o, a, o, d)), (fid, qcyc))
        # R07 / R08: diameters and right angles (Thales both ways)
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            qcoll = query(s, make_fact("coll", (o, x, y)))
            if qcoll is not None:
                propose("R07", make_fact("perp", (z, x, z, y)), (fid, qcoll))
            else:
                fperp = make_fact("perp", (z, x, z, y))
                if eval_fact(s.witness, fperp, s.tol):
                    qperp = query(s, fperp)
                    if qperp is not None:
                        propose("R08", make_fact("coll", (o, x, y)), (fid, qperp))


# -- concyclicity and inscribed angles (R09, R10) ------------------------------------


def _match_cyclic(s, propose, ncoll) -> None:
    # R09: inscribed angles over a chord agree
    for cc in s.circles.alive():
        pts = sorted(cc.points)
        if len(pts) < 4:
            continue
        for quad in combinations(pts, 4):
            qcyc = query(s, make_fact("cyclic", quad))
            if qcyc is None:
                continue
            for c, d in combinations(quad, 2):
                a, b = (p for p in quad if p not in (c, d))
                propose("R09", make_fact(
                    "eqangle", (c, a, c, b, d, a, d, b)), (qcyc,))

    # R10: equal inscribed angles force concyclicity
    pts = sorted(s.witness.coords)
    for quad in combinations(pts, 4):
        fcyc = make_fact("cyclic", quad)
        if fcyc in s.by_fact or s.circles.containing(quad) is not None:
            continue
        if not eval_fact(s.witness, fcyc, s.tol):
            continue
        if not all(ncoll(*t) for t in combinations(quad, 3)):
            continue
        for c, d in combinations(quad, 2):
            a, b = (p for p in quad if p not in (c, d))
            qang = query(s, make_fact("eqangle", (c, a, c, b, d, a, d, b)))
            if qang is not None:
                propose("R10", fcyc, (qang,))
                break


# -- isosceles triangles (R11, R12) --------------------------------------------------


def _match_isosceles(s, propose, ncoll, equid) -> None:
    # R11: equal legs give equal base angles
    for (x, y), apexes in sorted(equid.items()):
        for o in apexes:
            if o in (x, y) or not ncoll(o, x, y):
                continue
            qcong = query(s, make_fact("cong", (o, x, o, y)))
            if qcong is None:
                continue
            propose("R11", make_fact(
                "eqangle", (x, o, x, y, x, y, y, o)), (qcong,))
            propose("R11", make_fact(
                "eqangle", (y, o, y, x, y, x, x, o)), (qcong,))

    # R12: equal base angles give equal legs
    pts = sorted(s.witness.coords)
    for x, y in combinations(pts, 2):
        for o in pts:
            if o in (x, y) or not ncoll(o, x, y):
                continue
            fcong = make_fact("cong", (o, x, o, y))
            if fcong in s.by_fact or s.forest.same(seg(o, x), seg(o, y)):
                continue
            if not eval_fact(s.witness, fcong, s.tol):
                continue
            qang = query(s, make_fact("eqangle", (x, o, x, y, x, y, y, o)))
            if qang is not None:
                propose("R12", fcong, (qang,))


# -- similar triangles (R13, R14, R15, R16) ------------------------------------------


def _match_similarity(state: MatchState, propose) -> None:
    s = state.s

    # R13 (AA) and R15 (SAS by ratio) over witness-guided candidate pairs
    for args in state.tri_candidates:
        f = make_fact("simtri", args)
        if f in s.by_fact:
            continue
        a, b, c, p, q, r = args
        q1 = query(s, make_fact("eqangle", (a, b, a, c, p, q, p, r)))
        if q1 is None:
            continue
        q2 = query(s, make_fact("eqangle", (b, a, b, c, q, p, q, r)))
        if q2 is not None:
            propose("R13", f, (q1, q2))
            continue
        q3 = query(s, make_fact("eqratio", (a, b, a, c, p, q, p, r)))
        if q3 is not None:
            propose("R15", f, (q1, q3))

    # R14: a similarity yields its angle and ratio equalities
    # R16: a similarity plus one congruent side yields congruence
    for fid in s.by_pred.get("simtri", ()):
        base = s.nodes[fid].fact.args
        t1, t2 = base[:3], base[3:]
        for rot in _ROT:
            for u1, u2 in ((t1, t2), (t2, t1)):
                a, b, c = (u1[i] for i in rot)
                p, q, r = (u2[i] for i in rot)
                propose("R14", make_fact(
                    "eqangle", (a, b, a, c, p, q, p, r)), (fid,))
                propose("R14", make_fact(
                    "eqratio", (a, b, a, c, p, q, p, r)), (fid,))
                fcong = make_fact("cong", (a, b, p, q))
                qc = query(s, fcong)
                if qc is not None and seg(a, b) != seg(p, q):
                    propose("R16", make_fact("contri", base), (fid, qc))
                    for s1, s2 in (((a, c), (p, r)), ((b, c), (q, r))):
                        if seg(*s1) != seg(*s2):
                            propose("R16", make_fact(
                                "cong", s1 + s2), (fid, qc))


# -- collinearity from the direction system (R17) ------------------------------------


def _match_direction_closure(s, propose) -> None:
    # two lines through a shared point with provably equal directions coincide
    alive = s.lines.alive()
    for i in range(len(alive)):
        for j in range(i + 1, len(alive)):
            c1, c2 = alive[i], alive[j]
            shared = sorted(set(c1.points) & set(c2.points))
            if len(shared) != 1:
                continue
            s0 = shared[0]
            x = next(p for p in sorted(c1.points) if p != s0)
            y = next(p for p in sorted(c2.points) if p != s0)
            fpara = make_fact("para", (s0, x, s0, y))
            if not eval_fact(s.witness, fpara, s.tol):
                continue
            qp = query(s, fpara)
            if qp is not None:
                propose("R17", make_fact("coll", (s0, x, y)), (qp,))
