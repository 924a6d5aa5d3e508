"""Geometric predicates and their canonical argument forms.

A fact is a predicate symbol applied to point labels.  Many predicates are
invariant under argument symmetries (a segment has no orientation, an angle
equality can be read in either order, ...), so every fact is stored in a
canonical form and two facts are the same statement iff their canonical
forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass

# predicate name -> number of point arguments
PREDICATES: dict[str, int] = {
    "coll": 3,
    "para": 4,
    "perp": 4,
    "cong": 4,
    "midp": 3,
    "cyclic": 4,
    "circle": 4,
    "eqangle": 8,
    "eqratio": 8,
    "simtri": 6,
    "contri": 6,
}

# predicates whose arguments are read as pairs of points (lines or segments)
_PAIR_PREDS = {"para", "perp", "cong", "eqangle", "eqratio"}


class FactError(ValueError):
    """Raised for a malformed fact (bad arity, degenerate arguments)."""


@dataclass(frozen=True, order=True)
class Fact:
    """A canonical geometric statement over point labels."""

    pred: str
    args: tuple[str, ...]

    def render(self) -> str:
        return render_fact(self)

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return f"{self.pred}({','.join(self.args)})"


def _pair(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise FactError(f"degenerate segment {a}{b}")
    return (a, b) if a < b else (b, a)


def _canon_pairs_symmetric(args: tuple[str, ...]) -> tuple[str, ...]:
    # two unordered segments, unordered between them: para, perp, cong
    p = _pair(args[0], args[1])
    q = _pair(args[2], args[3])
    return p + q if p <= q else q + p


def _canon_eq4(args: tuple[str, ...]) -> tuple[str, ...]:
    # eqangle(l1,l2,l3,l4) and eqratio(s1,s2,s3,s4) share the same symmetry
    # group: swap the halves, or flip both ratios/angles jointly.
    p1, p2 = _pair(args[0], args[1]), _pair(args[2], args[3])
    p3, p4 = _pair(args[4], args[5]), _pair(args[6], args[7])
    variants = [
        p1 + p2 + p3 + p4,
        p3 + p4 + p1 + p2,
        p2 + p1 + p4 + p3,
        p4 + p3 + p2 + p1,
    ]
    return min(variants)


def _canon_tri(args: tuple[str, ...]) -> tuple[str, ...]:
    # joint cyclic rotation of both vertex lists, and swapping the triangles
    a, b, c, p, q, r = args
    if len({a, b, c}) < 3 or len({p, q, r}) < 3:
        raise FactError("triangle vertices must be distinct")
    variants = []
    for t1, t2 in (((a, b, c), (p, q, r)), ((p, q, r), (a, b, c))):
        for k in range(3):
            rot1 = t1[k:] + t1[:k]
            rot2 = t2[k:] + t2[:k]
            variants.append(rot1 + rot2)
    return min(variants)


def make_fact(pred: str, args: tuple[str, ...] | list[str]) -> Fact:
    """Build a fact in canonical form, validating arity and degeneracy."""
    args = tuple(args)
    arity = PREDICATES.get(pred)
    if arity is None:
        raise FactError(f"unknown predicate {pred!r}")
    if len(args) != arity:
        raise FactError(f"{pred} expects {arity} points, got {len(args)}")
    if pred == "coll":
        if len(set(args)) < 3:
            raise FactError("coll needs three distinct points")
        return Fact(pred, tuple(sorted(args)))
    if pred == "cyclic":
        if len(set(args)) < 4:
            raise FactError("cyclic needs four distinct points")
        return Fact(pred, tuple(sorted(args)))
    if pred == "midp":
        m, a, b = args
        if a == b or m in (a, b):
            raise FactError("midp needs three distinct points")
        return Fact(pred, (m,) + _pair(a, b))
    if pred == "circle":
        o = args[0]
        rest = args[1:]
        if len(set(args)) < 4:
            raise FactError("circle needs four distinct points")
        return Fact(pred, (o,) + tuple(sorted(rest)))
    if pred in ("para", "perp", "cong"):
        return Fact(pred, _canon_pairs_symmetric(args))
    if pred in ("eqangle", "eqratio"):
        return Fact(pred, _canon_eq4(args))
    # simtri / contri
    return Fact(pred, _canon_tri(args))


def _seg(a: str, b: str) -> str:
    return f"{a}{b}"


def render_fact(f: Fact) -> str:
    """Human-readable one-line rendering used in captions and reports."""
    a = f.args
    if f.pred == "coll":
        return f"{', '.join(a)} are collinear"
    if f.pred == "para":
        return f"{_seg(a[0], a[1])} ∥ {_seg(a[2], a[3])}"
    if f.pred == "perp":
        return f"{_seg(a[0], a[1])} ⊥ {_seg(a[2], a[3])}"
    if f.pred == "cong":
        return f"|{_seg(a[0], a[1])}| = |{_seg(a[2], a[3])}|"
    if f.pred == "midp":
        return f"{a[0]} is the midpoint of {_seg(a[1], a[2])}"
    if f.pred == "cyclic":
        return f"{', '.join(a)} are concyclic"
    if f.pred == "circle":
        return f"{a[0]} is the center of the circle through {', '.join(a[1:])}"
    if f.pred == "eqangle":
        return (
            f"∠({_seg(a[0], a[1])},{_seg(a[2], a[3])}) = "
            f"∠({_seg(a[4], a[5])},{_seg(a[6], a[7])})"
        )
    if f.pred == "eqratio":
        return (
            f"{_seg(a[0], a[1])}:{_seg(a[2], a[3])} = "
            f"{_seg(a[4], a[5])}:{_seg(a[6], a[7])}"
        )
    if f.pred == "simtri":
        return (
            f"△{a[0]}{a[1]}{a[2]} ∼ △{a[3]}{a[4]}{a[5]}"
        )
    if f.pred == "contri":
        return (
            f"△{a[0]}{a[1]}{a[2]} ≅ △{a[3]}{a[4]}{a[5]}"
        )
    raise FactError(f"unknown predicate {f.pred!r}")
