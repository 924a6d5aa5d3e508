"""Exact incremental linear systems over rational coefficients.

Both chasing systems use this machinery: line directions (equations hold
modulo one half turn, so constants live in Q mod 1) and logarithmic segment
lengths (plain homogeneous equations over Q).

The solver keeps a fully reduced row basis with a fixed convention: rows
arrive in insertion order, the pivot of a row is its smallest variable, and
every stored row is reduced against all other pivots.  Under this convention
the reduction of any query is unique, which lets an independent dense
implementation reproduce verdicts and certificates exactly.

Queries answer with a certificate: an integer-scaled combination of input
rows.  For a mod-1 system the combination reproduces the query times its
scale factor, with the constant matched modulo 1; scaling a true mod-1
equation by an integer keeps it true, which is what makes the integer form
checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Row = dict[int, Fraction]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Certificate:
    """Integer combination of input rows deriving `scale` times the query."""

    scale: int
    terms: tuple[tuple[int, int], ...]  # (row tag, integer coefficient)


def _addmul(dst: Row, src: Row, k: Fraction) -> None:
    if k == 0:
        return
    for v, c in src.items():
        nc = dst.get(v, _ZERO) + c * k
        if nc == 0:
            dst.pop(v, None)
        else:
            dst[v] = nc


def _lcm_denoms(lam: Row) -> int:
    scale = 1
    for c in lam.values():
        scale = scale * c.denominator // gcd(scale, c.denominator)
    return scale


class LinearSystem:
    """Incremental exact solver with provenance-tracked reduced rows.

    A pivot entry for variable v stores (vars, const, cert) meaning the
    identity  vars . x - const == sum_t cert[t] * (row_t . x - const_t)
    over the original inserted rows.
    """

    def __init__(self, mod_one: bool):
        self.mod_one = mod_one
        self.pivots: dict[int, tuple[Row, Fraction, Row]] = {}
        self.rows: dict[int, tuple[Row, Fraction]] = {}  # tag -> original row

    def _reduce(self, row: Row, const: Fraction) -> tuple[Row, Fraction, Row]:
        """Subtract pivot rows to eliminate their variables.

        Returns the remainder and the combination `used` such that
        input == remainder + sum_t used[t] * row_t   (as expressions).
        A fully reduced basis introduces no new pivot variables, so one
        pass over the initial variables is enough.
        """
        row = dict(row)
        used: Row = {}
        for v in sorted(row):
            piv = self.pivots.get(v)
            if piv is None or v not in row:
                continue
            k = row[v]
            pv, pc, pcert = piv
            _addmul(row, pv, -k)
            row.pop(v, None)
            const -= k * pc
            _addmul(used, pcert, k)
        return row, const, used

    def _residual_ok(self, rconst: Fraction, scale: int) -> bool:
        if self.mod_one:
            return (rconst * scale).denominator == 1
        return rconst == 0

    def add_row(self, tag: int, row: Row, const: Fraction) -> str:
        """Insert `row . x = const`; returns "added", "redundant" or "inconsistent"."""
        if tag in self.rows:
            raise ValueError(f"duplicate row tag {tag}")
        clean = {v: c for v, c in row.items() if c != 0}
        red, rconst, used = self._reduce(clean, const)
        if not red:
            # row is a combination of earlier rows up to the constant
            if self._residual_ok(rconst, _lcm_denoms(used)):
                self.rows[tag] = (dict(clean), const)
                return "redundant"
            return "inconsistent"
        self.rows[tag] = (dict(clean), const)
        pvar = min(red)
        k = red[pvar]
        norm = {v: c / k for v, c in red.items()}
        nconst = rconst / k
        ncert: Row = {tag: Fraction(1)}
        _addmul(ncert, used, Fraction(-1))
        ncert = {t: c / k for t, c in ncert.items() if c != 0}
        # keep the basis fully reduced: clear the new pivot elsewhere
        for ov in list(self.pivots):
            orow, oconst, ocert = self.pivots[ov]
            f = orow.get(pvar)
            if f is None:
                continue
            _addmul(orow, norm, -f)
            orow.pop(pvar, None)
            oconst -= f * nconst
            _addmul(ocert, ncert, -f)
            self.pivots[ov] = (orow, oconst, ocert)
        self.pivots[pvar] = (norm, nconst, ncert)
        return "added"

    def query(self, row: Row, const: Fraction) -> Certificate | None:
        """Derive `row . x = const` from the inserted rows, if possible."""
        clean = {v: c for v, c in row.items() if c != 0}
        red, rconst, used = self._reduce(clean, const)
        if red:
            return None
        lam = {t: c for t, c in used.items() if c != 0}
        scale = _lcm_denoms(lam)
        if not self._residual_ok(rconst, scale):
            return None
        terms = tuple(sorted((t, int(c * scale)) for t, c in lam.items()))
        return Certificate(scale, terms)


def validate_certificate(
    rows: dict[int, tuple[Row, Fraction]],
    query_row: Row,
    query_const: Fraction,
    cert: Certificate,
    mod_one: bool,
) -> bool:
    """Re-derive the query from the cited rows; usable as a self-check.

    The integer-scaled combination must reproduce the query's variables
    exactly; the constant must match exactly (plain system) or modulo 1
    (direction system).
    """
    acc: Row = {}
    aconst = _ZERO
    for tag, k in cert.terms:
        r, c = rows[tag]
        _addmul(acc, r, Fraction(k))
        aconst += k * c
    want = {v: c * cert.scale for v, c in query_row.items() if c != 0}
    if acc != want:
        return False
    diff = aconst - query_const * cert.scale
    if mod_one:
        return diff.denominator == 1
    return diff == 0
