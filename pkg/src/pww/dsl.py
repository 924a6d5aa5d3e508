"""Parser for the construction language.

One statement per line, `#` starts a comment.  Macro statements expand to
primitive steps during parsing, so the resulting Construction is already
desugared.  Positions in error messages are 1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .construction import (
    MACROS,
    STEP_KINDS,
    Construction,
    GoalStatement,
    Step,
    expand_macro,
    validate,
)
from .facts import PREDICATES, FactError

# statement name -> step kind, for primitive statements
_STMTS: dict[str, str] = {
    "on": "PointOnLine",
    "midpoint": "Midpoint",
    "line": "LineThrough",
    "parallel": "ParallelLine",
    "perpendicular": "PerpLine",
    "perpbisector": "PerpBisector",
    "intersect": "Intersect",
    "circumcircle": "Circumcircle",
    "circle": "CircleCenterThrough",
}

_USER_LABEL = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
# printed constructions contain generated labels with a leading underscore
_ANY_LABEL = re.compile(r"_?[A-Za-z][A-Za-z0-9_]*\Z")

_TOKEN = re.compile(r"[^\s,]+")


class DslError(ValueError):
    """A parse failure with its source position."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[list[_Tok]]:
    rows = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [
            _Tok(m.group(), ln, m.start() + 1) for m in _TOKEN.finditer(body)
        ]
        if toks:
            rows.append(toks)
    return rows


def _label(tok: _Tok, defined: dict[str, str], want: str | None) -> str:
    """Check one argument token: syntax, existence, kind."""
    if not _ANY_LABEL.match(tok.text):
        raise DslError(tok.line, tok.col, f"bad label {tok.text!r}")
    kind = defined.get(tok.text)
    if kind is None:
        raise DslError(tok.line, tok.col, f"undefined reference {tok.text!r}")
    if want == "O":
        if kind == "P":
            raise DslError(tok.line, tok.col, f"{tok.text!r} must be a line or circle")
    elif want is not None and kind != want:
        names = {"P": "point", "L": "line", "C": "circle"}
        raise DslError(tok.line, tok.col, f"{tok.text!r} must be a {names[want]}")
    return tok.text


def _new_label(tok: _Tok, defined: dict[str, str]) -> str:
    if not _ANY_LABEL.match(tok.text):
        raise DslError(tok.line, tok.col, f"bad label {tok.text!r}")
    if tok.text in defined:
        raise DslError(tok.line, tok.col, f"label {tok.text!r} already defined")
    return tok.text


def parse_construction(text: str) -> Construction:
    """Parse DSL text into a desugared, validated Construction."""
    steps: list[Step] = []
    defined: dict[str, str] = {}
    goal: GoalStatement | None = None

    def add(step: Step, tok: _Tok) -> None:
        if len(set(step.args)) != len(step.args):
            raise DslError(tok.line, tok.col, "degenerate step (identical arguments)")
        steps.append(step)
        defined[step.label] = STEP_KINDS[step.kind][1]

    for toks in _tokenize(text):
        head = toks[0]
        name = head.text
        rest = toks[1:]
        if goal is not None:
            raise DslError(head.line, head.col, "statements after goal")
        if name == "point":
            if not rest:
                raise DslError(head.line, head.col, "point needs at least one label")
            for t in rest:
                add(Step("FreePoint", _new_label(t, defined), ()), t)
        elif name in _STMTS:
            kind = _STMTS[name]
            want, _ = STEP_KINDS[kind]
            if len(rest) != len(want) + 1:
                raise DslError(
                    head.line, head.col, f"{name} expects {len(want) + 1} labels"
                )
            label = _new_label(rest[0], defined)
            args = tuple(
                _label(t, defined, w) for t, w in zip(rest[1:], want)
            )
            add(Step(kind, label, args), head)
        elif name in MACROS:
            want, _tmpl = MACROS[name]
            if len(rest) != len(want) + 1:
                raise DslError(
                    head.line, head.col, f"{name} expects {len(want) + 1} labels"
                )
            label = _new_label(rest[0], defined)
            if not _USER_LABEL.match(label):
                raise DslError(rest[0].line, rest[0].col, f"bad label {label!r}")
            args = tuple(_label(t, defined, w) for t, w in zip(rest[1:], want))
            if len(set(args)) != len(args):
                raise DslError(head.line, head.col, "degenerate step (identical arguments)")
            for st in expand_macro(name, label, args, set(defined)):
                add(st, head)
        elif name == "goal":
            if not rest:
                raise DslError(head.line, head.col, "empty goal")
            pred = rest[0].text
            arity = PREDICATES.get(pred)
            if arity is None:
                raise DslError(rest[0].line, rest[0].col, f"unknown predicate {pred!r}")
            if len(rest) - 1 != arity:
                raise DslError(head.line, head.col, f"{pred} expects {arity} points")
            args = tuple(_label(t, defined, "P") for t in rest[1:])
            goal = GoalStatement(pred, args)
            try:
                goal.to_fact()
            except FactError as e:
                raise DslError(head.line, head.col, str(e)) from None
        else:
            raise DslError(head.line, head.col, f"unknown statement {name!r}")

    c = Construction(tuple(steps), goal=goal)
    problems = validate(c)
    if problems:  # the parser checks everything above; this is a safety net
        d = problems[0]
        raise DslError(1, 1, f"step {d.step_index}: {d.message}")
    return c


def parse_goal(text: str) -> GoalStatement:
    """Parse a standalone goal such as 'coll O G H'."""
    toks = [t for row in _tokenize(text) for t in row]
    if not toks:
        raise DslError(1, 1, "empty goal")
    pred = toks[0].text
    arity = PREDICATES.get(pred)
    if arity is None:
        raise DslError(toks[0].line, toks[0].col, f"unknown predicate {pred!r}")
    if len(toks) - 1 != arity:
        raise DslError(toks[0].line, toks[0].col, f"{pred} expects {arity} points")
    for t in toks[1:]:
        if not _ANY_LABEL.match(t.text):
            raise DslError(t.line, t.col, f"bad label {t.text!r}")
    g = GoalStatement(pred, tuple(t.text for t in toks[1:]))
    try:
        g.to_fact()
    except FactError as e:
        raise DslError(toks[0].line, toks[0].col, str(e)) from None
    return g
