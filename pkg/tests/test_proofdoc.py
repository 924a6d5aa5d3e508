import copy
import re

import pytest

from pww.dsl import parse_construction
from pww.engine import DagNode, Justification, init_store, prove, query
from pww.facts import make_fact
from pww.proofdoc import (
    DocumentError,
    FORMAT_VERSION,
    _json_value,
    build_document,
    extract_proof,
    linearize,
    parse_document,
    render_html,
    serialize,
    viewer_assets,
)
from pww.witness import Tolerances, instantiate

T = Tolerances()

MIDLINE = "point A B C\nmidpoint M A B\nmidpoint N A C\ngoal para M N B C\n"


def midline_document() -> dict:
    c = parse_construction(MIDLINE)
    s, report, d = prove(c, c.goal.to_fact(), instantiate(c, 0, T))
    assert d is not None
    return build_document(s, report, d)


def have_viewer() -> bool:
    try:
        viewer_assets()
        return True
    except DocumentError:
        return False


def test_document_top_level_shape() -> None:
    doc = midline_document()
    assert doc["version"] == FORMAT_VERSION == "pww-1"
    assert [st["label"] for st in doc["construction"]["steps"]] == \
        ["A", "B", "C", "M", "N"]
    assert sorted(doc["witness"]["coords"]) == ["A", "B", "C", "M", "N"]
    assert all(len(xy) == 2 for xy in doc["witness"]["coords"].values())
    assert doc["goal"]["pred"] == "para"
    assert doc["goal"]["args"] == ["B", "C", "M", "N"]
    assert doc["stats"]["levels"] >= 1
    assert doc["stats"]["totalFactsExplored"] >= len(doc["steps"])


def test_steps_form_a_forward_dag() -> None:
    doc = midline_document()
    seen: set[str] = set()
    for i, step in enumerate(doc["steps"]):
        assert step["id"] == f"s{i + 1}"
        assert all(d in seen for d in step["deps"])
        seen.add(step["id"])
    last = doc["steps"][-1]
    assert any(f["pred"] == "para" for f in last["facts"])
    # givens carry no dependencies
    givens = [s for s in doc["steps"] if s["rule"] == "construction"]
    assert givens and all(s["deps"] == [] for s in givens)


def test_captions_keep_label_placeholders() -> None:
    doc = midline_document()
    last = doc["steps"][-1]
    assert "{B}" in last["caption"] and "{M}" in last["caption"]
    # the plain rendering lives in the fact text
    assert "∥" in last["facts"][0]["text"]


def test_serialize_round_trip_and_determinism() -> None:
    doc = midline_document()
    text = serialize(doc)
    assert parse_document(text) == doc
    assert serialize(midline_document()) == text


def test_serialized_floats_have_full_precision() -> None:
    doc = midline_document()
    doc["witness"]["coords"]["A"] = [0.1, -2.0]
    text = serialize(doc)
    assert '"A": [0.10000000000000001, -2]' in text


def test_json_value_formatting() -> None:
    assert _json_value({"b": 1, "a": 2}, 0) == '{\n  "b": 1,\n  "a": 2\n}'
    assert _json_value([1, 2.5, "x"], 0) == '[1, 2.5, "x"]'
    assert _json_value([], 0) == "[]" and _json_value({}, 0) == "{}"
    assert _json_value("∥", 0) == '"∥"'
    with pytest.raises(DocumentError):
        _json_value({"a": {1, 2}}, 0)


def test_validation_rejects_malformed_documents() -> None:
    doc = midline_document()

    broken = copy.deepcopy(doc)
    del broken["stats"]
    with pytest.raises(DocumentError, match="missing key"):
        serialize(broken)

    broken = copy.deepcopy(doc)
    broken["version"] = "pww-2"
    with pytest.raises(DocumentError, match="version"):
        serialize(broken)

    broken = copy.deepcopy(doc)
    broken["steps"] = []
    with pytest.raises(DocumentError, match="nonempty"):
        serialize(broken)

    broken = copy.deepcopy(doc)
    broken["steps"] = [broken["steps"][-1]] + broken["steps"][:-1]
    with pytest.raises(DocumentError, match="not earlier"):
        serialize(broken)

    broken = copy.deepcopy(doc)
    broken["goal"] = {"pred": "perp", "args": doc["goal"]["args"],
                      "text": "tampered"}
    with pytest.raises(DocumentError, match="goal"):
        serialize(broken)

    broken = copy.deepcopy(doc)
    broken["steps"][-1]["highlight"]["points"] = ["ZZ"]
    with pytest.raises(DocumentError, match="not constructed"):
        serialize(broken)

    with pytest.raises(DocumentError, match="JSON"):
        parse_document("{not json")


def fabricated_chase(n_premises: int):
    """A store with one chase node citing many premises, built by hand."""
    c = parse_construction("point A B C D\n")
    s = init_store(c, instantiate(c, 0, T), T)
    fids = []
    for i in range(n_premises):
        fid = len(s.nodes)
        s.nodes.append(DagNode(
            fid, make_fact("cong", ("A", "B", "C", "D")),
            Justification(kind="construction", step_index=0), level=0))
        fids.append(fid)
    final = len(s.nodes)
    s.nodes.append(DagNode(
        final, make_fact("para", ("A", "B", "C", "D")),
        Justification(kind="chase", premises=tuple(fids), system="angle"),
        level=1))
    return s, fids + [final]


def test_long_chases_split_into_groups() -> None:
    s, fids = fabricated_chase(14)
    steps = linearize(s, fids)
    # 14 premises, two grouping sub-steps, one closing step
    assert len(steps) == 14 + 2 + 1
    groups = [st for st in steps if st["facts"] == []]
    assert len(groups) == 2
    assert all(st["rule"] == "chase-angle" for st in groups)
    assert all(len(st["deps"]) <= 6 for st in steps)
    # the second group consumes the first, the final step consumes the second
    assert groups[0]["id"] in groups[1]["deps"]
    assert groups[1]["id"] == steps[-1]["deps"][0]
    seen: set[str] = set()
    for st in steps:
        assert all(d in seen for d in st["deps"])
        seen.add(st["id"])


def test_short_chases_are_not_split() -> None:
    s, fids = fabricated_chase(6)
    steps = linearize(s, fids)
    assert len(steps) == 7
    assert all(st["facts"] for st in steps)


def test_tick_marks_share_ids_across_equal_segments() -> None:
    c = parse_construction("point A B C\nmidpoint M A B\nmidpoint N A C\n")
    s = init_store(c, instantiate(c, 0, T), T)
    fids = extract_proof(s, s.by_fact[make_fact("cong", ("A", "M", "B", "M"))])
    steps = linearize(s, fids)
    marks = steps[-1]["highlight"]["tickMarks"]
    assert len(marks) == 2
    (_, id1), (_, id2) = marks
    assert id1 == id2


def test_angle_marks_join_right_angles() -> None:
    c = parse_construction("point A B C D\n")
    s = init_store(c, instantiate(c, 0, T), T)
    perp1 = make_fact("perp", ("A", "B", "A", "C"))
    perp2 = make_fact("perp", ("B", "A", "B", "D"))
    f1 = len(s.nodes)
    s.nodes.append(DagNode(f1, perp1, Justification(kind="construction"), 0))
    f2 = len(s.nodes)
    s.nodes.append(DagNode(f2, perp2, Justification(kind="construction"), 0))
    steps = linearize(s, [f1, f2])
    m1 = steps[0]["highlight"]["angleMarks"]
    m2 = steps[1]["highlight"]["angleMarks"]
    assert m1 and m2
    # both are right angles, so they share one mark class
    assert m1[0][3] == m2[0][3]
    assert m1[0][0] == "A" and m2[0][0] == "B"


def test_eqangle_marks_share_ids() -> None:
    c = parse_construction("point A B C D E F\n")
    s = init_store(c, instantiate(c, 0, T), T)
    f = make_fact("eqangle", ("A", "B", "A", "C", "D", "E", "D", "F"))
    fid = len(s.nodes)
    s.nodes.append(DagNode(fid, f, Justification(kind="construction"), 0))
    steps = linearize(s, [fid])
    marks = steps[0]["highlight"]["angleMarks"]
    assert len(marks) == 2
    assert marks[0][3] == marks[1][3]
    assert {marks[0][0], marks[1][0]} == {"A", "D"}


def test_render_html_or_missing_assets_error() -> None:
    doc = midline_document()
    if have_viewer():
        # a caption containing "</script>" must not terminate the embedded
        # JSON block early
        doc["steps"][0]["caption"] += " see </script> tag"
        html = render_html(doc)
        assert html.startswith("<!DOCTYPE html>")
        assert '"version": "pww-1"' in html
        assert "</script>" in html
        payload_zone = html[html.index("pww-document"):]
        payload_end = payload_zone.index("</script>")
        assert "<\\/script" in payload_zone[:payload_end]
        assert '"pww-1"' in payload_zone[:payload_end]
    else:
        with pytest.raises(DocumentError, match="viewer assets missing"):
            render_html(doc)
