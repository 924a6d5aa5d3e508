import io
import sys
import zipfile
from pathlib import Path

import pytest

from pww.construction import Step
from pww.dsl import parse_construction
from pww.ggb import (
    GgbError,
    UnsupportedCommand,
    export_ggb,
    import_ggb,
    sniff_ggb,
)

sys.path.insert(0, str(Path(__file__).parent))
from genconstr import random_construction  # noqa: E402


def archive(xml: str) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr("geogebra.xml", xml)
    return buf.getvalue()


def wrap(body: str) -> bytes:
    return archive(f"<geogebra><construction>{body}</construction></geogebra>")


def test_round_trip_every_step_kind() -> None:
    c = parse_construction(
        "point A B C\nmidpoint M A B\nline l A C\nparallel p B l\n"
        "perpendicular q B l\nperpbisector r A B\nintersect X p q\n"
        "circumcircle k A B C\ncircle w M A\non P w\non Q l\n"
    )
    back = import_ggb(export_ggb(c))
    assert back.steps == c.steps


def test_round_trip_random_constructions() -> None:
    for seed in range(25):
        c = random_construction(seed)
        assert import_ggb(export_ggb(c)).steps == c.steps


def test_export_is_byte_stable() -> None:
    c = parse_construction("point A B\nmidpoint M A B\n")
    assert export_ggb(c) == export_ggb(c)


def test_goal_is_not_representable() -> None:
    with_goal = parse_construction("point A B C\nmidpoint M A B\ngoal coll A B M\n")
    assert import_ggb(export_ggb(with_goal)).goal is None


def test_sniff_distinguishes_zip_from_text() -> None:
    c = parse_construction("point A B\nmidpoint M A B\n")
    assert sniff_ggb(export_ggb(c))
    assert not sniff_ggb(b"point A B\n")
    assert not sniff_ggb(b"")


def test_import_maps_geogebra_names() -> None:
    body = (
        '<element type="point" label="A"/>'
        '<element type="point" label="B"/>'
        '<command name="Segment">'
        '<input a0="A" a1="B"/><output a0="s"/></command>'
        '<element type="segment" label="s"/>'
        '<command name="LineBisector">'
        '<input a0="A" a1="B"/><output a0="r"/></command>'
        '<element type="line" label="r"/>'
        '<command name="Point"><input a0="r"/><output a0="P"/></command>'
        '<element type="point" label="P"/>'
    )
    c = import_ggb(wrap(body))
    assert c.steps == (
        Step("FreePoint", "A", ()),
        Step("FreePoint", "B", ()),
        Step("LineThrough", "s", ("A", "B")),
        Step("PerpBisector", "r", ("A", "B")),
        Step("PointOnLine", "P", ("r",)),
    )


def test_unsupported_command_carries_its_name() -> None:
    body = (
        '<element type="point" label="A"/>'
        '<element type="point" label="B"/>'
        '<element type="point" label="C"/>'
        '<command name="Ellipse">'
        '<input a0="A" a1="B" a2="C"/><output a0="e"/></command>'
        '<element type="conic" label="e"/>'
    )
    with pytest.raises(UnsupportedCommand) as e:
        import_ggb(wrap(body))
    assert e.value.command == "Ellipse"


def test_unsupported_input_mixes() -> None:
    # circle from a point and a line
    body = (
        '<element type="point" label="A"/>'
        '<element type="point" label="B"/>'
        '<command name="Line"><input a0="A" a1="B"/><output a0="l"/></command>'
        '<element type="line" label="l"/>'
        '<command name="Circle"><input a0="A" a1="l"/><output a0="k"/></command>'
        '<element type="conic" label="k"/>'
    )
    with pytest.raises(UnsupportedCommand):
        import_ggb(wrap(body))
    # line-circle intersection
    body = (
        '<element type="point" label="A"/>'
        '<element type="point" label="B"/>'
        '<element type="point" label="C"/>'
        '<command name="Line"><input a0="A" a1="B"/><output a0="l"/></command>'
        '<element type="line" label="l"/>'
        '<command name="Circle">'
        '<input a0="A" a1="B" a2="C"/><output a0="k"/></command>'
        '<element type="conic" label="k"/>'
        '<command name="Intersect"><input a0="l" a1="k"/><output a0="X"/></command>'
        '<element type="point" label="X"/>'
    )
    with pytest.raises(UnsupportedCommand):
        import_ggb(wrap(body))
    # free point expressed as an expression
    with pytest.raises(UnsupportedCommand):
        import_ggb(wrap('<expression label="a" exp="(1,2)"/>'))


def test_malformed_archives() -> None:
    with pytest.raises(GgbError, match="not a zip"):
        import_ggb(b"this is not a zip file")
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr("other.xml", "<geogebra/>")
    with pytest.raises(GgbError, match="no geogebra.xml"):
        import_ggb(buf.getvalue())
    with pytest.raises(GgbError, match="bad geogebra.xml"):
        import_ggb(archive("<geogebra><constru"))
    with pytest.raises(GgbError, match="no <construction>"):
        import_ggb(archive("<geogebra></geogebra>"))


def test_dangling_output_element_is_invalid() -> None:
    body = '<element type="line" label="l"/>'
    with pytest.raises(GgbError, match="has no command"):
        import_ggb(wrap(body))


def test_import_validates_label_references() -> None:
    body = (
        '<element type="point" label="A"/>'
        '<command name="Midpoint">'
        '<input a0="A" a1="Z"/><output a0="M"/></command>'
        '<element type="point" label="M"/>'
    )
    with pytest.raises((GgbError, UnsupportedCommand)):
        import_ggb(wrap(body))
