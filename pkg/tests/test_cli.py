import io
import sys
from pathlib import Path

import pytest

from pww.cli import main
from pww.dsl import parse_construction
from pww.ggb import export_ggb
from pww.proofdoc import parse_document

EULER = """\
point A B C
circumcenter O A B C
centroid G A B C
orthocenter H A B C
goal coll O G H
"""

MIDLINE = "point A B C\nmidpoint M A B\nmidpoint N A C\ngoal para M N B C\n"


@pytest.fixture()
def euler_dsl(tmp_path: Path) -> str:
    p = tmp_path / "euler.dsl"
    p.write_text(EULER)
    return str(p)


def unsupported_ggb(tmp_path: Path) -> str:
    import zipfile

    xml = (
        "<geogebra><construction>"
        '<element type="point" label="A"/>'
        '<element type="point" label="B"/>'
        '<element type="point" label="C"/>'
        '<command name="Ellipse">'
        '<input a0="A" a1="B" a2="C"/><output a0="e"/></command>'
        '<element type="conic" label="e"/>'
        "</construction></geogebra>"
    )
    p = tmp_path / "unsupported.ggb"
    with zipfile.ZipFile(p, "w") as zf:
        zf.writestr("geogebra.xml", xml)
    return str(p)


def test_check_holds(euler_dsl: str, capsys) -> None:
    assert main(["check", euler_dsl]) == 0
    assert "holds on 10 witnesses" in capsys.readouterr().err


def test_check_refuted_prints_counter_witness(euler_dsl: str, capsys) -> None:
    assert main(["check", euler_dsl, "--goal", "perp O G G H"]) == 1
    err = capsys.readouterr().err
    assert "refuted" in err
    assert "A = (" in err  # coordinates of the counter-witness


def test_check_quiet(euler_dsl: str, capsys) -> None:
    assert main(["check", euler_dsl, "--quiet"]) == 0
    out = capsys.readouterr()
    assert out.err == "" and out.out == ""


def test_prove_writes_document(euler_dsl: str, tmp_path: Path, capsys) -> None:
    out = tmp_path / "euler.pww.json"
    assert main(["prove", euler_dsl, "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "levels=" in err and "stopped=fixpoint" in err
    doc = parse_document(out.read_text())
    assert doc["goal"]["pred"] == "coll"
    assert doc["goal"]["args"] == ["G", "H", "O"]


def test_prove_to_stdout(euler_dsl: str, capsys) -> None:
    assert main(["prove", euler_dsl, "--out", "-", "--quiet"]) == 0
    out = capsys.readouterr()
    doc = parse_document(out.out)
    assert doc["version"] == "pww-1"
    assert out.err == ""


def test_prove_refuted_skips_saturation(euler_dsl: str, capsys) -> None:
    assert main(["prove", euler_dsl, "--goal", "cong O G G H"]) == 1
    err = capsys.readouterr().err
    assert "refuted" in err
    assert "levels=" not in err  # saturation never ran


def test_prove_unknown_within_limits(euler_dsl: str, capsys) -> None:
    assert main(["prove", euler_dsl, "--max-level", "2"]) == 2
    err = capsys.readouterr().err
    assert "stopped=levelcap" in err
    assert "unknown" in err


def test_prove_reads_stdin(monkeypatch, capsys) -> None:
    monkeypatch.setattr(
        sys, "stdin", io.TextIOWrapper(io.BytesIO(MIDLINE.encode()), encoding="utf-8")
    )
    assert main(["prove", "-", "--quiet", "--out", "-"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc["goal"]["pred"] == "para"


def test_prove_goal_flag_overrides_goal_line(euler_dsl: str, capsys) -> None:
    assert main(["prove", euler_dsl, "--goal", "cong A O B O", "--quiet",
                 "--out", "-"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc["goal"]["pred"] == "cong"


def test_missing_goal_is_an_input_error(tmp_path: Path, capsys) -> None:
    p = tmp_path / "nogoal.dsl"
    p.write_text("point A B C\n")
    assert main(["prove", str(p)]) == 3
    assert "no goal" in capsys.readouterr().err


def test_parse_error_exit_code(tmp_path: Path, capsys) -> None:
    p = tmp_path / "bad.dsl"
    p.write_text("point A\nfrobnicate Z A\n")
    assert main(["check", str(p), "--goal", "coll A A A"]) == 3
    err = capsys.readouterr().err
    assert "error:" in err and "line 2" in err


def test_missing_file_exit_code(capsys) -> None:
    assert main(["check", "/nonexistent/x.dsl", "--goal", "coll A B C"]) == 3
    assert "cannot read" in capsys.readouterr().err


def test_unsupported_ggb_exit_code(tmp_path: Path, capsys) -> None:
    path = unsupported_ggb(tmp_path)
    assert main(["prove", path, "--goal", "coll A B C"]) == 4
    assert "Ellipse" in capsys.readouterr().err


def test_degenerate_construction_exit_code(tmp_path: Path, capsys) -> None:
    p = tmp_path / "degenerate.dsl"
    p.write_text("point A B\nline l A B\nparallel p A l\nintersect X l p\n")
    assert main(["check", str(p), "--goal", "coll A B X"]) == 3
    assert "degenerate" in capsys.readouterr().err


def test_relate_lists_relations(tmp_path: Path, capsys) -> None:
    p = tmp_path / "mid.dsl"
    p.write_text("point A B\nmidpoint M A B\n")
    assert main(["relate", str(p)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "midp M A B" in out
    assert "coll A B M" in out


def test_convert_dsl_to_ggb_and_back(tmp_path: Path, capsys) -> None:
    src = tmp_path / "c.dsl"
    src.write_text(MIDLINE)
    ggb = tmp_path / "c.ggb"
    assert main(["convert", str(src), "--to", "ggb", "--out", str(ggb)]) == 0
    assert "dropped" in capsys.readouterr().err  # goal line warning
    assert main(["convert", str(ggb), "--to", "dsl", "--out", "-"]) == 0
    text = capsys.readouterr().out
    back = parse_construction(text)
    assert back.steps == parse_construction(MIDLINE).steps


def test_convert_accepts_ggb_stdin(monkeypatch, capsys, tmp_path: Path) -> None:
    blob = export_ggb(parse_construction("point A B\nmidpoint M A B\n"))
    monkeypatch.setattr(sys, "stdin",
                        io.TextIOWrapper(io.BytesIO(blob), encoding="latin-1"))
    assert main(["convert", "-", "--to", "dsl"]) == 0
    assert "midpoint M A B" in capsys.readouterr().out


def test_render_produces_html_when_assets_present(
        euler_dsl: str, tmp_path: Path, capsys) -> None:
    from pww.proofdoc import DocumentError, viewer_assets

    doc_path = tmp_path / "proof.json"
    assert main(["prove", euler_dsl, "--quiet", "--out", str(doc_path)]) == 0
    try:
        viewer_assets()
    except DocumentError:
        assert main(["render", str(doc_path), "--out", "-"]) == 3
        assert "viewer assets" in capsys.readouterr().err
        return
    html_path = tmp_path / "proof.html"
    assert main(["render", str(doc_path), "--out", str(html_path)]) == 0
    assert html_path.read_text().startswith("<!DOCTYPE html>")


def test_render_rejects_tampered_document(euler_dsl: str, tmp_path: Path, capsys) -> None:
    doc_path = tmp_path / "proof.json"
    assert main(["prove", euler_dsl, "--quiet", "--out", str(doc_path)]) == 0
    text = doc_path.read_text().replace('"pww-1"', '"pww-9"')
    doc_path.write_text(text)
    assert main(["render", str(doc_path), "--out", "-"]) == 3
    assert "version" in capsys.readouterr().err


def test_seeded_runs_are_reproducible(euler_dsl: str, capsys) -> None:
    assert main(["prove", euler_dsl, "--seed", "7", "--quiet", "--out", "-"]) == 0
    first = capsys.readouterr().out
    assert main(["prove", euler_dsl, "--seed", "7", "--quiet", "--out", "-"]) == 0
    assert capsys.readouterr().out == first
    assert main(["prove", euler_dsl, "--seed", "8", "--quiet", "--out", "-"]) == 0
    assert capsys.readouterr().out != first
