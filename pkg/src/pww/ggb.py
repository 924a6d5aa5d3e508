"""GeoGebra .ggb import and export.

A .ggb file is a zip archive whose geogebra.xml describes the construction
as an ordered list of free elements and commands.  Only the ruler-and-compass
subset that maps onto construction steps is accepted; anything else raises
UnsupportedCommand, which the command line surfaces as its own exit code.

Export writes a minimal archive that this importer (and GeoGebra) can read
back.  Free points are written at the origin: coordinates are sampling state,
not construction structure, so they do not round-trip.
"""

from __future__ import annotations

import io
import zipfile
import xml.etree.ElementTree as ET

from .construction import Construction, Step, validate

GGB_MAGIC = b"PK\x03\x04"

SUPPORTED_COMMANDS: tuple[str, ...] = (
    "Circle",
    "Intersect",
    "Line",
    "LineBisector",
    "Midpoint",
    "OrthogonalLine",
    "Point",
    "Segment",
)

# construction-element types that only mirror a command output
_OUTPUT_TYPES = {"point", "line", "segment", "conic"}


class GgbError(ValueError):
    """Malformed archive or XML."""


class UnsupportedCommand(GgbError):
    """A construction uses a GeoGebra feature outside the supported subset."""

    def __init__(self, command: str, detail: str = "") -> None:
        self.command = command
        msg = f"unsupported GeoGebra command {command!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _construction_root(data: bytes) -> ET.Element:
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as e:
        raise GgbError(f"not a zip archive: {e}") from None
    if "geogebra.xml" not in zf.namelist():
        raise GgbError("archive has no geogebra.xml")
    try:
        root = ET.fromstring(zf.read("geogebra.xml"))
    except ET.ParseError as e:
        raise GgbError(f"bad geogebra.xml: {e}") from None
    cons = root.find("construction")
    if cons is None:
        raise GgbError("geogebra.xml has no <construction>")
    return cons


def _io_labels(cmd: ET.Element, tag: str) -> list[str]:
    node = cmd.find(tag)
    if node is None:
        return []
    out = []
    i = 0
    while f"a{i}" in node.attrib:
        out.append(node.attrib[f"a{i}"])
        i += 1
    return out


def import_ggb(data: bytes) -> Construction:
    """Read a .ggb archive into a construction (with no goal)."""
    cons = _construction_root(data)
    steps: list[Step] = []
    kinds: dict[str, str] = {}  # label -> "P" | "L" | "C"
    produced: set[str] = set()

    def add(kind: str, label: str, args: tuple[str, ...], k: str) -> None:
        steps.append(Step(kind, label, args))
        kinds[label] = k
        produced.add(label)

    for node in cons:
        if node.tag == "command":
            name = node.attrib.get("name", "?")
            ins = _io_labels(node, "input")
            outs = _io_labels(node, "output")
            if name not in SUPPORTED_COMMANDS:
                raise UnsupportedCommand(name)
            if len(outs) != 1:
                raise UnsupportedCommand(name, f"{len(outs)} outputs")
            label = outs[0]
            if name == "Point":
                if len(ins) != 1 or kinds.get(ins[0]) not in ("L", "C"):
                    raise UnsupportedCommand(name, "only points on a path")
                add("PointOnLine", label, tuple(ins), "P")
            elif name == "Midpoint":
                if len(ins) != 2 or any(kinds.get(x) != "P" for x in ins):
                    raise UnsupportedCommand(name, "needs two points")
                add("Midpoint", label, tuple(ins), "P")
            elif name in ("Line", "Segment"):
                if len(ins) != 2:
                    raise UnsupportedCommand(name, "needs two inputs")
                k0, k1 = kinds.get(ins[0]), kinds.get(ins[1])
                if k0 == "P" and k1 == "P":
                    add("LineThrough", label, tuple(ins), "L")
                elif name == "Line" and k0 == "P" and k1 == "L":
                    add("ParallelLine", label, tuple(ins), "L")
                else:
                    raise UnsupportedCommand(name, "unsupported input mix")
            elif name == "OrthogonalLine":
                if len(ins) != 2 or kinds.get(ins[0]) != "P" or kinds.get(ins[1]) != "L":
                    raise UnsupportedCommand(name, "needs point and line")
                add("PerpLine", label, tuple(ins), "L")
            elif name == "LineBisector":
                if len(ins) != 2 or any(kinds.get(x) != "P" for x in ins):
                    raise UnsupportedCommand(name, "needs two points")
                add("PerpBisector", label, tuple(ins), "L")
            elif name == "Intersect":
                if len(ins) != 2 or any(kinds.get(x) != "L" for x in ins):
                    raise UnsupportedCommand(name, "only line-line intersections")
                add("Intersect", label, tuple(ins), "P")
            elif name == "Circle":
                if len(ins) == 3 and all(kinds.get(x) == "P" for x in ins):
                    add("Circumcircle", label, tuple(ins), "C")
                elif len(ins) == 2 and all(kinds.get(x) == "P" for x in ins):
                    add("CircleCenterThrough", label, tuple(ins), "C")
                else:
                    raise UnsupportedCommand(name, "unsupported input mix")
        elif node.tag == "element":
            label = node.attrib.get("label")
            etype = node.attrib.get("type", "?")
            if label is None or label in produced:
                continue
            if etype == "point":
                add("FreePoint", label, (), "P")
            elif etype in _OUTPUT_TYPES:
                raise GgbError(f"element {label!r} of type {etype} has no command")
            else:
                raise UnsupportedCommand(etype, f"element {label!r}")
        # other construction children (expressions, worksheet text) are not
        # construction steps; they make the file unsupported, not invalid
        elif node.tag == "expression":
            raise UnsupportedCommand("expression", node.attrib.get("label", ""))

    c = Construction(tuple(steps), None)
    problems = validate(c)
    if problems:
        d = problems[0]
        raise GgbError(f"invalid construction: step {d.step_index}: {d.message}")
    return c


_EXPORT_KIND = {
    "PointOnLine": ("Point", "point"),
    "Midpoint": ("Midpoint", "point"),
    "LineThrough": ("Line", "line"),
    "ParallelLine": ("Line", "line"),
    "PerpLine": ("OrthogonalLine", "line"),
    "PerpBisector": ("LineBisector", "line"),
    "Intersect": ("Intersect", "point"),
    "Circumcircle": ("Circle", "conic"),
    "CircleCenterThrough": ("Circle", "conic"),
}


def export_ggb(c: Construction) -> bytes:
    """Write a construction as a .ggb archive (goals are not representable)."""
    root = ET.Element("geogebra", {"format": "5.0", "version": "5.0.641.0",
                                   "app": "classic"})
    cons = ET.SubElement(root, "construction", {"title": "", "author": "", "date": ""})
    for step in c.steps:
        if step.kind == "FreePoint":
            el = ET.SubElement(cons, "element", {"type": "point", "label": step.label})
            ET.SubElement(el, "coords", {"x": "0", "y": "0", "z": "1"})
            continue
        name, etype = _EXPORT_KIND[step.kind]
        cmd = ET.SubElement(cons, "command", {"name": name})
        ET.SubElement(cmd, "input",
                      {f"a{i}": lab for i, lab in enumerate(step.args)})
        ET.SubElement(cmd, "output", {"a0": step.label})
        ET.SubElement(cons, "element", {"type": etype, "label": step.label})
    xml = ET.tostring(root, encoding="utf-8", xml_declaration=True)
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
        info = zipfile.ZipInfo("geogebra.xml", date_time=(2020, 1, 1, 0, 0, 0))
        zf.writestr(info, xml)
    return buf.getvalue()


def sniff_ggb(data: bytes) -> bool:
    return data[:4] == GGB_MAGIC
