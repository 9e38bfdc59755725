"""SVG output: one polygon per tile, posterior tiles shaded and starred,
optional rhombus and odd-edge layers."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .model import PentagonTiling

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderStyle:
    anterior_fill: str = "#ffffff"
    posterior_fill: str = "#c8c8c8"
    marker: str = "*"
    stroke: str = "#000000"
    stroke_width: float = 1.0
    rhombus_stroke: str = "#d62728"
    rhombus_width: float = 1.5
    e_edge_stroke: str = "#1f4fd6"
    e_edge_width: float = 2.0
    scale: float = 40.0
    margin: float = 10.0
    show_rhombi: bool = False
    show_e_edges: bool = False
    show_markers: bool = True

    def updated(self, spec: str) -> "RenderStyle":
        """Apply ``key=value`` overrides separated by commas."""
        if not spec:
            return self
        types = {f.name: f.type for f in fields(self)}
        changes = {}
        for item in spec.split(","):
            if not item.strip():
                continue
            key, _, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if key not in types:
                raise ValueError(f"unknown style key {key!r}")
            current = getattr(self, key)
            if isinstance(current, bool):
                changes[key] = value.strip().lower() in ("1", "true", "yes", "on")
            elif isinstance(current, float):
                changes[key] = float(value)
            else:
                changes[key] = value.strip()
        return replace(self, **changes)


def _fmt(x):
    return f"{x:.4f}".rstrip("0").rstrip(".")


def render_svg(doc, style: RenderStyle | None = None, path=None) -> str:
    """Return the SVG text and write it to ``path`` when given."""
    style = style or RenderStyle()
    polys = [np.asarray(p, dtype=float) for p in doc.polygons()]
    overlay = [np.asarray(c) for c in (getattr(doc, "rhombi", None) or [])] if isinstance(doc, PentagonTiling) else []
    everything = polys + overlay
    if everything:
        pts = np.concatenate(everything)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    else:
        lo = hi = np.zeros(2)
    s, m = style.scale, style.margin
    width = (hi[0] - lo[0]) * s + 2 * m
    height = (hi[1] - lo[1]) * s + 2 * m

    def xy(p):
        # flip y so counterclockwise in the plane stays counterclockwise on screen
        return (p[0] - lo[0]) * s + m, (hi[1] - p[1]) * s + m

    def points(poly):
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (xy(p) for p in poly))

    ET.register_namespace("", SVG_NS)
    root = ET.Element(
        f"{{{SVG_NS}}}svg",
        {"width": _fmt(width), "height": _fmt(height), "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}"},
    )
    tiles_g = ET.SubElement(root, f"{{{SVG_NS}}}g", {"id": "tiles", "stroke": style.stroke, "stroke-width": _fmt(style.stroke_width)})
    tiles = getattr(doc, "tiles", None)
    posterior = [t.chirality == "posterior" for t in tiles] if tiles is not None else [False] * len(polys)
    ids = [t.id for t in tiles] if tiles is not None else [r.id for r in doc.rhombi]
    for poly, post, tid in zip(polys, posterior, ids):
        ET.SubElement(
            tiles_g,
            f"{{{SVG_NS}}}polygon",
            {
                "id": f"tile-{tid}",
                "class": "tile posterior" if post else "tile anterior",
                "points": points(poly),
                "fill": style.posterior_fill if post else style.anterior_fill,
            },
        )
    if style.show_markers and any(posterior):
        marks = ET.SubElement(root, f"{{{SVG_NS}}}g", {"id": "markers", "text-anchor": "middle", "font-size": _fmt(0.4 * s)})
        for poly, post in zip(polys, posterior):
            if post:
                x, y = xy(poly.mean(axis=0))
                t = ET.SubElement(marks, f"{{{SVG_NS}}}text", {"x": _fmt(x), "y": _fmt(y + 0.14 * s)})
                t.text = style.marker

    if style.show_e_edges and tiles is not None:
        edges = ET.SubElement(
            root, f"{{{SVG_NS}}}g", {"id": "e-edges", "stroke": style.e_edge_stroke, "stroke-width": _fmt(style.e_edge_width)}
        )
        for poly, lab in zip(polys, doc.labels()):
            if lab and "D" in lab and "E" in lab:
                (x1, y1), (x2, y2) = xy(poly[lab.index("D")]), xy(poly[lab.index("E")])
                ET.SubElement(edges, f"{{{SVG_NS}}}line", {"x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2)})

    if style.show_rhombi and overlay:
        rg = ET.SubElement(
            root,
            f"{{{SVG_NS}}}g",
            {"id": "rhombi", "fill": "none", "stroke": style.rhombus_stroke, "stroke-width": _fmt(style.rhombus_width)},
        )
        for c in overlay:
            ET.SubElement(rg, f"{{{SVG_NS}}}polygon", {"points": points(c)})

    text = ET.tostring(root, encoding="unicode")
    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
