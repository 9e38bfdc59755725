import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from pentatile import (
    DocumentError,
    PentagonParams,
    PentagonTiling,
    RenderStyle,
    SchemaVersionError,
    decorate_patch,
    hole_rosette,
    read_document,
    render_svg,
    validate,
    wedge_rotational,
    write_document,
)
from pentatile.io import SCHEMA, VERSION, dumps, from_dict, loads, realize_prototypes, to_dict

NS = {"svg": "http://www.w3.org/2000/svg"}


@pytest.fixture(scope="module")
def holed():
    return decorate_patch(hole_rosette(8, 1, 2), PentagonParams.from_n(8, 61))


def test_tiling_round_trip_is_exact(tmp_path, holed):
    path = tmp_path / "t.json"
    write_document(holed, path)
    back = read_document(path)
    assert isinstance(back, PentagonTiling)
    for a, b in zip(holed.polygons(), back.polygons()):
        assert np.array_equal(a, b)
    assert np.array_equal(holed.declared_hole, back.declared_hole)
    assert [t.chirality for t in back.tiles] == [t.chirality for t in holed.tiles]
    assert back.metadata == holed.metadata
    assert dumps(back) == dumps(holed)


def test_patch_round_trip():
    patch = hole_rosette(6, 2, 1)
    back = loads(dumps(patch))
    assert len(back) == len(patch)
    assert back.adjacency == patch.adjacency
    assert np.array_equal(back.hole, patch.hole)


def test_truncated_file_reports_position(tmp_path, holed):
    path = tmp_path / "bad.json"
    path.write_text(dumps(holed)[:200])
    with pytest.raises(DocumentError) as info:
        read_document(path)
    assert info.value.line is not None and info.value.column is not None


def test_missing_file():
    with pytest.raises(DocumentError):
        read_document("/nonexistent/tiling.json")


def test_unknown_schema_and_version(holed):
    data = to_dict(holed)
    with pytest.raises(SchemaVersionError):
        from_dict(dict(data, schema="something-else"))
    with pytest.raises(SchemaVersionError):
        from_dict(dict(data, version=VERSION + 1))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(kind="quilt"),
        lambda d: d.pop("tiles"),
        lambda d: d["tiles"][0].update(proto=7),
        lambda d: d["tiles"][1].update(id=d["tiles"][0]["id"]),
        lambda d: d["parameters"][0].update(theta=400),
        lambda d: d["tiles"][0].update(translation="here"),
    ],
)
def test_malformed_documents(holed, mutate):
    data = json.loads(dumps(holed))
    mutate(data)
    with pytest.raises(DocumentError):
        from_dict(data)


def test_hand_written_document_validates():
    text = json.dumps(
        {
            "schema": SCHEMA,
            "version": VERSION,
            "kind": "tiling",
            "prototypes": [{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}],
            "tiles": [{"proto": 0, "translation": [x, y]} for x in (-1, 0) for y in (-1, 0)],
        }
    )
    doc = loads(text)
    rep = validate(doc, probe_center=(0, 0), probe_radius=0.9)
    assert rep.ok and rep.edge_to_edge and rep.rotation_order == 4


def test_vertices_optional_when_parameters_given(holed):
    data = json.loads(dumps(holed))
    for p in data["prototypes"]:
        p["vertices"] = None
    back = from_dict(data)
    for a, b in zip(holed.polygons(), back.polygons()):
        assert np.allclose(a, b, atol=1e-12)
    again = realize_prototypes(back)
    assert np.allclose(again.polygons()[0], holed.polygons()[0])


# ---------------------------------------------------------------- SVG


def _parse(text):
    return ET.fromstring(text.split("\n", 1)[1])


def test_svg_has_one_polygon_per_tile(holed):
    root = _parse(render_svg(holed))
    polys = root.findall("svg:g[@id='tiles']/svg:polygon", NS)
    assert len(polys) == len(holed)
    posterior = [p for p in polys if "posterior" in p.get("class")]
    marks = root.findall("svg:g[@id='markers']/svg:text", NS)
    assert len(marks) == len(posterior) > 0
    assert all(m.text == "*" for m in marks)
    assert {p.get("fill") for p in posterior} == {"#c8c8c8"}


def test_svg_layers_and_style(tmp_path, holed):
    style = RenderStyle(show_rhombi=True, show_e_edges=True).updated("posterior_fill=#333333,scale=10")
    path = tmp_path / "t.svg"
    text = render_svg(holed, style, path)
    assert path.read_text() == text
    root = _parse(text)
    assert len(root.findall("svg:g[@id='rhombi']/svg:polygon", NS)) == len(holed.rhombi)
    assert len(root.findall("svg:g[@id='e-edges']/svg:line", NS)) == len(holed)
    assert "#333333" in text


def test_svg_keeps_orientation():
    doc = decorate_patch(wedge_rotational(4, 1), PentagonParams.from_n(4, 61))
    root = _parse(render_svg(doc, RenderStyle(scale=1, margin=0)))
    pts = np.array([[float(v) for v in xy.split(",")] for xy in root.find("svg:g/svg:polygon", NS).get("points").split()])
    # screen y points down, so a counterclockwise tile comes out clockwise in pixel coordinates
    x, y = pts[:, 0], pts[:, 1]
    screen_area = 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    assert screen_area < 0


def test_empty_document_renders():
    root = _parse(render_svg(PentagonTiling([], [])))
    assert root.findall("svg:g[@id='tiles']/svg:polygon", NS) == []
    assert float(root.get("width")) > 0


def test_bad_style_key():
    with pytest.raises(ValueError):
        RenderStyle().updated("colour=red")
