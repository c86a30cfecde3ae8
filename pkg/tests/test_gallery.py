import json

from tropcrit.cli import main, run_gallery_case
from tropcrit.components import render_complex_svg
from tropcrit.potential import SubtorusSpec
from tropcrit.presets import GALLERY
from tropcrit.tropical import crit_trop, crit_trop_result


def test_every_gallery_case_renders():
    for case in GALLERY:
        data, svg = run_gallery_case(case)
        assert data["case"] == case.name
        assert data["cells"], case.name
        assert svg.count("<svg") == 1


def test_full_gallery(tmp_path, capsys):
    assert main(["gallery", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    assert len(list(tmp_path.glob("*.svg"))) == 19
    assert len(list(tmp_path.glob("*.json"))) == 19
    s2 = json.loads((tmp_path / "s2xs2-generic-c1-d2.json").read_text())
    assert len(s2["cells"]) == 5
    blowup = json.loads((tmp_path / "cp2-blowup1-generic-alpha1_4.json").read_text())
    assert len(blowup["cells"]) == 5


def test_svg_marks_included_and_excluded_nodes(cp2):
    complex_ = crit_trop(cp2, SubtorusSpec.from_columns(2, [(1, 2)]))
    svg = render_complex_svg(complex_, cp2, title="cp2 <generic>")
    assert "<title>cp2 &lt;generic&gt;</title>" in svg
    assert svg.count("<line") == 3
    assert svg.count('fill="red"') == 1
    assert svg.count('fill="white"') == 3


def test_gallery_json_matches_a_fresh_computation(tmp_path, capsys):
    assert main(["gallery", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    for case in GALLERY:
        written = json.loads((tmp_path / f"{case.name}.json").read_text())
        fresh = crit_trop_result(case.polytope(), SubtorusSpec.from_columns(case.polytope().dim, case.columns))
        expected = json.loads(json.dumps(fresh.to_json()))
        assert {k: written[k] for k in expected} == expected, case.name
