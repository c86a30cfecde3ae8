import json
from fractions import Fraction

import pytest

from tropcrit.cli import main, parse_k
from tropcrit.errors import ParseError
from tropcrit.polytope import Polytope
from tropcrit.presets import GALLERY, gallery_cases, get_preset, list_presets
from tropcrit.problem import ProblemSpec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_output(out):
    return json.loads(out[out.index("{"):])


def test_parse_k():
    assert parse_k("1,2") == [[1, 2]]
    assert parse_k("-1,2;0,1") == [[-1, 2], [0, 1]]
    assert parse_k("none") == []
    assert parse_k(None) is None
    with pytest.raises(ParseError):
        parse_k("1,x")


def test_potential_cp2(capsys):
    code, out, _ = run(capsys, "potential", "cp2")
    assert code == 0
    assert out.splitlines()[0] == "y1 + y2 + T^1*y1^-1*y2^-1"
    assert json_output(out)["n"] == 2


def test_potential_s2xs2(capsys):
    code, out, _ = run(capsys, "potential", "s2xs2", "--c", "1", "--d", "2")
    assert code == 0
    assert out.splitlines()[0] == "y1 + y2 + T^1*y1^-1 + T^2*y2^-1"


def test_potential_negative_alpha(capsys):
    code, out, _ = run(capsys, "potential", "cp2-blowup2", "--alpha=-1/2")
    assert code == 0
    assert "T^1/2*y1^-1*y2^-1" in out.splitlines()[0]


def test_tropical_cp2_generic(capsys, tmp_path):
    svg = tmp_path / "cp2.svg"
    code, out, _ = run(capsys, "tropical", "cp2", "--k", "1,2", "--svg", str(svg))
    assert code == 0
    data = json_output(out)
    assert len(data["cells"]) == 3
    assert {"u": ["1/3", "1/3"], "included": True} in data["nodes"]
    assert svg.read_text().startswith("<svg")


def test_tropical_two_point_blowup(capsys):
    code, out, _ = run(capsys, "tropical", "cp2-blowup2", "--alpha", "0", "--k", "0,1")
    assert code == 0
    nodes = {tuple(node["u"]): node["included"] for node in json_output(out)["nodes"]}
    assert nodes == {
        ("-1/2", "1/1"): False,
        ("0/1", "-1/1"): False,
        ("0/1", "0/1"): True,
        ("1/1", "0/1"): False,
    }


def test_tropical_equal_weights(capsys):
    code, out, _ = run(capsys, "tropical", "cp2", "--k", "1,1")
    assert code == 0
    (cell,) = json_output(out)["cells"]
    assert cell["vertices"] == [
        {"u": ["0/1", "0/1"], "included": False},
        {"u": ["1/2", "1/2"], "included": False},
    ]


def test_tropical_svg_needs_two_dimensions(capsys, tmp_path):
    code, _, _ = run(capsys, "tropical", "cp3", "--k", "1,2,4", "--svg", str(tmp_path / "cp3.svg"))
    assert code == 2
    assert not (tmp_path / "cp3.svg").exists()


def test_verify_coordinate_subtorus(capsys):
    code, out, _ = run(capsys, "verify", "cp2", "--k", "0,1", "--samples", "5")
    assert code == 0
    data = json_output(out)
    assert data["successes"] == 5
    assert data["probed_dim"] == 1


def test_verify_without_samples(capsys):
    code, out, _ = run(capsys, "verify", "cp2", "--k", "0,1", "--samples", "0")
    assert code == 0
    assert json_output(out)["reports"] == []


def test_problem_file(capsys, tmp_path):
    problem = ProblemSpec.build(Polytope.simplex(2), [(1, 2)], name="cp2")
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(problem.to_json()))
    code, out, _ = run(capsys, "tropical", "--json", str(path))
    assert code == 0
    assert len(json_output(out)["cells"]) == 3


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "tropical", "--json", str(bad))[0] == 2
    assert run(capsys, "tropical", "cp2")[0] == 2
    assert run(capsys, "tropical", "nowhere", "--k", "1,2")[0] == 2
    assert run(capsys, "tropical", "cp2", "--k", "1,2,3")[0] == 2
    assert run(capsys, "tropical", "cp2", "--k", "1,2;2,4")[0] == 2
    assert run(capsys, "potential", "cp2-blowup1", "--alpha", "x")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_missing_file_is_an_io_error(capsys, tmp_path):
    assert run(capsys, "tropical", "--json", str(tmp_path / "missing.json"))[0] == 4


def test_presets(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    names = [line.split()[0] for line in out.splitlines()]
    assert names == ["cp2", "cp2-blowup1", "cp2-blowup2", "cp3", "s2xs2"]
    assert [p.name for p in list_presets()] == names


def test_preset_parameters():
    assert get_preset("s2xs2").polytope() == Polytope.box(1, 2)
    assert get_preset("cp2-blowup1").polytope(alpha=Fraction(1, 3)).vertices()[-1] == (1, 0)
    with pytest.raises(ParseError):
        get_preset("cp4")


def test_gallery_cases():
    assert len(GALLERY) == 19
    assert len({case.name for case in GALLERY}) == 19
    assert [case.name for case in gallery_cases("cp2")] == [
        "cp2-generic",
        "cp2-k1-zero",
        "cp2-k2-zero",
        "cp2-k2-eq-k1",
    ]
    with pytest.raises(ParseError):
        gallery_cases("cp3")


def test_gallery_only_cp2(capsys, tmp_path):
    code, _, _ = run(capsys, "gallery", "--out", str(tmp_path), "--only", "cp2")
    assert code == 0
    assert len(list(tmp_path.glob("*.svg"))) == 4
    data = json.loads((tmp_path / "cp2-generic.json").read_text())
    assert data["K"] == [[1, 2]]
    assert len(data["cells"]) == 3
    index = (tmp_path / "index.md").read_text()
    assert "cp2-k1-zero" in index
    assert "<table>" in (tmp_path / "index.html").read_text()


def test_problem_spec_json():
    problem = ProblemSpec.build(get_preset("cp2-blowup1").polytope(), [(1, 2)], order=Fraction(7, 2), seed=3)
    assert ProblemSpec.from_json(problem.to_json()) == problem
    with pytest.raises(ParseError):
        ProblemSpec.from_json([])
    with pytest.raises(ParseError):
        ProblemSpec.from_json({"polytope": problem.polytope.to_json(), "K": [[1, 2, 3]]})
    with pytest.raises(ParseError):
        ProblemSpec.from_json(dict(problem.to_json(), order="-1"))


@pytest.mark.parametrize(
    "argv",
    [
        ("tropical", "cp2", "--k", "1,2"),
        ("tropical", "cp2-blowup2", "--alpha", "-1/2", "--k", "1,2"),
        ("verify", "cp2", "--k", "1,2", "--samples", "3", "--seed", "5"),
    ],
)
def test_output_is_byte_identical_across_runs(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0
    assert first[1] == second[1]


def test_gallery_logs_instead_of_printing(capsys, tmp_path):
    code, out, err = run(capsys, "-v", "gallery", "--out", str(tmp_path), "--only", "s2xs2")
    assert code == 0
    assert out == ""
    assert "Wrote 3 cases" in err
