import json
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from ayfamily.cli import main, report_schema


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    return code, report, out


def test_verify_all_genus_3(capsys):
    code, report, _ = run_cli(capsys, ["verify", "--genus", "3", "--suite", "all"])
    assert code == 0
    assert report["ok"] is True
    assert set(report["data"]["suites"]) == {"bounds", "iet", "psi", "rho", "surface"}


def test_verify_single_suite(capsys):
    code, report, _ = run_cli(capsys, ["verify", "--genus", "2", "--suite", "surface"])
    assert code == 0
    assert report["data"]["suites"]["surface"]["two-torus-components"] is True


def test_infinite_classify_example(capsys):
    code, report, _ = run_cli(capsys, ["infinite", "classify", "--point", "11(0)"])
    assert code == 0
    assert report["data"] == {"point": "11(0)", "base": "0", "n": 1}


def test_infinite_apply(capsys):
    code, report, _ = run_cli(capsys, ["infinite", "apply", "--point", "(0)"])
    assert code == 0
    assert report["data"]["image_value"] == "3/4"


def test_infinite_conjugacies(capsys):
    code, report, _ = run_cli(capsys, ["infinite", "conjugacies", "--samples", "50"])
    assert code == 0
    assert report["data"]["result"]["ok"] is True


def test_veech2_check_not_member(capsys):
    code, report, _ = run_cli(capsys, ["veech2", "check", "1", "1", "0", "1"])
    assert code == 0  # the query succeeded; membership is just false
    assert report["data"]["in_intersection"] is False
    assert "not in intersection" in report["summary"]
    assert report["data"]["oracle_agrees"] is True


def test_veech2_sweep(capsys):
    code, report, _ = run_cli(capsys, ["veech2", "sweep", "--range", "3"])
    assert code == 0
    assert report["ok"] is True


def test_iet_orbit(capsys):
    code, report, _ = run_cli(capsys, ["iet", "orbit", "--genus", "3", "--start", "1/3", "--steps", "2"])
    assert code == 0
    orbit = report["data"]["orbit"]
    assert len(orbit) == 3
    assert orbit[0]["coeffs"] == ["1/3", "0", "0"]
    assert orbit[1]["coeffs"] == ["5/6", "-1/2", "0"]


def test_trace_vertical(capsys):
    code, report, _ = run_cli(capsys, ["trace", "--genus", "3", "--x", "1/3", "--budget", "5000"])
    assert code == 0
    assert report["data"]["kind"] == "returns_to_section"
    assert report["data"]["length"]["coeffs"] == ["1", "0", "0"]


def test_build_svg_and_env_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("AYFAMILY_OUT_DIR", str(tmp_path))
    code, report, _ = run_cli(
        capsys,
        ["build", "--genus", "3", "--presentation", "staircase", "--out", "svg", "--path", "s3.svg"],
    )
    assert code == 0
    target = tmp_path / "s3.svg"
    assert report["data"]["path"] == str(target)
    ET.parse(target)  # well-formed XML


def test_build_json_round_trip(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, report, _ = run_cli(
        capsys,
        ["build", "--genus", "inf", "--truncation", "2", "--presentation", "truncation", "--out", "json", "--path", str(out)],
    )
    assert code == 0
    assert report["data"]["genus"] == 5
    doc = json.loads(out.read_text())
    assert len(doc["triangles"]) == 24

    from ayfamily.surface import SurfaceComplex

    S = SurfaceComplex.from_json(doc)
    assert S.euler_genus().genus == 5


def test_build_inline_document(capsys):
    code, report, _ = run_cli(
        capsys, ["build", "--genus", "4", "--presentation", "triangulated", "--out", "svg"]
    )
    assert code == 0
    assert report["data"]["document"].startswith("<?xml")


def test_byte_determinism(capsys):
    _, _, first = run_cli(capsys, ["infinite", "conjugacies", "--samples", "40"])
    _, _, second = run_cli(capsys, ["infinite", "conjugacies", "--samples", "40"])
    assert first == second


def test_seed_echoed(capsys):
    _, report, _ = run_cli(capsys, ["verify", "--genus", "2", "--suite", "bounds"])
    assert report["seed"] == 0 and "[seed 0]" in report["summary"]
    _, report, _ = run_cli(capsys, ["--seed", "5", "verify", "--genus", "2", "--suite", "bounds"])
    assert report["seed"] == 5


def test_usage_errors_exit_2(capsys):
    for argv in (
        ["verify", "--genus", "1", "--suite", "iet"],
        ["build", "--genus", "2", "--presentation", "triangulated", "--out", "json"],
        ["build", "--genus", "inf", "--presentation", "staircase", "--out", "json"],
        ["iet", "orbit", "--genus", "3", "--start", "5/3", "--steps", "1"],
        ["veech2", "check", "1", "1", "1", "1"],
        ["infinite", "classify", "--point", "(01)"],
        ["trace", "--genus", "3", "--x", "x"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        capsys.readouterr()
