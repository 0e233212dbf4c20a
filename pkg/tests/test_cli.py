import json

import pytest

from cone_gamma.cli import build_parser, main
from cone_gamma.verification import ResidualReport, read_reports


def run(argv, capsys):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_catalog_lists_all_cones(capsys):
    rc, out, _ = run(["catalog"], capsys)
    assert rc == 0
    for name in ("orthant2", "orthant3", "sym2", "vinberg3", "quat4"):
        assert name in out


def test_catalog_json_row(capsys):
    rc, out, _ = run(["catalog", "--cone", "quat4", "--json"], capsys)
    assert rc == 0
    row = json.loads(out)
    assert row["rank"] == 3
    assert row["dim"] == 15
    assert row["n"] == [[2, 1, 4], [3, 1, 4], [3, 2, 4]]
    assert row["diagonalizable_m"] == 1
    assert row["chart"] is None


def test_catalog_text_marks_nondiagonalizable(capsys):
    rc, out, _ = run(["catalog", "--cone", "sym2"], capsys)
    assert rc == 0
    assert "not diagonalizable" in out


def test_decompose_plain_rank3(capsys):
    rc, out, _ = run(["decompose", "--r", "3", "--alpha", "0.3,0.45,0.8"], capsys)
    assert rc == 0
    assert "6 labeled factors plus scalar prefactor, size 4x4" in out
    for label in ("D_3", "P_32", "D_2", "P_31", "P_21", "D_1"):
        assert label in out


def test_decompose_cone_mode(capsys):
    rc, out, _ = run(
        ["decompose", "--cone", "vinberg3", "--s", "0.4+0.2i,0.7,1.1-0.3i"], capsys
    )
    assert rc == 0
    assert "6 labeled factors plus block-phase prefactor, size 8x8" in out


def test_decompose_json_and_out(tmp_path, capsys):
    path = tmp_path / "factors.json"
    rc, out, _ = run(
        ["decompose", "--r", "2", "--alpha", "0.3,0.8", "--json", "--out", str(path)],
        capsys,
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["size"] == 2
    labels = [f["label"] for f in payload["factors"]]
    assert labels == ["scalar", "D_2", "P_21", "D_1"]
    assert json.loads(path.read_text()) == payload


def test_decompose_cone_requires_s(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose", "--cone", "sym2"])
    assert exc.value.code == 2
    assert "requires --s" in capsys.readouterr().err


def test_decompose_pole_exits_1(capsys):
    # integer alpha hits a gamma pole in the diagonal factor
    rc, _, err = run(["decompose", "--cone", "orthant2", "--s", "0,1"], capsys)
    assert rc == 1
    assert "error:" in err


def test_verify_prop31(capsys):
    rc, out, _ = run(
        ["verify", "--suite", "prop31", "--r", "3", "--count", "4"], capsys
    )
    assert rc == 0
    assert "4 checks, 4 passed, 0 failed" in out


def test_verify_prop31_requires_r(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "prop31"])
    assert exc.value.code == 2


def test_verify_impossible_tolerance_fails(capsys):
    rc, out, _ = run(
        ["verify", "--suite", "det", "--r", "2", "--count", "3", "--tol", "1e-18"],
        capsys,
    )
    assert rc == 1
    assert "[FAIL]" in out


def test_verify_json_lines_parse(capsys):
    rc, out, _ = run(
        ["verify", "--suite", "thm32", "--cone", "sym2", "--count", "3", "--json"],
        capsys,
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    for line in lines:
        rep = ResidualReport.from_json_line(line)
        assert rep.passed


def test_verify_out_file_round_trips(tmp_path, capsys):
    path = tmp_path / "reports.jsonl"
    rc, _, _ = run(
        [
            "verify", "--suite", "completion", "--cone", "quat4",
            "--count", "3", "--out", str(path),
        ],
        capsys,
    )
    assert rc == 0
    reports = read_reports(path)
    assert len(reports) == 3
    assert all(r.passed for r in reports)


def test_verify_condition_error_exits_1(capsys):
    rc, _, err = run(["verify", "--suite", "completion", "--cone", "sym2"], capsys)
    assert rc == 1
    assert "error:" in err


def test_verify_gamma_suite(capsys):
    rc, out, _ = run(["verify", "--suite", "gamma", "--count", "10"], capsys)
    assert rc == 0
    assert "10 checks, 10 passed, 0 failed" in out


def test_verify_invariance_single_chart(capsys):
    rc, out, _ = run(["verify", "--suite", "invariance", "--cone", "orthant2"], capsys)
    assert rc == 0
    assert "[PASS]" in out


def test_verify_config_file(tmp_path, capsys):
    config = {
        "cone": "orthant2",
        "s_points": [["0.45+0.3i", "0.7-0.2i"], [[0.6, 0.1], [0.55, -0.4]]],
        "functions": ["gaussian", "psi:1,2"],
        "tolerances": {"fe": 1e-9, "distribution": 1e-9, "completion": 1e-9},
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(config))
    rc, out, _ = run(["verify", "--config", str(path)], capsys)
    assert rc == 0
    # 2 s-points x 2 functions x 3 residual kinds
    assert "12 checks, 12 passed, 0 failed" in out


def test_verify_needs_suite_or_config(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2
    assert "--suite or --config" in capsys.readouterr().err


def test_unknown_suite_rejected_by_parser():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_bad_vector_length_is_usage_error(capsys):
    rc, _, err = run(["decompose", "--cone", "sym2", "--s", "0.4"], capsys)
    assert rc == 2
    assert "expected 2" in err
