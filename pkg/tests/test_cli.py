from __future__ import annotations

import json
from pathlib import Path

import pytest

from aqt_groupoids import cli
from aqt_groupoids.cli import EXIT_FAILED, EXIT_INPUT, EXIT_PASS, main
from aqt_groupoids.errors import (
    AqtError,
    DimensionMismatchError,
    GammaIncompatibleError,
    NotFaithfulError,
    NotYetterDrinfeldError,
)


def _write(path: Path, payload: dict) -> Path:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_catalog_list_json(report_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["catalog", "list"])

    assert code == EXIT_PASS
    listing = json.loads(capsys.readouterr().out)
    assert listing["kind"] == "catalog"
    names = [entry["name"] for entry in listing["instances"]]
    assert "z2-two-points" in names
    assert "heisenberg-z2" in names


def test_catalog_list_text(report_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["catalog", "list", "--format", "text"])

    assert code == EXIT_PASS
    assert "q8-bundle" in capsys.readouterr().out


def test_build_groupoid_writes_a_stable_report(
    report_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["build-groupoid", "z2-two-points"]) == EXIT_PASS
    path = report_dir / "build-groupoid-z2-two-points.json"
    first = path.read_bytes()
    capsys.readouterr()

    assert main(["build-groupoid", "z2-two-points"]) == EXIT_PASS

    assert path.read_bytes() == first
    document = json.loads(first)
    assert document["passed"] is True
    assert document["command"] == "build-groupoid"


def test_verify_aqg_text_output(report_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["verify-aqg", "z3", "--format", "text"])

    out = capsys.readouterr().out
    assert code == EXIT_PASS
    assert "verify-aqg z3: PASS" in out
    assert (report_dir / "verify-aqg-z3.json").exists()


def test_output_option_overrides_report_dir(report_dir: Path, tmp_path: Path) -> None:
    target = tmp_path / "custom.json"

    assert main(["verify-aqg", "z2", "--output", str(target)]) == EXIT_PASS

    assert target.exists()
    assert not (report_dir / "verify-aqg-z2.json").exists()


def test_malformed_group_document(report_dir: Path, tmp_path: Path) -> None:
    path = _write(
        tmp_path / "ragged.json",
        {
            "kind": "group",
            "name": "ragged",
            "identity": 0,
            "inverse": [0, 1],
            "mult_table": [[0, 1], [1]],
        },
    )

    assert main(["verify-aqg", str(path)]) == EXIT_INPUT


def test_non_associative_group_document(report_dir: Path, tmp_path: Path) -> None:
    path = _write(
        tmp_path / "loop.json",
        {
            "kind": "group",
            "name": "loop",
            "identity": 0,
            "inverse": [0, 1, 2, 3, 4],
            "mult_table": [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ],
        },
    )

    assert main(["build-groupoid", str(path)]) == EXIT_INPUT


def test_non_invariant_weights_fail_the_run(
    report_dir: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = _write(
        tmp_path / "skewed.json",
        {
            "kind": "action",
            "name": "skewed",
            "group": "z2",
            "points": ["a", "b"],
            "action_table": [[0, 1], [1, 0]],
            "weights": ["1", "2"],
        },
    )

    code = main(["build-groupoid", str(path)])

    assert code == EXIT_FAILED
    document = json.loads(capsys.readouterr().out)
    assert document["passed"] is False
    assert (report_dir / "build-groupoid-skewed.json").exists()


def test_unknown_instance(report_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["build-groupoid", "no-such-instance"]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err
    assert main(["catalog", "run", "no-such-instance"]) == EXIT_INPUT


def test_export_part(report_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["export", "z2-two-points", "--part", "total"])

    assert code == EXIT_PASS
    dump = json.loads(capsys.readouterr().out)
    assert dump["kind"] == "star_algebra"
    assert dump["dim"] == 4
    assert (report_dir / "export-total-z2-two-points.json").exists()


def test_dualize_and_bidual(report_dir: Path) -> None:
    assert main(["dualize", "canonical-z2"]) == EXIT_PASS
    assert main(["bidual", "z2-two-points", "--exhaustive"]) == EXIT_PASS
    assert (report_dir / "bidual-z2-two-points.json").exists()


@pytest.mark.parametrize(
    ("error", "expected"),
    [
        (GammaIncompatibleError("θ∘γ != (S⁻²⊗γ)∘θ at e0"), EXIT_FAILED),
        (NotFaithfulError("φ is not faithful"), EXIT_FAILED),
        (NotYetterDrinfeldError("braided commutativity fails"), EXIT_FAILED),
        (DimensionMismatchError("3 weights for 2 points", location="weights"), EXIT_INPUT),
    ],
)
def test_error_classes_map_to_exit_codes(
    report_dir: Path,
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
    error: AqtError,
    expected: int,
) -> None:
    def dispatch(_args: object) -> int:
        raise error

    monkeypatch.setattr(cli, "_dispatch", dispatch)

    assert main(["build-groupoid", "z2-two-points"]) == expected
    prefix = "error:" if expected == EXIT_INPUT else "failed:"
    assert f"{prefix} " in capsys.readouterr().err
