from __future__ import annotations

import json
from pathlib import Path

import pytest

from aqt_groupoids.algebroid import MMHA
from aqt_groupoids.catalog import GroupData, group_from_spec
from aqt_groupoids.errors import GroupAxiomError, InputError
from aqt_groupoids.reporting import VerificationReport
from aqt_groupoids.serialization import (
    ActionSpec,
    GroupSpec,
    QuotientSpec,
    ReportDocument,
    dump_mmha,
    dump_star_algebra,
    load_star_algebra,
    read_document,
    to_json,
    validate_document,
    write_json,
)


def _z2_payload() -> dict:
    return {
        "kind": "group",
        "name": "z2-inline",
        "identity": 0,
        "inverse": [0, 1],
        "mult_table": [[0, 1], [1, 0]],
    }


def test_group_document_is_validated(groups: dict[str, GroupData]) -> None:
    document = validate_document(_z2_payload())

    assert isinstance(document, GroupSpec)
    group = group_from_spec(document)
    assert group.mult_table == groups["z2"].mult_table


def test_document_kind_selects_the_model() -> None:
    action = validate_document(
        {
            "kind": "action",
            "name": "swap",
            "group": "z2",
            "points": ["a", "b"],
            "action_table": [[0, 1], [1, 0]],
        }
    )
    quotient = validate_document(
        {"kind": "quotient", "name": "q", "group": "s3", "subgroup": [0, 4, 5]}
    )

    assert isinstance(action, ActionSpec)
    assert isinstance(quotient, QuotientSpec)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda p: p["mult_table"][1].append(0),
        lambda p: p.update(identity=5),
        lambda p: p.update(colour="red"),
        lambda p: p.update(kind="unknown"),
    ],
    ids=["ragged_table", "identity_out_of_range", "extra_field", "unknown_kind"],
)
def test_malformed_documents_raise_input_error_with_location(mutate) -> None:
    payload = _z2_payload()
    mutate(payload)

    with pytest.raises(InputError) as excinfo:
        validate_document(payload, source="doc.json")

    assert str(excinfo.value).startswith("doc.json")
    assert excinfo.value.location is not None


def test_inexact_weights_are_rejected() -> None:
    with pytest.raises(InputError, match="weights"):
        validate_document(
            {
                "kind": "action",
                "name": "swap",
                "group": "z2",
                "points": ["a", "b"],
                "action_table": [[0, 1], [1, 0]],
                "weights": ["0.5", "0.5"],
            }
        )


def test_non_associative_table_is_a_group_axiom_error() -> None:
    # a Latin square with identity 0 that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    spec = GroupSpec(name="loop", identity=0, inverse=[0, 1, 2, 3, 4], mult_table=table)

    with pytest.raises(GroupAxiomError, match="associativity"):
        group_from_spec(spec)


def test_read_document_reports_bad_json(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"kind": "group",', encoding="utf-8")

    with pytest.raises(InputError) as excinfo:
        read_document(path)

    assert str(path) in str(excinfo.value)


def test_read_document_missing_file(tmp_path: Path) -> None:
    with pytest.raises(InputError, match="cannot read"):
        read_document(tmp_path / "absent.json")


def test_star_algebra_dump_restores_structure(z2_algebroid: MMHA) -> None:
    dump = dump_star_algebra(z2_algebroid.total)

    restored = load_star_algebra(dump)

    assert restored.same_structure(z2_algebroid.total)


def test_mmha_dump_is_stable_json(z2_algebroid: MMHA) -> None:
    first = to_json(dump_mmha(z2_algebroid))
    second = to_json(dump_mmha(z2_algebroid))

    assert first == second
    payload = json.loads(first)
    assert payload["kind"] == "mmha"
    assert payload["total"]["dim"] == 4


def test_report_document_written_with_trailing_newline(tmp_path: Path) -> None:
    document = ReportDocument(
        command="verify-aqg",
        instance="z2",
        passed=True,
        reports=[VerificationReport(label="empty")],
    )
    path = tmp_path / "nested" / "report.json"

    write_json(path, document)

    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    assert json.loads(text)["reports"][0]["passed"] is True
