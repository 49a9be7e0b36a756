from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import pytest

from aqt_groupoids.algebroid import MMHA, build_algebroid
from aqt_groupoids.catalog import (
    GROUP_NAMES,
    ActionData,
    CatalogInstance,
    GradedAlgebraData,
    GroupData,
    QuotientCoideal,
    build_instance,
    load_action,
    load_bundle,
    load_group,
    quotient_coideal_yd,
)
from aqt_groupoids.config import get_settings
from aqt_groupoids.pontrjagin import DualModel, build_dual_algebroid


@pytest.fixture(scope="session")
def groups() -> dict[str, GroupData]:
    return {name: load_group(name) for name in GROUP_NAMES}


@pytest.fixture(scope="session")
def z2_action() -> ActionData:
    return load_action("z2_two_points")


@pytest.fixture(scope="session")
def s3_action() -> ActionData:
    return load_action("s3_three_cosets")


@pytest.fixture(scope="session")
def z2_instance() -> CatalogInstance:
    return build_instance("z2-two-points")


@pytest.fixture(scope="session")
def z2_algebroid(z2_instance: CatalogInstance) -> MMHA:
    return build_algebroid(z2_instance.measured, verified=True)


@pytest.fixture(scope="session")
def z2_dual_model(z2_algebroid: MMHA) -> DualModel:
    return build_dual_algebroid(z2_algebroid, verify_dual=True)


@pytest.fixture(scope="session")
def canonical_z2_algebroid() -> MMHA:
    return build_algebroid(build_instance("canonical-z2").measured, verified=True)


@pytest.fixture(scope="session")
def q8_bundle() -> GradedAlgebraData:
    return load_bundle("q8_bundle")


@pytest.fixture(scope="session")
def s3_z3_coideal(groups: dict[str, GroupData]) -> QuotientCoideal:
    return quotient_coideal_yd(groups["s3"], (0, 4, 5))


@pytest.fixture
def report_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[Path]:
    target = tmp_path / "reports"
    monkeypatch.setenv("AQT_GROUPOIDS_REPORT_DIR", str(target))
    monkeypatch.setenv("AQT_GROUPOIDS_DEFAULT_FORMAT", "json")
    get_settings.cache_clear()
    yield target
    get_settings.cache_clear()
