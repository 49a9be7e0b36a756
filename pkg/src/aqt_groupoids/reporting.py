"""Verification reports shared by every checker."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from pydantic import BaseModel, Field, computed_field

from .config import get_settings
from .linear.scalars import Scalar
from .linear.vectors import format_vec, vec_equal

logger = logging.getLogger(__name__)


class Witness(BaseModel):
    """Evidence for a failed check."""

    detail: str
    basis: list[int] = Field(default_factory=list)
    lhs: str | None = None
    rhs: str | None = None


class CheckResult(BaseModel):
    name: str
    anchor: str
    passed: bool
    witness: Witness | None = None


class VerificationReport(BaseModel):
    """Verifier outcome: one entry per named check, in a stable order."""

    label: str
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def reasons(self) -> list[str]:
        return [
            f"{check.name}: {check.witness.detail if check.witness else 'failed'}"
            for check in self.checks
            if not check.passed
        ]

    def failed(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> CheckResult:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def merge(self, other: VerificationReport, *, prefix: str | None = None) -> VerificationReport:
        extra = [
            check.model_copy(update={"name": f"{prefix}.{check.name}"}) if prefix else check
            for check in other.checks
        ]
        return VerificationReport(label=self.label, checks=[*self.checks, *extra])

    def render_text(self) -> str:
        lines = [f"{self.label}: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)"]
        for check in self.checks:
            status = "ok  " if check.passed else "FAIL"
            lines.append(f"  [{status}] {check.name}  {check.anchor}")
            if check.witness is not None:
                lines.append(f"         {check.witness.detail}")
                if check.witness.basis:
                    lines.append(f"         basis={tuple(check.witness.basis)}")
                if check.witness.lhs is not None:
                    lines.append(f"         lhs={check.witness.lhs}")
                    lines.append(f"         rhs={check.witness.rhs}")
        return "\n".join(lines)


CheckFn = Callable[[], Witness | None]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    anchor: str
    fn: CheckFn


def run_checks(
    label: str,
    specs: Sequence[CheckSpec],
    *,
    workers: int | None = None,
) -> VerificationReport:
    """Run independent checks on a thread pool; results keep the order of ``specs``."""
    started_at = time.perf_counter()
    max_workers = workers or get_settings().check_workers
    logger.info("check_run event=start label=%s checks=%d", label, len(specs))

    def _run(spec: CheckSpec) -> CheckResult:
        try:
            witness = spec.fn()
        except Exception as exc:  # noqa: BLE001
            witness = Witness(detail=f"check raised {type(exc).__name__}: {exc}")
        return CheckResult(
            name=spec.name, anchor=spec.anchor, passed=witness is None, witness=witness
        )

    if max_workers == 1 or len(specs) <= 1:
        results = [_run(spec) for spec in specs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(_run, specs))

    report = VerificationReport(label=label, checks=results)
    failed = len(report.failed())
    log = logger.warning if failed else logger.info
    log(
        "check_run event=completed label=%s checks=%d failed=%d duration_ms=%s",
        label,
        len(specs),
        failed,
        _duration_ms(started_at),
    )
    return report


def single_check(label: str, name: str, anchor: str, witness: Witness | None) -> VerificationReport:
    return VerificationReport(
        label=label,
        checks=[CheckResult(name=name, anchor=anchor, passed=witness is None, witness=witness)],
    )


def _duration_ms(started_at: float) -> float:
    return round((time.perf_counter() - started_at) * 1000.0, 2)


Case = tuple[Sequence[int], Mapping[int, Scalar], Mapping[int, Scalar]]


def first_mismatch(detail: str, cases: Iterable[Case]) -> Witness | None:
    """Witness for the first ``(basis, lhs, rhs)`` case whose sides differ, else ``None``."""
    for basis, lhs, rhs in cases:
        if not vec_equal(lhs, rhs):
            return Witness(
                detail=detail, basis=list(basis), lhs=format_vec(lhs), rhs=format_vec(rhs)
            )
    return None


def scalar_case(basis: Sequence[int], lhs: Scalar, rhs: Scalar) -> Case:
    return (basis, {0: lhs} if lhs else {}, {0: rhs} if rhs else {})


def failure(detail: str, basis: Sequence[int] = ()) -> Witness:
    return Witness(detail=detail, basis=list(basis))
