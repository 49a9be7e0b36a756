"""Named catalog instances and the full verification pipeline run on each of them."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Literal

from ..algebra.duality import double_dual_report, multiplicative_unitary
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebroid import (
    MMHA,
    build_algebroid,
    check_mmha_morphism,
    coopposite,
    is_kac,
    left_identification,
    mmha_modular_data,
    same_mmha,
    unimodular,
    unit_morphism,
    variants,
    verify_mmha,
)
from ..errors import InputError
from ..pontrjagin import (
    DualModel,
    biduality_check,
    build_dual_algebroid,
    duality_pairing,
    heisenberg_identification,
)
from ..reporting import VerificationReport, failure, single_check
from ..serialization import ActionSpec, BundleSpec, GroupSpec, QuotientSpec
from ..yd import (
    MeasuredYD,
    canonical_automorphisms,
    check_left_yd,
    check_left_yd_integral,
    check_yd,
    check_yd_integral,
    dual_conjugate_involution_report,
    right_measured_to_left,
    trivial_measured_yd,
)
from .bundle import (
    GradedAlgebraData,
    bundle_from_spec,
    bundle_gamma_report,
    check_graded,
    degenerate_bundle,
    graded_bundle_yd,
    load_bundle,
)
from .fixtures import closed_form_report, closed_form_tables, dual_presentation_report
from .groups import (
    GROUP_NAMES,
    GroupData,
    function_algebra,
    group_aqg_pair,
    group_from_spec,
    load_group,
    resolve_group,
)
from .quotient import QuotientCoideal, load_quotient, quotient_coideal_yd
from .transformation import (
    ActionData,
    action_from_spec,
    load_action,
    transformation_groupoid_yd,
    transformation_integral_cone,
)

logger = logging.getLogger(__name__)

Stage = Literal["aqg", "yd", "algebroid", "variants", "left", "dual", "bidual", "heisenberg"]
FULL_PIPELINE: tuple[Stage, ...] = (
    "aqg",
    "yd",
    "algebroid",
    "variants",
    "left",
    "dual",
    "bidual",
    "heisenberg",
)
HEISENBERG_PIPELINE: tuple[Stage, ...] = ("aqg", "yd", "dual", "heisenberg")


@dataclass(frozen=True, eq=False)
class CatalogInstance:
    name: str
    group_data: GroupData
    measured: MeasuredYD
    report: VerificationReport
    action: ActionData | None = None
    bundle: GradedAlgebraData | None = None
    coideal: QuotientCoideal | None = None

    @property
    def group(self) -> FiniteQuantumGroup:
        return self.measured.yd.group


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[[int | None], CatalogInstance]
    stages: tuple[Stage, ...] = FULL_PIPELINE


def transformation_instance(
    a: ActionData, *, check_weights: bool = True, workers: int | None = None
) -> CatalogInstance:
    measured = transformation_groupoid_yd(
        a, check_weights=check_weights, verify=False, workers=workers
    )
    cone = transformation_integral_cone(a, measured, workers=workers)
    return CatalogInstance(a.name, a.group, measured, cone.report, action=a)


def bundle_instance(data: GradedAlgebraData, *, workers: int | None = None) -> CatalogInstance:
    measured = graded_bundle_yd(data, verify=False, workers=workers)
    report = check_graded(data, workers=workers).merge(
        bundle_gamma_report(data, measured, workers=workers)
    )
    return CatalogInstance(data.label, data.group, measured, report, bundle=data)


def coideal_instance(
    name: str, g: GroupData, subgroup: Sequence[int], *, workers: int | None = None
) -> CatalogInstance:
    coideal = quotient_coideal_yd(g, subgroup, verify=False, workers=workers)
    return CatalogInstance(name, g, coideal.measured, coideal.report, coideal=coideal)


def trivial_instance(g: GroupData) -> CatalogInstance:
    measured = trivial_measured_yd(function_algebra(g))
    name = f"trivial-{g.name}"
    return CatalogInstance(name, g, measured, VerificationReport(label=name))


def quotient_instance(stem: str, *, workers: int | None = None) -> CatalogInstance:
    spec = load_quotient(stem)
    return coideal_instance(
        spec.name, resolve_group(spec.group), spec.subgroup, workers=workers
    )


def _canonical(name: str, g: GroupData, workers: int | None) -> CatalogInstance:
    return coideal_instance(name, g, (g.identity,), workers=workers)


def _catalog() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            "z2-two-points",
            "Z/2 swapping two points, uniform weights",
            lambda w: transformation_instance(load_action("z2_two_points"), workers=w),
        ),
        CatalogEntry(
            "s3-three-cosets",
            "S3 on the cosets of <(01)>, uniform weights",
            lambda w: transformation_instance(load_action("s3_three_cosets"), workers=w),
        ),
        CatalogEntry(
            "q8-bundle",
            "C[Q8] graded by Q8/{±1} = Z/2xZ/2 with the canonical trace",
            lambda w: bundle_instance(load_bundle("q8_bundle"), workers=w),
        ),
        CatalogEntry(
            "z3-degenerate-bundle",
            "C[Z/3] with every element of degree e over the trivial group",
            lambda w: bundle_instance(degenerate_bundle(load_group("z3")), workers=w),
        ),
        CatalogEntry(
            "s3-z3-quotient",
            "K(H\\S3) for H = <(012)>",
            lambda w: quotient_instance("s3_z3_quotient", workers=w),
        ),
    ]
    for name in GROUP_NAMES:
        entries.append(
            CatalogEntry(
                f"trivial-{name}",
                f"the trivial YD algebra C over K({name})",
                lambda w, name=name: trivial_instance(load_group(name)),
            )
        )
        entries.append(
            CatalogEntry(
                f"canonical-{name}",
                f"K({name}) with its comultiplication and adjoint action",
                lambda w, name=name: _canonical(f"canonical-{name}", load_group(name), w),
            )
        )
        entries.append(
            CatalogEntry(
                f"heisenberg-{name}",
                f"the dual of the canonical algebroid of K({name}) in the Heisenberg algebra",
                lambda w, name=name: _canonical(f"heisenberg-{name}", load_group(name), w),
                HEISENBERG_PIPELINE,
            )
        )
    return {entry.name: entry for entry in entries}


CATALOG = _catalog()


def list_instances() -> list[str]:
    return sorted(CATALOG)


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(f"unknown catalog instance {name!r}", location="catalog") from None


def build_instance(name: str, *, workers: int | None = None) -> CatalogInstance:
    return get_entry(name).build(workers)


def instance_from_document(document: Any, *, workers: int | None = None) -> CatalogInstance:
    """A pipeline instance from a validated input document.

    Weights of an action document are not pre-checked, so a non-invariant weight shows up as a
    failing integral check instead of an exception.
    """
    if isinstance(document, ActionSpec):
        action = action_from_spec(document)
        return transformation_instance(action, check_weights=False, workers=workers)
    if isinstance(document, BundleSpec):
        return bundle_instance(bundle_from_spec(document), workers=workers)
    if isinstance(document, QuotientSpec):
        return coideal_instance(
            document.name, resolve_group(document.group), document.subgroup, workers=workers
        )
    if isinstance(document, GroupSpec):
        return _canonical(f"canonical-{document.name}", group_from_spec(document), workers)
    raise InputError(f"unsupported document kind {type(document).__name__}")


@dataclass(eq=False)
class PipelineRun:
    """Runs stages in order; later stages reuse the algebroid and dual built by earlier ones."""

    instance: CatalogInstance
    exhaustive: bool | None = None
    workers: int | None = None
    reports: list[VerificationReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @cached_property
    def algebroid(self) -> MMHA:
        return build_algebroid(self.instance.measured, verified=True, workers=self.workers)

    @cached_property
    def dual_model(self) -> DualModel:
        return build_dual_algebroid(self.algebroid, verify_dual=True, workers=self.workers)

    def run(self, stages: Sequence[Stage] = FULL_PIPELINE) -> PipelineRun:
        for stage in stages:
            before = len(self.reports)
            self._stage(stage)
            failed = [r.label for r in self.reports[before:] if not r.passed]
            logger.info(
                "pipeline event=stage instance=%s stage=%s reports=%d failed=%d",
                self.instance.name,
                stage,
                len(self.reports) - before,
                len(failed),
            )
            if failed and stage == "yd":
                logger.warning(
                    "pipeline event=stopped instance=%s stage=%s", self.instance.name, stage
                )
                break
        return self

    def _stage(self, stage: Stage) -> None:
        handlers: dict[Stage, Callable[[], list[VerificationReport]]] = {
            "aqg": self._aqg,
            "yd": self._yd,
            "algebroid": self._algebroid,
            "variants": self._variants,
            "left": self._left,
            "dual": self._dual,
            "bidual": self._bidual,
            "heisenberg": self._heisenberg,
        }
        self.reports.extend(handlers[stage]())

    def _aqg(self) -> list[VerificationReport]:
        pair = group_aqg_pair(self.instance.group_data, workers=self.workers)
        return [
            pair.report,
            double_dual_report(self.instance.group, workers=self.workers),
            multiplicative_unitary(pair.pairing, workers=self.workers).report,
        ]

    def _yd(self) -> list[VerificationReport]:
        inst, w = self.instance, self.workers
        measured = inst.measured
        y = measured.yd
        structure = check_yd(y, workers=w)
        reports = [inst.report, structure, check_yd_integral(measured, workers=w)]
        if not structure.passed:
            return reports
        left = right_measured_to_left(measured)
        reports += [
            canonical_automorphisms(y, mu=measured.mu, verified=True, workers=w).report,
            check_left_yd(left.yd, workers=w),
            check_left_yd_integral(left, workers=w),
            dual_conjugate_involution_report(measured, workers=w),
        ]
        return reports

    def _algebroid(self) -> list[VerificationReport]:
        a, w = self.algebroid, self.workers
        reports = [
            verify_mmha(a, exhaustive=self.exhaustive, workers=w),
            single_check(
                a.label,
                "unimodular",
                "φ = ψ",
                None if unimodular(a) else failure("total integrals φ and ψ differ"),
            ),
            mmha_modular_data(a, workers=w).report,
            is_kac(a, workers=w).report,
            check_mmha_morphism(unit_morphism(a, workers=w), workers=w),
        ]
        if self.instance.action is not None:
            tables = closed_form_tables(self.instance.action)
            reports.append(closed_form_report(a, tables, workers=w))
        return reports

    def _variants(self) -> list[VerificationReport]:
        a, w = self.algebroid, self.workers
        v = variants(a)
        reports = [
            verify_mmha(v.co, exhaustive=self.exhaustive, workers=w),
            verify_mmha(v.op, exhaustive=self.exhaustive, workers=w),
            verify_mmha(v.opco, exhaustive=self.exhaustive, workers=w),
        ]
        twice = coopposite(coopposite(a))
        reports.append(
            single_check(
                a.label,
                "co_co_is_identity",
                "(𝒜^co)^co = 𝒜",
                None if same_mmha(twice, a) else failure("co applied twice changes the algebroid"),
            )
        )
        return reports

    def _left(self) -> list[VerificationReport]:
        identification = left_identification(
            right_measured_to_left(self.instance.measured), workers=self.workers
        )
        return [
            identification.report,
            verify_mmha(identification.left, exhaustive=self.exhaustive, workers=self.workers),
        ]

    def _dual(self) -> list[VerificationReport]:
        model, w = self.dual_model, self.workers
        reports = [model.report, duality_pairing(self.algebroid, model, workers=w).report]
        if self.instance.action is not None:
            reports.append(dual_presentation_report(self.instance.action, model, workers=w))
        return reports

    def _bidual(self) -> list[VerificationReport]:
        return [biduality_check(self.algebroid, self.dual_model, workers=self.workers)]

    def _heisenberg(self) -> list[VerificationReport]:
        coideal = self.instance.coideal
        if coideal is None:
            return []
        identification = heisenberg_identification(
            self.instance.measured, coideal.inclusion, self.dual_model, workers=self.workers
        )
        return [identification.report]


def run_pipeline(
    name: str,
    *,
    stages: Sequence[Stage] | None = None,
    exhaustive: bool | None = None,
    workers: int | None = None,
) -> PipelineRun:
    """Build catalog instance ``name`` and run its stages."""
    entry = get_entry(name)
    instance = entry.build(workers)
    run = PipelineRun(instance, exhaustive, workers).run(stages or entry.stages)
    logger.info(
        "run_pipeline event=completed instance=%s reports=%d passed=%s",
        name,
        len(run.reports),
        run.passed,
    )
    return run
