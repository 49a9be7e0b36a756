"""Worked instances at finite scale: groups, transformation groupoids, bundles and coideals."""

from .bundle import (
    GradedAlgebraData,
    bundle_from_spec,
    bundle_gamma_report,
    central_extension_bundle,
    check_graded,
    degenerate_bundle,
    graded_bundle_yd,
    load_bundle,
)
from .fixtures import (
    closed_form_report,
    closed_form_tables,
    convolution_algebra,
    dual_presentation_report,
    reference_tables,
)
from .groups import (
    GROUP_NAMES,
    GroupAQGPair,
    GroupData,
    function_algebra,
    group_algebra,
    group_aqg_pair,
    group_from_spec,
    load_group,
    resolve_group,
    trivial_group,
    validate_group,
)
from .quotient import (
    QuotientCoideal,
    canonical_yd,
    check_quotient_map,
    coideal_yd,
    coset_indicators,
    fixed_space,
    load_quotient,
    quotient_coideal_yd,
    restriction_map,
)
from .registry import (
    CATALOG,
    FULL_PIPELINE,
    HEISENBERG_PIPELINE,
    CatalogEntry,
    CatalogInstance,
    PipelineRun,
    build_instance,
    get_entry,
    instance_from_document,
    list_instances,
    run_pipeline,
)
from .transformation import (
    ActionData,
    IntegralCone,
    action_from_spec,
    coset_action,
    integral_cone,
    load_action,
    point_algebra,
    transformation_groupoid_yd,
    transformation_integral_cone,
    validate_action,
)

__all__ = [
    "CATALOG",
    "FULL_PIPELINE",
    "GROUP_NAMES",
    "HEISENBERG_PIPELINE",
    "ActionData",
    "CatalogEntry",
    "CatalogInstance",
    "GradedAlgebraData",
    "GroupAQGPair",
    "GroupData",
    "IntegralCone",
    "PipelineRun",
    "QuotientCoideal",
    "action_from_spec",
    "build_instance",
    "bundle_from_spec",
    "bundle_gamma_report",
    "canonical_yd",
    "central_extension_bundle",
    "check_graded",
    "check_quotient_map",
    "closed_form_report",
    "closed_form_tables",
    "coideal_yd",
    "convolution_algebra",
    "coset_action",
    "coset_indicators",
    "degenerate_bundle",
    "dual_presentation_report",
    "fixed_space",
    "function_algebra",
    "get_entry",
    "graded_bundle_yd",
    "group_algebra",
    "group_aqg_pair",
    "group_from_spec",
    "instance_from_document",
    "integral_cone",
    "list_instances",
    "load_action",
    "load_bundle",
    "load_group",
    "load_quotient",
    "point_algebra",
    "quotient_coideal_yd",
    "reference_tables",
    "resolve_group",
    "restriction_map",
    "run_pipeline",
    "transformation_groupoid_yd",
    "transformation_integral_cone",
    "trivial_group",
    "validate_action",
    "validate_group",
]
