"""Filtered Ogus structures over Q: exact Hom, Ext and purity computations."""

from ._fogus import (
    Cocycle,
    Complex,
    Extension,
    FogusError,
    Object,
    ParseError,
    WeightViolation,
    baer_sum,
    build_extension,
    check_purity,
    delta,
    direct_sum,
    ext1_rank,
    ext_rank,
    extract_class,
    hom,
    internal_hom,
    is_coboundary,
    is_pure,
    kill_cocycle,
    suite_names,
    tate,
    twist,
    verify,
    xi,
)

__all__ = [
    "Cocycle",
    "Complex",
    "Extension",
    "FogusError",
    "Object",
    "ParseError",
    "WeightViolation",
    "baer_sum",
    "build_extension",
    "check_purity",
    "delta",
    "direct_sum",
    "ext1_rank",
    "ext_rank",
    "extract_class",
    "hom",
    "internal_hom",
    "is_coboundary",
    "is_pure",
    "kill_cocycle",
    "suite_names",
    "tate",
    "twist",
    "verify",
    "xi",
]
