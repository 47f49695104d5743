"""Persistence diagrams over metric pairs."""

from ._core import (
    CoverageGap,
    Diagram,
    EmptyAnnulus,
    Error,
    InvalidSpace,
    NoGeodesicOracle,
    NoProjection,
    NotCauchy,
    NotProper,
    ParseError,
    PreconditionViolated,
    Space,
    SpaceMismatch,
    TooLarge,
    approximate_half_line,
    bottleneck,
    brute_force,
    c0_gap,
    cauchy_chain_limit,
    geodesic,
    isolated_point_bound,
    midpoint_check,
    parse_diagram,
    run_cli,
    separability_adversary,
    total_persistence,
    wasserstein,
    write_diagram,
)

__all__ = [name for name in dir() if not name.startswith("_")]
