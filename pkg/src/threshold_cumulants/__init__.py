"""Exact cumulants of the Schensted insertion threshold for random Poissonized tableaux."""

from threshold_cumulants.diagrams import (
    InterlacingSequence,
    TransitionMeasure,
    YoungDiagram,
    cauchy_transform,
    corner_profile,
    count_syt,
    falling_cauchy,
    g_plus,
    perturb,
    transition_measure,
)
from threshold_cumulants.rational import Rational, format_rational, parse_rational

__all__ = [
    "InterlacingSequence",
    "Rational",
    "TransitionMeasure",
    "YoungDiagram",
    "cauchy_transform",
    "corner_profile",
    "count_syt",
    "falling_cauchy",
    "format_rational",
    "g_plus",
    "parse_rational",
    "perturb",
    "transition_measure",
]

__version__ = "0.1.0"
