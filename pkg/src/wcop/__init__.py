"""Hyperexpansivity of weighted composition operators on discrete L^2 spaces."""

__version__ = "0.1.0"

from .space import (  # noqa: E402
    AtomSet,
    Constant,
    FiniteSpace,
    Geometric,
    GeometricTailSpace,
    ShiftDown,
    ShiftUp,
    WeightedSystem,
    fiber,
    finite_system,
    mu_total,
    mu_u_total,
    nu_weights,
    tail_system,
    validate,
)
from .calculus import (  # noqa: E402
    JTable,
    cocycle,
    completely_alternating,
    conditional_expectation,
    delta,
    j_table,
    radon_nikodym,
)
from .geopoly import AtomFunction, GeoPoly, geopoly_sign  # noqa: E402
from .classify import (  # noqa: E402
    ClassificationReport,
    audit_two_expansive,
    classify,
    densely_defined,
    domain_invariance,
    expansivity,
)
