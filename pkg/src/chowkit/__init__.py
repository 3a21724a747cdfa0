"""Exact Chow forms, graph pushforwards and effective finiteness bounds."""

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    GeometryInputs,
    HugeInt,
    Delta,
    chow_complexity,
    delta,
    delta_iter,
    delta_prime,
    embedding_bounds,
    graph_degree_bound,
    map_degree_bounds,
    total_bound,
)
from .chow import (
    ChowForm,
    Cycle,
    CycleComponent,
    chow_form_component,
    chow_form_cycle,
    chow_membership_equations,
    degree_by_sections,
    meets,
    phi,
)
from .errors import (
    ChowkitError,
    DeadlineExceeded,
    NotPrincipal,
    ParseError,
    PreconditionError,
    UnstableCount,
)
from .graphs import GraphCycle, compose, dth_root, pushforward_chow, second_degree
from .groebner import Deadline, GroebnerBasis, IdealGens, buchberger, eliminate, in_ideal, principal_generator, reduce
from .poly import MonomialOrder, Poly, VariableSpace, format_poly, normalize_primitive, parse_poly

__version__ = "0.1.0"
