"""Revan-degree and degree-based topological indices on random-graph ensembles."""

__version__ = "0.1.0"

from .errors import DomainError, FormatError, GraphError, ParameterError, RevanError, UsageError
from .graph import (
    DegreeProfile,
    Graph,
    complete_graph,
    cycle_graph,
    degree_profile,
    empty_graph,
    path_graph,
    read_edge_list,
    revan_involution_check,
    star_graph,
    write_edge_list,
)
from .models import ErSpec, RgSpec, SeedSpec, generate, generate_er, generate_rg
from .indices import (
    ALL_KINDS,
    Family,
    Form,
    IndexKind,
    IndexReport,
    Variant,
    edge_functional_log_product,
    edge_functional_sum,
    full_report,
)
from .ensemble import EnsembleSpec, EnsembleStats, merge, run_ensemble
from .dense_limit import (
    Prediction,
    ScalingCurve,
    collapse_deviation,
    predict,
    predict_log_product,
    predict_sum,
    prediction_deviation,
)
