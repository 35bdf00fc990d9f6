"""Geodesics on learned Riemannian manifolds by fixed-point iteration.

A geodesic between two points is found by representing the curve as a
GP posterior mean conditioned on boundary positions and knot
accelerations, then iterating the geodesic equation's right-hand side into
the acceleration parameters until the curve satisfies the equation.  No
Jacobians of the residual map are ever formed.

Public surface: metric fields (data-driven, pullback, constant), the
boundary-value solver, exponential/logarithm maps and lengths, toy
datasets, and brute-force verification oracles.
"""

from ._core import BACKEND
from .datasets import (
    Dataset,
    embed_orthogonal,
    gen_curly,
    gen_semicircle,
    gen_sphere,
    gen_two_moons,
    load_dataset_csv,
    save_dataset_csv,
    standardize,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    pairwise_distances,
    run_experiment,
)
from .geodesic_ode import (
    DiagonalMetricField,
    MetricError,
    MetricField,
    geodesic_rhs,
    geodesic_rhs_diagonal,
)
from .kernel_gp import (
    GeodesicModel,
    GramFactorizationError,
    KernelParams,
    Mesh,
    build_gram,
    eval_curve,
    posterior_weights,
    se_kernel_deriv,
)
from .maps import (
    IntegrationError,
    IvpTrajectory,
    ParametricCurve,
    StraightLine,
    curve_length,
    distance,
    expmap,
    logmap,
    speed_profile,
)
from .metrics import (
    ConstantMetric,
    LocalDiagMetric,
    MLPGenerator,
    PullbackMetric,
    QuadraticGenerator,
    save_generator_json,
)
from .oracle import (
    DisconnectedGraphError,
    GraphSpec,
    oracle_energy_minimize,
    oracle_graph_distance,
    polyline_length,
)
from .solver import (
    SolveReport,
    SolverConfig,
    fixed_point_step,
    residuals,
    solve_bvp,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # curve model
    "Mesh", "KernelParams", "GeodesicModel", "GramFactorizationError",
    "se_kernel_deriv", "build_gram", "posterior_weights", "eval_curve",
    # geodesic equation
    "MetricField", "DiagonalMetricField", "MetricError",
    "geodesic_rhs", "geodesic_rhs_diagonal",
    # metrics
    "LocalDiagMetric", "ConstantMetric", "PullbackMetric",
    "QuadraticGenerator", "MLPGenerator", "save_generator_json",
    # solver
    "SolverConfig", "SolveReport", "solve_bvp", "residuals", "fixed_point_step",
    # maps
    "curve_length", "speed_profile", "expmap", "logmap", "distance",
    "IvpTrajectory", "IntegrationError", "StraightLine", "ParametricCurve",
    # datasets
    "Dataset", "standardize", "gen_semicircle", "gen_curly", "gen_two_moons",
    "gen_sphere", "embed_orthogonal", "save_dataset_csv", "load_dataset_csv",
    # oracles
    "oracle_energy_minimize", "oracle_graph_distance", "GraphSpec",
    "DisconnectedGraphError", "polyline_length",
    # experiments
    "ExperimentConfig", "ConfigError", "run_experiment", "pairwise_distances",
]
