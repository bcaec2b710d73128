"""Optical geodesics and the homogenized metric of a two-valued chessboard medium."""

from .errors import CoverageError, DomainError, OracleResourceError, UnsupportedRegimeError
from .geodesic import GeodesicResult, LightVertex, geodesic_to_light_vertex, oracle_geodesic, tilde_beta
from .homog import FinslerMetric, UnitBall, phi, phi_estimate, phi_on_cone, unit_ball
from .normlen import CriticalTable, beta_c, delta, k_c, norm_len, t_zero
from .oracle import oracle_distance, oracle_path
from .snell import SnellSolution, StripSpec, snell_length, snell_partials, solve_sigma

__all__ = [
    "CoverageError",
    "CriticalTable",
    "DomainError",
    "FinslerMetric",
    "GeodesicResult",
    "LightVertex",
    "OracleResourceError",
    "SnellSolution",
    "StripSpec",
    "UnitBall",
    "UnsupportedRegimeError",
    "beta_c",
    "delta",
    "geodesic_to_light_vertex",
    "k_c",
    "norm_len",
    "oracle_distance",
    "oracle_geodesic",
    "oracle_path",
    "phi",
    "phi_estimate",
    "phi_on_cone",
    "snell_length",
    "snell_partials",
    "solve_sigma",
    "t_zero",
    "tilde_beta",
    "unit_ball",
]
