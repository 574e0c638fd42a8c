"""Exact lag-1 analytics, Taylor-property regions and simulation for the
simple bilinear model ``X_t = beta X_{t-k} eps_{t-k} + eps_t``."""

from .errors import (
    BilinearError,
    DegenerateError,
    DomainError,
    NumericalError,
    PoleError,
    SimulationOverflowError,
    StationarityError,
    UnresolvedBracketError,
)
from .innovations import CATALOG, Family, InnovationSpec, MomentVector, from_name, make_rng, raw_moments, sample
from .lag1 import CrossMoments, Lag1Report, cross_moments, lag1_curves, lag1_report
from .moments import ModelSpec, MomentTable, StationarityReport, check_stationarity, moment_table, x_moments, xeps_moments
from .montecarlo import (
    ReplicationReport,
    SimConfig,
    replication_experiment,
    sample_acf1,
    simulate_path,
    symmetric_k2_check,
    table1,
)
from .region import TaylorRegion, find_regions, sweep_delta

__version__ = "0.1.0"
