"""Conflict-free departure scheduling for constant-velocity planar flights.

Pairwise conflicts are resolved analytically: for any ordered mission pair
the set of relative departure delays violating the separation radius is one
open interval, found in closed form and refined against the finite flight
windows. A greedy pass assigns each flight the earliest feasible departure
for a fixed order; exhaustive order search minimizes total delay; a seeded
Monte Carlo harness and distribution fitting characterize delay statistics
across traffic densities.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (DeconflictError, DegenerateRelativeVelocity,
                     DegenerateSamples, EmptyFeasibleSet, FitDomainError,
                     NonConvergence, OutOfProjectionRange,
                     ScenarioFormatError, TooManyAgents,
                     TopologyRejectionExhausted, UnknownId, UnresolvablePair)
from .geo import GeoPoint, haversine_m, minutes_to_seconds, mph_to_mps, project, unproject
from .kinematics import (ForbiddenInterval, IntervalKind, Mission,
                         RelativeState, SeparationConfig, Vec2, cpa_time,
                         forbidden_interval, min_separation_sq, relative_state)
from .optimizer import (OrderResult, SearchResult, average_delay,
                        optimize_order, per_order_table)
from .scenario import (AirspaceConfig, DelaySample, MonteCarloResult,
                       generate_topology, run_monte_carlo)
from .scheduler import (IntervalSet, Schedule, default_horizon, earliest,
                        greedy_schedule, interval_subtract)
from .statfit import (DistributionFamily, FitResult, Histogram, fit,
                      fit_report, make_histogram, pdf, select_best)

__version__ = "0.1.0"
