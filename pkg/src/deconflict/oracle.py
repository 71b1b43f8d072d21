"""Brute-force separation oracle: time-stepped sampling, no closed forms.

This is the independent check against which the analytic solvers are tested.
It only ever evaluates inter-agent distance at sampled instants (optionally
polishing the sampled minimum by local search), so it shares no code path
with the vertex/root analysis in kinematics.
"""

import numpy as np

from . import _kernels
from .kinematics import Mission, mission_row, missions_array


def sampled_min_separation_sq(a: Mission, t_dep_a: float,
                              b: Mission, t_dep_b: float,
                              dt: float, refine: bool = False) -> float:
    """Min squared co-airborne distance by sampling at step dt.

    Plain sampling overestimates the true minimum by at most the grid gap;
    refine=True polishes the argmin neighborhood by ternary search, which
    makes the estimate essentially exact for these quadratic-in-time gaps.
    Returns inf when the airborne windows do not overlap.
    """
    ar = mission_row(a)
    br = mission_row(b)
    return float(_kernels.sampled_pair_min_sep_sq(
        ar[0], ar[1], ar[2], ar[3], ar[4], t_dep_a,
        br[0], br[1], br[2], br[3], br[4], t_dep_b, dt, refine))


def sampled_min_separation(a: Mission, t_dep_a: float,
                           b: Mission, t_dep_b: float,
                           dt: float, refine: bool = False) -> float:
    d = sampled_min_separation_sq(a, t_dep_a, b, t_dep_b, dt, refine)
    return float(np.sqrt(d))


def delta_grid_min_sep_sq(first: Mission, second: Mission,
                          deltas: np.ndarray, dt: float,
                          refine: bool = True) -> np.ndarray:
    """Oracle min separation squared for each relative delay in `deltas`."""
    fr = mission_row(first)
    sr = mission_row(second)
    return np.asarray(_kernels.sampled_delta_grid(
        fr[0], fr[1], fr[2], fr[3], fr[4],
        sr[0], sr[1], sr[2], sr[3], sr[4],
        np.asarray(deltas, dtype=np.float64), dt, refine))


def schedule_pair_min_seps(missions, departures, dt: float,
                           refine: bool = False) -> np.ndarray:
    """Per-pair sampled min separation (meters) for a full schedule.

    Output is row-major over pairs i<j in mission-list order.
    """
    marr = missions_array(missions)
    deps = np.asarray(departures, dtype=np.float64)
    d = _kernels.schedule_pair_min_seps(marr, deps, dt, refine)
    return np.sqrt(np.asarray(d))


def schedule_is_safe(missions, departures, h: float, dt: float,
                     slack: float = 1e-3) -> bool:
    """True when every co-airborne pair keeps separation >= h - slack."""
    if len(missions) < 2:
        return True
    seps = schedule_pair_min_seps(missions, departures, dt)
    return bool(np.all(seps >= h - slack))
