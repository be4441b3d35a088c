"""Growth-rate estimates from finite orbit samples.

All estimators fit a least-squares line to a log-count against a threshold
``T`` on a window of thresholds.  Two counting modes exist:

* ``cumulative``: ``log W(T)`` with ``W(T)`` the (weighted) count of samples
  whose value is ``<= T``;
* ``shell``: ``log (W(T + width) - W(T))``, the count in a thin shell.  Both
  have the same exponential rate; the shell version is free of the constant
  offset that slows convergence of the cumulative fit when the weights decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import InsufficientDataError, ParameterError, PreconditionError
from ..root_system import ChamberVector, Functional, RootSystem
from .ball import OrbitSample, chamber_matrix

MIN_WINDOW_SAMPLES = 30
DEFAULT_WINDOW_FRACTION = 0.6
DEFAULT_GRID_POINTS = 200
DEFAULT_SHELL_WIDTH = 0.5
ESTIMATORS = ("cumulative", "shell")


def sentinel(x: float):
    """JSON-safe value: infinities become explicit strings."""
    if x == math.inf:
        return "+infinity"
    if x == -math.inf:
        return "-infinity"
    return float(x)


@dataclass(frozen=True)
class GrowthEstimate:
    quantity: str                      # delta | delta_prime | psi_directional
    value: float                       # may be -inf (empty cone)
    fit_window: tuple[float, float]
    fit_residual: float
    sample_count: int
    estimator: str = "cumulative"
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": sentinel(self.value),
            "fit_window": [float(self.fit_window[0]), float(self.fit_window[1])],
            "fit_residual": sentinel(self.fit_residual),
            "sample_count": int(self.sample_count),
            "estimator": self.estimator,
            "params": self.params,
        }


def default_window(values: np.ndarray, fraction: float = DEFAULT_WINDOW_FRACTION) -> tuple[float, float]:
    """The top ``fraction`` of the observed range of ``values``."""
    if values.size == 0:
        raise InsufficientDataError("no samples")
    lo, hi = float(values.min()), float(values.max())
    return hi - fraction * (hi - lo), hi


def _slope_fit(values: np.ndarray, weights: np.ndarray, window: tuple[float, float],
               estimator: str, grid_points: int, shell_width: float) -> tuple[float, float]:
    lo, hi = window
    order = np.argsort(values, kind="stable")
    v = values[order]
    cum = np.concatenate([[0.0], np.cumsum(weights[order])])

    def W(t):
        return cum[np.searchsorted(v, t, side="right")]

    if estimator == "cumulative":
        ts = np.linspace(lo, hi, grid_points)
        ys = W(ts)
    elif estimator == "shell":
        if not hi - shell_width > lo:
            raise ParameterError("fit window is narrower than the shell width")
        ts = np.linspace(lo, hi - shell_width, grid_points)
        ys = W(ts + shell_width) - W(ts)
    else:
        raise ParameterError(f"unknown estimator {estimator!r}; expected one of {ESTIMATORS}")
    keep = ys > 0
    if keep.sum() < max(2, grid_points // 2):
        raise InsufficientDataError("too many empty grid points in the fit window")
    x, y = ts[keep], np.log(ys[keep])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), resid


def _window(values, fit_window):
    if fit_window is None:
        return default_window(values)
    lo, hi = float(fit_window[0]), float(fit_window[1])
    if not hi > lo:
        raise ParameterError(f"fit window must have T_min < T_max, got {fit_window}")
    return lo, hi


def _count_in(values, window) -> int:
    return int(np.count_nonzero((values > window[0]) & (values <= window[1])))


def critical_exponent(samples: Sequence[OrbitSample], rs: RootSystem, mu: Functional,
                      modified: bool = False, fit_window=None, estimator: str = "cumulative",
                      grid_points: int = DEFAULT_GRID_POINTS,
                      shell_width: float = DEFAULT_SHELL_WIDTH) -> GrowthEstimate:
    """Exponential rate of ``#{mu(mu_+) <= T}`` (or its ``e^-rho``-weighted sum if modified)."""
    if not rs.is_dominant(mu) or mu.is_zero():
        raise PreconditionError("critical_exponent needs a dominant nonzero mu")
    H = chamber_matrix(samples, rs)
    t = H @ mu.std_coords
    weights = np.exp(-(H @ rs.rho.std_coords)) if modified else np.ones(len(samples))
    window = _window(t, fit_window)
    n = _count_in(t, window)
    if n < MIN_WINDOW_SAMPLES:
        raise InsufficientDataError(f"only {n} samples in fit window {window}")
    slope, resid = _slope_fit(t, weights, window, estimator, grid_points, shell_width)
    params = {"mu": mu.std_coords.tolist()}
    if np.any(mu.root_coords <= 1e-14):
        params["warning"] = "mu vanishes on a chamber wall; the count need not be finite"
    return GrowthEstimate("delta_prime" if modified else "delta", slope, window, resid, n,
                          estimator, params)


def directional_growth(samples: Sequence[OrbitSample], rs: RootSystem, direction,
                       aperture: float, fit_window=None, estimator: str = "cumulative",
                       grid_points: int = DEFAULT_GRID_POINTS,
                       shell_width: float = DEFAULT_SHELL_WIDTH) -> GrowthEstimate:
    """Rate of ``#{mu_+ in cone(u, aperture), |mu_+| <= T}``; ``-inf`` for an empty cone."""
    u = direction.coords if isinstance(direction, ChamberVector) else np.asarray(direction, float)
    if u.shape != (rs.rank,):
        raise ParameterError(f"direction must have {rs.rank} coordinates")
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise PreconditionError("direction must be a unit vector")
    if not rs.in_closed_chamber(u):
        raise PreconditionError("direction must lie in the closed chamber")
    if not aperture > 0:
        raise ParameterError("aperture must be positive")
    H = chamber_matrix(samples, rs)
    r = np.linalg.norm(H, axis=1)
    nz = r > 1e-12
    cosang = np.full(len(samples), -1.0)
    cosang[nz] = (H[nz] @ u) / r[nz]
    inside = nz & (cosang >= math.cos(aperture))
    vals = r[inside]
    params = {"direction": u.tolist(), "aperture": float(aperture)}
    if fit_window is None:
        window = default_window(vals) if vals.size else (0.0, 0.0)
    else:
        window = _window(vals, fit_window)
    n = _count_in(vals, window) if vals.size else 0
    if n == 0:
        return GrowthEstimate("psi_directional", -math.inf, window, 0.0, 0, estimator, params)
    if n < MIN_WINDOW_SAMPLES:
        raise InsufficientDataError(f"only {n} samples in cone within window {window}")
    slope, resid = _slope_fit(vals, np.ones(vals.size), window, estimator, grid_points, shell_width)
    return GrowthEstimate("psi_directional", slope, window, resid, n, estimator, params)


@dataclass(frozen=True)
class LimitConeStats:
    directions: tuple[ChamberVector, ...]
    min_wall_distance: float
    sample_count: int
    radius_threshold: float

    def to_json(self) -> dict:
        return {
            "directions": [d.coords.tolist() for d in self.directions],
            "min_wall_distance": float(self.min_wall_distance),
            "sample_count": self.sample_count,
            "radius_threshold": self.radius_threshold,
        }


def limit_cone_stats(samples: Sequence[OrbitSample], rs: RootSystem,
                     radius_threshold: float) -> LimitConeStats:
    """Unit directions of large Cartan projections and their distance to the walls.

    ``min_wall_distance`` is ``min over directions of min_i alpha_i(dir)``, a
    finite-sample proxy for whether the limit cone avoids the chamber walls.
    """
    if not radius_threshold > 0:
        raise ParameterError("radius_threshold must be positive")
    H = chamber_matrix(samples, rs)
    r = np.linalg.norm(H, axis=1)
    big = r >= radius_threshold
    if not np.any(big):
        raise InsufficientDataError(f"no samples with |mu_+| >= {radius_threshold}")
    dirs = H[big] / r[big][:, None]
    uniq: dict = {}
    for d in dirs:
        uniq.setdefault(tuple(np.round(d, 9) + 0.0), d)
    keys = sorted(uniq)
    directions = tuple(ChamberVector(uniq[k]) for k in keys)
    wall = float(min(np.min(rs.simple_roots @ d.coords) for d in directions))
    return LimitConeStats(directions, max(wall, 0.0) if wall > -1e-12 else wall,
                          int(big.sum()), float(radius_threshold))
