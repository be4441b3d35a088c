"""Polyhedral norms and Weyl-invariant polytopes ``conv(W mu)``.

For dominant ``mu`` the polytope ``conv(W mu)`` meets the closed dominant cone
in ``{lam : c_i(lam) <= c_i(mu)}``, where ``c_i`` are simple-root coordinates.
That turns the gauge of the polytope into a closed form,

    ||lam||_{poly, mu} = max_i c_i(lam_dom) / c_i(mu),

and intersections of such polytopes into componentwise minima of ``c_i``.
An independent orbit-times-coweight evaluation is kept as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError, PreconditionError
from .root_system import (
    Functional,
    RootSystem,
    WeylGroup,
    dominant_root_coords,
    is_hermitian_dominant,
    opposition_involution,
)

MEMBERSHIP_BAND = 1e-10
_ZERO_CAP = 1e-14


@dataclass(frozen=True, eq=False)
class PolyBound:
    """A certified inclusion ``Re spectrum <= theta * conv(W mu)``."""

    mu: Functional
    theta: float

    def __post_init__(self):
        if not self.theta >= 0:
            raise ParameterError(f"PolyBound theta must be >= 0, got {self.theta}")


@dataclass(frozen=True, eq=False)
class HullDescription:
    vertices: tuple[Functional, ...]
    facet_form: np.ndarray  # c_i(mu), caps valid on the dominant cone

    def to_csv(self) -> str:
        lines = ["vertex," + ",".join(f"x{i + 1}" for i in range(self.facet_form.size))]
        for j, v in enumerate(self.vertices):
            lines.append(f"{j}," + ",".join(_fmt_float(x) for x in v.std_coords))
        return "\n".join(lines) + "\n"


def _fmt_float(x: float) -> str:
    x = float(x) + 0.0
    return repr(round(x, 12) + 0.0)


def _check_mu(rs: RootSystem, mu: Functional) -> None:
    if mu.is_zero():
        raise ParameterError("polyhedral norm needs mu != 0")
    if not rs.is_dominant(mu):
        raise PreconditionError("mu must be dominant")


def _ratio_max(num: np.ndarray, den: np.ndarray) -> float:
    """``max_i num_i / den_i`` where zero caps are +inf if exceeded, else ignored."""
    best = -math.inf
    for a, b in zip(num.tolist(), den.tolist()):
        if b > _ZERO_CAP:
            best = max(best, a / b)
        elif a > _ZERO_CAP:
            return math.inf
    return max(best, 0.0)


def poly_norm(rs: RootSystem, w: WeylGroup, lam: Functional, mu: Functional) -> float:
    """Gauge of ``conv(W mu)`` at ``lam``; ``math.inf`` for degenerate caps."""
    _check_mu(rs, mu)
    return _ratio_max(dominant_root_coords(rs, lam), mu.root_coords)


def poly_norm_oracle(rs: RootSystem, w: WeylGroup, lam: Functional, mu: Functional) -> float:
    """Brute-force ``sup_{w, H} (w lam)(H) / mu(H)`` over coweight rays ``H``.

    The sup of a linear-fractional function over the closed chamber is taken
    on one of its extreme rays, so evaluating the whole Weyl orbit of ``lam``
    on each coweight ``h_i`` is exact.
    """
    _check_mu(rs, mu)
    orbit = w.orbit_array(lam.std_coords)            # (|W|, r)
    num = orbit @ rs.coweights.T                      # (|W|, r): (w lam)(h_i)
    den = rs.coweights @ mu.std_coords                # mu(h_i)
    best = 0.0
    for i in range(rs.rank):
        top = float(num[:, i].max())
        if den[i] > _ZERO_CAP:
            best = max(best, top / den[i])
        elif top > _ZERO_CAP:
            return math.inf
    return best


def hull(rs: RootSystem, w: WeylGroup, mu: Functional) -> HullDescription:
    if not rs.is_dominant(mu):
        raise PreconditionError("hull expects a dominant functional")
    return HullDescription(tuple(w.orbit(mu, rs)), np.array(mu.root_coords))


def membership(rs: RootSystem, w: WeylGroup, lam: Functional, mu: Functional,
               band: float = MEMBERSHIP_BAND) -> bool:
    """Whether ``lam`` lies in ``conv(W mu)`` (inclusive band)."""
    return poly_norm(rs, w, lam, mu) <= 1.0 + band


def intersect(rs: RootSystem, family: Sequence[Functional]) -> Functional:
    """The dominant ``mu_S`` with ``conv(W mu_S) = intersection of conv(W mu)``."""
    family = list(family)
    if not family:
        raise ParameterError("intersect needs a nonempty family")
    for mu in family:
        if not rs.is_dominant(mu):
            raise PreconditionError("intersect expects dominant functionals")
    caps = np.min(np.array([mu.root_coords for mu in family]), axis=0)
    return rs.from_root_coords(caps)


def optimal_polyhedron(rs: RootSystem, bounds: Sequence[PolyBound],
                       w: WeylGroup | None = None) -> tuple[Functional, bool]:
    """Intersect ``{theta_j * mu_j}``; also report whether the result is iota-fixed.

    Bounds with infinite theta carry no information and are skipped.
    """
    bounds = [b for b in bounds if math.isfinite(b.theta)]
    if not bounds:
        raise ParameterError("optimal_polyhedron needs at least one finite bound")
    mu_gamma = intersect(rs, [b.theta * b.mu for b in bounds])
    w = w or rs.weyl
    return mu_gamma, is_hermitian_dominant(rs, w, mu_gamma)


def iota_symmetric(rs: RootSystem, w: WeylGroup, bounds: Sequence[PolyBound]) -> bool:
    """Whether a bound family is closed under the opposition involution."""
    pts = [b.theta * b.mu for b in bounds if math.isfinite(b.theta)]
    for p in pts:
        q = opposition_involution(rs, w, p)
        if not any(q.isclose(r, 1e-9) for r in pts):
            return False
    return True
