"""From growth data to spectral conclusions.

Given the modified critical exponent ``delta'(mu)`` (either a closed form or
an orbit estimate) this module derives

* ``theta(mu) = max(0, delta'(mu))``, exact for Hermitian ``mu`` and a lower
  bound otherwise;
* temperedness (``delta'(rho) <= 0``), the almost-L^p range and the interval
  containing the bottom of the Laplace spectrum;
* the reference closed forms for products of rank-one groups, the A2 family
  and SO_0(2, n) with a lattice of SO_0(1, n).

Metric-dependent numbers (``|rho|^2``) use the preset's Euclidean metric,
multiplied by ``metric_scale^2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import NotAvailableError, ParameterError, PreconditionError
from .polyhedra import intersect
from .root_system import (
    Functional,
    RootSystem,
    WeylGroup,
    build_root_system,
    is_hermitian_dominant,
    limit_cone_theorem_applicable,
    product_a1,
    B2,
)

LIMIT_CONE_VERDICTS = ("applicable_tempered", "not_applicable", "hypothesis_unmet", "inconclusive")
DEFAULT_WALL_MARGIN = 1e-2
WALL_ZERO_TOL = 1e-9

ZARISKI_CAVEAT = "Valid for Zariski-dense subgroups only; density is assumed, not checked."
ESTIMATE_CAVEAT = "Estimated from a finite orbit sample; the verdict is heuristic, not a proof."
EIGENVALUE_NOTE = "Eigenvalues are not separated from continuous spectrum."
NORM_EXPONENT_NOTE = "No bottom formula based on a norm-type critical exponent is evaluated."


def _sentinel(x: float):
    if x == math.inf:
        return "+infinity"
    if x == -math.inf:
        return "-infinity"
    return float(x)


# -- theta, temperedness, L^p, Laplace bottom ---------------------------------------

def theta_from_delta_prime(rs: RootSystem, w: WeylGroup, mu: Functional,
                           delta_prime: float) -> tuple[float, bool]:
    """``(max(0, delta'), hermitian)``; without the flag the value is only a lower bound."""
    if mu.is_zero():
        raise ParameterError("theta needs mu != 0")
    flag = is_hermitian_dominant(rs, w, mu)
    return max(0.0, float(delta_prime)), flag


def p_upper_bound(theta_rho: float) -> float:
    """``2 / (1 - theta)``, or ``inf`` when ``theta >= 1``."""
    if theta_rho >= 1.0:
        return math.inf
    return 2.0 / (1.0 - theta_rho)


def p_strict_lower_bound(theta_rho: float) -> float:
    """Largest ``q`` with ``p > q`` forced by ``2/(1 - theta) <= 2 ceil(p/2)``.

    Returns 0 when nothing beyond ``p >= 2`` follows, ``inf`` for ``theta >= 1``.
    """
    if theta_rho >= 1.0:
        return math.inf
    k = math.ceil(1.0 / (1.0 - theta_rho) - 1e-12)
    return 2.0 * (k - 1)


def rank_one_bottom(delta: float, rho: float) -> float:
    """``rho^2`` if ``delta <= rho``, else ``rho^2 - (delta - rho)^2``."""
    if not delta >= 0 or not rho > 0:
        raise ParameterError("rank_one_bottom needs delta >= 0 and rho > 0")
    if delta <= rho:
        return rho * rho
    return rho * rho - (delta - rho) ** 2


def chamber_min_ratio(rs: RootSystem, mu: Functional) -> float:
    """``min over H in the closed chamber of mu(H) / |H|``, attained on a coweight ray."""
    h = rs.coweights
    return float(np.min((h @ mu.std_coords) / np.linalg.norm(h, axis=1)))


def laplace_bottom_interval(rs: RootSystem, delta_prime_mu: float, mu: Functional,
                            metric_scale: float = 1.0) -> tuple[float, float]:
    """Interval ``(lo, hi)`` known to contain ``min spec(Laplacian)``."""
    if not metric_scale > 0:
        raise ParameterError("metric_scale must be positive")
    if mu.is_zero() or not rs.is_dominant(mu):
        raise PreconditionError("laplace_bottom_interval needs a dominant nonzero mu")
    theta = max(0.0, float(delta_prime_mu))
    r2 = rs.norm(rs.rho) ** 2
    lo = r2 - theta**2 * rs.norm(mu) ** 2
    hi = r2 - theta**2 * chamber_min_ratio(rs, mu) ** 2
    s2 = metric_scale**2
    return lo * s2, hi * s2


def delta_prime_rank_one(delta: float, rho: float) -> float:
    """``delta'(rho) = (delta - rho) / rho`` for ``psi(H) = delta |H|``."""
    return (delta - rho) / rho


# -- delta' from an analytic growth indicator ---------------------------------------

def chamber_grid(rs: RootSystem, resolution: int = 10) -> np.ndarray:
    """Points ``sum t_i h_i`` with ``t`` on the simplex lattice of step ``1/resolution``.

    The coweights (the extreme rays of the chamber) are always included.
    """
    if resolution < 1:
        raise ParameterError("resolution must be >= 1")
    h = rs.coweights
    pts = []
    for combo in itertools.product(range(resolution + 1), repeat=rs.rank):
        if sum(combo) == resolution:
            pts.append(np.array(combo, dtype=float) / resolution @ h)
    return np.array(pts)


def delta_prime_from_psi(rs: RootSystem, psi: Callable[[np.ndarray], float], mu: Functional,
                         resolution: int = 100) -> float:
    """``sup_H (psi(H) - rho(H)) / mu(H)`` over a chamber grid (``-inf`` allowed)."""
    if mu.is_zero() or not rs.is_dominant(mu):
        raise PreconditionError("delta' needs a dominant nonzero mu")
    best = -math.inf
    for H in chamber_grid(rs, resolution):
        m = mu(H)
        p = psi(H)
        if p == -math.inf:
            continue
        num = p - rs.rho(H)
        if m <= 1e-14:
            if num > 1e-14:
                return math.inf
            continue
        best = max(best, num / m)
    return best


# -- A2 family ----------------------------------------------------------------------

def _require_a2(rs: RootSystem) -> None:
    if rs.preset.family != "A2_family":
        raise ParameterError(f"expected an A2_family preset, got {rs.describe()}")


def a2_boundary_point(rs: RootSystem, delta_prime_rho: float) -> Functional:
    """``max(0, delta'(rho)) * rho``, attained in the real spectrum (see ``ZARISKI_CAVEAT``)."""
    _require_a2(rs)
    return max(0.0, float(delta_prime_rho)) * rs.rho


def a2_property_t_cap(m: int) -> float:
    """Radial cap ``(2m - 1)/m`` on ``r`` in ``Re lambda = r rho``."""
    if m < 1:
        raise ParameterError("m must be positive")
    return (2 * m - 1) / m


@dataclass(frozen=True, eq=False)
class PropertyTBound:
    theta: Functional          # the functional Theta
    cap: Functional            # rho - Theta; spectrum real parts lie in conv(W cap)
    cap_description: str


def property_t_functional(rs: RootSystem) -> PropertyTBound:
    fam = rs.preset.family
    if fam == "A2_family" and rs.preset.m == 1:
        theta = 0.5 * rs.rho
        return PropertyTBound(theta, rs.rho - theta, "1/2·conv(Wρ)")
    if fam == "B2_SO2n":
        n = rs.preset.n
        theta = 0.5 * (rs.root("a1") + rs.root("a4"))
        return PropertyTBound(theta, rs.rho - theta, f"{_frac_str((n - 2) / 2)}·conv(Wα₄)")
    raise NotAvailableError(f"no Property (T) functional shipped for {rs.describe()}")


# -- products of rank-one groups -----------------------------------------------------

@dataclass(frozen=True)
class ProductReference:
    sup_norm: float
    tempered: bool
    mu_gamma: tuple[float, float]
    deltas: tuple[float, float]
    rhos: tuple[float, float]
    mu: tuple[float, float]

    def psi(self, H) -> float:
        """Growth indicator ``delta_1 |H_1| + delta_2 |H_2|`` (Zariski-dense factors)."""
        return self.deltas[0] * abs(float(H[0])) + self.deltas[1] * abs(float(H[1]))

    psi_formula = "ψ(H₁, H₂) = δ₁|H₁| + δ₂|H₂|"


def _ratio_term(num: float, den: float) -> float:
    if den > 0:
        return num / den
    return math.inf if num > 0 else -math.inf


def product_reference(deltas: Sequence[float], rhos: Sequence[float],
                      mu: Sequence[float] = (1.0, 1.0)) -> ProductReference:
    d1, d2 = (float(x) for x in deltas)
    r1, r2 = (float(x) for x in rhos)
    m1, m2 = (float(x) for x in mu)
    if d1 < 0 or d2 < 0 or r1 <= 0 or r2 <= 0:
        raise ParameterError("product_reference needs delta_i >= 0 and rho_i > 0")
    if m1 < 0 or m2 < 0 or (m1 == 0 and m2 == 0):
        raise PreconditionError("mu must be dominant and nonzero")
    sup = max(_ratio_term(d1 - r1, m1), _ratio_term(d2 - r2, m2), 0.0)
    tempered = d1 <= r1 and d2 <= r2
    return ProductReference(sup, tempered, (max(0.0, d1 - r1), max(0.0, d2 - r2)),
                            (d1, d2), (r1, r2), (m1, m2))


# -- SO_0(2, n) with an SO_0(1, n) lattice ------------------------------------------------

@dataclass(frozen=True, eq=False)
class So2nReference:
    n: int
    delta_prime: float
    mu_gamma: Functional
    psi: Callable[[np.ndarray], float]
    psi_formula: str


def so2n_psi(n: int) -> Callable[[np.ndarray], float]:
    """``(n - 1) v_1`` on the ray ``v_2 = 0``, ``-inf`` elsewhere in the chamber."""
    def psi(v) -> float:
        v1, v2 = float(v[0]), float(v[1])
        if abs(v2) <= 1e-12 * max(1.0, abs(v1)) and v1 >= 0:
            return (n - 1) * v1
        return -math.inf
    return psi


def so2n_reference(n: int, mu: Sequence[float]) -> So2nReference:
    if not isinstance(n, int) or n < 3:
        raise ParameterError("n must be an integer >= 3")
    m1, m2 = (float(x) for x in mu)
    if not (m1 >= m2 >= 0 and m1 > 0):
        raise PreconditionError("need mu_1 >= mu_2 >= 0 and mu_1 > 0")
    rs = build_root_system(B2(n))
    return So2nReference(n, (n - 2) / (2 * m1), ((n - 2) / 2) * rs.root("a3"),
                         so2n_psi(n), f"ψ(v) = {n - 1}·v₁ on v₂ = 0, -∞ elsewhere")


def so2n_mu_gamma_by_grid(n: int, steps: int = 10, resolution: int = 100) -> Functional:
    """Intersect ``{delta'(mu) mu}`` over ``mu = (1, k/steps)``, with ``delta'`` taken from psi."""
    rs = build_root_system(B2(n))
    psi = so2n_psi(n)
    fam = []
    for k in range(steps + 1):
        mu = rs.functional([1.0, k / steps])
        fam.append(delta_prime_from_psi(rs, psi, mu, resolution) * mu)
    return intersect(rs, fam)


# -- limit cone -----------------------------------------------------------------------------

def limit_cone_temperedness(rs: RootSystem, stats, margin: float = DEFAULT_WALL_MARGIN,
                            zero_tol: float = WALL_ZERO_TOL) -> str:
    """Classify limit-cone data against the interior-cone temperedness criterion.

    ``stats`` is a ``LimitConeStats``, a mapping with ``min_wall_distance`` or a float.
    """
    if not limit_cone_theorem_applicable(rs):
        return "not_applicable"
    if isinstance(stats, Mapping):
        d = float(stats["min_wall_distance"])
    elif hasattr(stats, "min_wall_distance"):
        d = float(stats.min_wall_distance)
    else:
        d = float(stats)
    if d > margin:
        return "applicable_tempered"
    if d <= zero_tol:
        return "hypothesis_unmet"
    return "inconclusive"


# -- the combined verdict ------------------------------------------------------------------

@dataclass
class SpectralVerdict:
    preset: str
    provenance: str                     # "analytic" or "estimated"
    delta_prime_rho: float
    theta: dict = field(default_factory=dict)   # label -> {"mu", "value", "hermitian", "semantics"}
    tempered: bool = False
    p_interval: tuple[float, float] = (2.0, math.inf)
    p_strict_lower: float = 0.0
    laplace_bottom_interval: tuple[float, float] = (0.0, 0.0)
    metric_scale: float = 1.0
    rho_norm_sq: float = 0.0
    special_points: list = field(default_factory=list)   # (label, Functional)
    limit_cone_verdict: str = "inconclusive"
    notes: list = field(default_factory=list)

    def add_theta(self, rs: RootSystem, w: WeylGroup, label: str, mu: Functional,
                  delta_prime: float) -> None:
        value, herm = theta_from_delta_prime(rs, w, mu, delta_prime)
        self.theta[label] = {
            "mu": mu.std_coords.tolist(),
            "mu_root": mu.root_coords.tolist(),
            "delta_prime": _sentinel(delta_prime),
            "value": _sentinel(value),
            "hermitian": herm,
            "semantics": "equality" if herm else "lower_bound",
        }

    def to_json(self) -> dict:
        return {
            "preset": self.preset,
            "provenance": self.provenance,
            "delta_prime_rho": _sentinel(self.delta_prime_rho),
            "theta": self.theta,
            "tempered": self.tempered,
            "p_interval": [_sentinel(self.p_interval[0]), _sentinel(self.p_interval[1])],
            "p_strict_lower": _sentinel(self.p_strict_lower),
            "laplace_bottom_interval": [_sentinel(x) for x in self.laplace_bottom_interval],
            "metric_scale": self.metric_scale,
            "rho_norm_sq": self.rho_norm_sq,
            "special_points": [{"label": lab, "std": f.std_coords.tolist(),
                                "root": f.root_coords.tolist()} for lab, f in self.special_points],
            "limit_cone_verdict": self.limit_cone_verdict,
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        def fmt(x):
            s = _sentinel(x)
            return s if isinstance(s, str) else f"{s:.12g}"
        rows = [
            ("preset", self.preset),
            ("provenance", self.provenance),
            ("delta'(rho)", fmt(self.delta_prime_rho)),
            ("tempered", "yes" if self.tempered else "no"),
            ("p interval", f"[{fmt(self.p_interval[0])}, {fmt(self.p_interval[1])}]"),
            ("p strictly above", fmt(self.p_strict_lower)),
            ("|rho|^2 (metric)", f"{fmt(self.rho_norm_sq)} (scale {fmt(self.metric_scale)})"),
            ("Laplace bottom in", "[" + ", ".join(fmt(x) for x in self.laplace_bottom_interval) + "]"),
            ("limit cone", self.limit_cone_verdict),
        ]
        for lab, t in self.theta.items():
            rows.append((f"theta({lab})", f"{t['value'] if isinstance(t['value'], str) else fmt(t['value'])}"
                         f" ({t['semantics']})"))
        for lab, f in self.special_points:
            rows.append((f"point {lab}", "(" + ", ".join(fmt(x) for x in f.std_coords) + ")"))
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def temperedness_report(rs: RootSystem, w: WeylGroup, delta_prime_rho: float,
                        metric_scale: float = 1.0, provenance: str = "analytic",
                        limit_cone_stats=None, margin: float = DEFAULT_WALL_MARGIN) -> SpectralVerdict:
    """Assemble the verdict implied by ``delta'(rho)`` (``-inf`` allowed)."""
    if provenance not in ("analytic", "estimated"):
        raise ParameterError("provenance must be 'analytic' or 'estimated'")
    dp = float(delta_prime_rho)
    theta = max(0.0, dp)
    v = SpectralVerdict(rs.describe(), provenance, dp)
    v.add_theta(rs, w, "rho", rs.rho, dp)
    v.tempered = dp <= 0
    v.p_interval = (2.0, p_upper_bound(theta))
    v.p_strict_lower = p_strict_lower_bound(theta)
    v.metric_scale = float(metric_scale)
    v.rho_norm_sq = rs.norm(rs.rho) ** 2
    v.laplace_bottom_interval = laplace_bottom_interval(rs, dp, rs.rho, metric_scale)
    if rs.preset.family == "A2_family":
        v.special_points.append(("max(0, delta'(rho))·rho", a2_boundary_point(rs, dp)))
        v.notes.append(ZARISKI_CAVEAT)
    if limit_cone_stats is not None:
        v.limit_cone_verdict = limit_cone_temperedness(rs, limit_cone_stats, margin)
    elif not limit_cone_theorem_applicable(rs):
        v.limit_cone_verdict = "not_applicable"
    if provenance == "estimated":
        v.notes.append(ESTIMATE_CAVEAT)
    v.notes.append(EIGENVALUE_NOTE)
    v.notes.append(NORM_EXPONENT_NOTE)
    return v


def _frac_str(x: float) -> str:
    from fractions import Fraction

    q = Fraction(x).limit_denominator(1000)
    if abs(float(q) - x) > 1e-12:
        return f"{x:g}"
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_fraction(x: float) -> str:
    """Short rational rendering for report text (``3/2``), falling back to ``%g``."""
    return _frac_str(float(x))


def product_root_system(rhos: Sequence[float]) -> RootSystem:
    return build_root_system(product_a1(rhos))
