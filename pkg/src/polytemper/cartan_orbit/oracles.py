"""Independent enumeration of SL2(Z) by entries, used to validate word balls.

``u(g) <= T`` is equivalent to ``a^2 + b^2 + c^2 + d^2 <= 2 cosh(2T)``, so a
Cartan ball is an entry-bounded set.  For every primitive first column
``(a, c)`` the solutions of ``ad - bc = 1`` form a line ``(b0 + k a, d0 + k c)``
which is scanned outward from its closest point to the origin.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from .elements import sl2_cartan_u


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def sl2z_matrices(frobenius_bound: int):
    """Yield every ``[[a, b], [c, d]]`` in SL2(Z) with squared Frobenius norm ``<= bound``."""
    F = int(frobenius_bound)
    r = math.isqrt(F)
    for a in range(-r, r + 1):
        rem = F - a * a
        rc = math.isqrt(rem)
        for c in range(-rc, rc + 1):
            g, x, y = _ext_gcd(a, c)
            if abs(g) != 1:
                continue
            # a*d - b*c = 1 with d = x/g, b = -y/g
            d0, b0 = x * g, -y * g
            s = a * a + c * c
            k0 = -round((b0 * a + d0 * c) / s)
            for step in (1, -1):
                k = k0 if step == 1 else k0 - 1
                while True:
                    b, d = b0 + k * a, d0 + k * c
                    if s + b * b + d * d > F:
                        break
                    yield ((a, b), (c, d))
                    k += step


def sl2z_norm_ball(T: float) -> np.ndarray:
    """Sorted Cartan values ``u`` of all SL2(Z) elements with ``u <= T``."""
    if not T >= 0:
        raise ParameterError("T must be nonnegative")
    bound = math.floor(2.0 * math.cosh(2.0 * T) + 1e-9)
    us = [sl2_cartan_u(m) for m in sl2z_matrices(bound)]
    us = np.array([u for u in us if u <= T + 1e-12])
    return np.sort(us)


def completeness_radius(ball_values, oracle_values, tol: float = 1e-9) -> float:
    """Largest ``R`` with ``#{ball <= t} = #{oracle <= t}`` for all ``t < R``.

    Both inputs are Cartan values; the ball is a subset of the lattice, so the
    first oracle value missing from the ball marks the radius.  Returns the
    largest oracle value plus ``tol`` if nothing is missing.
    """
    b = np.sort(np.asarray(ball_values, dtype=float))
    o = np.sort(np.asarray(oracle_values, dtype=float))
    n = min(b.size, o.size)
    diff = np.flatnonzero(np.abs(b[:n] - o[:n]) > tol)
    if diff.size:
        return float(min(b[diff[0]], o[diff[0]]))
    if o.size > b.size:
        return float(o[b.size])
    return float(o[-1]) + tol if o.size else 0.0
