"""Independent reference computations used only by the tests.

None of these call into the library's own algorithms: Weyl groups are built
from closed-form descriptions, polytope gauges from scipy's Qhull facets,
SL2(Z) balls by brute-force entry enumeration plus a graph BFS, and
spherical functions from the Legendre function closed form.
"""

from __future__ import annotations

import itertools
import math

import mpmath
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.spatial import ConvexHull

# -- root systems -------------------------------------------------------------

A2_SIMPLE = np.array([[math.sqrt(2.0), 0.0], [-math.sqrt(2.0) / 2.0, math.sqrt(6.0) / 2.0]])
# orthonormal basis of the trace-zero plane in R^3, matching the A2 realization
A2_PLANE = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -2.0]]) / np.sqrt([[2.0], [6.0]])


def weyl_matrices(family: str, rank: int) -> list[np.ndarray]:
    """Weyl groups from closed forms: S3 on the trace-zero plane, signed permutations, sign flips."""
    if family == "A2_family":
        mats = []
        for perm in itertools.permutations(range(3)):
            P = np.eye(3)[list(perm)]
            mats.append(A2_PLANE @ P @ A2_PLANE.T)
        return mats
    if family == "B2_SO2n":
        mats = []
        for perm in itertools.permutations(range(2)):
            for signs in itertools.product((1.0, -1.0), repeat=2):
                mats.append(np.diag(signs) @ np.eye(2)[list(perm)])
        return mats
    return [np.diag(s) for s in itertools.product((1.0, -1.0), repeat=rank)]


def rho_closed_form(family: str, param) -> np.ndarray:
    if family == "A2_family":
        return param * (A2_SIMPLE[0] + A2_SIMPLE[1])
    if family == "B2_SO2n":
        return np.array([param / 2.0, (param - 2) / 2.0])
    return np.array(param, dtype=float)


# -- polytope gauge -------------------------------------------------------------

def orbit_points(mats, mu: np.ndarray) -> np.ndarray:
    return np.unique(np.round(np.array([m @ mu for m in mats]), 12), axis=0)


def hull_gauge(points: np.ndarray, lam: np.ndarray) -> float:
    """Minkowski gauge of ``conv(points)`` (0 interior) at ``lam``, via Qhull facets."""
    lam = np.asarray(lam, dtype=float)
    if points.shape[1] == 1:
        r = float(np.max(np.abs(points)))
        return abs(float(lam[0])) / r
    eq = ConvexHull(points).equations  # a.x + b <= 0 inside
    a, b = eq[:, :-1], eq[:, -1]
    return float(max(0.0, np.max((a @ lam) / (-b))))


# -- SL2(Z) -----------------------------------------------------------------------

def sl2z_box(B: int) -> np.ndarray:
    """All integer ``[[a, b], [c, d]]`` with ``ad - bc = 1`` and ``max |entry| <= B``, rows (a, b, c, d)."""
    r = np.arange(-B, B + 1)
    b, c = (x.ravel() for x in np.meshgrid(r, r, indexing="ij"))
    out = []
    for a in range(-B, B + 1):
        if a == 0:
            # -bc = 1, d free
            for bb, cc in ((1, -1), (-1, 1)):
                out.append(np.stack([np.zeros_like(r), np.full_like(r, bb), np.full_like(r, cc), r], axis=1))
            continue
        num = 1 + b * c
        ok = num % a == 0
        d = num[ok] // a
        keep = np.abs(d) <= B
        out.append(np.stack([np.full(keep.sum(), a), b[ok][keep], c[ok][keep], d[keep]], axis=1))
    return np.concatenate(out)


def sl2z_word_distances(B: int, letters) -> dict:
    """Word distance from the identity within the entry box, by BFS on the Cayley graph."""
    verts = sl2z_box(B)
    index = {tuple(v): i for i, v in enumerate(verts.tolist())}
    rows, cols = [], []
    for i, (a, b, c, d) in enumerate(verts.tolist()):
        for (p, q), (r_, s) in letters:
            w = (a * p + b * r_, a * q + b * s, c * p + d * r_, c * q + d * s)
            j = index.get(w)
            if j is not None:
                rows.append(i)
                cols.append(j)
    g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(verts),) * 2)
    dist = shortest_path(g, directed=True, unweighted=True, indices=index[(1, 0, 0, 1)])
    return {tuple(verts[i].tolist()): int(dist[i]) for i in np.flatnonzero(np.isfinite(dist))}


def sl2z_cartan(a: int, b: int, c: int, d: int) -> float:
    """``u`` from ``2 cosh(2u) = a^2 + b^2 + c^2 + d^2``."""
    return 0.5 * math.acosh((a * a + b * b + c * c + d * d) / 2.0)


# -- SL2(R) spherical functions -------------------------------------------------------

def legendre_phi(s, u: float) -> float:
    """``phi_s(a_u) = P_{(s-1)/2}(cosh 2u)`` (spherical function of the hyperbolic plane)."""
    return float(mpmath.re(mpmath.legenp((s - 1) / 2.0, 0, mpmath.cosh(2 * u), type=3)))


# -- Cartan projections -----------------------------------------------------------------

def svd_log_singular(m) -> np.ndarray:
    s = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    return np.log(s)


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_sl(rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    m = rng.normal(scale=spread, size=(n, n))
    det = np.linalg.det(m)
    if det < 0:
        m[0] = -m[0]
        det = -det
    return m / det ** (1.0 / n)
