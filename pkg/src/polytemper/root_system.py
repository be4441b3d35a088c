"""Restricted root systems, Weyl groups and derived functionals.

Three preset families are shipped, each with a fixed Euclidean realization
in which the standard inner product on coordinates is the invariant form:

* ``A2_family(m)``: simple roots of squared length 2 at angle 2*pi/3, every
  root with multiplicity ``m`` (m = 1, 2, 4, 8 for sl3 over R, C, H and
  e6(-26)).
* ``B2_SO2n(n)``: the SO_0(2, n) data on coordinates ``(v1, v2)``,
  ``a1 = v1 - v2``, ``a2 = v2``, ``a3 = v1``, ``a4 = v1 + v2``.
* ``ProductA1(k, rhos)``: an orthogonal direct sum of k rank-one factors;
  factor i has simple root ``2*rho_i*e_i`` with multiplicity one, so its
  half-sum is ``rho_i*e_i``.

The space ``a`` and its dual are identified through the Euclidean product, so
functionals and chamber vectors share coordinates and the same Weyl matrices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NumericError, ParameterError, PreconditionError

DOMINANCE_TOL = 1e-10
DEDUP_DECIMALS = 10
WEYL_ELEMENT_CAP = 10_000

FAMILIES = ("A2_family", "B2_SO2n", "ProductA1")
_STANDARD_A2_MULTIPLICITIES = (1, 2, 4, 8)


@dataclass(frozen=True)
class Preset:
    """Parameters selecting one of the shipped root systems."""

    family: str
    m: int | None = None
    n: int | None = None
    rhos: tuple[float, ...] | None = None

    @property
    def k(self) -> int | None:
        return None if self.rhos is None else len(self.rhos)

    @classmethod
    def from_json(cls, block: Mapping) -> "Preset":
        """Parse ``{"preset": "B2_SO2n", "n": 5}``-style config blocks."""
        family = block.get("preset")
        if family == "A2_family":
            return cls(family, m=int(block.get("m", 1)))
        if family == "B2_SO2n":
            if "n" not in block:
                raise ParameterError("B2_SO2n preset needs 'n'")
            return cls(family, n=int(block["n"]))
        if family == "ProductA1":
            rhos = block.get("rhos")
            k = block.get("k", None if rhos is None else len(rhos))
            if k is None:
                raise ParameterError("ProductA1 preset needs 'k' or 'rhos'")
            if rhos is None:
                rhos = [0.5] * int(k)
            if len(rhos) != int(k):
                raise ParameterError(f"ProductA1: k={k} but {len(rhos)} rhos given")
            return cls(family, rhos=tuple(_to_float(r) for r in rhos))
        raise ParameterError(f"unknown preset {family!r}; expected one of {FAMILIES}")

    def to_json(self) -> dict:
        if self.family == "A2_family":
            return {"preset": self.family, "m": self.m}
        if self.family == "B2_SO2n":
            return {"preset": self.family, "n": self.n}
        return {"preset": self.family, "k": self.k, "rhos": list(self.rhos)}

    def label(self) -> str:
        if self.family == "A2_family":
            return f"A2(m={self.m})"
        if self.family == "B2_SO2n":
            return f"B2/SO(2,{self.n})"
        return "ProductA1(" + ", ".join(f"{r:g}" for r in self.rhos) + ")"


def _to_float(x) -> float:
    if isinstance(x, str):
        from fractions import Fraction

        return float(Fraction(x.strip()))
    return float(x)


def A2(m: int = 1) -> Preset:
    return Preset("A2_family", m=m)


def B2(n: int) -> Preset:
    return Preset("B2_SO2n", n=n)


def product_a1(rhos: Sequence[float]) -> Preset:
    return Preset("ProductA1", rhos=tuple(float(r) for r in rhos))


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Functional:
    """An element of ``a*`` in standard and simple-root coordinates."""

    std_coords: np.ndarray
    root_coords: np.ndarray

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(_frozen(self.std_coords + other.std_coords),
                          _frozen(self.root_coords + other.root_coords))

    def __sub__(self, other: "Functional") -> "Functional":
        return self + (-other)

    def __neg__(self) -> "Functional":
        return Functional(_frozen(-self.std_coords), _frozen(-self.root_coords))

    def __mul__(self, t: float) -> "Functional":
        t = float(t)
        return Functional(_frozen(t * self.std_coords), _frozen(t * self.root_coords))

    __rmul__ = __mul__

    def __call__(self, H) -> float:
        coords = H.coords if isinstance(H, ChamberVector) else np.asarray(H, dtype=float)
        return float(self.std_coords @ coords)

    def isclose(self, other: "Functional", tol: float = 1e-10) -> bool:
        return bool(np.allclose(self.std_coords, other.std_coords, rtol=0, atol=tol))

    def is_zero(self, tol: float = 1e-14) -> bool:
        return bool(np.abs(self.std_coords).max() <= tol)

    def __repr__(self) -> str:
        return f"Functional(std={self.std_coords.tolist()}, root={self.root_coords.tolist()})"


@dataclass(frozen=True, eq=False)
class ChamberVector:
    """An element ``H`` of ``a`` in coordinates dual to the standard ones."""

    coords: np.ndarray

    def __init__(self, coords):
        object.__setattr__(self, "coords", _frozen(coords))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


@dataclass(frozen=True, eq=False)
class RootSystem:
    preset: Preset
    rank: int
    simple_roots: np.ndarray        # rows: std coords of alpha_i
    positive_roots: np.ndarray      # rows: std coords
    root_names: tuple[str, ...]     # names of positive roots, simple ones first
    multiplicities: tuple[int, ...]  # parallel to positive_roots
    gram: np.ndarray
    _to_root: np.ndarray = field(repr=False)

    # -- coordinates -------------------------------------------------------
    def functional(self, std_coords: Iterable[float]) -> Functional:
        std = np.asarray(list(std_coords), dtype=float)
        if std.shape != (self.rank,):
            raise ParameterError(f"expected {self.rank} coordinates, got {std.shape}")
        return Functional(_frozen(std), _frozen(std @ self._to_root))

    def from_root_coords(self, c: Iterable[float]) -> Functional:
        c = np.asarray(list(c), dtype=float)
        if c.shape != (self.rank,):
            raise ParameterError(f"expected {self.rank} coordinates, got {c.shape}")
        return Functional(_frozen(c @ self.simple_roots), _frozen(c))

    def zero(self) -> Functional:
        return self.functional(np.zeros(self.rank))

    @cached_property
    def reflections(self) -> tuple[np.ndarray, ...]:
        """Simple reflections as std-coordinate matrices."""
        return tuple(_reflection(a) for a in self.simple_roots)

    @cached_property
    def multiplicity(self) -> dict[str, int]:
        return dict(zip(self.root_names, self.multiplicities))

    def root(self, name: str) -> Functional:
        try:
            i = self.root_names.index(name)
        except ValueError:
            raise ParameterError(f"no root named {name!r}; have {self.root_names}") from None
        return self.functional(self.positive_roots[i])

    @cached_property
    def rho(self) -> Functional:
        half_sum = 0.5 * (np.asarray(self.multiplicities, dtype=float) @ self.positive_roots)
        return self.functional(half_sum)

    @cached_property
    def coweights(self) -> np.ndarray:
        """Rows ``h_i`` with ``alpha_j(h_i) = delta_ij``; they span the closed chamber."""
        return _frozen(self._to_root.T)

    def named(self, name: str) -> Functional:
        """Resolve ``rho``, a root name (``a1`` ...) or a coweight ray (``h1`` ...)."""
        key = name.strip().lower()
        if key == "rho":
            return self.rho
        if key == "0" or key == "zero":
            return self.zero()
        if key.startswith("h") and key[1:].isdigit():
            i = int(key[1:]) - 1
            if not 0 <= i < self.rank:
                raise ParameterError(f"coweight index out of range: {name}")
            return self.functional(self.coweights[i])
        return self.root(key)

    def alpha_values(self, H) -> np.ndarray:
        """``(alpha_1(H), ..., alpha_r(H))`` for a chamber vector or coordinate array."""
        coords = H.coords if isinstance(H, ChamberVector) else np.asarray(H, dtype=float)
        return self.simple_roots @ coords

    def pairing(self, lam: Functional) -> np.ndarray:
        """``<lambda, alpha_i>`` for each simple root."""
        return self.simple_roots @ lam.std_coords

    def is_dominant(self, lam: Functional, tol: float = DOMINANCE_TOL) -> bool:
        return bool((self.simple_roots @ lam.std_coords).min() >= -tol)

    def in_closed_chamber(self, H, tol: float = DOMINANCE_TOL) -> bool:
        return bool(np.all(self.alpha_values(H) >= -tol))

    def norm(self, lam: Functional) -> float:
        return float(np.linalg.norm(lam.std_coords))

    @cached_property
    def weyl(self) -> "WeylGroup":
        return weyl_group(self)

    def describe(self) -> str:
        return self.preset.label()


# -- construction ---------------------------------------------------------------

def build_root_system(preset: Preset | Mapping) -> RootSystem:
    """Construct a fully populated root system for a preset."""
    if not isinstance(preset, Preset):
        preset = Preset.from_json(preset)
    fam = preset.family
    if fam == "A2_family":
        m = preset.m
        if not isinstance(m, int) or m < 1:
            raise ParameterError(f"A2_family needs a positive integer m, got {m!r}")
        if m not in _STANDARD_A2_MULTIPLICITIES:
            warnings.warn(f"A2_family(m={m}): m outside {{1,2,4,8}} has no real form", stacklevel=2)
        a1 = np.array([math.sqrt(2.0), 0.0])
        a2 = np.array([-math.sqrt(2.0) / 2.0, math.sqrt(6.0) / 2.0])
        simple = np.array([a1, a2])
        positive = np.array([a1, a2, a1 + a2])
        names = ("a1", "a2", "a3")
        mult = (m, m, m)
    elif fam == "B2_SO2n":
        n = preset.n
        if not isinstance(n, int) or n < 3:
            raise ParameterError(f"B2_SO2n needs an integer n >= 3, got {n!r}")
        simple = np.array([[1.0, -1.0], [0.0, 1.0]])
        positive = np.array([[1.0, -1.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
        names = ("a1", "a2", "a3", "a4")
        mult = (1, n - 2, n - 2, 1)
    elif fam == "ProductA1":
        rhos = preset.rhos
        if not rhos:
            raise ParameterError("ProductA1 needs k >= 1 factors")
        if any(not (r > 0 and math.isfinite(r)) for r in rhos):
            raise ParameterError(f"ProductA1 rhos must be positive, got {rhos}")
        k = len(rhos)
        simple = np.diag([2.0 * r for r in rhos])
        positive = simple.copy()
        names = tuple(f"a{i + 1}" for i in range(k))
        mult = (1,) * k
    else:
        raise ParameterError(f"unknown preset family {fam!r}")

    gram = simple @ simple.T
    return RootSystem(
        preset=preset,
        rank=simple.shape[0],
        simple_roots=_frozen(simple),
        positive_roots=_frozen(positive),
        root_names=names,
        multiplicities=mult,
        gram=_frozen(gram),
        _to_root=_frozen(np.linalg.inv(simple)),
    )


# -- Weyl group ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeylGroup:
    elements: tuple[np.ndarray, ...]
    generators: tuple[int, ...]
    longest_element_index: int
    _index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def w0(self) -> np.ndarray:
        return self.elements[self.longest_element_index]

    def index_of(self, matrix: np.ndarray) -> int:
        try:
            return self._index[_key(matrix)]
        except KeyError:
            raise NumericError("matrix is not an element of this Weyl group") from None

    def act(self, i: int, lam: Functional, rs: RootSystem) -> Functional:
        return rs.functional(self.elements[i] @ lam.std_coords)

    def orbit(self, lam: Functional, rs: RootSystem) -> list[Functional]:
        """The Weyl orbit of ``lam``, deduplicated, in element order."""
        seen: dict = {}
        for g in self.elements:
            v = g @ lam.std_coords
            seen.setdefault(_key(v), v)
        return [rs.functional(v) for v in seen.values()]

    def orbit_array(self, coords: np.ndarray) -> np.ndarray:
        """All images ``w @ coords`` stacked (no dedup); shape ``(|W|, rank)``."""
        return np.einsum("wij,j->wi", np.asarray(self.elements), coords)


def _key(a: np.ndarray) -> tuple:
    # +0.0 normalizes negative zeros so that keys compare equal
    return tuple((np.round(np.asarray(a, dtype=float), DEDUP_DECIMALS) + 0.0).ravel().tolist())


def _reflection(alpha: np.ndarray) -> np.ndarray:
    return np.eye(alpha.size) - 2.0 * np.outer(alpha, alpha) / float(alpha @ alpha)


def weyl_group(rs: RootSystem) -> WeylGroup:
    """Enumerate the Weyl group by breadth-first closure of simple reflections."""
    refl = [_reflection(a) for a in rs.simple_roots]
    ident = np.eye(rs.rank)
    elements = [ident]
    index = {_key(ident): 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in refl:
                h = s @ g
                k = _key(h)
                if k not in index:
                    index[k] = len(elements)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > WEYL_ELEMENT_CAP:
                        raise NumericError("Weyl group enumeration exceeded element cap")
        frontier = nxt
    gens = tuple(index[_key(s)] for s in refl)
    rho = rs.rho.std_coords
    w0 = [i for i, g in enumerate(elements) if np.allclose(g @ rho, -rho, atol=1e-10)]
    if len(w0) != 1:
        raise NumericError("could not identify the longest Weyl element")
    frozen = tuple(_frozen(g) for g in elements)
    return WeylGroup(frozen, gens, w0[0], index)


def dominant_project(rs: RootSystem, w: WeylGroup, lam: Functional,
                     tol: float = DOMINANCE_TOL) -> tuple[Functional, int]:
    """Return ``(lam_dom, i)`` with ``w.elements[i] @ lam = lam_dom`` dominant."""
    v = np.array(lam.std_coords, dtype=float)
    g = np.eye(rs.rank)
    refl = rs.reflections
    for _ in range(WEYL_ELEMENT_CAP):
        p = rs.simple_roots @ v
        bad = np.flatnonzero(p < -tol)
        if bad.size == 0:
            break
        s = refl[bad[0]]
        v = s @ v
        g = s @ g
    else:
        raise NumericError("dominant projection did not terminate")
    return rs.functional(v), w.index_of(g)


def dominant_root_coords(rs: RootSystem, lam: Functional, tol: float = DOMINANCE_TOL) -> np.ndarray:
    """Simple-root coordinates of the dominant representative of ``W lam``."""
    v = np.array(lam.std_coords, dtype=float)
    for _ in range(WEYL_ELEMENT_CAP):
        p = rs.simple_roots @ v
        i = int(p.argmin())
        if p[i] >= -tol:
            return v @ rs._to_root
        v = rs.reflections[i] @ v
    raise NumericError("dominant projection did not terminate")


def opposition_involution(rs: RootSystem, w: WeylGroup, lam: Functional) -> Functional:
    """``iota(lam) = -w0 lam``."""
    return rs.functional(-(w.w0 @ lam.std_coords))


def is_hermitian_dominant(rs: RootSystem, w: WeylGroup, mu: Functional,
                          tol: float = 1e-10) -> bool:
    """For dominant ``mu``: whether ``-mu`` lies in its Weyl orbit."""
    if not rs.is_dominant(mu):
        raise PreconditionError("is_hermitian_dominant expects a dominant functional")
    scale = max(1.0, rs.norm(mu))
    return opposition_involution(rs, w, mu).isclose(mu, tol * scale)


def limit_cone_theorem_applicable(rs: RootSystem) -> bool:
    """Whether the limit-cone temperedness criterion covers this root system.

    It needs reduced rank at least two and excludes type A2.
    """
    fam = rs.preset.family
    if fam == "A2_family":
        return False
    if fam == "B2_SO2n":
        return True
    return rs.rank >= 2
