"""Matrix group elements and their Cartan and Iwasawa projections.

Two realizations are supported: ``SL`` (one n x n matrix of determinant one)
and ``ProductSL2`` (a tuple of 2 x 2 matrices, one per factor).  Entries built
from ints, Fractions or rational strings stay exact; any float input switches
the element to float arithmetic.

The Cartan projection of an ``SL`` element is the vector of log singular
values in non-increasing order.  For exact entries it is computed from the
top singular values of the exterior powers, each evaluated on a power-of-two
rescaled float copy, so it stays accurate when entries overflow a double.
SL2 normalization: ``a_u = diag(e^u, e^-u)`` has projection ``(u, -u)`` and
``rho(a_u) = u``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..errors import NumericError, ParameterError
from ..root_system import ChamberVector, RootSystem

DET_TOL = 1e-9
_LN2 = math.log(2.0)

REALIZATIONS = ("SL", "ProductSL2")


def parse_entry(x):
    """Rational strings and ints become exact; floats stay floats."""
    if isinstance(x, bool):
        raise ParameterError("boolean is not a matrix entry")
    if isinstance(x, (int, Fraction)):
        return _canon(Fraction(x))
    if isinstance(x, str):
        s = x.strip()
        try:
            return _canon(Fraction(s))
        except ValueError:
            raise ParameterError(f"cannot parse matrix entry {x!r}") from None
    if isinstance(x, (float, np.floating)):
        return float(x)
    raise ParameterError(f"unsupported matrix entry type {type(x).__name__}")


def _canon(q: Fraction):
    return q.numerator if q.denominator == 1 else q


# -- exact helpers (matrices as tuples of row tuples) ------------------------

def _mat_mul_exact(a: tuple, b: tuple) -> tuple:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(_canon_any(sum(x * y for x, y in zip(row, col))) for col in cols) for row in a)


def _canon_any(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _det_exact(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    if n == 2:
        return Fraction(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        inv = 1 / a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] * inv
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


def _inv_exact(m: tuple) -> tuple:
    n = len(m)
    if n == 2:
        (a, b), (c, d) = m
        det = Fraction(a * d - b * c)
        if det == 0:
            raise NumericError("singular matrix")
        return ((_canon(d / det), _canon(-b / det)), (_canon(-c / det), _canon(a / det)))
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for i in range(n):
        piv = next((r for r in range(i, n) if aug[r][i] != 0), None)
        if piv is None:
            raise NumericError("singular matrix")
        aug[i], aug[piv] = aug[piv], aug[i]
        p = aug[i][i]
        aug[i] = [x / p for x in aug[i]]
        for r in range(n):
            if r != i and aug[r][i] != 0:
                f = aug[r][i]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[i])]
    return tuple(tuple(_canon(x) for x in row[n:]) for row in aug)


def _log2_abs(x) -> float:
    q = Fraction(x)
    return q.numerator.bit_length() - q.denominator.bit_length() if q else -math.inf


def _log_top_singular_exact(m: Sequence[Sequence]) -> float:
    """``log sigma_max`` of an exact matrix, robust to huge or tiny entries."""
    e = max(_log2_abs(x) for row in m for x in row)
    if e == -math.inf:
        raise NumericError("zero matrix has no top singular value")
    e = int(e)
    scale = Fraction(1, 1 << e) if e >= 0 else Fraction(1 << -e)
    f = np.array([[float(Fraction(x) * scale) for x in row] for row in m])
    return e * _LN2 + math.log(np.linalg.norm(f, 2))


def _compound(m: Sequence[Sequence], k: int) -> list[list[Fraction]]:
    n = len(m)
    idx = list(itertools.combinations(range(n), k))
    return [[_det_exact([[m[r][c] for c in cols] for r in rows]) for cols in idx] for rows in idx]


def _log_frobenius_sq(m) -> float:
    f = sum(Fraction(x) ** 2 for row in m for x in row)
    return math.log(f.numerator) - math.log(f.denominator), f


def sl2_cartan_u(m) -> float:
    """``u >= 0`` with singular values ``(e^u, e^-u)`` for a det-one 2 x 2 matrix."""
    if isinstance(m, np.ndarray) or any(isinstance(x, float) for row in m for x in row):
        a = np.asarray(m, dtype=float)
        if not np.all(np.isfinite(a)):
            raise NumericError("non-finite matrix entries")
        fro = float(np.sum(a * a))
        return 0.5 * math.acosh(max(fro / 2.0, 1.0))
    log_f, f = _log_frobenius_sq(m)
    if log_f < 600.0:
        return 0.5 * math.acosh(max(float(f) / 2.0, 1.0))
    # acosh(F/2) = log F - O(F^-2)
    return 0.5 * log_f


def log_singular_values(matrix) -> np.ndarray:
    """Non-increasing log singular values of a det-one matrix (sum zero)."""
    exact = not isinstance(matrix, np.ndarray) and not any(
        isinstance(x, float) for row in matrix for x in row)
    n = len(matrix)
    if n == 2:
        u = sl2_cartan_u(matrix)
        return np.array([u, -u])
    if not exact:
        a = np.asarray(matrix, dtype=float)
        if not np.all(np.isfinite(a)):
            raise NumericError("non-finite matrix entries")
        s = np.linalg.svd(a, compute_uv=False)
        if s[-1] <= 0:
            raise NumericError("singular matrix")
        ls = np.log(s)
        return ls - ls.mean()
    cum = [0.0]
    for k in range(1, n):
        cum.append(_log_top_singular_exact(_compound(matrix, k)))
    cum.append(0.0)  # det = 1
    ls = np.diff(np.array(cum))
    return np.sort(ls)[::-1]


# -- group elements ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupElement:
    realization: str
    factors: tuple          # tuple of matrices (row tuples if exact, ndarray if float)
    exact: bool
    word: tuple | None = None

    @property
    def matrix(self):
        if self.realization != "SL":
            raise ParameterError("matrix is only defined for the SL realization")
        return self.factors[0]

    @property
    def size(self) -> int:
        return len(self.factors[0])

    def key(self) -> tuple:
        """Hashable identity; exact for rational entries, rounded otherwise."""
        if self.exact:
            return self.factors
        return tuple(tuple(float("%.10g" % x) + 0.0 for x in np.ravel(f)) for f in self.factors)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        _check_compatible(self, other)
        if self.exact and other.exact:
            fs = tuple(_mat_mul_exact(a, b) for a, b in zip(self.factors, other.factors))
            return GroupElement(self.realization, fs, True)
        fs = tuple(_as_float(a) @ _as_float(b) for a, b in zip(self.factors, other.factors))
        return GroupElement(self.realization, fs, False)

    def inverse(self) -> "GroupElement":
        if self.exact:
            fs = tuple(_inv_exact(f) for f in self.factors)
        else:
            fs = tuple(np.linalg.inv(f) for f in self.factors)
        return GroupElement(self.realization, fs, self.exact)

    def as_float(self) -> "GroupElement":
        if not self.exact:
            return self
        return GroupElement(self.realization, tuple(_as_float(f) for f in self.factors),
                            False, self.word)

    def with_word(self, word) -> "GroupElement":
        return GroupElement(self.realization, self.factors, self.exact, word)

    def entries_json(self):
        def conv(f):
            if self.exact:
                return [[str(x) for x in row] for row in f]
            return [[float(x) for x in row] for row in np.asarray(f)]
        return [conv(f) for f in self.factors]


def _as_float(f) -> np.ndarray:
    if isinstance(f, np.ndarray):
        return f
    return np.array([[float(x) for x in row] for row in f])


def _check_compatible(a: GroupElement, b: GroupElement) -> None:
    if a.realization != b.realization or len(a.factors) != len(b.factors) or a.size != b.size:
        raise ParameterError("group elements have incompatible realizations")


def _parse_matrix(rows):
    parsed = [[parse_entry(x) for x in row] for row in rows]
    n = len(parsed)
    if n == 0 or any(len(r) != n for r in parsed):
        raise ParameterError("matrix must be square and nonempty")
    exact = not any(isinstance(x, float) for row in parsed for x in row)
    if exact:
        m = tuple(tuple(row) for row in parsed)
        if _det_exact(m) != 1:
            raise ParameterError("matrix determinant is not 1")
        return m, True
    a = np.array([[float(x) for x in row] for row in parsed])
    a.setflags(write=False)
    det = np.linalg.det(a)
    if not abs(det - 1.0) <= DET_TOL * max(1.0, float(np.abs(a).max()) ** n):
        raise ParameterError(f"matrix determinant is {det}, not 1")
    return a, False


def sl_element(rows, word=None) -> GroupElement:
    """An element of SL_n from nested rows of numbers or rational strings."""
    m, exact = _parse_matrix(rows)
    return GroupElement("SL", (m,), exact, word)


def product_sl2_element(mats: Iterable, word=None) -> GroupElement:
    parsed = [_parse_matrix(m) for m in mats]
    if not parsed or any(len(m) != 2 for m, _ in parsed):
        raise ParameterError("ProductSL2 needs a nonempty list of 2 x 2 matrices")
    exact = all(e for _, e in parsed)
    fs = tuple(m if exact else _as_float(m) for m, _ in parsed)
    return GroupElement("ProductSL2", fs, exact, word)


def identity_like(g: GroupElement) -> GroupElement:
    n = g.size
    if g.exact:
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return GroupElement(g.realization, (eye,) * len(g.factors), True, ())
    return GroupElement(g.realization, tuple(np.eye(n) for _ in g.factors), False, ())


def cartan_projection(g: GroupElement) -> ChamberVector:
    """``mu_+(g)``: sorted log singular values (SL) or per-factor ``u`` (ProductSL2)."""
    if g.realization == "SL":
        return ChamberVector(log_singular_values(g.matrix))
    if g.realization == "ProductSL2":
        return ChamberVector([sl2_cartan_u(f) for f in g.factors])
    raise ParameterError(f"unknown realization {g.realization!r}")


def iwasawa_a_part_sl2(g) -> float:
    """``u`` with ``g`` in ``K diag(e^u, e^-u) N``, i.e. log of the first column norm."""
    m = g.matrix if isinstance(g, GroupElement) else g
    if isinstance(m, np.ndarray) or any(isinstance(x, float) for row in m for x in row):
        a = np.asarray(m, dtype=float)
        return 0.5 * math.log(a[0, 0] ** 2 + a[1, 0] ** 2)
    q = Fraction(m[0][0]) ** 2 + Fraction(m[1][0]) ** 2
    return 0.5 * (math.log(q.numerator) - math.log(q.denominator))


# -- realization -> root-system coordinates --------------------------------------

A2_BASIS = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -2.0]]) / np.sqrt([[2.0], [6.0]])


def chamber_in_root_system(H: ChamberVector, realization: str, rs: RootSystem) -> ChamberVector:
    """Express a Cartan projection in the standard coordinates of ``rs``.

    SL3 pairs with A2 (orthonormal coordinates on the trace-zero plane), SL2
    with a one-factor ProductA1 (coordinate ``u``), ProductSL2 with
    ProductA1 of the same number of factors.
    """
    c = H.coords
    fam = rs.preset.family
    if realization == "SL":
        if c.size == 3 and fam == "A2_family":
            return ChamberVector(A2_BASIS @ c)
        if c.size == 2 and fam == "ProductA1" and rs.rank == 1:
            return ChamberVector(c[:1])
    elif realization == "ProductSL2" and fam == "ProductA1" and rs.rank == c.size:
        return ChamberVector(c)
    raise ParameterError(
        f"realization {realization} of size {c.size} does not match root system {rs.describe()}")
