"""Word-ball enumeration of finitely generated matrix groups.

Breadth-first search over words in the generators (and their inverses when
requested).  Letters are numbered ``0..k-1`` for the generators and
``k..2k-1`` for their inverses.  Each new element keeps the first word that
reaches it, which is the lexicographically smallest word of minimal length.
A letter that cancels the previous one is skipped; this only prunes words
already covered by shorter ones, so relations in the group are still handled
by deduplication.
"""

from __future__ import annotations

import csv
import io
import itertools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from ..errors import ParameterError, ResourceError
from ..root_system import ChamberVector, RootSystem
from .elements import A2_BASIS, GroupElement, cartan_projection, chamber_in_root_system, identity_like

DEFAULT_MEMORY_CAP = 10**7


@dataclass(frozen=True, eq=False)
class OrbitSample:
    element: GroupElement
    mu_plus: ChamberVector
    word_length: int

    @property
    def word(self):
        return self.element.word

    def chamber(self, rs: RootSystem) -> ChamberVector:
        """``mu_plus`` in the standard coordinates of ``rs``."""
        return chamber_in_root_system(self.mu_plus, self.element.realization, rs)


def chamber_matrix(samples: Sequence[OrbitSample], rs: RootSystem) -> np.ndarray:
    """Rows: ``mu_plus`` of each sample in the standard coordinates of ``rs``."""
    if not samples:
        return np.zeros((0, rs.rank))
    raw = np.array([s.mu_plus.coords for s in samples])
    realization = samples[0].element.realization
    if any(s.element.realization != realization for s in samples):
        raise ParameterError("samples mix realizations")
    first = chamber_in_root_system(ChamberVector(raw[0]), realization, rs)
    if realization == "SL" and raw.shape[1] == 3:
        return raw @ A2_BASIS.T
    if realization == "SL":
        return raw[:, :1].copy()
    return raw.reshape(len(samples), first.coords.size)


def _letters(generators: Sequence[GroupElement], include_inverses: bool) -> list[GroupElement]:
    if not generators:
        raise ParameterError("need at least one generator")
    g0 = generators[0]
    for g in generators[1:]:
        if g.realization != g0.realization or g.size != g0.size or len(g.factors) != len(g0.factors):
            raise ParameterError("generators have mixed realizations or sizes")
    exact = all(g.exact for g in generators)
    gens = [g if exact else g.as_float() for g in generators]
    if include_inverses:
        gens = gens + [g.inverse() for g in gens]
    return gens


def _projections(elements: list[GroupElement], workers: int) -> list[ChamberVector]:
    if workers <= 1 or len(elements) < 256:
        return [cartan_projection(g) for g in elements]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map keeps input order, so the result is independent of scheduling
        return list(pool.map(cartan_projection, elements, chunksize=256))


def enumerate_ball(generators: Sequence[GroupElement], include_inverses: bool = True,
                   max_word_length: int = 1, memory_cap: int = DEFAULT_MEMORY_CAP,
                   workers: int = 1) -> list[OrbitSample]:
    """All distinct elements of word length ``<= max_word_length`` with ``mu_+``.

    Exact generators are deduplicated on their rational entries.  Float
    generators are deduplicated on entries rounded to 10 significant digits,
    which is approximate; a warning is emitted.
    """
    if int(max_word_length) != max_word_length or max_word_length < 1:
        raise ParameterError(f"max_word_length must be a positive integer, got {max_word_length}")
    letters = _letters(list(generators), include_inverses)
    k = len(generators)
    exact = letters[0].exact
    if not exact:
        warnings.warn("float generators: deduplication compares rounded entries", stacklevel=2)

    def inverse_letter(a: int) -> int | None:
        if not include_inverses:
            return None
        return a + k if a < k else a - k

    ident = identity_like(letters[0])
    seen = {ident.key()}
    found: list[GroupElement] = [ident]
    lengths = [0]
    frontier = [ident]
    for length in range(1, int(max_word_length) + 1):
        nxt = []
        for g in frontier:
            last = g.word[-1] if g.word else None
            banned = None if last is None else inverse_letter(last)
            for a, s in enumerate(letters):
                if a == banned:
                    continue
                h = g * s
                key = h.key()
                if key in seen:
                    continue
                seen.add(key)
                h = h.with_word(g.word + (a,))
                found.append(h)
                lengths.append(length)
                nxt.append(h)
                if len(found) > memory_cap:
                    raise ResourceError(f"word ball exceeds memory cap of {memory_cap} elements")
        frontier = nxt
        if not frontier:
            break
    mus = _projections(found, workers)
    samples = [OrbitSample(g, m, n) for g, m, n in zip(found, mus, lengths)]
    samples.sort(key=lambda s: (s.word_length, s.word))
    return samples


def product_ball(factor_generators: Sequence[Sequence[GroupElement]], include_inverses: bool = True,
                 max_word_length: int | Sequence[int] = 1,
                 memory_cap: int = DEFAULT_MEMORY_CAP, workers: int = 1) -> list[OrbitSample]:
    """Ball of a direct product ``Gamma_1 x ... x Gamma_k`` of SL2 subgroups.

    Each factor is enumerated separately and the ball is the product of the
    factor balls, so ``word_length`` is the maximum of the factor lengths.
    The word of a sample is the tuple of factor words; samples are ordered by
    ``word_length`` and then by each factor's own (shortlex) word order.
    """
    k = len(factor_generators)
    if k == 0:
        raise ParameterError("product_ball needs at least one factor")
    lengths = [max_word_length] * k if isinstance(max_word_length, int) else list(max_word_length)
    if len(lengths) != k:
        raise ParameterError("one max_word_length per factor expected")
    balls = []
    for gens, L in zip(factor_generators, lengths):
        if any(g.realization != "SL" or g.size != 2 for g in gens):
            raise ParameterError("product_ball factors must be SL2 generators")
        balls.append(enumerate_ball(gens, include_inverses, L, memory_cap, workers))
    total = 1
    for b in balls:
        total *= len(b)
    if total > memory_cap:
        raise ResourceError(f"product ball has {total} elements, above memory cap {memory_cap}")
    exact = all(s.element.exact for b in balls for s in b)
    mats = [[s.element.matrix if exact else s.element.as_float().matrix for s in b] for b in balls]
    us = [np.array([s.mu_plus.coords[0] for s in b]) for b in balls]
    idx = np.indices([len(b) for b in balls]).reshape(k, -1)
    lens = np.max([np.array([s.word_length for s in b])[i] for b, i in zip(balls, idx)], axis=0)
    # factor balls are already shortlex sorted, so index order is word order
    order = np.lexsort(tuple(idx[::-1]) + (lens,))
    out = []
    for j in order.tolist():
        combo = idx[:, j].tolist()
        fs = tuple(m[i] for m, i in zip(mats, combo))
        word = tuple(b[i].word for b, i in zip(balls, combo))
        g = GroupElement("ProductSL2", fs, exact, word)
        mu = ChamberVector([u[i] for u, i in zip(us, combo)])
        out.append(OrbitSample(g, mu, int(lens[j])))
    return out


def format_word(word) -> str:
    if word is None:
        return ""
    if word and isinstance(word[0], tuple):
        return "|".join(".".join(str(a) for a in w) for w in word)
    return ".".join(str(a) for a in word)


def write_samples_csv(samples: Iterable[OrbitSample], stream: TextIO | None = None) -> str | None:
    """Stream ``word_length, word, mu_1..mu_r`` rows; returns text when no stream given."""
    own = stream is None
    out = io.StringIO() if own else stream
    writer = csv.writer(out, lineterminator="\n")
    header_done = False
    for s in samples:
        c = s.mu_plus.coords
        if not header_done:
            writer.writerow(["word_length", "word"] + [f"mu{i + 1}" for i in range(c.size)])
            header_done = True
        writer.writerow([s.word_length, format_word(s.word)] + [repr(float(x) + 0.0) for x in c])
    if not header_done:
        writer.writerow(["word_length", "word"])
    return out.getvalue() if own else None
