import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rho_closed_form, weyl_matrices
from polytemper.errors import ParameterError, PreconditionError
from polytemper.root_system import (
    A2,
    B2,
    Preset,
    build_root_system,
    dominant_project,
    is_hermitian_dominant,
    limit_cone_theorem_applicable,
    opposition_involution,
    product_a1,
    weyl_group,
)

from conftest import PRESETS, random_dominant

coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def _param(p: Preset):
    return {"A2_family": p.m, "B2_SO2n": p.n, "ProductA1": p.rhos}[p.family]


def test_gram_positive_definite_nonpositive_offdiagonal(rs):
    g = rs.gram
    assert np.allclose(g, g.T)
    assert np.all(np.linalg.eigvalsh(g) > 0)
    off = g[~np.eye(rs.rank, dtype=bool)]
    assert np.all(off <= 1e-12)


def test_rho_half_sum_and_closed_form(rs):
    half = 0.5 * sum(m * a for m, a in zip(rs.multiplicities, rs.positive_roots))
    assert np.allclose(rs.rho.std_coords, half, atol=1e-12)
    assert np.allclose(rs.rho.std_coords, rho_closed_form(rs.preset.family, _param(rs.preset)), atol=1e-12)


def test_b2_so25_data():
    rs = build_root_system(B2(5))
    assert rs.root_names == ("a1", "a2", "a3", "a4")
    assert np.array_equal(rs.positive_roots, [[1, -1], [0, 1], [1, 0], [1, 1]])
    assert rs.multiplicity == {"a1": 1, "a2": 3, "a3": 3, "a4": 1}
    assert np.allclose(rs.rho.std_coords, [2.5, 1.5])


@pytest.mark.parametrize("m", [1, 2, 4, 8])
def test_a2_rho_is_m_alpha3(m):
    rs = build_root_system(A2(m))
    assert rs.rho.isclose(m * rs.root("a3"), 1e-12)
    assert np.allclose(rs.root("a3").std_coords, rs.root("a1").std_coords + rs.root("a2").std_coords)
    # |alpha_i|^2 = 2 at angle 2 pi / 3
    assert np.allclose(rs.gram, [[2, -1], [-1, 2]])


def test_product_a1_rho_and_orthogonal_roots():
    rs = build_root_system(product_a1([0.5, 0.5]))
    assert np.allclose(rs.rho.std_coords, [0.5, 0.5])
    assert abs(rs.gram[0, 1]) == 0.0


def test_functional_round_trip(rs, rng):
    for _ in range(50):
        v = rng.normal(size=rs.rank) * 5
        f = rs.functional(v)
        g = rs.from_root_coords(f.root_coords)
        assert np.allclose(g.std_coords, v, rtol=1e-12, atol=1e-12)
    z = rs.zero()
    assert np.all(z.std_coords == 0) and np.all(z.root_coords == 0)


@pytest.mark.parametrize("name,size", [("A2(1)", 6), ("A2(8)", 6), ("B2(3)", 8), ("B2(10)", 8),
                                       ("ProductA1(1)", 2), ("ProductA1(2)", 4), ("ProductA1(3)", 8)])
def test_weyl_order(name, size):
    assert len(weyl_group(build_root_system(PRESETS[name]))) == size


def test_weyl_group_matches_closed_form_and_is_closed(rs):
    w = rs.weyl
    mine = {tuple(np.round(g, 9).ravel() + 0.0) for g in w.elements}
    ref = {tuple(np.round(g, 9).ravel() + 0.0) for g in weyl_matrices(rs.preset.family, rs.rank)}
    assert mine == ref
    for a, b in itertools.product(w.elements, repeat=2):
        w.index_of(a @ b)
    for g in w.elements:
        assert np.allclose(g.T @ g, np.eye(rs.rank), atol=1e-12)
        # inner products of roots are preserved
        assert np.allclose((rs.simple_roots @ g.T) @ (rs.simple_roots @ g.T).T, rs.gram, atol=1e-12)
    assert np.allclose(w.elements[0], np.eye(rs.rank))


def test_w0_maps_dominant_cone_to_negative(rs, rng):
    w = rs.weyl
    for _ in range(20):
        lam = random_dominant(rs, rng)
        img = rs.functional(w.w0 @ lam.std_coords)
        assert rs.is_dominant(-img)


def test_dominant_project_examples():
    rs = build_root_system(B2(5))
    w = rs.weyl
    lam, i = dominant_project(rs, w, rs.functional([-1, 0]))
    assert np.allclose(lam.std_coords, [1, 0])
    z, i0 = dominant_project(rs, w, rs.zero())
    assert z.is_zero() and np.allclose(w.elements[i0], np.eye(2))
    a2 = build_root_system(A2(1))
    r, j = dominant_project(a2, a2.weyl, a2.rho)
    assert r.isclose(a2.rho) and np.allclose(a2.weyl.elements[j], np.eye(2))


@given(data=st.data())
def test_dominant_project_in_orbit_and_chamber(data):
    name = data.draw(st.sampled_from(sorted(PRESETS)))
    rs = build_root_system(PRESETS[name])
    v = np.array(data.draw(st.lists(coords, min_size=rs.rank, max_size=rs.rank)))
    lam = rs.functional(v)
    dom, i = dominant_project(rs, rs.weyl, lam)
    assert rs.is_dominant(dom)
    assert np.allclose(rs.weyl.elements[i] @ v, dom.std_coords, atol=1e-9)
    orbit = [g @ v for g in weyl_matrices(rs.preset.family, rs.rank)]
    assert any(np.allclose(o, dom.std_coords, atol=1e-9) for o in orbit)
    # independent of the starting orbit point
    for o in orbit:
        assert np.allclose(dominant_project(rs, rs.weyl, rs.functional(o))[0].std_coords,
                           dom.std_coords, atol=1e-9)


@given(data=st.data())
def test_iota_is_involution(data):
    name = data.draw(st.sampled_from(sorted(PRESETS)))
    rs = build_root_system(PRESETS[name])
    v = data.draw(st.lists(coords, min_size=rs.rank, max_size=rs.rank))
    lam = rs.functional(v)
    back = opposition_involution(rs, rs.weyl, opposition_involution(rs, rs.weyl, lam))
    assert back.isclose(lam, 1e-10)


def test_iota_examples():
    a2 = build_root_system(A2(1))
    w = a2.weyl
    assert opposition_involution(a2, w, a2.root("a1")).isclose(a2.root("a2"), 1e-12)
    assert opposition_involution(a2, w, a2.rho).isclose(a2.rho, 1e-12)
    b2 = build_root_system(B2(4))
    v = b2.functional([0.3, -1.7])
    assert opposition_involution(b2, b2.weyl, v).isclose(v, 1e-12)


def test_rho_is_hermitian_and_iota_fixed(rs):
    assert is_hermitian_dominant(rs, rs.weyl, rs.rho)
    assert opposition_involution(rs, rs.weyl, rs.rho).isclose(rs.rho, 1e-12)


def test_hermitian_cone_a2_is_ray_of_rho(rng):
    rs = build_root_system(A2(1))
    w = rs.weyl
    h1 = rs.functional(rs.coweights[0])
    assert not is_hermitian_dominant(rs, w, h1)
    for _ in range(50):
        lam = random_dominant(rs, rng)
        on_ray = abs(lam.root_coords[0] - lam.root_coords[1]) < 1e-12
        assert is_hermitian_dominant(rs, w, lam) == on_ray
        assert is_hermitian_dominant(rs, w, float(rng.uniform(0, 5)) * rs.rho)


def test_hermitian_b2_and_product_everything(rng):
    for p in (B2(5), product_a1([0.5, 0.25])):
        rs = build_root_system(p)
        for _ in range(20):
            assert is_hermitian_dominant(rs, rs.weyl, random_dominant(rs, rng))


def test_hermitian_requires_dominant():
    rs = build_root_system(B2(5))
    with pytest.raises(PreconditionError):
        is_hermitian_dominant(rs, rs.weyl, rs.functional([-1, 0]))


@pytest.mark.parametrize("preset,expected", [(A2(1), False), (A2(4), False), (B2(3), True), (B2(7), True),
                                             (product_a1([0.5]), False), (product_a1([0.5, 0.5]), True)])
def test_limit_cone_theorem_applicability(preset, expected):
    assert limit_cone_theorem_applicable(build_root_system(preset)) is expected


@pytest.mark.parametrize("block", [{"preset": "B2_SO2n", "n": 2}, {"preset": "A2_family", "m": 0},
                                   {"preset": "ProductA1", "k": 2, "rhos": [0.5, -1]},
                                   {"preset": "ProductA1", "k": 0, "rhos": []},
                                   {"preset": "ProductA1", "k": 3, "rhos": [1, 1]},
                                   {"preset": "G2"}])
def test_out_of_range_presets(block):
    with pytest.raises(ParameterError):
        build_root_system(block)


def test_a2_nonstandard_m_warns():
    with pytest.warns(UserWarning):
        rs = build_root_system(A2(3))
    assert rs.rho.isclose(3 * rs.root("a3"))


def test_preset_json_round_trip():
    for p in PRESETS.values():
        assert Preset.from_json(p.to_json()) == p
    assert Preset.from_json({"preset": "ProductA1", "k": 2}).rhos == (0.5, 0.5)
    assert Preset.from_json({"preset": "ProductA1", "rhos": ["1/2", "3/4"]}).rhos == (0.5, 0.75)


def test_named_functionals():
    rs = build_root_system(B2(5))
    assert np.allclose(rs.named("h1").std_coords, [1, 0])
    assert np.allclose(rs.named("h2").std_coords, [1, 1])
    assert np.allclose(rs.named("a4").std_coords, [1, 1])
    assert rs.named("rho").isclose(rs.rho)
    for name in ("h3", "a7"):
        with pytest.raises(ParameterError):
            rs.named(name)
    # coweights are dual to simple roots
    assert np.allclose(rs.simple_roots @ rs.coweights.T, np.eye(2))
    assert math.isclose(rs.rho(rs.coweights[1]), 4.0)
