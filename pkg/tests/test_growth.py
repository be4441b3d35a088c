import math

import numpy as np
import pytest

from oracles import sl2z_box, sl2z_cartan
from polytemper.cartan_orbit import (
    completeness_radius,
    critical_exponent,
    default_window,
    directional_growth,
    enumerate_ball,
    limit_cone_stats,
    product_ball,
    sl2z_matrices,
    sl2z_norm_ball,
    sl_element,
)
from polytemper.errors import InsufficientDataError, ParameterError, PreconditionError
from polytemper.root_system import A2, build_root_system, opposition_involution, product_a1
from polytemper.verdicts import limit_cone_temperedness

SL2 = build_root_system(product_a1([1.0]))     # rho(u) = u
P2 = build_root_system(product_a1([1.0, 1.0]))
A2_RS = build_root_system(A2(1))
S = sl_element([[0, -1], [1, 0]])
T = sl_element([[1, 1], [0, 1]])


@pytest.fixture(scope="module")
def sl2z_ball():
    return enumerate_ball([S, T], True, 12)


@pytest.fixture(scope="module")
def cyclic_ball():
    return enumerate_ball([sl_element([[2, 0], [0, "1/2"]])], True, 2000)


def test_cyclic_exponent_is_zero(cyclic_ball):
    est = critical_exponent(cyclic_ball, SL2, SL2.rho)
    assert abs(est.value) < 0.05
    assert est.sample_count >= 30
    d = directional_growth(cyclic_ball, SL2, [1.0], 0.1)
    assert abs(d.value) < 0.05


def test_sl2z_exponents(sl2z_ball):
    R = completeness_radius([s.mu_plus.coords[0] for s in sl2z_ball], sl2z_norm_ball(3.0))
    plain = critical_exponent(sl2z_ball, SL2, SL2.rho, fit_window=(1.0, R), estimator="shell")
    mod = critical_exponent(sl2z_ball, SL2, SL2.rho, modified=True, fit_window=(1.0, R), estimator="shell")
    assert abs(plain.value - 2) < 0.15
    assert abs(mod.value - (plain.value - 1)) < 0.05
    assert plain.quantity == "delta" and mod.quantity == "delta_prime"
    # the default cumulative estimator also sees the lattice rate
    cum = critical_exponent(sl2z_ball, SL2, SL2.rho, fit_window=(1.0, R))
    assert abs(cum.value - 2) < 0.15


def test_library_lattice_oracle_matches_brute_force():
    # the shipped norm-ball oracle against the test-side entry box
    T_max = 2.0
    ref = sorted(sl2z_cartan(*m) for m in sl2z_box(30).tolist() if sl2z_cartan(*m) <= T_max)
    got = sl2z_norm_ball(T_max)
    assert len(got) == len(ref)
    assert np.allclose(got, ref, atol=1e-12)
    assert sum(1 for _ in sl2z_matrices(2)) == 4  # {+-I, +-S}, the integral rotations


def test_completeness_radius():
    assert completeness_radius([0, 1, 2], [0, 1, 2, 3]) == 3
    assert completeness_radius([0, 2], [0, 1, 2]) == 1
    assert completeness_radius([0, 1], [0, 1]) == pytest.approx(1)


def test_windows_and_errors(sl2z_ball):
    vals = np.array([0.0, 1.0, 11.0])
    assert default_window(vals) == pytest.approx((11 - 6.6, 11))
    with pytest.raises(InsufficientDataError):
        default_window(np.array([]))
    few = sl2z_ball[:20]
    with pytest.raises(InsufficientDataError):
        critical_exponent(few, SL2, SL2.rho)
    with pytest.raises(ParameterError):
        critical_exponent(sl2z_ball, SL2, SL2.rho, fit_window=(2, 1))
    with pytest.raises(ParameterError):
        critical_exponent(sl2z_ball, SL2, SL2.rho, estimator="median")
    with pytest.raises(ParameterError):
        critical_exponent(sl2z_ball, SL2, SL2.rho, fit_window=(1, 2.6), estimator="shell", shell_width=2.0)
    with pytest.raises(PreconditionError):
        critical_exponent(sl2z_ball, SL2, -SL2.rho)
    with pytest.raises(PreconditionError):
        directional_growth(sl2z_ball, SL2, [2.0], 0.1)
    with pytest.raises(PreconditionError):
        directional_growth(sl2z_ball, SL2, [-1.0], 0.1)
    with pytest.raises(ParameterError):
        directional_growth(sl2z_ball, SL2, [1.0], 0.0)


def test_estimate_json_reports_residual(cyclic_ball):
    est = critical_exponent(cyclic_ball, SL2, SL2.rho)
    j = est.to_json()
    assert set(j) == {"quantity", "value", "fit_window", "fit_residual", "sample_count", "estimator", "params"}
    assert j["fit_residual"] >= 0


def test_empty_cone_is_minus_infinity():
    # the cyclic diagonal group inside the first factor never leaves the H_1 axis
    ball = product_ball([[sl_element([[2, 0], [0, "1/2"]])], [sl_element([[1, 0], [0, 1]])]], True, 50)
    est = directional_growth(ball, P2, [0.0, 1.0], 0.1)
    assert est.value == -math.inf and est.sample_count == 0
    assert est.to_json()["value"] == "-infinity"


def test_product_wall_direction_growth():
    ball = product_ball([[S, T], [S, T]], True, 8)
    est = directional_growth(ball, P2, [1.0, 0.0], 0.1, fit_window=(1.0, 2.4))
    assert abs(est.value - 2) < 0.2
    stats = limit_cone_stats(ball, P2, 1.0)
    assert stats.min_wall_distance < 1e-9
    assert limit_cone_temperedness(P2, stats) == "hypothesis_unmet"


def test_limit_cone_of_regular_diagonal_element():
    g = sl_element([[4, 0, 0], [0, 2, 0], [0, 0, "1/8"]])
    semi = enumerate_ball([g], False, 20)
    st1 = limit_cone_stats(semi, A2_RS, 1.0)
    assert len(st1.directions) == 1
    assert st1.min_wall_distance > 0
    d = st1.directions[0].coords
    # gamma^-n has projection iota(n mu_+(gamma)), a second ray
    group = enumerate_ball([g], True, 20)
    st2 = limit_cone_stats(group, A2_RS, 1.0)
    assert len(st2.directions) == 2
    iota_d = opposition_involution(A2_RS, A2_RS.weyl, A2_RS.functional(d)).std_coords
    assert any(np.allclose(x.coords, iota_d, atol=1e-9) for x in st2.directions)
    assert st2.min_wall_distance > 0


def test_limit_cone_needs_samples(cyclic_ball):
    with pytest.raises(InsufficientDataError):
        limit_cone_stats(cyclic_ball, SL2, 1e6)
    with pytest.raises(ParameterError):
        limit_cone_stats(cyclic_ball, SL2, 0.0)
