import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import legendre_phi
from polytemper import spherical
from polytemper.errors import NumericError, ParameterError
from polytemper.spherical import check_phi_bound, phi, phi_value, xi, xi_bounds

U_GRID = np.linspace(0, 20, 81)


def test_phi_at_origin():
    for s in (-2.0, -0.3, 0.0, 0.7, 1.0, 3.0, 0.5j):
        assert abs(phi(s, 0.0) - 1.0) <= 1e-10
    assert abs(xi(0.0) - 1) <= 1e-10


@pytest.mark.parametrize("s", [0.3, 0.7, 1.2])
def test_weyl_symmetry(s):
    for u in np.linspace(0, 10, 21):
        a, b = phi(s, u), phi(-s, u)
        assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


def test_phi_at_rho_is_one():
    for u in (0.5, 3.0, 15.0, 20.0):
        assert abs(phi(1.0, u) - 1.0) <= 1e-9


@pytest.mark.parametrize("s", [0.0, 0.25, 0.5, 0.9, 1.5, -0.4])
def test_matches_legendre_oracle(s):
    for u in (0.05, 0.8, 4.0, 11.0, 19.0):
        ref = legendre_phi(s, u)
        assert math.isclose(phi(s, u), ref, rel_tol=1e-8)


@given(st.floats(-2, 2), st.floats(0, 12))
def test_symmetry_property(s, u):
    a, b = phi(s, u), phi(-s, u)
    assert abs(a - b) <= 1e-8 * max(1.0, abs(a))
    assert a > 0


def test_imaginary_parameter_bounded_by_xi():
    for u in (0.5, 2.0, 8.0):
        v = phi(0.8j, u)
        assert isinstance(v, float)
        assert abs(v) <= xi(u) * (1 + 1e-9)
        # conical function P_{-1/2 + 0.4i}
        assert math.isclose(v, legendre_phi(0.8j, u), rel_tol=1e-8)


def test_xi_bounds_and_monotone():
    b = xi_bounds(U_GRID)
    assert b.lower_holds and b.min_lower_slack >= -1e-12
    assert b.fitted_C <= 10
    assert b.decreasing
    for u in U_GRID:
        v = xi(u)
        assert math.exp(-u) <= v * (1 + 1e-12)
        assert v <= b.fitted_C * (1 + u) * math.exp(-u) * (1 + 1e-12)


def test_check_phi_bound_examples():
    r0 = check_phi_bound([0.0], np.linspace(0, 15, 31))
    assert r0.max_violation == 0.0 and r0.holds
    assert max(abs(row[4]) for row in r0.rows) <= 1e-12
    for s in (0.5, 1.0):
        r = check_phi_bound([s], np.linspace(0, 15, 31))
        assert r.holds and r.min_slack >= -1e-8
    with pytest.raises(ParameterError):
        check_phi_bound([1.5], [1.0])


def test_csv_and_value_record():
    r = check_phi_bound([0.5], [0.0, 1.0])
    lines = r.to_csv().splitlines()
    assert lines[0] == "s,u,phi,xi,bound_slack"
    assert len(lines) == 3 and lines[1].startswith("0.5,0.0,1.0,1.0,")
    v = phi_value(0.5, 3.0)
    assert v.quadrature_nodes >= 128 and v.u == 3.0


def test_errors(monkeypatch):
    with pytest.raises(ParameterError):
        phi(0.5, -1.0)
    with pytest.raises(ParameterError):
        phi(0.5, 1.0, nodes=8)
    monkeypatch.setattr(spherical, "MAX_NODES", 64)
    with pytest.raises(NumericError):
        phi(0.5, 5.0)
