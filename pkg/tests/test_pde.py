"""Equation manifolds: restriction, dimension counts, symmetry checks."""

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from jetquot.jetcalc import VectorField
from jetquot.pde import (
    PdeManifold,
    RestrictionError,
    check_symmetry,
    determining_equations,
    dimension,
    solution_residual,
    substitute_coefficients,
)
from jetquot.symcore import jet, t, x

u, u_t, u_x = jet(0, 0), jet(1, 0), jet(0, 1)
u_tt, u_tx, u_xx = jet(2, 0), jet(1, 1), jet(0, 2)

F_BURGERS = u_xx - u_t - u * u_x
F_HS = u_tx + u * u_xx + u_x**2 / 2

BURGERS_GENS = [
    VectorField(1, 0, 0),
    VectorField(0, 1, 0),
    VectorField(0, t, 1),
    VectorField(t**2, t * x, x - t * u),
    VectorField(2 * t, x, -u),
]


@pytest.fixture(scope="module")
def burgers():
    return PdeManifold(F_BURGERS, (1, 0))


@pytest.fixture(scope="module")
def hs():
    return PdeManifold(F_HS, (1, 1))


def test_solved_rhs(burgers, hs):
    assert burgers.solved_rhs() == u_xx - u * u_x
    assert sp.expand(hs.solved_rhs() + u * u_xx + u_x**2 / 2) == 0


def test_restrict_eliminates_principal(burgers):
    e = u_t**2 + u_tx
    r = burgers.restrict(e)
    assert u_t not in r.free_symbols
    assert sp.Symbol("u_tx") not in r.free_symbols


def test_restrict_is_idempotent(burgers, hs):
    for M in (burgers, hs):
        e = jet(2, 1) + u_t * u_x + jet(1, 2)
        r = M.restrict(e)
        assert M.restrict(r) == r


def test_restriction_requires_affine_principal():
    with pytest.raises(RestrictionError):
        PdeManifold(u_t**2 - u_xx, (1, 0))
    with pytest.raises(RestrictionError):
        PdeManifold(u_xx - u, (1, 0))  # u_t absent


def test_dimension_formula(burgers, hs):
    # dim E_k = 3 + 2k for a second-order equation in two variables
    for k in range(2, 7):
        assert dimension(burgers, k) == 3 + 2 * k
        assert dimension(hs, k) == 3 + 2 * k
    with pytest.raises(Exception):
        dimension(burgers, 1)


def test_parametric_coordinates(hs):
    coords = hs.parametric_coordinates(2)
    names = {c.name for c in coords}
    # u_tx is principal, everything else of order <= 2 survives
    assert "u_tx" not in names
    assert {"u", "u_t", "u_x", "u_tt", "u_xx"} <= names


@pytest.mark.parametrize("X", BURGERS_GENS)
def test_burgers_symmetries_exact(burgers, X):
    res = check_symmetry(X, burgers)
    assert res.holds
    assert res.verdict.mode == "deterministic"


def test_non_symmetry_is_rejected(burgers):
    res = check_symmetry(VectorField(0, 0, x), burgers)
    assert not res.holds


def test_determining_equations_annihilated(burgers):
    eqs = determining_equations(burgers)
    assert len(eqs) > 1
    # the Galilean boost a=0, b=t, c=1 solves the determining system
    out = substitute_coefficients(eqs, sp.Integer(0), t, sp.Integer(1))
    assert all(sp.expand(e) == 0 for e in out)
    # a generic non-symmetry does not
    bad = substitute_coefficients(eqs, sp.Integer(0), sp.Integer(0), x)
    assert any(sp.expand(e) != 0 for e in bad)


def test_solution_residual_exact():
    # u = x/(1+t) solves Burgers' inviscid part u_t + u u_x = 0; use the
    # full equation with the viscous term, for which u_xx = 0
    cand = x / (1 + t)
    assert sp.simplify(solution_residual(u_t + u * u_x - u_xx, cand)) == 0
    assert sp.simplify(solution_residual(u_t + u * u_x, x)) != 0


@given(st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3))
@settings(max_examples=20, deadline=None)
def test_restrict_linearity(c1, c2):
    M = PdeManifold(F_BURGERS, (1, 0))
    e1, e2 = u_t * u_x, jet(1, 1) + u
    lhs = M.restrict(c1 * e1 + c2 * e2)
    rhs = c1 * M.restrict(e1) + c2 * M.restrict(e2)
    assert sp.expand(lhs - rhs) == 0
