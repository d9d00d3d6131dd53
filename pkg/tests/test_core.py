import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle
from partheta import (DerivOrder, Parameter, de_residual, decomposition_residual, evaluate,
                      fe_residual, fourfold_residual, limit_function, phi, theta, xi)
from partheta.core import default_digits
from partheta.errors import DomainError

qs = st.floats(min_value=-0.9, max_value=0.9).filter(lambda q: abs(q) > 1e-3)
xs = st.floats(min_value=-5, max_value=5)


def test_q_zero_is_one_plus_nothing():
    # [TRIVIAL] theta(0, x) = 1
    assert evaluate(0, 3).value == 1
    assert evaluate(0, 3, DerivOrder(0, 1)).value == 3  # d/dq picks q^1 x^1
    assert evaluate(0, 3, DerivOrder(1, 0)).value == 0


def test_x_zero():
    assert evaluate("-0.5", 0).value == 1
    assert evaluate("-0.5", 0, DerivOrder(1, 0)).value == mpmath.mpf("-0.5")


def test_known_value():
    # [DERIVED] oracle: theta(-1/2, 2)
    r = evaluate("-0.5", 2, digits=50)
    assert abs(r.value - oracle("-0.5", 2)) < mpmath.mpf(10) ** -48
    assert r.value < 0
    assert abs(r.value - oracle("-0.5", 2)) <= r.error_bound + mpmath.mpf(10) ** -49


@pytest.mark.parametrize("dx,dq", [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1)])
def test_derivatives_against_oracle(dx, dq):
    rng = random.Random(7 + 10 * dx + dq)
    for _ in range(10):
        q, x = rng.uniform(-0.9, 0.9), rng.uniform(-5, 5)
        r = evaluate(q, x, DerivOrder(dx, dq), digits=60)
        ref = oracle(q, x, dx, dq)
        assert abs(r.value - ref) <= max(r.error_bound * 2, mpmath.mpf(10) ** -55) * max(1, abs(ref))


def test_complex_argument():
    x = mpmath.mpc(1.5, 2.0)
    r = evaluate("-0.7", x, digits=40)
    assert abs(r.value - oracle("-0.7", x)) < mpmath.mpf(10) ** -35


def test_near_minus_one_converges_with_bound():
    r = evaluate("-0.999", "2", digits=30)
    assert r.terms_used > 1000
    assert r.tail_bound < mpmath.mpf(10) ** -30


def test_parameter_domain():
    for bad in (1, -1, 1.5, "2"):
        with pytest.raises(DomainError):
            Parameter(bad)
    with pytest.raises(DomainError):
        DerivOrder(4, 0)
    with pytest.raises(DomainError):
        de_residual(0, 1)
    with pytest.raises(DomainError):
        decomposition_residual("0.5", 1)


def test_default_digits_env(monkeypatch):
    monkeypatch.setenv("THETA_DIGITS", "40")
    assert default_digits() == 40
    monkeypatch.setenv("THETA_DIGITS", "10")
    with pytest.raises(DomainError):
        default_digits()


def test_phi_and_xi():
    # phi_1 = theta(tau, -1); at tau -> 0 it tends to 1 - tau
    t = mpmath.mpf("0.01")
    assert abs(phi(1, t).value - oracle(t, -1)) < mpmath.mpf(10) ** -50
    assert xi(2, "0.5") == mpmath.mpf(1) / (1 + mpmath.mpf("0.25"))
    with pytest.raises(DomainError):
        phi(0, "0.5")


def test_limit_function_domain():
    assert limit_function(0) == 1
    with pytest.raises(DomainError):
        limit_function(5)


@settings(max_examples=60, deadline=None)
@given(qs, xs)
def test_matches_oracle(q, x):
    r = evaluate(q, x, digits=50)
    assert abs(r.value - oracle(q, x)) <= r.error_bound + mpmath.mpf(10) ** -45


@settings(max_examples=60, deadline=None)
@given(qs, xs)
def test_functional_equation(q, x):
    res, bound = fe_residual(q, x, digits=40, with_bound=True)
    assert abs(res) <= 4 * bound + mpmath.mpf(10) ** -38


@settings(max_examples=40, deadline=None)
@given(qs, xs)
def test_differential_and_fourfold(q, x):
    res, bound = de_residual(q, x, digits=40, with_bound=True)
    assert abs(res) <= 4 * bound
    res, bound = fourfold_residual(q, x, digits=40, with_bound=True)
    assert abs(res) <= 4 * bound


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.9, max_value=-1e-3), xs)
def test_split_identity(q, x):
    res, bound = decomposition_residual(q, x, digits=40, with_bound=True)
    assert abs(res) <= 4 * bound


@settings(max_examples=30, deadline=None)
@given(qs, xs, st.floats(min_value=-3, max_value=3))
def test_conjugate_symmetry(q, a, b):
    z = mpmath.mpc(a, b)
    v1 = evaluate(q, z, digits=30).value
    v2 = evaluate(q, mpmath.conj(z), digits=30).value
    with mpmath.workdps(40):
        assert abs(v1 - mpmath.conj(v2)) < mpmath.mpf(10) ** -25 * max(1, abs(v1))


@settings(max_examples=30, deadline=None)
@given(qs, xs)
def test_x_derivative_matches_difference_quotient(q, x):
    with mpmath.workdps(60):
        h = mpmath.mpf(10) ** -20
        fd = (theta(q, mpmath.mpf(x) + h, digits=60) - theta(q, mpmath.mpf(x) - h, digits=60)) / (2 * h)
    assert abs(fd - theta(q, x, dx=1, digits=60)) < mpmath.mpf(10) ** -30 * max(1, abs(fd))


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=-5, max_value=5), st.integers(min_value=30, max_value=80))
def test_precision_independence(x, d):
    a = evaluate("-0.6", x, digits=d)
    b = evaluate("-0.6", x, digits=d + 30)
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound
