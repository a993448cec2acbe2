"""Bump terms, cutoffs and dilated partners against sympy and FFT oracles."""
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sint

from hadamard_ops import (
    Dilated,
    DomainError,
    Monomial,
    NegativePower,
    TestFunction,
    bump_derivative,
    cutoff,
    fourier_grid,
    fourier_sample,
    smooth_step,
)
from hadamard_ops.testfn import BUMP_INTEGRAL

u = sp.symbols("u", real=True)
PSI = sp.exp(-1 / (1 - u**2))


@pytest.mark.parametrize("n", range(6))
def test_bump_derivatives_match_sympy(n):
    expr = sp.lambdify(u, sp.diff(PSI, u, n), "numpy")
    pts = np.linspace(-0.97, 0.97, 41)
    np.testing.assert_allclose(bump_derivative(n, pts), expr(pts), rtol=1e-10, atol=1e-14)
    assert np.all(bump_derivative(n, np.array([-1.0, 1.0, 1.5])) == 0)


def test_bump_integral_constant():
    ref, _ = sint.quad(lambda x: math.exp(-1 / (1 - x * x)), -1, 1, epsabs=1e-15)
    assert abs(BUMP_INTEGRAL - ref) < 1e-14


def test_smooth_step_matches_sympy():
    h = lambda v: sp.exp(-1 / v)  # noqa: E731
    q = h(u) / (h(u) + h(1 - u))
    pts = np.linspace(0.05, 0.95, 19)
    for n in range(4):
        expr = sp.lambdify(u, sp.diff(q, u, n), "numpy")
        np.testing.assert_allclose(smooth_step(n, pts), expr(pts), rtol=1e-9, atol=1e-12)
    np.testing.assert_array_equal(smooth_step(0, np.array([-1.0, 0.0, 1.0, 2.0])), [0, 0, 1, 1])


def test_cutoff_plateau_support_and_parity():
    x = np.linspace(-1.5, 1.5, 301)
    c = cutoff(0, x)
    assert np.all(c[np.abs(x) <= 0.5] == 1.0)
    assert np.all(c[np.abs(x) >= 1.0] == 0.0)
    np.testing.assert_allclose(c, cutoff(0, -x), atol=0)
    d1 = cutoff(1, x)
    np.testing.assert_allclose(d1, -cutoff(1, -x), atol=0)


def test_cutoff_derivative_by_finite_differences():
    x = np.linspace(-0.95, 0.95, 39)
    h = 1e-5
    fd = (cutoff(0, x + h) - cutoff(0, x - h)) / (2 * h)
    np.testing.assert_allclose(cutoff(1, x), fd, atol=1e-7)


def test_test_function_derivative_matches_sympy():
    phi = TestFunction.bump(0.3, 0.8, coeff=1.7, gamma=[2])
    x = sp.symbols("x", real=True)
    expr = 1.7 * (x - 0.3) ** 2 * PSI.subs(u, (x - 0.3) / 0.8)
    pts = np.linspace(-0.45, 1.05, 31)
    for k in range(4):
        ref = sp.lambdify(x, sp.diff(expr, x, k), "numpy")(pts)
        np.testing.assert_allclose(phi.deriv([k], pts.reshape(-1, 1)), ref, rtol=1e-9, atol=1e-12)


def test_two_dimensional_product_derivative():
    phi = TestFunction.bump((0.5, -0.2), (0.7, 0.9), gamma=(1, 0))
    x, y = sp.symbols("x y", real=True)
    expr = (x - 0.5) * PSI.subs(u, (x - 0.5) / 0.7) * PSI.subs(u, (y + 0.2) / 0.9)
    ref = sp.lambdify((x, y), sp.diff(expr, x, 2, y, 1), "numpy")
    X = np.array([[0.4, 0.1], [0.9, -0.5], [0.2, 0.3]])
    np.testing.assert_allclose(phi.deriv((2, 1), X), ref(X[:, 0], X[:, 1]), rtol=1e-9)


@given(st.floats(-2, 2), st.floats(0.2, 1.5), st.floats(-3, 3).filter(lambda a: abs(a) > 0.1), st.floats(-1, 1))
def test_affine_is_exact_composition(m, s, a, b):
    phi = TestFunction.bump(m, s, gamma=[1])
    psi = phi.affine([a], [b])
    pts = np.linspace(-3, 3, 25).reshape(-1, 1)
    np.testing.assert_allclose(psi(pts), phi(a * pts + b), rtol=1e-12, atol=1e-14)


@given(st.integers(0, 3), st.floats(-1.5, 1.5))
def test_multiply_monomial(alpha, m):
    phi = TestFunction.bump(m, 0.9, gamma=[1])
    pts = np.linspace(m - 1, m + 1, 17).reshape(-1, 1)
    np.testing.assert_allclose(phi.multiply_monomial([alpha])(pts), pts[:, 0] ** alpha * phi(pts), rtol=1e-11, atol=1e-13)


def test_json_round_trip_and_unknown_fields():
    phi = TestFunction.bump((0.5, -0.2), (0.7, 0.9), coeff=0.5 + 1j, gamma=(1, 2))
    assert TestFunction.from_json(phi.to_json()) == phi
    with pytest.raises(DomainError):
        TestFunction.from_json([{"m": [0.0], "s": [1.0], "extra": 1}])
    with pytest.raises(DomainError):
        TestFunction.bump(0.0, -1.0)


def test_fourier_sample_agrees_with_fft_oracle():
    phi = TestFunction.bump(0.3, 1.0)
    xi, spec = fourier_grid(phi, n=2048, pad=16)
    for target in (0.5, 1.0, 2.0, -1.5):
        i = int(np.argmin(np.abs(xi - target)))
        assert abs(fourier_sample(phi, [0], [xi[i]]).value - spec[i]) < 1e-10


def test_fourier_derivative_by_finite_differences():
    phi = TestFunction.bump(0.3, 1.0)
    h = 1e-4
    fd = (fourier_sample(phi, [0], [1 + h]).value - fourier_sample(phi, [0], [1 - h]).value) / (2 * h)
    assert abs(fourier_sample(phi, [1], [1.0]).value - fd) < 1e-7


def test_negative_power_keeps_sign_of_odd_powers():
    f = NegativePower((0,))
    X = np.array([[-2.0], [2.0]])
    # σ(x)/x = 1/|x|
    np.testing.assert_allclose(f(X), [0.5, 0.5])
    g = NegativePower((1,))
    # σ(x)/x² is odd
    np.testing.assert_allclose(g(X), [-0.25, 0.25])
    x = sp.symbols("x", real=True)
    for k in range(4):
        # σ is locally constant, so differentiate each branch separately
        pos = sp.lambdify(x, sp.diff(1 / x**2, x, k), "numpy")
        neg = sp.lambdify(x, sp.diff(-1 / x**2, x, k), "numpy")
        ref = np.where(X[:, 0] > 0, pos(X[:, 0]), neg(X[:, 0]))
        np.testing.assert_allclose(g.deriv([k], X), ref, rtol=1e-12)


def test_monomial_derivatives():
    m = Monomial((3, 1), 2.0)
    X = np.array([[1.5, -2.0]])
    assert m.deriv((2, 1), X)[0] == pytest.approx(2.0 * 6 * 1.5)
    assert m.deriv((4, 0), X)[0] == 0.0


def test_dilated_matches_sympy():
    phi = TestFunction.bump(0.4, 0.9)
    y = 1.7
    x = sp.symbols("x", real=True)
    base = PSI.subs(u, (x - 0.4) / 0.9)
    for k in range(3):
        g = Dilated(phi, [y], [k])
        expr = x**k * sp.diff(base, x, k).subs(x, x * y)
        pts = np.linspace(-0.2, 0.75, 11)
        for beta in range(3):
            ref = sp.lambdify(x, sp.diff(expr, x, beta), "numpy")(pts)
            np.testing.assert_allclose(g.deriv([beta], pts.reshape(-1, 1)), ref, rtol=1e-8, atol=1e-11)


def test_dilated_at_zero_is_constant_in_x():
    phi = TestFunction.bump(0.0, 1.0)
    g = Dilated(phi, [0.0], [0])
    pts = np.linspace(-5, 5, 7).reshape(-1, 1)
    np.testing.assert_allclose(g(pts), phi([[0.0]])[0])
    assert g.support().lo[0] == -math.inf
