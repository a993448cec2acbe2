"""Multi-indices, regions and the cubature engine against scipy and closed forms."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sint
from scipy.special import perm

from hadamard_ops import (
    Box,
    BoxUnion,
    DomainError,
    MultiIndex,
    PairingConfig,
    QuadrantBox,
    QuadratureError,
    SingularityError,
    WEps,
    factorial_ratio,
    falling_factorial,
    integrate,
    monomial,
    sigma,
    truncation_radius,
)
from hadamard_ops.foundation import probe_singularity

small = st.integers(0, 6)


def test_multi_index_is_componentwise():
    a, b = MultiIndex(1, 2), MultiIndex(3, 0)
    assert a + b == (4, 2)
    assert (b - MultiIndex(1, 0)) == (2, 0)
    assert a.order == 3 and a.d == 2
    assert a.factorial() == 2
    assert MultiIndex(1, 1).leq((1, 2)) and not MultiIndex(2, 0).leq((1, 2))


def test_multi_index_rejects_negative_and_mismatch():
    with pytest.raises(DomainError):
        MultiIndex(-1, 0)
    with pytest.raises(DomainError):
        MultiIndex(1, 2) - MultiIndex(2, 0)
    with pytest.raises(DomainError):
        MultiIndex(1) + MultiIndex(1, 1)


def test_below_and_order_enumeration():
    assert list(MultiIndex(1, 1).below()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(MultiIndex.all_of_order_at_most(2, 4)) == 15  # C(6, 2)


@given(st.lists(small, min_size=1, max_size=2), st.lists(small, min_size=1, max_size=2))
def test_factorial_ratio_matches_scipy(alpha, k):
    k = (k * 2)[: len(alpha)]
    expected = math.prod(int(perm(a + b, b, exact=True)) for a, b in zip(alpha, k))
    assert factorial_ratio(alpha, k) == expected


def test_factorial_ratio_is_exact_for_large_orders():
    assert factorial_ratio([60], [60]) == math.factorial(120) // math.factorial(60)


@given(st.integers(-8, 8), st.integers(0, 6))
def test_falling_factorial_product_definition(n, k):
    assert falling_factorial(n, k) == math.prod(n - i for i in range(k))


def test_sigma_and_monomial():
    assert sigma([2.0, -3.0]) == -1 and sigma([-1.0, -1.0]) == 1
    with pytest.raises(DomainError):
        sigma([0.0, 1.0])
    X = np.array([[2.0, -3.0], [0.5, 1.0]])
    np.testing.assert_array_equal(monomial(X, (2, 1)), [-12.0, 0.25])


def test_w_eps_box_intersection_empty_iff_eps_exceeds_min_radius():
    box = Box.centered([2.0, 3.0])
    assert not WEps(1.9, 2).intersect(box).empty
    assert not WEps(2.0, 2).intersect(box).empty
    assert WEps(2.1, 2).intersect(box).empty


def test_regions_contain_expected_points():
    assert WEps(0.5, 2).contains([0.6, -0.7]) and not WEps(0.5, 2).contains([0.6, 0.1])
    q = QuadrantBox((1, -1), Box.centered([1.0, 1.0]))
    assert q.contains([0.5, -0.5]) and not q.contains([0.5, 0.5])
    assert Box((1.0,), (2.0,)).hyperplane_distance() == 1.0
    assert Box((-1.0,), (2.0,)).hyperplane_distance() == 0.0


def test_pairing_config_validation():
    with pytest.raises(DomainError):
        PairingConfig(rel_tol=0)
    with pytest.raises(DomainError):
        PairingConfig(max_subdivisions=0)
    with pytest.raises(DomainError):
        PairingConfig().check_dim(3)


CASES_1D = [
    (lambda x: np.exp(-x) * np.sin(3 * x), 0.0, 4.0),
    (lambda x: 1.0 / (1.0 + x * x), -2.0, 5.0),
    (lambda x: np.sqrt(np.abs(x)), -1.0, 1.0),
    (lambda x: np.log(x), 1e-8, 1.0),
]


@pytest.mark.parametrize("f,a,b", CASES_1D)
def test_integrate_1d_matches_quad(f, a, b, cfg):
    ref, _ = sint.quad(f, a, b, epsabs=1e-13, epsrel=1e-12, limit=500)
    est = integrate(lambda X: f(X[:, 0]), Box((a,), (b,)), cfg)
    assert abs(est.value - ref) <= 1e-9 * max(1.0, abs(ref))
    assert est.error <= 1e-8 * max(1.0, abs(ref))


def test_integrate_2d_matches_dblquad(cfg):
    f = lambda y, x: np.exp(-x * y) * np.cos(x + 2 * y)  # noqa: E731
    ref, _ = sint.dblquad(f, 0.0, 2.0, -1.0, 1.0, epsabs=1e-13, epsrel=1e-12)
    est = integrate(lambda X: f(X[:, 1], X[:, 0]), Box((0.0, -1.0), (2.0, 1.0)), cfg)
    assert abs(est.value - ref) <= 1e-9


def test_integrate_complex_oscillatory(cfg):
    est = integrate(lambda X: np.exp(1j * 10 * X[:, 0]), Box((0.0,), (1.0,)), cfg)
    assert abs(est.value - (np.exp(10j) - 1) / 10j) <= 1e-11


def test_integrate_unbounded_uses_decay(cfg):
    f = lambda X: 1.0 / (1.0 + X[:, 0] ** 2) ** 2  # noqa: E731
    est = integrate(f, Box((-math.inf,), (math.inf,)), cfg, decay=(4.0, 1.0))
    assert abs(est.value - math.pi / 2) <= 1e-9
    with pytest.raises(DomainError):
        integrate(f, Box((0.0,), (math.inf,)), cfg)


def test_truncation_radius_controls_the_tail():
    R = truncation_radius(3.0, 1.0, 1, 1e-10)
    tail = 2 * sint.quad(lambda r: (1 + r * r) ** -1.5, R, np.inf)[0]
    assert tail <= 1e-10 / 2 * 1.0001


@given(
    st.floats(-3, 3),
    st.floats(0.1, 3),
    st.floats(0.05, 0.95),
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
)
def test_integrate_additive_over_splits(a, w, frac, coeffs):
    poly = np.polynomial.Polynomial(coeffs)
    f = lambda X: poly(X[:, 0]) * np.cos(X[:, 0])  # noqa: E731
    b, m = a + w, a + frac * w
    whole = integrate(f, Box((a,), (b,)))
    parts = integrate(f, BoxUnion((Box((a,), (m,)), Box((m,), (b,)))))
    assert abs(whole.value - parts.value) <= whole.error + parts.error + 1e-12


@given(st.lists(st.integers(0, 4), min_size=2, max_size=2), st.floats(0.2, 2), st.floats(0.2, 2))
def test_integrate_monomials_exactly(p, hx, hy):
    est = integrate(lambda X: monomial(X, p), Box((0.0, 0.0), (hx, hy)))
    ref = hx ** (p[0] + 1) / (p[0] + 1) * hy ** (p[1] + 1) / (p[1] + 1)
    assert abs(est.value - ref) <= 1e-12 * max(1.0, ref)


def test_budget_exhaustion_raises_quadrature_error():
    cfg = PairingConfig(max_subdivisions=4)
    with pytest.raises(QuadratureError) as info:
        integrate(lambda X: np.sin(200 * X[:, 0]) ** 2, Box((0.0,), (10.0,)), cfg)
    assert info.value.value is not None and info.value.error > 0


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_non_integrable_singularity_is_reported():
    with pytest.raises(QuadratureError):
        integrate(lambda X: 1.0 / X[:, 0], Box((0.0,), (1.0,)), PairingConfig(max_subdivisions=5000))


def test_integrand_returning_inf_is_a_singularity():
    with pytest.raises(SingularityError):
        integrate(lambda X: np.where(X[:, 0] < 0.5, np.inf, 1.0), Box((0.0,), (1.0,)))


def test_probe_singularity_separates_integrable_powers():
    box = Box((0.0,), (1.0,))
    finite, _ = probe_singularity(lambda X: np.abs(X[:, 0]) ** -0.5, box)
    assert finite
    finite, partials = probe_singularity(lambda X: 1.0 / np.abs(X[:, 0]), box)
    assert not finite and partials[-1] > partials[0]


def test_integrate_is_deterministic(cfg):
    f = lambda X: np.exp(-X[:, 0] ** 2) * np.cos(5 * X[:, 1])  # noqa: E731
    box = Box((-2.0, -1.0), (2.0, 1.0))
    assert integrate(f, box, cfg) == integrate(f, box, cfg)
