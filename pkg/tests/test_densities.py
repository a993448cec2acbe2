"""Density catalog: declared decay bounds hold, JSON round-trips, composites."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadamard_ops import (
    CutoffPower,
    DomainError,
    ExpDecay,
    ExpOsc,
    FlatExp,
    GaussOsc,
    Indicator,
    Power,
    PowerWeight,
    Product,
    Rational,
    Scaled,
    Sharp,
    TestFunction,
    TestFunctionDensity,
    Times,
    cutoff,
    density_from_json,
)
from hadamard_ops.densities import monomial_density

INF = math.inf

CATALOG = [
    Indicator((1.0,), (2.0,), 0.7),
    Indicator((1.0, -2.0), (2.0, -1.0)),
    Power((-2,), (0.5,), (INF,)),
    Power((2, 1), (1.0, -1.0), (2.0, 3.0)),
    Rational(1.5, (-INF,), (INF,)),
    Rational(2.0, (-INF, -INF), (INF, INF)),
    ExpDecay(1.0, (1.0,), (INF,)),
    ExpDecay(0.5, (-INF, 0.5), (INF, INF)),
    FlatExp(),
    CutoffPower(2),
    ExpOsc(2, "remainder"),
    GaussOsc("core"),
    GaussOsc("deriv_base"),
    GaussOsc("tail"),
    Scaled(ExpDecay(1.0, (1.0,), (INF,)), (-2.0,)),
    Times(Rational(1.0, (-INF,), (INF,)), 2 - 1j),
    PowerWeight(ExpDecay(1.0, (0.5,), (INF,)), (-2,)),
    PowerWeight(Rational(2.0, (-INF,), (INF,)), (1,)),
    Sharp(Indicator((1.0,), (2.0,))),
    Product((Indicator((1.0,), (2.0,)), ExpDecay(1.0, (-INF,), (-1.0,)))),
    TestFunctionDensity(TestFunction.bump(1.5, 0.6)),
]


def _samples(t, n=2000):
    out = []
    for b in t.region().boxes():
        axes = []
        for lo, hi in zip(b.lo, b.hi):
            lo_, hi_ = max(lo, -1e4), min(hi, 1e4)
            core = np.linspace(lo_, hi_, n if t.d == 1 else 60)
            far = []
            if hi > 1:
                far.append(np.geomspace(max(lo, 1.0), hi_, 200 if t.d == 1 else 20))
            if lo < -1:
                far.append(-np.geomspace(max(-hi, 1.0), -lo_, 200 if t.d == 1 else 20))
            axes.append(np.unique(np.concatenate([core] + far)))
        g = np.meshgrid(*axes, indexing="ij")
        out.append(np.stack([v.ravel() for v in g], axis=1))
    return np.concatenate(out)


@pytest.mark.parametrize("t", CATALOG, ids=lambda t: t.kind)
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_declared_decay_bound_holds(t, k):
    M = t.decay_bound(k)
    if M is None:
        return
    X = _samples(t)
    w = (1 + np.sum(X * X, axis=1)) ** (k / 2)
    assert np.max(w * np.abs(t(X))) <= M * (1 + 1e-9)


@pytest.mark.parametrize("t", CATALOG, ids=lambda t: t.kind)
def test_json_round_trip(t):
    back = density_from_json(t.to_json())
    X = _samples(t, 200)
    np.testing.assert_array_equal(back(X), t(X))
    assert back.to_json() == t.to_json()


@pytest.mark.parametrize("t", CATALOG, ids=lambda t: t.kind)
def test_vanishes_off_region(t):
    X = np.random.default_rng(0).uniform(-6, 6, size=(4000, t.d))
    inside = np.array([t.region().contains(x) for x in X])
    assert np.all(t(X)[~inside] == 0)


def test_unknown_fields_rejected():
    with pytest.raises(DomainError):
        density_from_json({"name": "indicator", "params": {"lo": [1], "hi": [2], "bogus": 1}})
    with pytest.raises(DomainError):
        density_from_json({"name": "no_such_density", "params": {}})


def test_exp_osc_split_reassembles():
    # e^{-ix} = ∂^k(deriv_base) + remainder; check ∂² of the base by finite differences
    k, h = 2, 1e-3
    x = np.linspace(-3, 3, 121)
    x = x[np.abs(np.abs(x) - 0.75) > 0.3]
    base = ExpOsc(k, "deriv_base")
    f = lambda v: base(v.reshape(-1, 1))  # noqa: E731
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / h**2
    total = d2 + ExpOsc(k, "remainder")(x.reshape(-1, 1))
    np.testing.assert_allclose(total, np.exp(-1j * x), atol=5e-6)


def test_gauss_osc_split_reassembles():
    h = 1e-5
    x = np.linspace(-3, 3, 97)
    u = lambda v: GaussOsc("deriv_base")(v.reshape(-1, 1))  # noqa: E731
    du = (u(x + h) - u(x - h)) / (2 * h)
    total = GaussOsc("core")(x.reshape(-1, 1)) + du + GaussOsc("tail")(x.reshape(-1, 1))
    np.testing.assert_allclose(total, np.exp(1j * np.pi * x * x), atol=1e-6)


def test_cutoff_power_definition():
    t = CutoffPower(2)
    x = np.array([[-0.3], [0.3], [0.8]])
    np.testing.assert_allclose(t(x), [0.0, 0.045, cutoff(0, 0.8) * 0.32])


def test_sharp_maps_region_by_inversion():
    s = Sharp(Indicator((1.0,), (2.0,)))
    box = s.region().boxes()[0]
    assert box.lo == (0.5,) and box.hi == (1.0,)
    assert s([[0.8]])[0] == pytest.approx(1 / 0.8)
    touching = Sharp(Indicator((0.0,), (1.0,)))
    assert touching.region().boxes()[0].hi == (math.inf,)
    assert touching.decay_bound(2) is None


@given(st.floats(-3, 3).filter(lambda a: abs(a) > 0.2), st.floats(-3, 3))
def test_scaled_density_evaluates_at_dilated_point(a, x):
    base = ExpDecay(1.0, (0.5,), (INF,))
    assert Scaled(base, (a,))([[x]])[0] == base([[a * x]])[0]


def test_power_weight_requires_distance_for_negative_powers():
    with pytest.raises(DomainError):
        PowerWeight(Indicator((0.0,), (1.0,)), (-1,))
    pw = PowerWeight(Indicator((1.0,), (2.0,)), (-2,))
    assert pw([[1.5]])[0] == pytest.approx(1 / 2.25)


def test_monomial_density_has_no_decay():
    m = monomial_density((2,))
    assert m([[3.0]])[0] == 9.0
    assert m.decay_bound(2) is None
