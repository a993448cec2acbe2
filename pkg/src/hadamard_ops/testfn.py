"""Compactly supported smooth test functions with exact derivatives.

A :class:`TestFunction` is a finite sum of bump terms

    c · Π_j (x_j - m_j)^{γ_j} ψ((x_j - m_j)/s_j),   ψ(u) = exp(-1/(1-u²)) on |u| < 1.

Derivatives use ψ^{(n)}(u) = R_n(u) (1-u²)^{-2n} ψ(u), where the integer
polynomials R_n come from the recurrence

    R_{n+1} = (1-u²)² R_n' + 4n u (1-u²) R_n - 2u R_n,    R_0 = 1.

The module also defines :class:`SmoothFunction`, the interface every
function paired against a distribution implements, and the global smooth
functions used as pairing partners: monomials, the negative powers
σ(x)/x^{α+1}, and dilated derivatives x ↦ x^k f^{(k)}(xy).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .foundation import (
    Box,
    DomainError,
    Estimate,
    MultiIndex,
    PairingConfig,
    as_points,
    falling_factorial,
    integrate,
    monomial,
)

__all__ = [
    "bump_numerator",
    "bump_derivative",
    "smooth_step",
    "cutoff",
    "SmoothFunction",
    "BumpTerm",
    "TestFunction",
    "Monomial",
    "NegativePower",
    "Dilated",
    "fourier_sample",
    "fourier_grid",
]

BUMP_INTEGRAL = 0.44399381616807943  # ∫ψ over [-1, 1]


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)


def _padd(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pmul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _pderiv(p: list[int]) -> list[int]:
    return [i * p[i] for i in range(1, len(p))] or [0]


@lru_cache(maxsize=None)
def bump_numerator(n: int) -> tuple[int, ...]:
    """Coefficients of R_n (ascending powers of u)."""
    if n == 0:
        return (1,)
    r = list(bump_numerator(n - 1))
    m = n - 1
    w = [1, 0, -1]
    out = _pmul(_pmul(w, w), _pderiv(r))
    out = _padd(out, _pmul([0, 4 * m], _pmul(w, r)))
    out = _padd(out, _pmul([0, -2], r))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def _numerator_float(n: int) -> np.ndarray:
    return np.array([float(c) for c in bump_numerator(n)[::-1]])


def bump_derivative(n: int, u) -> np.ndarray:
    """ψ^{(n)}(u), zero for |u| ≥ 1."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    if np.any(inside):
        ui = u[inside]
        w = 1.0 - ui * ui
        out[inside] = np.polyval(_numerator_float(n), ui) * np.exp(-1.0 / w - 2 * n * np.log(w))
    return out


# ---------------------------------------------------------------------------
# smooth step and the standard cutoff


@lru_cache(maxsize=None)
def _flat_poly(n: int) -> tuple[int, ...]:
    # h(u) = exp(-1/u): h^{(n)}(u) = p_n(1/u) exp(-1/u), p_{n+1}(s) = s² (p_n(s) - p_n'(s))
    if n == 0:
        return (1,)
    p = list(_flat_poly(n - 1))
    out = _pmul([0, 0, 1], _padd(p, [-c for c in _pderiv(p)]))
    return tuple(out)


def _flat(n: int, u: np.ndarray) -> np.ndarray:
    """n-th derivative of exp(-1/u) for u > 0, zero otherwise."""
    out = np.zeros_like(u)
    pos = u > 0
    s = 1.0 / u[pos]
    coeffs = np.array([float(c) for c in _flat_poly(n)[::-1]])
    out[pos] = np.polyval(coeffs, s) * np.exp(-s)
    return out


def smooth_step(n: int, u) -> np.ndarray:
    """n-th derivative of the C∞ step q(u) = h(u)/(h(u)+h(1-u)), h = exp(-1/·).

    q = 0 for u ≤ 0 and q = 1 for u ≥ 1. Derivatives come from the Leibniz
    rule applied to q·D = h with D = h(u) + h(1-u) > 0.
    """
    u = np.asarray(u, dtype=float)
    hs = [_flat(i, u) for i in range(n + 1)]
    Ds = [hs[i] + (-1) ** i * _flat(i, 1.0 - u) for i in range(n + 1)]
    qs: list[np.ndarray] = []
    for m in range(n + 1):
        acc = hs[m].copy()
        for j in range(m):
            acc -= math.comb(m, j) * qs[j] * Ds[m - j]
        qs.append(acc / Ds[0])
    return qs[n]


def cutoff(n: int, x) -> np.ndarray:
    """n-th derivative of χ, with χ = 1 on [-1/2, 1/2], χ = 0 off (-1, 1), even and C∞.

    χ(x) = q(2 - 2|x|).
    """
    x = np.asarray(x, dtype=float)
    val = smooth_step(n, 2.0 - 2.0 * np.abs(x)) * (-2.0) ** n
    if n % 2:
        val = val * np.sign(x)
    return val


# ---------------------------------------------------------------------------
# pairing partners


class SmoothFunction:
    """Interface for smooth functions paired against distributions.

    ``deriv(k, X)`` returns ∂^k f on the rows of X (shape (n, d)).
    ``support()`` is a bounding :class:`Box`, or None for global support.
    ``growth`` and ``bound(order)`` describe |x^ν ∂^ν f(x)| ≤ bound·(1+|x|)^growth
    for |ν| ≤ order; they let the cubature engine truncate unbounded regions.
    """

    d: int
    growth: int = 0

    def deriv(self, k, X) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, X) -> np.ndarray:
        return self.deriv(MultiIndex.zeros(self.d), as_points(X, self.d))

    def support(self) -> Box | None:
        return None

    def bound(self, order: int) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class BumpTerm:
    """c · Π_j (x_j - m_j)^{γ_j} ψ((x_j - m_j)/s_j)."""

    coeff: complex | float
    gamma: MultiIndex
    center: tuple[float, ...]
    scale: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma", MultiIndex(self.gamma))
        object.__setattr__(self, "center", tuple(float(v) for v in np.atleast_1d(self.center)))
        object.__setattr__(self, "scale", tuple(float(v) for v in np.atleast_1d(self.scale)))
        if not (len(self.gamma) == len(self.center) == len(self.scale)):
            raise DomainError("bump term fields differ in dimension")
        if any(s <= 0 for s in self.scale):
            raise DomainError("bump scales must be positive")

    @property
    def d(self) -> int:
        return len(self.center)

    def support(self) -> Box:
        return Box(
            tuple(m - s for m, s in zip(self.center, self.scale)),
            tuple(m + s for m, s in zip(self.center, self.scale)),
        )

    def _axis(self, j: int, k: int, x: np.ndarray) -> np.ndarray:
        m, s, g = self.center[j], self.scale[j], self.gamma[j]
        t = x - m
        u = t / s
        out = np.zeros_like(x)
        for i in range(min(k, g) + 1):
            c = math.comb(k, i) * falling_factorial(g, i)
            out = out + c * t ** (g - i) * s ** (-(k - i)) * bump_derivative(k - i, u)
        return out

    def deriv(self, k, X: np.ndarray) -> np.ndarray:
        out = np.full(X.shape[0], self.coeff, dtype=complex if isinstance(self.coeff, complex) else float)
        for j in range(self.d):
            out = out * self._axis(j, k[j], X[:, j])
        return out

    def to_json(self) -> dict:
        c = self.coeff
        return {
            "coeff": [c.real, c.imag] if isinstance(c, complex) else c,
            "gamma": list(self.gamma),
            "m": list(self.center),
            "s": list(self.scale),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BumpTerm":
        unknown = set(obj) - {"coeff", "gamma", "m", "s"}
        if unknown:
            raise DomainError(f"unknown bump term fields {sorted(unknown)}")
        c = obj.get("coeff", 1.0)
        c = complex(c[0], c[1]) if isinstance(c, list) else float(c)
        d = len(obj["m"])
        return cls(c, MultiIndex(obj.get("gamma", [0] * d)), tuple(obj["m"]), tuple(obj["s"]))


@dataclass(frozen=True)
class TestFunction(SmoothFunction):
    """A finite sum of :class:`BumpTerm`; immutable."""

    __test__ = False  # not a pytest class

    terms: tuple[BumpTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise DomainError("a test function needs at least one term")
        if len({t.d for t in terms}) != 1:
            raise DomainError("bump terms differ in dimension")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def bump(cls, center=0.0, scale=1.0, coeff=1.0, gamma=None) -> "TestFunction":
        center = tuple(np.atleast_1d(center).astype(float))
        scale = np.atleast_1d(scale).astype(float)
        if scale.size == 1:
            scale = np.repeat(scale, len(center))
        gamma = MultiIndex.zeros(len(center)) if gamma is None else MultiIndex(gamma)
        return cls((BumpTerm(coeff, gamma, center, tuple(scale)),))

    @classmethod
    def unit_bump(cls, d: int = 1) -> "TestFunction":
        return cls.bump([0.0] * d, 1.0)

    @classmethod
    def random(cls, rng: np.random.Generator, d: int = 1, n_terms: int = 2, radius: float = 2.0) -> "TestFunction":
        terms = []
        for _ in range(n_terms):
            terms.append(
                BumpTerm(
                    float(rng.uniform(-1, 1)),
                    MultiIndex(rng.integers(0, 3, size=d)),
                    tuple(rng.uniform(-radius, radius, size=d)),
                    tuple(rng.uniform(0.3, 1.2, size=d)),
                )
            )
        return cls(tuple(terms))

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.terms[0].d

    @property
    def is_complex(self) -> bool:
        return any(isinstance(t.coeff, complex) for t in self.terms)

    def support(self) -> Box:
        boxes = [t.support() for t in self.terms]
        return Box(
            tuple(min(b.lo[j] for b in boxes) for j in range(self.d)),
            tuple(max(b.hi[j] for b in boxes) for j in range(self.d)),
        )

    def deriv(self, k, X) -> np.ndarray:
        k = MultiIndex(k)
        X = as_points(X, self.d)
        out = self.terms[0].deriv(k, X)
        for t in self.terms[1:]:
            out = out + t.deriv(k, X)
        return out

    def eval_derivative(self, k, x) -> float:
        """∂^k φ at the single point ``x``."""
        return self.deriv(k, as_points(x, self.d))[0].item()

    # exact transformations -------------------------------------------------

    def affine(self, a, b) -> "TestFunction":
        """The test function u ↦ φ(a·u + b) (componentwise, a_j ≠ 0)."""
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.broadcast_to(np.atleast_1d(np.asarray(b, dtype=float)), a.shape)
        if np.any(a == 0):
            raise DomainError("affine change of variables needs nonzero scale factors")
        terms = []
        for t in self.terms:
            # (a u + b - m)^γ = a^γ (u - (m - b)/a)^γ ; ψ even so |a| suffices
            c = t.coeff * math.prod(float(a[j]) ** t.gamma[j] for j in range(self.d))
            centers = tuple((t.center[j] - b[j]) / a[j] for j in range(self.d))
            scales = tuple(t.scale[j] / abs(a[j]) for j in range(self.d))
            terms.append(BumpTerm(c, t.gamma, centers, scales))
        return TestFunction(tuple(terms))

    def scale_argument(self, y) -> "TestFunction":
        """ξ ↦ φ(y ξ) for y with nonzero coordinates."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if np.any(y == 0):
            raise DomainError("scale_argument needs all coordinates of y nonzero")
        return self.affine(y, 0.0)

    def times(self, c) -> "TestFunction":
        return TestFunction(tuple(BumpTerm(t.coeff * c, t.gamma, t.center, t.scale) for t in self.terms))

    def __add__(self, other: "TestFunction") -> "TestFunction":
        return TestFunction(self.terms + other.terms)

    def multiply_monomial(self, alpha) -> "TestFunction":
        """x^α φ as an exact bump sum, via x_j = (x_j - m_j) + m_j."""
        alpha = MultiIndex(alpha)
        terms = []
        for t in self.terms:
            for i in alpha.below():
                c = t.coeff
                for j in range(self.d):
                    c = c * math.comb(alpha[j], i[j]) * t.center[j] ** (alpha[j] - i[j])
                if c != 0:
                    terms.append(BumpTerm(c, t.gamma + i, t.center, t.scale))
        return TestFunction(tuple(terms))

    # bounds ----------------------------------------------------------------

    def sup_derivative(self, order: int) -> float:
        """Sampled max of |∂^k φ| over |k| ≤ order, inflated by 10 %."""
        return _sup_cache(self, order)

    def bound(self, order: int) -> float:
        R = max(self.support().abs_max())
        return self.sup_derivative(order) * (1.0 + R) ** order

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.terms]

    @classmethod
    def from_json(cls, obj: Sequence[dict]) -> "TestFunction":
        return cls(tuple(BumpTerm.from_json(t) for t in obj))


@lru_cache(maxsize=256)
def _sup_cache(phi: TestFunction, order: int) -> float:
    box = phi.support()
    n = 801 if phi.d == 1 else 161
    axes = [np.linspace(a, b, n) for a, b in zip(box.lo, box.hi)]
    grids = np.meshgrid(*axes, indexing="ij")
    X = np.stack([g.ravel() for g in grids], axis=1)
    best = 0.0
    for k in MultiIndex.all_of_order_at_most(phi.d, order):
        best = max(best, float(np.max(np.abs(phi.deriv(k, X)))))
    return 1.1 * best


@dataclass(frozen=True)
class Monomial(SmoothFunction):
    """c · x^α on all of R^d."""

    alpha: MultiIndex
    coeff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", MultiIndex(self.alpha))

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.alpha)

    @property
    def growth(self) -> int:  # type: ignore[override]
        return self.alpha.order

    def deriv(self, k, X) -> np.ndarray:
        k = MultiIndex(k)
        X = as_points(X, self.d)
        if not k.leq(self.alpha):
            return np.zeros(X.shape[0])
        c = self.coeff * math.prod(falling_factorial(a, b) for a, b in zip(self.alpha, k))
        return c * monomial(X, self.alpha - k)

    def bound(self, order: int) -> float:
        return abs(self.coeff) * max(
            math.prod(falling_factorial(a, b) for a, b in zip(self.alpha, k))
            for k in MultiIndex.all_of_order_at_most(self.d, order)
        )


@dataclass(frozen=True)
class NegativePower(SmoothFunction):
    """σ(x)/x^{α+𝟙} on (R∖{0})^d.

    ``eps`` (if given) is the distance to the hyperplanes below which the
    function is never evaluated; it feeds :meth:`bound`.
    """

    alpha: MultiIndex
    eps: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", MultiIndex(self.alpha))

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.alpha)

    def deriv(self, k, X) -> np.ndarray:
        k = MultiIndex(k)
        X = as_points(X, self.d)
        # ∂^k (σ/x^{α+1}) = (-1)^{|k|} (α+k)!/α! σ/x^{α+k+1}
        c = (-1) ** k.order * math.prod(math.perm(a + b, b) for a, b in zip(self.alpha, k))
        out = np.full(X.shape[0], float(c))
        for j in range(self.d):
            out = out * np.sign(X[:, j]) / X[:, j] ** (self.alpha[j] + k[j] + 1)
        return out

    def bound(self, order: int) -> float:
        if self.eps is None:
            raise DomainError("NegativePower.bound needs the hyperplane distance eps")
        worst = 0.0
        for k in MultiIndex.all_of_order_at_most(self.d, order):
            c = math.prod(math.perm(a + b, b) for a, b in zip(self.alpha, k))
            worst = max(worst, c * self.eps ** (-(self.alpha.order + self.d)))
        return worst


@dataclass(frozen=True)
class Dilated(SmoothFunction):
    """x ↦ x^k f^{(k)}(x y), the integrand of ∂_y^k T_x f(xy).

    Coordinates of ``y`` may vanish; then the function is constant in that
    variable (up to the polynomial factor).
    """

    base: SmoothFunction
    y: tuple[float, ...]
    k: MultiIndex

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(float(v) for v in np.atleast_1d(self.y)))
        object.__setattr__(self, "k", MultiIndex(self.k))
        if len(self.y) != self.base.d or len(self.k) != self.base.d:
            raise DomainError("dimension mismatch in Dilated")

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.base.d

    @property
    def growth(self) -> int:  # type: ignore[override]
        return self.k.order + self.base.growth

    def deriv(self, beta, X) -> np.ndarray:
        beta = MultiIndex(beta)
        X = as_points(X, self.d)
        y = np.array(self.y)
        XY = X * y
        out = 0.0
        # ∂_x^β [x^k f^{(k)}(xy)] = Σ_j C(β,j) ff(k,j) x^{k-j} y^{β-j} f^{(k+β-j)}(xy)
        for j in beta.below():
            c = math.prod(math.comb(b, i) * falling_factorial(kk, i) for b, i, kk in zip(beta, j, self.k))
            if c == 0:
                continue
            ypow = math.prod(float(y[a]) ** (beta[a] - j[a]) for a in range(self.d))
            if ypow == 0:
                continue
            xpow = monomial(X, tuple(kk - i for kk, i in zip(self.k, j)))
            out = out + c * ypow * xpow * self.base.deriv(self.k + beta - j, XY)
        if np.isscalar(out):
            return np.zeros(X.shape[0])
        return out

    def support(self) -> Box | None:
        sb = self.base.support()
        if sb is None:
            return None
        lo, hi = [], []
        for a, b, yj in zip(sb.lo, sb.hi, self.y):
            if yj == 0:
                if a <= 0 <= b:
                    lo.append(-math.inf)
                    hi.append(math.inf)
                else:
                    lo.append(1.0)
                    hi.append(0.0)  # empty
            else:
                c1, c2 = a / yj, b / yj
                lo.append(min(c1, c2))
                hi.append(max(c1, c2))
        return Box(tuple(lo), tuple(hi))

    def bound(self, order: int) -> float:
        # |x^ν ∂^ν[x^k f^{(k)}(xy)]| ≤ Σ_j C(ν,j) ff(k,j) |x|^k |xy|^{ν-j} |f^{(k+ν-j)}(xy)|
        R = 1.0
        sb = self.base.support()
        if sb is not None:
            R = 1.0 + max(sb.abs_max())
        comb_total = sum(
            math.prod(math.comb(o, i) * falling_factorial(kk, i) for o, i, kk in zip(nu, j, self.k))
            for nu in MultiIndex.all_of_order_at_most(self.d, order)
            for j in nu.below()
        )
        return comb_total * R ** order * self.base.bound(self.k.order + order)


# ---------------------------------------------------------------------------
# Fourier transform (convention φ̂(ξ) = ∫ exp(-i<ξ,x>) φ(x) dx)


def fourier_sample(phi: TestFunction, alpha, xi, cfg: PairingConfig | None = None) -> Estimate:
    """∂^α φ̂(ξ) = ∫ (-ix)^α e^{-i<ξ,x>} φ(x) dx by adaptive quadrature."""
    cfg = cfg or PairingConfig()
    alpha = MultiIndex(alpha)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.size != phi.d:
        raise DomainError("frequency dimension mismatch")
    pref = (-1j) ** alpha.order

    def integrand(X):
        return pref * monomial(X, alpha) * np.exp(-1j * (X @ xi)) * phi(X)

    return integrate(integrand, phi.support(), cfg)


def fourier_grid(phi: TestFunction, n: int = 4096, pad: int = 8):
    """φ̂ on the FFT frequency grid of a zero-padded trapezoid sampling (d = 1).

    Returns ``(xi, values)`` sorted by frequency. Trapezoid sums are
    spectrally accurate for compactly supported smooth φ.
    """
    if phi.d != 1:
        raise DomainError("fourier_grid is implemented for d = 1")
    box = phi.support()
    a, b = box.lo[0], box.hi[0]
    h = (b - a) / n
    x = a + h * np.arange(n)
    vals = phi(x.reshape(-1, 1))
    m = n * pad
    spec = np.fft.fft(vals, m) * h
    xi = 2 * np.pi * np.fft.fftfreq(m, d=h)
    spec = spec * np.exp(-1j * xi * a)
    order = np.argsort(xi)
    return xi[order], spec[order]
