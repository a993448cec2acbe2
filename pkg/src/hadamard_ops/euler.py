"""Exact algebra of Euler operators P(θ), θ_j = x_j ∂_j.

Operators are polynomials in commuting indeterminates θ_1..θ_d with
:class:`fractions.Fraction` coefficients. The second presentation
Σ c_α x^α ∂^α (:class:`XDForm`) is reached through Stirling numbers:

    θ^n = Σ_k S(n, k) x^k ∂^k,        x^n ∂^n = θ(θ-1)...(θ-n+1) = Σ_k s(n, k) θ^k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .foundation import DomainError, MultiIndex, as_points, factorial_ratio, falling_factorial, monomial

__all__ = [
    "EulerOperator",
    "XDForm",
    "stirling1",
    "stirling2",
    "to_xd_form",
    "from_xd_form",
    "adjoint",
    "monomial_eigenvalue",
    "negative_power_eigenvalue",
    "negative_power_action",
    "derivative_basis_coefficients",
    "derivative_basis_identity_holds",
    "apply",
    "power_derivative_operator",
]


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def _clean(coeffs: Mapping) -> dict[MultiIndex, Fraction]:
    out = {}
    for k, v in coeffs.items():
        v = Fraction(v)
        if v != 0:
            out[MultiIndex(k)] = v
    return out


class _Poly:
    """Shared machinery for finitely supported coefficient maps."""

    __slots__ = ("_coeffs", "d")

    def __init__(self, coeffs: Mapping | None = None, d: int | None = None):
        c = _clean(coeffs or {})
        dims = {len(k) for k in c}
        if len(dims) > 1:
            raise DomainError("coefficient keys differ in dimension")
        if d is None:
            if not dims:
                raise DomainError("dimension required for the zero operator")
            d = dims.pop()
        elif dims and dims.pop() != d:
            raise DomainError("coefficient keys do not match the declared dimension")
        self._coeffs = c
        self.d = d

    @property
    def coefficients(self) -> dict[MultiIndex, Fraction]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.d == other.d and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.d, tuple(self.items())))

    def degree(self) -> MultiIndex:
        if not self._coeffs:
            return MultiIndex.zeros(self.d)
        return MultiIndex(max(k[j] for k in self._coeffs) for j in range(self.d))

    def to_json(self) -> dict:
        return {"d": self.d, "coefficients": [[list(k), str(v)] for k, v in self.items()]}

    @classmethod
    def from_json(cls, obj: dict):
        unknown = set(obj) - {"d", "coefficients"}
        if unknown:
            raise DomainError(f"unknown operator fields {sorted(unknown)}")
        return cls({tuple(k): Fraction(v) for k, v in obj["coefficients"]}, d=obj["d"])


class EulerOperator(_Poly):
    """P(θ) = Σ_β c_β θ^β with exact rational coefficients."""

    @classmethod
    def constant(cls, c, d: int = 1) -> "EulerOperator":
        return cls({(0,) * d: c}, d=d)

    @classmethod
    def theta(cls, j: int = 0, d: int = 1) -> "EulerOperator":
        return cls({MultiIndex.unit(j, d): 1}, d=d)

    @classmethod
    def theta_power(cls, beta) -> "EulerOperator":
        beta = MultiIndex(beta)
        return cls({beta: 1}, d=len(beta))

    def __add__(self, other):
        if not isinstance(other, EulerOperator):
            other = EulerOperator.constant(other, self.d)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return EulerOperator(out, d=self.d)

    __radd__ = __add__

    def __neg__(self):
        return EulerOperator({k: -v for k, v in self._coeffs.items()}, d=self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, EulerOperator) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Composition, i.e. multiplication of polynomials in commuting θ_j."""
        if not isinstance(other, EulerOperator):
            return EulerOperator({k: v * Fraction(other) for k, v in self._coeffs.items()}, d=self.d)
        out: dict = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return EulerOperator(out, d=self.d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = EulerOperator.constant(1, self.d)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, point) -> Fraction:
        """P evaluated at a point with rational (possibly negative) coordinates."""
        point = [Fraction(p) for p in point]
        if len(point) != self.d:
            raise DomainError("evaluation point has the wrong dimension")
        total = Fraction(0)
        for k, v in self._coeffs.items():
            total += v * math.prod((p**e for p, e in zip(point, k)), start=Fraction(1))
        return total

    def __repr__(self) -> str:
        if not self._coeffs:
            return "EulerOperator(0)"
        parts = []
        for k, v in self.items():
            mono = "*".join(f"θ{j + 1}^{e}" if e > 1 else f"θ{j + 1}" for j, e in enumerate(k) if e)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return "EulerOperator(" + " + ".join(parts) + ")"


class XDForm(_Poly):
    """Σ_α c_α x^α ∂^α with exact rational coefficients."""

    def __repr__(self) -> str:
        return f"XDForm({dict(self.items())})"


def _expand_axiswise(coeffs, d: int, table) -> dict:
    out: dict = {}
    for k, v in coeffs.items():
        factors = [[(i, table(e, i)) for i in range(e + 1) if table(e, i)] for e in k]
        partial = [((), Fraction(v))]
        for axis in factors:
            partial = [(idx + (i,), c * t) for idx, c in partial for i, t in axis]
        for idx, c in partial:
            out[idx] = out.get(idx, 0) + c
    return out


def to_xd_form(P: EulerOperator) -> XDForm:
    return XDForm(_expand_axiswise(P.coefficients, P.d, stirling2), d=P.d)


def from_xd_form(X: XDForm) -> EulerOperator:
    return EulerOperator(_expand_axiswise(X.coefficients, X.d, stirling1), d=X.d)


def _affine_substitute(P: EulerOperator, a: int, b: int) -> EulerOperator:
    """P with every θ_j replaced by a θ_j + b."""
    out: dict = {}
    for k, v in P.coefficients.items():
        # Π_j (a θ_j + b)^{k_j} = Π_j Σ_i C(k_j, i) a^i b^{k_j - i} θ_j^i
        partial = [((), v)]
        for e in k:
            partial = [
                (idx + (i,), c * math.comb(e, i) * a**i * b ** (e - i))
                for idx, c in partial
                for i in range(e + 1)
                if math.comb(e, i) * a**i * b ** (e - i) != 0
            ]
        for idx, c in partial:
            out[idx] = out.get(idx, 0) + c
    return EulerOperator(out, d=P.d)


def adjoint(P: EulerOperator) -> EulerOperator:
    """Formal adjoint: θ_j ↦ -θ_j - 1, since (x ∂)* = -∂ x = -1 - x∂."""
    return _affine_substitute(P, -1, -1)


def monomial_eigenvalue(P: EulerOperator, alpha) -> Fraction:
    """P(α), the eigenvalue of P(θ) on x^α."""
    return P(MultiIndex(alpha))


def negative_power_eigenvalue(P: EulerOperator, alpha) -> Fraction:
    """Eigenvalue of P(θ) on σ(x)/x^{α+𝟙}: θ_j acts as -(α_j + 1)."""
    alpha = MultiIndex(alpha)
    return P([-(a + 1) for a in alpha])


def negative_power_action(k, alpha) -> int:
    """(-1)^{|k|} (α+k)!/α!, the factor in x^k ∂^k (σ/x^{α+𝟙}) = factor · σ/x^{α+𝟙}."""
    k, alpha = MultiIndex(k), MultiIndex(alpha)
    return (-1) ** k.order * factorial_ratio(alpha, k)


def power_derivative_operator(beta) -> EulerOperator:
    """The Euler operator f ↦ ∂^β (x^β f).

    By Leibniz, ∂^β(x^β f) = Σ_{m ≤ β} C(β, m) β!/m! x^m ∂^m f.
    """
    beta = MultiIndex(beta)
    coeffs = {}
    for m in beta.below():
        coeffs[m] = math.prod(math.comb(b, i) * math.perm(b, b - i) for b, i in zip(beta, m))
    return from_xd_form(XDForm(coeffs, d=len(beta)))


def derivative_basis_coefficients(m, nu) -> dict[MultiIndex, Fraction]:
    """Coefficients λ_j (0 ≤ j ≤ ν) with x^{m+ν} G^{(ν)} = Σ_j λ_j (x^{m+j} G)^{(j)}.

    ``m`` is an integer vector (entries may be negative). Writing
    A_j = x^{m+j} G^{(j)} and B_j = (x^{m+j} G)^{(j)}, Leibniz gives the
    unitriangular system B_j = Σ_{i ≤ j} C(j, i) ff(m+j, j-i) A_i, which is
    inverted by induction over |j|.
    """
    nu = MultiIndex(nu)
    m = tuple(int(v) for v in m)
    if len(m) != len(nu):
        raise DomainError("m and nu differ in dimension")

    def b_in_a(j: MultiIndex) -> dict[MultiIndex, int]:
        out = {}
        for i in j.below():
            out[i] = math.prod(math.comb(jj, ii) * falling_factorial(mm + jj, jj - ii) for jj, ii, mm in zip(j, i, m))
        return out

    # express each A_j in the B basis, smallest |j| first
    a_in_b: dict[MultiIndex, dict[MultiIndex, Fraction]] = {}
    for j in sorted(nu.below(), key=lambda v: (v.order, tuple(v))):
        expr = {j: Fraction(1)}  # A_j = B_j - Σ_{i<j} coeff_i A_i
        for i, c in b_in_a(j).items():
            if i == j or c == 0:
                continue
            for key, val in a_in_b[i].items():
                expr[key] = expr.get(key, 0) - c * val
        a_in_b[j] = {k: v for k, v in expr.items() if v != 0}
    return dict(sorted(a_in_b[nu].items()))


def derivative_basis_identity_holds(m, nu, coeffs: Mapping, degrees: Iterable[MultiIndex] | None = None) -> bool:
    """Check the decomposition on G = x^n for the given exponents n.

    On G = x^n both sides are multiples of x^{m+n}: the left carries
    ff(n, ν), the right Σ_j λ_j ff(m+n+j, j).
    """
    nu = MultiIndex(nu)
    if degrees is None:
        degrees = MultiIndex(nn + 2 for nn in nu).below()
    for n in degrees:
        lhs = math.prod(falling_factorial(a, b) for a, b in zip(n, nu))
        rhs = sum(
            Fraction(c) * math.prod(falling_factorial(mm + a + b, b) for mm, a, b in zip(m, n, j))
            for j, c in coeffs.items()
        )
        if lhs != rhs:
            return False
    return True


def apply(P: EulerOperator, phi, x) -> np.ndarray:
    """(P(θ)φ)(x) = Σ_α c_α x^α ∂^α φ(x) at the rows of ``x``."""
    X = as_points(x, P.d)
    out = np.zeros(X.shape[0], dtype=complex if getattr(phi, "is_complex", False) else float)
    for alpha, c in to_xd_form(P).items():
        out = out + float(c) * monomial(X, alpha) * phi.deriv(alpha, X)
    return out
