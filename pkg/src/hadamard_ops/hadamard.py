"""Hadamard operators L_T(S) = S ⋆ T and their eigenvalues.

``apply_MT`` evaluates y ↦ T_x φ(xy), ``apply_LT`` pairs S against it,
``eigenvalue`` returns m_α = T(σ(x)/x^{α+𝟙}). The reflected kernel
T^# = t(1/ξ) σ(ξ)/(ξ_1⋯ξ_d) gives the factorization L_T = P(θ) ∘ M_{T^#}
for T = P(θ) t, and ``extendability_check`` tests whether x^{-γ} t stays
integrable so that M_T extends across the coordinate hyperplanes.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .densities import (
    Density,
    PowerWeight,
    Scaled,
    Sharp,
    Times,
    TestFunctionDensity,
    _check_keys,
    axis_distances,
    density_from_json,
    register,
)
from .dist import (
    DensityAtom,
    DerivAtom,
    Distribution,
    EulerAtom,
    PointAtom,
    certify,
    oc_to_oh,
    pair,
)
from .euler import EulerOperator, adjoint, to_xd_form
from .foundation import (
    ZERO,
    Box,
    BoxUnion,
    CertificateError,
    DomainError,
    Estimate,
    MultiIndex,
    PairingConfig,
    as_points,
    factorial_ratio,
    integrate,
    monomial,
    probe_singularity,
    sigma,
)
from .testfn import Dilated, NegativePower, SmoothFunction, TestFunction

__all__ = [
    "mt_support",
    "apply_MT",
    "apply_LT",
    "MTFunction",
    "eigenvalue",
    "verify_eigen",
    "EigenResidual",
    "sharp_transform",
    "factorization_check",
    "extendability_check",
    "ExtendabilityReport",
    "StarDensity",
    "star",
    "power_derivative_kernel",
    "HadamardOperator",
    "EigenvalueTable",
    "grid_points",
    "apply_grid",
    "samples_csv",
]


# ---------------------------------------------------------------------------
# M_T


def _interval_quotient(p: float, q: float, a: float, b: float) -> tuple[float, float]:
    """Bounding interval of {u/x : u ∈ [p, q], x ∈ [a, b]} for 0 ∉ [a, b]."""
    vals = [u / x if not math.isinf(x) else 0.0 for u in (p, q) for x in (a, b)]
    return min(vals), max(vals)


def mt_support(T: Distribution, phi_box: Box) -> Box:
    """Bounding box of supp(y ↦ T_x φ(xy)) from support arithmetic alone."""
    lo, hi = [], []
    for j in range(T.d):
        lj, hj = math.inf, -math.inf
        for b in T.region().boxes():
            a, c = b.lo[j], b.hi[j]
            if a <= 0 <= c:
                lj, hj = -math.inf, math.inf
                break
            u, v = _interval_quotient(phi_box.lo[j], phi_box.hi[j], a, c)
            lj, hj = min(lj, u), max(hj, v)
        lo.append(lj)
        hi.append(hj)
    return Box(tuple(lo), tuple(hi))


def _hyperplane_form(T: Distribution) -> Distribution:
    """Kernel usable at points with vanishing coordinates (derivative atoms rewritten)."""
    if not any(isinstance(a, DerivAtom) for a in T.atoms):
        return T
    return oc_to_oh(T)


def apply_MT(T: Distribution, phi: SmoothFunction, y, cfg: PairingConfig | None = None, beta=None) -> Estimate:
    """∂_y^β T_x φ(xy) at one point y (β = 0 by default).

    Off the hyperplanes this is ⟨T, x ↦ x^β φ^{(β)}(xy)⟩. At points with a
    vanishing coordinate the value is the continuous extension computed from
    the Euler-operator form of T; derivative atoms are rewritten first, and a
    kernel without enough declared decay is rejected.
    """
    cfg = cfg or PairingConfig()
    y = tuple(float(v) for v in np.atleast_1d(y))
    if len(y) != T.d:
        raise DomainError("evaluation point has the wrong dimension")
    beta = MultiIndex.zeros(T.d) if beta is None else MultiIndex(beta)
    sb = phi.support()
    if sb is not None and not mt_support(T, sb).contains(y):
        return ZERO  # property (*): exact zero from support arithmetic
    g = Dilated(phi, y, beta)
    if all(v != 0 for v in y):
        return pair(T, g, cfg)
    try:
        kernel = _hyperplane_form(T)
    except CertificateError as exc:
        raise CertificateError(f"no extension to the hyperplane point {y}: {exc}", exc.predicate) from exc
    return pair(kernel, g, cfg)


@dataclass(frozen=True, eq=False)
class MTFunction(SmoothFunction):
    """y ↦ T_x φ(xy) as a smooth function; derivatives use x^β φ^{(β)}(xy)."""

    T: Distribution
    phi: SmoothFunction
    cfg: PairingConfig = PairingConfig()

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.T.d

    def deriv(self, k, X) -> np.ndarray:
        X = as_points(X, self.d)
        vals = [apply_MT(self.T, self.phi, x, self.cfg, k).value for x in X]
        return np.array(vals, dtype=complex if any(isinstance(v, complex) for v in vals) else float)

    def support(self) -> Box | None:
        sb = self.phi.support()
        return None if sb is None else mt_support(self.T, sb)

    def bound(self, order: int) -> float:
        raise DomainError("M_T φ has no declared growth bound; pair it only over bounded regions")


def apply_LT(T: Distribution, S: Distribution, phi: SmoothFunction, cfg: PairingConfig | None = None) -> Estimate:
    """⟨S ⋆ T, φ⟩ = S_y(T_x φ(xy)) by nested quadrature with exact inner derivatives."""
    cfg = cfg or PairingConfig()
    inner = MTFunction(T, phi, cfg.tightened(10.0))
    return pair(S, inner, cfg)


# ---------------------------------------------------------------------------
# eigenvalues


def power_derivative_kernel(tau: Density, k) -> Distribution:
    """T = (-1)^{|k|} ∂^k (x^k τ); then m_α(T) = (-1)^{|k|} (α+k)!/α! m_α(τ)."""
    k = MultiIndex(k)
    base = PowerWeight(tau, tuple(k))
    if k.order % 2:
        base = Times(base, -1.0)
    return Distribution((DerivAtom(k, base),))


def _require_certified(T: Distribution) -> float:
    cert = certify(T)
    return cert.eps


def _density_moment(t: Density, alpha: MultiIndex, eps: float, cfg: PairingConfig) -> Estimate:
    return pair(Distribution((DensityAtom(t),)), NegativePower(alpha, eps), cfg)


def eigenvalue(T: Distribution, alpha, cfg: PairingConfig | None = None, method: str = "closed") -> Estimate:
    """m_α = T(σ(x)/x^{α+𝟙}).

    ``method="closed"`` uses the per-atom closed forms (point atoms exactly,
    Euler atoms as P(α)·m_α(t), derivative atoms as (α+β)!/α!·m_{α+β}(t));
    ``method="quadrature"`` pairs T with σ/x^{α+𝟙} directly.
    """
    cfg = cfg or PairingConfig()
    alpha = MultiIndex(alpha)
    if len(alpha) != T.d:
        raise DomainError("multi-index has the wrong dimension")
    eps = _require_certified(T)
    if method == "quadrature":
        return pair(T, NegativePower(alpha, eps), cfg)
    if method != "closed":
        raise DomainError(f"unknown eigenvalue method {method!r}")
    total = ZERO
    for atom in T.atoms:
        if isinstance(atom, PointAtom):
            a = atom.location
            v = atom.coeff * factorial_ratio(alpha, atom.beta) * sigma(a)
            v /= math.prod(aj ** (al + b + 1) for aj, al, b in zip(a, alpha, atom.beta))
            total = total + Estimate(v, 0.0)
        elif isinstance(atom, DensityAtom):
            total = total + _density_moment(atom.density, alpha, eps, cfg)
        elif isinstance(atom, EulerAtom):
            lam = float(atom.operator(alpha))
            total = total + _density_moment(atom.density, alpha, eps, cfg).scaled(lam)
        else:
            c = factorial_ratio(alpha, atom.beta)
            total = total + _density_moment(atom.density, alpha + atom.beta, eps, cfg).scaled(c)
    return total


@dataclass(frozen=True)
class EigenResidual:
    residual: float
    lhs: complex | float
    rhs: complex | float
    error: float


def verify_eigen(T: Distribution, alpha, phi: TestFunction, cfg: PairingConfig | None = None) -> EigenResidual:
    """|∫ ξ^α T_x φ(xξ) dξ − m_α ∫ η^α φ(η) dη|, both sides by quadrature."""
    cfg = cfg or PairingConfig()
    alpha = MultiIndex(alpha)
    m = eigenvalue(T, alpha, cfg)
    F = MTFunction(T, phi, cfg.tightened(10.0))
    box = F.support()
    if not box.bounded:
        raise DomainError("M_T φ is not compactly supported; certify the kernel first")
    lhs = integrate(lambda Y: monomial(Y, alpha) * F(Y), box, cfg)
    moment = integrate(lambda X: monomial(X, alpha) * phi(X), phi.support(), cfg.tightened(10.0))
    rhs = m.value * moment.value
    err = lhs.error + abs(m.value) * moment.error + m.error * abs(moment.value)
    return EigenResidual(abs(lhs.value - rhs), lhs.value, rhs, err)


# ---------------------------------------------------------------------------
# reflected kernel and factorization


def sharp_transform(t: Density | DensityAtom) -> Sharp:
    """T^#(ξ) = t(1/ξ) σ(ξ)/(ξ_1⋯ξ_d); the support of t must lie in some W_ε."""
    if isinstance(t, DensityAtom):
        t = t.density
    if t.region().hyperplane_distance() <= 0:
        raise CertificateError("the reflected kernel needs the support inside some W_eps", "support_in_W_eps")
    return Sharp(t)


def factorization_check(
    P: EulerOperator, t: Density, f: TestFunction, phi: TestFunction, cfg: PairingConfig | None = None
) -> EigenResidual:
    """|⟨f ⋆ P(θ)t, φ⟩ − ⟨P(θ) M_{T^#} f, φ⟩| for T = P(θ) t, f taken as a density."""
    cfg = cfg or PairingConfig()
    T = Distribution((EulerAtom(P, t),))
    lhs = apply_LT(T, Distribution((DensityAtom(TestFunctionDensity(f)),)), phi, cfg)
    Tsharp = Distribution((DensityAtom(sharp_transform(t)),))
    G = MTFunction(Tsharp, f, cfg.tightened(10.0))
    xd = to_xd_form(adjoint(P))

    def integrand(Y):
        acc = 0.0
        for nu, c in xd.items():
            acc = acc + float(c) * monomial(Y, nu) * phi.deriv(nu, Y)
        return G(Y) * acc

    rhs = integrate(integrand, phi.support(), cfg)
    return EigenResidual(abs(lhs.value - rhs.value), lhs.value, rhs.value, lhs.error + rhs.error)


# ---------------------------------------------------------------------------
# extendability across hyperplanes


@dataclass(frozen=True)
class ExtendabilityRow:
    atom: int
    gamma: MultiIndex
    finite: bool
    last_partial: float


@dataclass(frozen=True)
class ExtendabilityReport:
    rows: tuple[ExtendabilityRow, ...]
    constructions: tuple[Density, ...]

    @property
    def passed(self) -> bool:
        return all(r.finite for r in self.rows)

    def first_failure(self) -> MultiIndex | None:
        for r in self.rows:
            if not r.finite:
                return r.gamma
        return None


def extendability_check(T: Distribution, gamma_max, cfg: PairingConfig | None = None) -> ExtendabilityReport:
    """Probe ∫|t_β| |x|^{-γ} for γ ≤ γ_max near the hyperplanes.

    Passing kernels also get the distribution S = σ(ξ)/(ξ_1⋯ξ_d) ξ^β t(1/ξ)
    per atom. Point atoms count as failing when they sit on a hyperplane.
    """
    gamma_max = MultiIndex(gamma_max)
    if not T.compact:
        raise DomainError("extendability_check needs a compactly supported kernel")
    rows: list[ExtendabilityRow] = []
    built: list[Density] = []
    for i, atom in enumerate(T.atoms):
        if isinstance(atom, PointAtom):
            ok = all(v != 0 for v in atom.location)
            rows.append(ExtendabilityRow(i, MultiIndex.zeros(T.d), ok, 0.0))
            continue
        if isinstance(atom, EulerAtom):
            raise DomainError("extendability_check expects density or derivative atoms")
        t = atom.density
        beta = atom.beta if isinstance(atom, DerivAtom) else MultiIndex.zeros(T.d)
        atom_ok = True
        for gamma in gamma_max.below():
            def f(X, gamma=gamma):
                with np.errstate(divide="ignore", invalid="ignore"):
                    v = np.abs(t(X)) * np.prod(np.abs(X) ** (-np.array(gamma, dtype=float)), axis=1)
                return np.where(np.isfinite(v), v, 0.0)

            finite, partials = probe_singularity(f, t.region(), cfg)
            rows.append(ExtendabilityRow(i, gamma, finite, partials[-1]))
            atom_ok &= finite
        if atom_ok:
            built.append(PowerWeight(Sharp(t), tuple(beta)))
    return ExtendabilityReport(tuple(rows), tuple(built) if all(r.finite for r in rows) else ())


# ---------------------------------------------------------------------------
# star products


def _mul_interval(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    vals = [x * y for x in (a, b) for y in (c, d)]
    return min(vals), max(vals)


@register("star")
@dataclass(frozen=True)
class StarDensity(Density):
    """(s ⋆ t)(z) = ∫ s(y) t(z/y) dy / Π|y_j| for bounded s, t inside some W_ε."""

    s: Density
    t: Density
    cfg: PairingConfig = PairingConfig(rel_tol=1e-11, abs_tol=1e-14)

    def __post_init__(self):
        for part in (self.s, self.t):
            if not part.bounded or part.region().hyperplane_distance() <= 0:
                raise DomainError("star densities need bounded factors supported in some W_eps")

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.s.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.s.is_complex or self.t.is_complex

    def _value(self, z: np.ndarray):
        total = 0.0
        for bs in self.s.region().boxes():
            for bt in self.t.region().boxes():
                lo, hi = [], []
                for j in range(self.d):
                    u, v = _interval_quotient(z[j], z[j], bt.lo[j], bt.hi[j])
                    lo.append(max(bs.lo[j], u))
                    hi.append(min(bs.hi[j], v))
                box = Box(tuple(lo), tuple(hi))
                if box.empty:
                    continue
                total = total + integrate(
                    lambda Y: self.s(Y) * self.t(z / Y) / np.prod(np.abs(Y), axis=1), box, self.cfg
                ).value
        return total

    def __call__(self, X):
        X = as_points(X, self.d)
        return np.array([self._value(x) for x in X], dtype=complex if self.is_complex else float)

    def region(self):
        parts = []
        for bs in self.s.region().boxes():
            for bt in self.t.region().boxes():
                iv = [_mul_interval(bs.lo[j], bs.hi[j], bt.lo[j], bt.hi[j]) for j in range(self.d)]
                parts.append(Box(tuple(v[0] for v in iv), tuple(v[1] for v in iv)))
        return BoxUnion(tuple(parts))

    def decay_bound(self, k):
        ms, mt = self.s.decay_bound(0), self.t.decay_bound(0)
        vol = sum(math.prod(h - l for l, h in zip(b.lo, b.hi)) for b in self.s.region().boxes())
        eps = self.s.region().hyperplane_distance()
        return self._compact_bound(ms * mt * vol / eps**self.d, k)

    def params(self):
        return {"s": self.s.to_json(), "t": self.t.to_json()}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"s", "t"})
        return cls(density_from_json(p["s"]), density_from_json(p["t"]))


def _star_atoms(a, b):
    d = a.d
    if isinstance(a, PointAtom) and isinstance(b, PointAtom):
        if a.beta.order or b.beta.order:
            raise DomainError("star of derivative point atoms is not implemented")
        loc = tuple(x * y for x, y in zip(a.location, b.location))
        return PointAtom(loc, MultiIndex.zeros(d), a.coeff * b.coeff)
    if isinstance(b, PointAtom):
        a, b = b, a
    if isinstance(a, PointAtom):
        if a.beta.order:
            raise DomainError("star of derivative point atoms is not implemented")
        # (δ_a ⋆ t)(φ) = ∫ t(x) φ(ax) dx = ∫ t(u/a) φ(u) du / Π|a|
        inv = tuple(1.0 / v for v in a.location)
        t = Times(Scaled(b.density, inv), a.coeff / math.prod(abs(v) for v in a.location))
        return EulerAtom(b.operator, t) if isinstance(b, EulerAtom) else DensityAtom(t)
    if isinstance(a, DerivAtom) or isinstance(b, DerivAtom):
        raise DomainError("rewrite derivative atoms with oc_to_oh before forming star products")
    s_op = a.operator if isinstance(a, EulerAtom) else EulerOperator.constant(1, d)
    t_op = b.operator if isinstance(b, EulerAtom) else EulerOperator.constant(1, d)
    dens = StarDensity(a.density, b.density)
    op = s_op * t_op
    if op == EulerOperator.constant(1, d):
        return DensityAtom(dens)
    return EulerAtom(op, dens)


def star(S: Distribution, T: Distribution) -> Distribution:
    """S ⋆ T in closed form for point, density and Euler atoms (θ commutes with ⋆)."""
    if S.d != T.d:
        raise DomainError("dimension mismatch")
    return Distribution(tuple(_star_atoms(a, b) for a in S.atoms for b in T.atoms))


# ---------------------------------------------------------------------------
# operator object and eigenvalue tables


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HADAMARD_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class EigenvalueTable:
    """m_α for every α ≤ (n, …, n) with error bounds; rows in lexicographic order."""

    d: int
    entries: tuple[tuple[MultiIndex, complex | float, float], ...]

    def value(self, alpha) -> complex | float:
        alpha = MultiIndex(alpha)
        for a, v, _ in self.entries:
            if a == alpha:
                return v
        raise KeyError(alpha)

    def rows(self) -> list[list[str]]:
        out = []
        for a, v, e in self.entries:
            c = complex(v)
            out.append([str(x) for x in a] + [format(c.real, ".17g"), format(c.imag, ".17g"), format(e, ".17g")])
        return out

    def header(self) -> list[str]:
        return [f"alpha_{j + 1}" for j in range(self.d)] + ["re", "im", "err"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        data = [
            {"alpha": list(a), "re": complex(v).real, "im": complex(v).imag, "err": e} for a, v, e in self.entries
        ]
        return json.dumps({"d": self.d, "entries": data}, indent=2)


@dataclass(frozen=True, eq=False)
class HadamardOperator:
    """L_T for a kernel accepted by the 𝒟'_H gate."""

    kernel: Distribution
    cfg: PairingConfig = PairingConfig()
    eps: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "eps", certify(self.kernel).eps)

    @property
    def d(self) -> int:
        return self.kernel.d

    def eigenvalue(self, alpha) -> Estimate:
        return eigenvalue(self.kernel, alpha, self.cfg)

    def table(self, alpha_max: int) -> EigenvalueTable:
        alphas = list(MultiIndex((alpha_max,) * self.d).below())
        alphas.sort()
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            ests = list(pool.map(self.eigenvalue, alphas))
        return EigenvalueTable(self.d, tuple((a, e.value, e.error) for a, e in zip(alphas, ests)))

    def __call__(self, S: Distribution, phi: TestFunction) -> Estimate:
        return apply_LT(self.kernel, S, phi, self.cfg)

    def mt(self, phi: TestFunction, y) -> Estimate:
        return apply_MT(self.kernel, phi, y, self.cfg)


# ---------------------------------------------------------------------------
# sampling on grids


def grid_points(axes) -> np.ndarray:
    """Cartesian product of per-axis sample arrays, first axis slowest."""
    mesh = np.meshgrid(*[np.asarray(a, dtype=float) for a in axes], indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def apply_grid(T: Distribution, phi: SmoothFunction, points, cfg: PairingConfig | None = None) -> list[Estimate]:
    """apply_MT at every row of ``points``; rows are independent and keep their order."""
    cfg = cfg or PairingConfig()
    pts = as_points(points, T.d)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(lambda y: apply_MT(T, phi, y, cfg), pts))


def samples_csv(points, estimates) -> str:
    """CSV with columns y_1..y_d, re, im, err in 17-significant-digit form."""
    pts = np.asarray(points, dtype=float)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"y_{j + 1}" for j in range(pts.shape[1])] + ["re", "im", "err"])
    for y, e in zip(pts, estimates):
        c = complex(e.value)
        w.writerow([format(float(v), ".17g") for v in y] + [format(c.real, ".17g"), format(c.imag, ".17g"), format(e.error, ".17g")])
    return buf.getvalue()
