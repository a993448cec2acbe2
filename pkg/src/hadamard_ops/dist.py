"""Distributions as finite sums of typed atoms, and the pairing ⟨T, φ⟩.

Four atom types cover every kernel used in the package:

* ``DensityAtom(t)``       ⟨T, φ⟩ = ∫ t φ
* ``DerivAtom(β, t)``      T = ∂^β t,      ⟨T, φ⟩ = (-1)^{|β|} ∫ t ∂^β φ
* ``EulerAtom(P, t)``      T = P(θ) t,     ⟨T, φ⟩ = ∫ t · (P*(θ) φ)
* ``PointAtom(a, β, c)``   T = c δ_a^{(β)}, ⟨T, φ⟩ = c (-1)^{|β|} ∂^β φ(a)

The partner of a pairing may be any :class:`SmoothFunction`; compactly
supported partners never need decay information, others are truncated using
the density's declared bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np

from .densities import (
    REGISTRY,
    Density,
    ExpOsc,
    GaussOsc,
    Indicator,
    PowerWeight,
    Scaled,
    Times,
    axis_distances,
    density_from_json,
    register,
)
from .euler import EulerOperator, adjoint, power_derivative_operator, to_xd_form
from .foundation import (
    ZERO,
    Box,
    BoxUnion,
    CertificateError,
    DomainError,
    Estimate,
    InsufficientDecayError,
    MultiIndex,
    PairingConfig,
    as_points,
    integrate,
    monomial,
    sigma,
)
from .testfn import BUMP_INTEGRAL, SmoothFunction, TestFunction

__all__ = [
    "DensityAtom",
    "DerivAtom",
    "EulerAtom",
    "PointAtom",
    "Distribution",
    "pair",
    "dilate",
    "support_in_W_eps",
    "certify",
    "Certificate",
    "oc_to_oh",
    "oh_membership_check",
    "MembershipReport",
    "AtomMembership",
    "regularize",
    "Regularized",
    "standard_mollifier",
    "delta",
    "density",
    "exp_osc_kernel",
    "gauss_osc_kernel",
    "half_line_indicator",
]


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class DensityAtom:
    density: Density

    type_name: ClassVar[str] = "density"

    @property
    def d(self) -> int:
        return self.density.d

    def region(self) -> BoxUnion:
        return self.density.region()

    def scaled(self, c) -> "DensityAtom":
        return DensityAtom(Times(self.density, c))

    def to_json(self) -> dict:
        return {"type": "density", "density": self.density.to_json()}


@dataclass(frozen=True)
class DerivAtom:
    beta: MultiIndex
    density: Density

    type_name: ClassVar[str] = "deriv"

    def __post_init__(self):
        object.__setattr__(self, "beta", MultiIndex(self.beta))
        if len(self.beta) != self.density.d:
            raise DomainError("derivative order and density dimension differ")

    @property
    def d(self) -> int:
        return self.density.d

    def region(self) -> BoxUnion:
        return self.density.region()

    def scaled(self, c) -> "DerivAtom":
        return DerivAtom(self.beta, Times(self.density, c))

    def to_json(self) -> dict:
        return {"type": "deriv", "beta": list(self.beta), "density": self.density.to_json()}


@dataclass(frozen=True)
class EulerAtom:
    operator: EulerOperator
    density: Density

    type_name: ClassVar[str] = "euler"

    def __post_init__(self):
        if self.operator.d != self.density.d:
            raise DomainError("operator and density dimension differ")

    @classmethod
    def theta_power(cls, beta, density: Density) -> "EulerAtom":
        return cls(EulerOperator.theta_power(beta), density)

    @property
    def d(self) -> int:
        return self.density.d

    def region(self) -> BoxUnion:
        return self.density.region()

    def scaled(self, c) -> "EulerAtom":
        return EulerAtom(self.operator, Times(self.density, c))

    def to_json(self) -> dict:
        return {"type": "euler", "operator": self.operator.to_json(), "density": self.density.to_json()}


@dataclass(frozen=True)
class PointAtom:
    location: tuple[float, ...]
    beta: MultiIndex
    coeff: float | complex = 1.0

    type_name: ClassVar[str] = "point"

    def __post_init__(self):
        object.__setattr__(self, "location", tuple(float(v) for v in np.atleast_1d(self.location)))
        object.__setattr__(self, "beta", MultiIndex(self.beta))
        if len(self.beta) != len(self.location):
            raise DomainError("derivative order and location dimension differ")

    @property
    def d(self) -> int:
        return len(self.location)

    def region(self) -> BoxUnion:
        return BoxUnion((Box(self.location, self.location),))

    def scaled(self, c) -> "PointAtom":
        return PointAtom(self.location, self.beta, self.coeff * c)

    def to_json(self) -> dict:
        c = self.coeff
        return {
            "type": "point",
            "location": list(self.location),
            "beta": list(self.beta),
            "coeff": [c.real, c.imag] if isinstance(c, complex) else c,
        }


Atom = Union[DensityAtom, DerivAtom, EulerAtom, PointAtom]


def atom_from_json(obj: dict) -> Atom:
    kind = obj.get("type")
    allowed = {
        "density": {"type", "density"},
        "deriv": {"type", "beta", "density"},
        "euler": {"type", "operator", "beta", "density"},
        "point": {"type", "location", "beta", "coeff"},
    }
    if kind not in allowed:
        raise DomainError(f"unknown atom type {kind!r}")
    unknown = set(obj) - allowed[kind]
    if unknown:
        raise DomainError(f"unknown fields {sorted(unknown)} for atom type {kind}")
    if kind == "point":
        loc = obj["location"]
        beta = obj.get("beta", [0] * len(loc))
        c = obj.get("coeff", 1.0)
        c = complex(c[0], c[1]) if isinstance(c, list) else float(c)
        return PointAtom(tuple(loc), beta, c)
    t = density_from_json(obj["density"])
    if kind == "density":
        return DensityAtom(t)
    if kind == "deriv":
        return DerivAtom(obj["beta"], t)
    if "operator" in obj:
        return EulerAtom(EulerOperator.from_json(obj["operator"]), t)
    return EulerAtom.theta_power(obj["beta"], t)


@dataclass(frozen=True)
class Distribution:
    """Finite sum of atoms; immutable."""

    atoms: tuple[Atom, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if not self.atoms:
            raise DomainError("a distribution needs at least one atom")
        if len({a.d for a in self.atoms}) != 1:
            raise DomainError("atoms of different dimensions")

    @property
    def d(self) -> int:
        return self.atoms[0].d

    def __add__(self, other: "Distribution") -> "Distribution":
        return Distribution(self.atoms + other.atoms)

    def scaled(self, c) -> "Distribution":
        return Distribution(tuple(a.scaled(c) for a in self.atoms))

    def region(self) -> BoxUnion:
        return BoxUnion(tuple(b for a in self.atoms for b in a.region().boxes()))

    @property
    def compact(self) -> bool:
        return self.region().bounded

    def pair(self, g: SmoothFunction, cfg: PairingConfig | None = None) -> Estimate:
        return pair(self, g, cfg)

    def to_json(self) -> list[dict]:
        return [a.to_json() for a in self.atoms]

    @classmethod
    def from_json(cls, obj) -> "Distribution":
        return cls(tuple(atom_from_json(a) for a in obj))


def delta(a, beta=None, coeff=1.0) -> Distribution:
    """c δ_a^{(β)}."""
    a = tuple(float(v) for v in np.atleast_1d(a))
    beta = MultiIndex.zeros(len(a)) if beta is None else MultiIndex(beta)
    return Distribution((PointAtom(a, beta, coeff),))


def density(t: Density) -> Distribution:
    return Distribution((DensityAtom(t),))


# ---------------------------------------------------------------------------
# pairing


def _terms(atom) -> list[tuple[complex | float, MultiIndex, MultiIndex]]:
    """Integrand terms (c, p, q): t(x) Σ c x^p ∂^q g(x)."""
    d = atom.d
    zero = MultiIndex.zeros(d)
    if isinstance(atom, DensityAtom):
        return [(1.0, zero, zero)]
    if isinstance(atom, DerivAtom):
        return [((-1.0) ** atom.beta.order, zero, atom.beta)]
    xd = to_xd_form(adjoint(atom.operator))
    return [(float(c), nu, nu) for nu, c in xd.items()]


def _select_decay(t: Density, g: SmoothFunction, weight: float, d: int) -> tuple[float, float]:
    G = g.growth
    for k in range(G + d + 6, G + d, -1):
        M = t.decay_bound(k)
        if M is not None:
            return float(k - G), M * weight * 2.0 ** (G / 2)
    raise InsufficientDecayError(
        f"density {t.kind} declares no decay of order > {G + d}; the pairing over its unbounded support is undefined"
    )


def _pair_atom(atom, g: SmoothFunction, cfg: PairingConfig) -> Estimate:
    if isinstance(atom, PointAtom):
        v = g.deriv(atom.beta, as_points(atom.location, atom.d))[0]
        return Estimate(atom.coeff * (-1) ** atom.beta.order * v.item(), 0.0)
    t = atom.density
    region = t.region()
    gs = g.support()
    if gs is not None:
        region = region.intersect(gs)
    if region.empty:
        return ZERO
    terms = _terms(atom)

    def integrand(X):
        vals = t(X)
        out = np.zeros(X.shape[0], dtype=complex if np.iscomplexobj(vals) else float)
        nz = vals != 0
        if not np.any(nz):
            return out
        Xn = X[nz]
        acc = 0.0
        for c, p, q in terms:
            gq = g.deriv(q, Xn)
            acc = acc + c * (gq if p.order == 0 else monomial(Xn, p) * gq)
        acc = np.asarray(acc)
        if np.iscomplexobj(acc) and not np.iscomplexobj(out):
            out = out.astype(complex)
        out[nz] = vals[nz] * acc
        return out

    decay = None
    if not region.bounded:
        order = max(q.order for _, _, q in terms)
        weight = sum(abs(c) for c, _, _ in terms) * g.bound(order)
        decay = _select_decay(t, g, weight, atom.d)
    return integrate(integrand, region, cfg, decay)


def pair(T: Distribution, g: SmoothFunction, cfg: PairingConfig | None = None) -> Estimate:
    """⟨T, g⟩ summed over atoms in order; the error bounds add up."""
    cfg = cfg or PairingConfig()
    cfg.check_dim(T.d)
    if g.d != T.d:
        raise DomainError(f"distribution of dimension {T.d} paired with a function of dimension {g.d}")
    total = ZERO
    for atom in T.atoms:
        total = total + _pair_atom(atom, g, cfg)
    return total


# ---------------------------------------------------------------------------
# dilation


def dilate(T: Distribution, a) -> Distribution:
    """D_a T, with (D_a T)φ = T(σ(a)/(a_1⋯a_d) φ(·/a)), atom by atom in closed form."""
    a = tuple(float(v) for v in np.atleast_1d(a))
    if len(a) != T.d:
        raise DomainError("dilation factor has the wrong dimension")
    if any(v == 0 for v in a):
        raise DomainError("dilation factors must be nonzero")
    atoms = []
    for atom in T.atoms:
        if isinstance(atom, PointAtom):
            c = sigma(a) / math.prod(a) * math.prod(aj ** -b for aj, b in zip(a, atom.beta))
            atoms.append(PointAtom(tuple(b / aj for b, aj in zip(atom.location, a)), atom.beta, atom.coeff * c))
        elif isinstance(atom, DensityAtom):
            atoms.append(DensityAtom(Scaled(atom.density, a)))
        elif isinstance(atom, EulerAtom):
            atoms.append(EulerAtom(atom.operator, Scaled(atom.density, a)))
        else:
            c = math.prod(aj ** -b for aj, b in zip(a, atom.beta))
            t = Scaled(atom.density, a)
            atoms.append(DerivAtom(atom.beta, t if c == 1 else Times(t, c)))
    return Distribution(tuple(atoms))


# ---------------------------------------------------------------------------
# membership


def support_in_W_eps(T: Distribution) -> float | None:
    """Largest ε with supp T ⊂ W_ε, or None when a hyperplane is touched."""
    eps = T.region().hyperplane_distance()
    return eps if eps > 0 else None


@dataclass(frozen=True)
class Certificate:
    """Witness that a kernel is accepted by the 𝒟'_H gate."""

    eps: float
    decay_order: int


def certify(T: Distribution, k: int | None = None, require_w_eps: bool = True) -> Certificate:
    """Accept T when its support lies in some W_ε and every unbounded atom
    declares decay of order k (default d + 1).

    With ``require_w_eps=False`` only the decay witness is checked.
    Raises :class:`CertificateError` naming the failing predicate.
    """
    eps = support_in_W_eps(T)
    if eps is None:
        if require_w_eps:
            raise CertificateError("the support touches a coordinate hyperplane", "support_in_W_eps")
        eps = 0.0
    k = T.d + 1 if k is None else k
    for atom in T.atoms:
        if isinstance(atom, PointAtom) or atom.region().bounded:
            continue
        if atom.density.decay_bound(k) is None:
            raise CertificateError(
                f"unbounded atom with density {atom.density.kind} declares no decay of order {k}", "oh_witness"
            )
    return Certificate(eps, k)


def oc_to_oh(T: Distribution) -> Distribution:
    """Rewrite every ∂^β t atom as P(θ) τ with τ = t/x^β and P(θ)f = ∂^β(x^β f).

    Only the axes with β_j > 0 must stay away from the hyperplane x_j = 0.
    Other atoms pass through unchanged.
    """
    atoms = []
    for atom in T.atoms:
        if not isinstance(atom, DerivAtom):
            atoms.append(atom)
            continue
        if atom.beta.order == 0:
            atoms.append(EulerAtom(EulerOperator.constant(1, atom.d), atom.density))
            continue
        dist = axis_distances(atom.region())
        if any(b > 0 and dj == 0 for b, dj in zip(atom.beta, dist)):
            raise CertificateError("derivative atom touches the hyperplane of a differentiated axis", "support_in_W_eps")
        tau = PowerWeight(atom.density, tuple(-b for b in atom.beta))
        atoms.append(EulerAtom(power_derivative_operator(atom.beta), tau))
    return Distribution(tuple(atoms))


@dataclass(frozen=True)
class AtomMembership:
    index: int
    kind: str
    empirical_sup: float
    declared: float | None
    passed: bool


@dataclass(frozen=True)
class MembershipReport:
    k: int
    rows: tuple[AtomMembership, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _axis_samples(lo: float, hi: float, n: int) -> np.ndarray:
    pts = [np.linspace(max(lo, -1.0), min(hi, 1.0), n)] if max(lo, -1.0) <= min(hi, 1.0) else []
    if hi > 1.0:
        pts.append(np.geomspace(max(lo, 1.0), min(hi, 1e8), n))
    if lo < -1.0:
        pts.append(-np.geomspace(max(-hi, 1.0), min(-lo, 1e8), n))
    return np.unique(np.concatenate(pts)) if pts else np.empty(0)


def oh_membership_check(T: Distribution, k: int, samples: int = 400) -> MembershipReport:
    """Sample sup (1+|x|²)^{k/2}|t| on log-spaced grids and compare with the declared bound."""
    n = samples if T.d == 1 else max(8, int(math.sqrt(samples)))
    rows = []
    for i, atom in enumerate(T.atoms):
        if isinstance(atom, PointAtom):
            continue
        t = atom.density
        sup = 0.0
        for b in t.region().boxes():
            axes = [_axis_samples(lo, hi, n) for lo, hi in zip(b.lo, b.hi)]
            if any(a.size == 0 for a in axes):
                continue
            grids = np.meshgrid(*axes, indexing="ij")
            X = np.stack([g.ravel() for g in grids], axis=1)
            w = (1.0 + np.sum(X * X, axis=1)) ** (k / 2)
            sup = max(sup, float(np.max(w * np.abs(t(X)))))
        M = t.decay_bound(k)
        ok = M is not None and sup <= M * (1 + 1e-9)
        rows.append(AtomMembership(i, atom.type_name, sup, M, ok))
    return MembershipReport(k, tuple(rows))


# ---------------------------------------------------------------------------
# regularization


def standard_mollifier(d: int = 1) -> TestFunction:
    """Normalized product bump: nonnegative, integral 1, supported in [-1, 1]^d."""
    return TestFunction.unit_bump(d).times(BUMP_INTEGRAL ** -d)


def _grow(box: Box, eps: float) -> Box:
    return Box(tuple(v - eps for v in box.lo), tuple(v + eps for v in box.hi))


@register("regularized")
@dataclass(frozen=True)
class Regularized(Density):
    """x ↦ ⟨T, χ_ε(x - ·)⟩ with χ_ε = ε^{-d} χ(·/ε), evaluated on demand."""

    dist: Distribution
    mollifier: TestFunction
    eps: float
    cfg: PairingConfig = PairingConfig()

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.dist.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return True

    def kernel_at(self, x) -> TestFunction:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self.mollifier.affine(-np.ones(self.d) / self.eps, x / self.eps).times(self.eps ** -self.d)

    def __call__(self, X):
        X = as_points(X, self.d)
        out = np.empty(X.shape[0], dtype=complex)
        for i, x in enumerate(X):
            out[i] = pair(self.dist, self.kernel_at(x), self.cfg).value
        return out

    def region(self):
        return BoxUnion(tuple(_grow(b, self.eps) for b in self.dist.region().boxes()))

    def decay_bound(self, k):
        if not self.region().bounded:
            return None
        box = self.region().bounding_box()
        axes = [np.linspace(lo, hi, 61 if self.d == 1 else 21) for lo, hi in zip(box.lo, box.hi)]
        grids = np.meshgrid(*axes, indexing="ij")
        sup = float(np.max(np.abs(self(np.stack([g.ravel() for g in grids], axis=1)))))
        return self._compact_bound(2.0 * sup, k)

    def params(self):
        return {"dist": self.dist.to_json(), "mollifier": self.mollifier.to_json(), "eps": self.eps}

    @classmethod
    def from_params(cls, p):
        return cls(Distribution.from_json(p["dist"]), TestFunction.from_json(p["mollifier"]), float(p["eps"]))


def regularize(
    T: Distribution, mollifier: TestFunction | None = None, eps: float = 0.1, cfg: PairingConfig | None = None
) -> DensityAtom:
    """T * χ_ε as a lazily evaluated density atom.

    The mollifier must be nonnegative, have integral 1 and support in the
    sup-norm unit ball.
    """
    if not eps > 0:
        raise DomainError("eps must be positive")
    chi = mollifier or standard_mollifier(T.d)
    if chi.d != T.d:
        raise DomainError("mollifier dimension differs from the distribution")
    box = chi.support()
    if max(box.abs_max()) > 1.0 + 1e-12:
        raise DomainError("mollifier support must lie in the unit ball")
    axes = [np.linspace(lo, hi, 401 if T.d == 1 else 61) for lo, hi in zip(box.lo, box.hi)]
    grids = np.meshgrid(*axes, indexing="ij")
    vals = chi(np.stack([g.ravel() for g in grids], axis=1))
    if np.iscomplexobj(vals) or np.min(vals) < -1e-14:
        raise DomainError("mollifier must be real and nonnegative")
    mass = integrate(chi, box).value
    if abs(mass - 1.0) > 1e-8:
        raise DomainError(f"mollifier integral is {mass}, expected 1")
    return DensityAtom(Regularized(T, chi, float(eps), cfg or PairingConfig()))


# ---------------------------------------------------------------------------
# kernels from the worked examples


def exp_osc_kernel(k: int = 2) -> Distribution:
    """e^{-ix} (d = 1) as ∂^k of a piece supported in |x| ≥ 1/2 plus a compact remainder."""
    return Distribution((DerivAtom((k,), ExpOsc(k, "deriv_base")), DensityAtom(ExpOsc(k, "remainder"))))


def gauss_osc_kernel() -> Distribution:
    """e^{iπx²} (d = 1) as core + ∂u + tail with decay 1/|x| for u and 1/x² for the tail."""
    return Distribution(
        (
            DensityAtom(GaussOsc("core")),
            DerivAtom((1,), GaussOsc("deriv_base")),
            DensityAtom(GaussOsc("tail")),
        )
    )


def half_line_indicator() -> Distribution:
    """The indicator of [1, ∞): tempered, supported in W_1, without decay."""
    return density(Indicator((1.0,), (math.inf,)))

