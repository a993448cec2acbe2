"""Named verification suites with independent oracles.

Every check records what was computed, the reference it is compared with,
the tolerance and a short anchor statement of the property being checked.
Reports serialize to JSON and render as plain-text tables.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .densities import (
    CutoffPower,
    ExpDecay,
    ExpOsc,
    FlatExp,
    GaussOsc,
    Indicator,
    Product,
    Rational,
    monomial_density,
)
from .dist import (
    DensityAtom,
    DerivAtom,
    Distribution,
    EulerAtom,
    certify,
    delta,
    density,
    dilate,
    exp_osc_kernel,
    gauss_osc_kernel,
    half_line_indicator,
    oc_to_oh,
    oh_membership_check,
    pair,
    regularize,
    support_in_W_eps,
)
from .euler import (
    EulerOperator,
    XDForm,
    adjoint,
    derivative_basis_coefficients,
    derivative_basis_identity_holds,
    from_xd_form,
    power_derivative_operator,
    to_xd_form,
)
from .foundation import (
    Box,
    CertificateError,
    HadamardError,
    MultiIndex,
    PairingConfig,
    integrate,
    monomial,
    sigma,
)
from .hadamard import (
    apply_LT,
    apply_MT,
    eigenvalue,
    extendability_check,
    factorization_check,
    mt_support,
    power_derivative_kernel,
    star,
    verify_eigen,
)
from .testfn import NegativePower, TestFunction, fourier_sample

__all__ = [
    "ANCHORS",
    "Check",
    "SuiteReport",
    "SUITES",
    "run_suites",
    "fourier_extension_suite",
    "unbounded_kernel_suite",
    "theorem_suites",
]

ANCHORS: dict[str, str] = {
    "identity": "delta at the unit point is the identity of the star product, m_alpha = 1",
    "dilation": "dilations act on monomials by D_a x^alpha = a^alpha x^alpha",
    "dilation_group": "D_b D_a = D_ab and the defining formula of D_a",
    "eigen_formula": "m_alpha = T(sigma(x)/x^(alpha+1))",
    "weak_eigen": "integral of xi^alpha T_x phi(x xi) equals m_alpha times integral of eta^alpha phi",
    "derivative_kernel": "(-1)^|k| (x^k tau)^(k) has eigenvalues (-1)^|k| (alpha+k)!/alpha! m_alpha(tau)",
    "euler_eigen": "an Euler operator P(theta) multiplies m_alpha by P(alpha)",
    "multiplicativity": "eigenvalue families multiply under the star product",
    "support_star": "T_x phi(xy) vanishes for |y| > r/eps when supp T lies in W_eps",
    "commutation": "Hadamard operators commute with dilations",
    "stirling": "theta-polynomials and sums of x^n d^n convert exactly by Stirling numbers",
    "adjoint": "the formal adjoint replaces theta by -theta-1",
    "derivative_basis": "x^n d^n is a combination of d^(m+j) x^(m+n+j)",
    "power_derivative": "f -> d^beta (x^beta f) is an Euler operator",
    "factorization": "on smooth functions L_T = P(theta) composed with M of the reflected kernel",
    "fourier_closed_form": "for T = exp(-ix), T_x phi(xy) = sigma(y)/y (phi-hat)(1/y) with matching derivatives",
    "fourier_hyperplane": "T_x phi(xy) for T = exp(-ix) extends smoothly and vanishes on the hyperplanes",
    "oscillatory_rewrite": "oscillatory kernels pair identically in derivative and Euler form",
    "unbounded_growth": "for T the indicator of [1, inf), T_x phi(xy) = (1/y) int_y^inf phi grows like C/y",
    "unbounded_gate": "a kernel without decay is rejected although supported in W_1",
    "extendability": "x^(-gamma) t integrable for all gamma lets M_T extend across the hyperplanes",
    "point_at_origin": "derivatives of delta at the origin give no operator on smooth functions",
    "membership": "(1+|x|^2)^(k/2) t is bounded by the declared constant",
    "oc_to_oh": "derivatives of decaying densities off the hyperplanes rewrite in Euler form",
    "w_eps": "support in W_eps read off from the atoms",
    "regularization": "pairings of T * chi_eps converge to the pairing of T",
}


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    computed: object
    reference: object
    tolerance: float
    passed: bool
    runtime: float
    detail: str = ""

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "id": self.check_id,
            "anchor": self.anchor,
            "computed": _jsonable(self.computed),
            "reference": _jsonable(self.reference),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }
        if timing:
            out["runtime"] = self.runtime
        return out


def _jsonable(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (int, float, np.integer, np.floating, Fraction)):
        return float(v)
    return str(v)


def _short(v) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.10g}{v.imag:+.10g}j"
    if isinstance(v, (float, np.floating)):
        return f"{v:.10g}"
    return str(v)


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def runtime(self) -> float:
        return sum(c.runtime for c in self.checks)

    def to_json(self, timing: bool = True) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [c.to_json(timing) for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.name}: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)"]
        width = max((len(c.check_id) for c in self.checks), default=10)
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  {flag}  {c.check_id:<{width}}  computed={_short(c.computed)}  "
                f"reference={_short(c.reference)}  tol={c.tolerance:.1e}  {c.runtime:.2f}s"
            )
            if c.detail and not c.passed:
                lines.append(f"        {c.detail}")
        return "\n".join(lines)

    # building helpers ---------------------------------------------------

    def compare(self, check_id: str, anchor: str, compute: Callable[[], object], reference, tol: float, rel=False):
        """Record |computed - reference| ≤ tol (relative to |reference| when rel)."""
        t0 = time.perf_counter()
        try:
            value = compute()
            ref = reference() if callable(reference) else reference
            diff = abs(value - ref)
            scale = abs(ref) if rel else 1.0
            ok = bool(diff <= tol * scale or diff <= 1e-14)
            detail = f"difference {diff:.3e}"
        except HadamardError as exc:
            value, ref, ok, detail = None, None, False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(check_id, ANCHORS[anchor], value, ref, tol, ok, time.perf_counter() - t0, detail))

    def bound(self, check_id: str, anchor: str, compute: Callable[[], float], limit, tol: float = 0.0):
        """Record computed ≤ limit."""
        t0 = time.perf_counter()
        try:
            value = compute()
            lim = limit() if callable(limit) else limit
            ok = bool(value <= lim)
            detail = ""
        except HadamardError as exc:
            value, lim, ok, detail = None, limit, False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(check_id, ANCHORS[anchor], value, lim, tol, ok, time.perf_counter() - t0, detail))

    def truth(self, check_id: str, anchor: str, compute: Callable[[], bool], expect: bool = True, detail: str = ""):
        t0 = time.perf_counter()
        try:
            value = bool(compute())
            ok = value == expect
        except HadamardError as exc:
            value, ok, detail = None, False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(check_id, ANCHORS[anchor], value, expect, 0.0, ok, time.perf_counter() - t0, detail))

    def rejects(self, check_id: str, anchor: str, compute: Callable[[], object], predicate: str):
        """Record that ``compute`` raises a CertificateError naming ``predicate``."""
        t0 = time.perf_counter()
        try:
            compute()
            got, ok = "accepted", False
        except CertificateError as exc:
            got, ok = exc.predicate, exc.predicate == predicate
        self.checks.append(Check(check_id, ANCHORS[anchor], got, predicate, 0.0, ok, time.perf_counter() - t0))


# ---------------------------------------------------------------------------
# catalog


def catalog_1d() -> dict[str, Distribution]:
    ind = Indicator((1.0,), (2.0,))
    return {
        "delta_2": delta([2.0]),
        "delta_mix": delta([-1.5], coeff=0.5) + delta([0.8], [1]),
        "indicator": density(ind),
        "indicator_neg": density(Indicator((-3.0,), (-1.0,), 0.7)),
        "deriv": power_derivative_kernel(ind, [1]),
        "euler": Distribution((EulerAtom(EulerOperator.theta() ** 2 - EulerOperator.theta(), Indicator((0.5,), (1.5,))),)),
        "exp_tail": density(ExpDecay(1.0, (1.0,), (math.inf,))),
    }


def catalog_2d() -> dict[str, Distribution]:
    return {
        "delta": delta([2.0, -3.0]),
        "product": density(Product((Indicator((1.0,), (2.0,)), Indicator((-2.0,), (-1.0,))))),
    }


def bumps(d: int = 1) -> list[TestFunction]:
    if d == 1:
        return [
            TestFunction.bump(1.5, 0.6),
            TestFunction.bump(-0.8, 0.7, coeff=-0.6),
            TestFunction.bump(0.3, 1.0, gamma=1),
        ]
    return [
        TestFunction.bump((1.2, -0.9), (0.5, 0.6)),
        TestFunction.bump((-0.5, 0.7), (0.8, 0.5), coeff=0.8),
    ]


def _value(est) -> complex | float:
    return est.value


# ---------------------------------------------------------------------------
# suites


def identity_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("identity")
    for d in (1, 2):
        one = delta([1.0] * d)
        for alpha in MultiIndex.all_of_order_at_most(d, 6):
            rep.compare(f"m{tuple(alpha)}", "identity", lambda a=alpha: _value(eigenvalue(one, a, cfg)), 1.0, 1e-10)
    one = delta([1.0])
    for name, S in catalog_1d().items():
        for i, phi in enumerate(bumps(1)[:2]):
            rep.compare(
                f"L_delta1({name})[phi{i}]",
                "identity",
                lambda S=S, phi=phi: _value(apply_LT(one, S, phi, cfg)),
                lambda S=S, phi=phi: _value(pair(S, phi, cfg)),
                1e-9,
            )
    for name, S in catalog_2d().items():
        phi = bumps(2)[0]
        rep.compare(
            f"L_delta11({name})[phi]",
            "identity",
            lambda S=S, phi=phi: _value(apply_LT(delta([1.0, 1.0]), S, phi, cfg)),
            lambda S=S, phi=phi: _value(pair(S, phi, cfg)),
            1e-9,
        )
    return rep


def _weak_dilation(a, alpha, phi, cfg):
    X = density(monomial_density(alpha))
    lhs = _value(pair(dilate(X, a), phi, cfg))
    rhs = math.prod(aj**al for aj, al in zip(a, alpha)) * _value(pair(X, phi, cfg))
    return lhs, rhs


def dilation_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("dilation")
    cases = [((2.0,), bumps(1)[0]), ((-1.5,), bumps(1)[2]), ((2.0, -3.0), bumps(2)[0])]
    for a, phi in cases:
        for alpha in MultiIndex.all_of_order_at_most(len(a), 4):
            lhs, rhs = _weak_dilation(a, alpha, phi, cfg)
            rep.compare(f"a={a} alpha={tuple(alpha)}", "dilation", lambda v=lhs: v, rhs, 1e-8, rel=True)
    phi = bumps(1)[0]
    for name, T in catalog_1d().items():
        a, b = (2.0,), (-0.5,)
        rep.compare(
            f"group_law({name})",
            "dilation_group",
            lambda T=T: _value(pair(dilate(dilate(T, a), b), phi, cfg)),
            lambda T=T: _value(pair(dilate(T, (a[0] * b[0],)), phi, cfg)),
            1e-8,
        )
        rep.compare(
            f"defining_formula({name})",
            "dilation_group",
            lambda T=T: _value(pair(dilate(T, (-1.5,)), phi, cfg)),
            lambda T=T: _value(pair(T, phi.affine((1 / -1.5,), 0.0).times(sigma((-1.5,)) / -1.5), cfg)),
            1e-8,
        )
    rep.compare(
        "identity_dilation",
        "dilation_group",
        lambda: _value(pair(dilate(catalog_1d()["delta_mix"], (1.0,)), phi, cfg)),
        lambda: _value(pair(catalog_1d()["delta_mix"], phi, cfg)),
        0.0,
    )
    return rep


def eigenvalue_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("eigenvalues")
    ind = Indicator((1.0,), (2.0,))
    T = density(ind)
    rep.compare("indicator m0", "eigen_formula", lambda: _value(eigenvalue(T, [0], cfg)), math.log(2.0), 1e-8)
    for a in range(1, 7):
        rep.compare(f"indicator m{a}", "eigen_formula", lambda a=a: _value(eigenvalue(T, [a], cfg)), (1 - 2.0**-a) / a, 1e-8)
    rep.compare("delta_2 m1", "eigen_formula", lambda: _value(eigenvalue(delta([2.0]), [1], cfg)), 0.25, 1e-15)
    rng = np.random.default_rng(seed)
    for i in range(5):
        phi = TestFunction.random(rng, 1, n_terms=2, radius=2.0)
        alpha = (i % 4,)
        rep.bound(f"verify_eigen indicator bump{i} alpha={alpha}", "weak_eigen", lambda p=phi, a=alpha: verify_eigen(T, a, p, cfg).residual, 1e-6)
    K = power_derivative_kernel(ind, [1])
    for a in range(5):
        rep.compare(
            f"(x tau)' factor alpha={a}",
            "derivative_kernel",
            lambda a=a: _value(eigenvalue(K, [a], cfg)) / _value(eigenvalue(T, [a], cfg)),
            -(a + 1.0),
            1e-6,
        )
    rep.bound("verify_eigen (x tau)' alpha=2", "derivative_kernel", lambda: verify_eigen(K, [2], bumps(1)[0], cfg).residual, 1e-6)
    for name, S in catalog_1d().items():
        for a in (0, 2):
            rep.compare(
                f"closed vs quadrature {name} alpha={a}",
                "eigen_formula",
                lambda S=S, a=a: _value(eigenvalue(S, [a], cfg)),
                lambda S=S, a=a: _value(eigenvalue(S, [a], cfg, method="quadrature")),
                1e-8,
                rel=True,
            )
    for name, S in catalog_1d().items():
        if name == "exp_tail":
            continue
        rep.bound(
            f"verify_eigen {name} alpha=1",
            "weak_eigen",
            lambda S=S: verify_eigen(S, [1], bumps(1)[0], cfg).residual,
            1e-6,
        )
    cat = catalog_1d()
    for s_name, t_name in (("delta_2", "indicator"), ("indicator", "indicator_neg"), ("delta_2", "euler")):
        st = star(cat[s_name], cat[t_name])
        for a in (0, 1, 3):
            rep.compare(
                f"m{a}({s_name} * {t_name})",
                "multiplicativity",
                lambda st=st, a=a: _value(eigenvalue(st, [a], cfg)),
                lambda s=cat[s_name], t=cat[t_name], a=a: _value(eigenvalue(s, [a], cfg)) * _value(eigenvalue(t, [a], cfg)),
                1e-8,
                rel=True,
            )
    # property (*): exact zeros from support arithmetic
    phi = bumps(1)[0]
    r = max(phi.support().abs_max())
    for name in ("indicator", "indicator_neg", "delta_mix"):
        S = cat[name]
        eps = support_in_W_eps(S)
        ys = [1.01 * r / eps, -1.5 * r / eps, 7 * r / eps]
        rep.truth(f"support(*) {name}", "support_star", lambda S=S, ys=ys: all(apply_MT(S, phi, [y], cfg).value == 0 for y in ys))
    for name, T2 in catalog_2d().items():
        for alpha in ((0, 0), (1, 2), (3, 1)):
            rep.compare(
                f"2d closed vs quadrature {name} alpha={alpha}",
                "eigen_formula",
                lambda T2=T2, a=alpha: _value(eigenvalue(T2, a, cfg)),
                lambda T2=T2, a=alpha: _value(eigenvalue(T2, a, cfg, method="quadrature")),
                1e-8,
                rel=True,
            )
    return rep


def euler_form_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    """m_α(θ^β t) = α^β m_α(t), the left side by direct quadrature of t·(θ*)^β(σ/x^{α+𝟙})."""
    rep = SuiteReport("euler_form")
    dens = {
        "product": Product((Indicator((1.0,), (2.0,)), Indicator((-2.0,), (-1.0,)))),
        "exp_product": Product((ExpDecay(1.0, (0.5,), (math.inf,)), Indicator((1.0,), (3.0,)))),
    }
    for name, t in dens.items():
        eps = t.region().hyperplane_distance()
        base = {a: _value(pair(density(t), NegativePower(a, eps), cfg)) for a in MultiIndex((4, 4)).below()}
        for beta in MultiIndex((2, 2)).below():
            T = Distribution((EulerAtom.theta_power(beta, t),))
            for alpha in MultiIndex((4, 4)).below():
                ref = math.prod(a**b for a, b in zip(alpha, beta)) * base[alpha]
                rep.compare(
                    f"{name} beta={tuple(beta)} alpha={tuple(alpha)}",
                    "euler_eigen",
                    lambda T=T, a=alpha: _value(pair(T, NegativePower(a, eps), cfg)),
                    ref,
                    1e-8 * max(1.0, abs(ref)),
                )
    return rep


def commutation_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("commutation")
    cat = catalog_1d()
    kernels = ["delta_2", "delta_mix", "indicator", "deriv", "euler"]
    sources = {"delta_b": delta([1.3]), "indicator": cat["indicator"], "indicator_neg": cat["indicator_neg"]}
    phi = bumps(1)[0]
    for a in ((2.0,), (-0.5,)):
        c = sigma(a) / a[0]
        phi_a = phi.affine((1 / a[0],), 0.0).times(c)
        for kn in kernels:
            for sn, S in sources.items():
                rep.compare(
                    f"T={kn} S={sn} a={a[0]}",
                    "commutation",
                    lambda T=cat[kn], S=S, a=a: _value(apply_LT(T, dilate(S, a), phi, cfg)),
                    lambda T=cat[kn], S=S: _value(apply_LT(T, S, phi_a, cfg)),
                    1e-7,
                )
    return rep


def _poly_samples(d: int, n: int) -> list[EulerOperator]:
    th = [EulerOperator.theta(j, d) for j in range(d)]
    out = [EulerOperator.theta_power(b) for b in MultiIndex.all_of_order_at_most(d, n)]
    out.append(th[0] ** 2 - th[0] * 3 + 2)
    if d == 2:
        out.append(th[0] * th[1] - th[1] ** 2 + Fraction(1, 2))
    return out


def euler_identities_suite(cfg: PairingConfig | None = None, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("euler_identities")
    for d in (1, 2):
        for P in _poly_samples(d, 4):
            rep.truth(f"round trip theta->xd->theta {P!r}", "stirling", lambda P=P: from_xd_form(to_xd_form(P)) == P)
            rep.truth(f"adjoint involution {P!r}", "adjoint", lambda P=P: adjoint(adjoint(P)) == P)
        for nu in MultiIndex.all_of_order_at_most(d, 4):
            X = XDForm({nu: 1}, d)
            rep.truth(f"round trip xd->theta->xd nu={tuple(nu)}", "stirling", lambda X=X: to_xd_form(from_xd_form(X)) == X)
            for m in MultiIndex.all_of_order_at_most(d, 2):
                rep.truth(
                    f"derivative basis m={tuple(m)} nu={tuple(nu)}",
                    "derivative_basis",
                    lambda m=m, nu=nu: derivative_basis_identity_holds(m, nu, derivative_basis_coefficients(m, nu)),
                )
            P = power_derivative_operator(nu)
            # d^ν(x^ν x^γ) = (γ+ν)!/γ! x^γ, so P(γ) must equal that ratio for every γ
            rep.truth(
                f"power derivative nu={tuple(nu)}",
                "power_derivative",
                lambda P=P, nu=nu: all(
                    P(g) == math.prod(math.perm(gj + nj, nj) for gj, nj in zip(g, nu))
                    for g in MultiIndex.all_of_order_at_most(d, 5)
                ),
            )
    return rep


def factorization_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("factorization")
    th = EulerOperator.theta()
    ops = {"1": EulerOperator.constant(1), "theta": th, "theta^2-theta": th**2 - th}
    dens = {"[1,2]": Indicator((1.0,), (2.0,)), "[-2,-1]": Indicator((-2.0,), (-1.0,), 0.5)}
    pairs = [
        (TestFunction.bump(0.8, 0.5), TestFunction.bump(1.5, 0.6)),
        (TestFunction.bump(-1.2, 0.6, coeff=0.7), TestFunction.bump(-0.9, 0.8, gamma=1)),
        (TestFunction.bump(1.5, 1.0), TestFunction.bump(0.5, 2.0)),
    ]
    for pn, P in ops.items():
        for dn, t in dens.items():
            for i, (f, phi) in enumerate(pairs):
                rep.bound(
                    f"P={pn} t={dn} pair{i}",
                    "factorization",
                    lambda P=P, t=t, f=f, phi=phi: factorization_check(P, t, f, phi, cfg).residual,
                    1e-6,
                )
    return rep


def fourier_extension_suite(
    phi: TestFunction | None = None,
    alpha_max: int = 2,
    y_grid=(0.5, 1.0, 2.0),
    cfg: PairingConfig | None = None,
) -> SuiteReport:
    """T = e^{-ix} (d = 1): closed-form Fourier agreement off the hyperplane
    and vanishing of T_x φ(xy) with its derivatives as y → 0."""
    cfg = cfg or PairingConfig()
    phi = phi or TestFunction.bump(0.3, 1.0)
    rep = SuiteReport("fourier_extension")
    off = oc_to_oh(exp_osc_kernel(1))

    def closed(y: float, a: int):
        xi = 1.0 / y
        s = 0.0
        for j in range(a + 1):
            s += math.comb(a, j) * math.perm(a, a - j) * xi**j * fourier_sample(phi, [j], [xi], cfg).value
        return math.copysign(1.0, y) / y ** (a + 1) * (-1) ** a * s

    for y in y_grid:
        for a in range(alpha_max + 1):
            rep.compare(
                f"F^({a})({y})",
                "fourier_closed_form",
                lambda y=y, a=a: apply_MT(off, phi, [y], cfg, [a]).value,
                lambda y=y, a=a: closed(y, a),
                1e-6,
                rel=True,
            )
    # grid derivatives by Richardson-extrapolated central differences
    F = lambda y: apply_MT(off, phi, [y], cfg).value  # noqa: E731

    def richardson(y: float, a: int, h: float = 0.02):
        def cd(h):
            if a == 1:
                return (F(y + h) - F(y - h)) / (2 * h)
            return (F(y + h) - 2 * F(y) + F(y - h)) / (h * h)

        return (4 * cd(h / 2) - cd(h)) / 3

    for a in (1, 2):
        rep.compare(
            f"grid derivative F^({a})(1)",
            "fourier_closed_form",
            lambda a=a: richardson(1.0, a),
            lambda a=a: closed(1.0, a),
            1e-6,
            rel=True,
        )
    F1 = abs(F(1.0))
    rep.bound("|F(1e-3)| <= 1e-4 |F(1)|", "fourier_hyperplane", lambda: abs(F(1e-3)), 1e-4 * F1)
    for a in range(alpha_max + 1):
        on = oc_to_oh(exp_osc_kernel(a + 2))  # decay order |α| + d + 1
        rep.bound(f"F^({a})(0) = 0", "fourier_hyperplane", lambda on=on, a=a: abs(apply_MT(on, phi, [0.0], cfg, [a]).value), 1e-9)
    rep.compare(
        "derivative vs Euler form pairing",
        "oscillatory_rewrite",
        lambda: pair(oc_to_oh(exp_osc_kernel(2)), phi, cfg).value,
        lambda: pair(exp_osc_kernel(2), phi, cfg).value,
        1e-9,
    )
    rep.compare(
        "Euler form vs brute oscillatory quadrature",
        "oscillatory_rewrite",
        lambda: pair(oc_to_oh(exp_osc_kernel(2)), phi, cfg).value,
        lambda: integrate(lambda X: np.exp(-1j * X[:, 0]) * phi(X), phi.support(), cfg).value,
        1e-6,
        rel=True,
    )
    rep.compare(
        "exp(i pi x^2) split vs brute quadrature",
        "oscillatory_rewrite",
        lambda: pair(gauss_osc_kernel(), phi, cfg).value,
        lambda: integrate(lambda X: np.exp(1j * np.pi * X[:, 0] ** 2) * phi(X), phi.support(), cfg).value,
        1e-6,
        rel=True,
    )
    return rep


def unbounded_kernel_suite(phi: TestFunction | None = None, y_seq=(1e-1, 1e-2, 1e-3, 1e-4), cfg=None) -> SuiteReport:
    """T = indicator of [1, ∞): T_x φ(xy) = (1/y)∫_y^∞ φ grows like C/y with C = ∫_0^∞ φ."""
    cfg = cfg or PairingConfig()
    phi = phi or TestFunction.bump(0.4, 1.0)
    rep = SuiteReport("unbounded_kernel")
    T = half_line_indicator()
    C = integrate(lambda X: phi(X), Box((0.0,), (phi.support().hi[0],)), cfg).value
    for y in y_seq:
        rep.compare(f"y*F(y) at y={y:g}", "unbounded_growth", lambda y=y: y * apply_MT(T, phi, [y], cfg).value, C, 0.1, rel=True)
    rep.compare(
        "F(1) = integral of phi over [1, inf)",
        "unbounded_growth",
        lambda: apply_MT(T, phi, [1.0], cfg).value,
        lambda: integrate(lambda X: phi(X), Box((1.0,), (max(1.0, phi.support().hi[0]),)), cfg).value,
        1e-10,
    )
    odd = TestFunction.bump(2.0, 1.0, gamma=1)  # odd about 2, so ∫_0^∞ φ = 0
    rep.bound(
        "odd phi gives bounded values",
        "unbounded_growth",
        lambda: max(abs(apply_MT(T, odd, [y], cfg).value) for y in y_seq),
        1.0,
    )
    rep.truth("support in W_1", "unbounded_gate", lambda: support_in_W_eps(T) == 1.0)
    rep.rejects("certificate rejects the kernel", "unbounded_gate", lambda: certify(T), "oh_witness")
    rep.rejects("hyperplane value rejected", "unbounded_gate", lambda: apply_MT(T, phi, [0.0], cfg), "decay")
    rep.truth("membership k=1 fails", "membership", lambda: oh_membership_check(T, 1).passed, expect=False)
    return rep


def extendability_suite(cfg: PairingConfig | None = None, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("extendability")
    for p in range(3):
        T = density(CutoffPower(p))
        rep.truth(
            f"t_{p} fails first at gamma={p + 1}",
            "extendability",
            lambda T=T, p=p: extendability_check(T, [p + 2]).first_failure() == MultiIndex(p + 1),
        )
    rep.truth("exp(-1/x) passes gamma <= 6", "extendability", lambda: extendability_check(density(FlatExp()), [6]).passed)
    rep.truth(
        "exp(-1/x) yields the extension kernel",
        "extendability",
        lambda: len(extendability_check(density(FlatExp()), [3]).constructions) == 1,
    )
    rep.truth(
        "indicator [1,2] derivative passes",
        "extendability",
        lambda: extendability_check(power_derivative_kernel(Indicator((1.0,), (2.0,)), [1]), [5]).passed,
    )
    for b in range(3):
        rep.rejects(f"delta^({b}) at 0 rejected", "point_at_origin", lambda b=b: certify(delta([0.0], [b])), "support_in_W_eps")
    rep.truth("delta at 0 fails extendability", "point_at_origin", lambda: extendability_check(delta([0.0]), [1]).passed, expect=False)
    rep.rejects("2d delta on an axis rejected", "point_at_origin", lambda: certify(delta([0.0, 1.0])), "support_in_W_eps")
    return rep


def membership_suite(cfg: PairingConfig, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("membership")
    rat = density(Rational(2.0, (-math.inf,), (math.inf,)))
    rep.truth("(1+x^2)^-2 at k=4", "membership", lambda: oh_membership_check(rat, 4).passed)
    rep.bound("(1+x^2)^-2 empirical sup", "membership", lambda: oh_membership_check(rat, 4).rows[0].empirical_sup, 1.0 + 1e-12)
    rep.truth("indicator [1,inf) at k=1", "membership", lambda: oh_membership_check(half_line_indicator(), 1).passed, expect=False)
    rep.truth("exp(i pi x^2) split at k=1", "membership", lambda: oh_membership_check(gauss_osc_kernel(), 1).passed)
    rep.truth("exp(-ix) Euler form at k=2", "membership", lambda: oh_membership_check(oc_to_oh(exp_osc_kernel(2)), 2).passed)
    rep.truth("delta at (2,3)", "w_eps", lambda: support_in_W_eps(delta([2.0, 3.0])) == 2.0)
    rep.truth("delta at 0", "w_eps", lambda: support_in_W_eps(delta([0.0])) is None)
    rep.truth("box [1,2]x[-2,-1]", "w_eps", lambda: support_in_W_eps(density(Indicator((1.0, -2.0), (2.0, -1.0)))) == 1.0)
    t = Indicator((1.0,), (2.0,))
    T = Distribution((DerivAtom((1,), t),))
    rng = np.random.default_rng(seed + 1)
    for i in range(5):
        phi = TestFunction.random(rng, 1, n_terms=2, radius=2.5)
        rep.compare(
            f"t' vs Euler form bump{i}",
            "oc_to_oh",
            lambda phi=phi: pair(oc_to_oh(T), phi, cfg).value,
            lambda phi=phi: pair(T, phi, cfg).value,
            1e-9,
        )
    rep.truth("beta = 0 is the identity rewrite", "oc_to_oh", lambda: oc_to_oh(density(t)) == density(t))
    # regularization: δ'_2 * χ_ε against φ, errors shrink at least linearly
    phi = TestFunction.bump(1.8, 0.8)
    D = delta([2.0], [1])
    exact = pair(D, phi, cfg).value

    def order():
        errs = [abs(pair(Distribution((regularize(D, eps=e, cfg=cfg),)), phi, cfg).value - exact) for e in (0.2, 0.1, 0.05)]
        return min(math.log2(errs[0] / errs[1]), math.log2(errs[1] / errs[2]))

    rep.bound("convergence order of <T * chi_eps, phi>", "regularization", lambda: -order(), -1.0)
    s = Indicator((1.0,), (2.0,))

    def fubini():
        eps = 0.2
        R = Distribution((regularize(density(s), eps=eps, cfg=cfg),))
        from .dist import standard_mollifier

        chi = standard_mollifier(1)
        box = Box((1.0 - eps, 1.0), (2.0 + eps, 2.0))

        def f(X):
            return chi((X[:, 0] - X[:, 1]).reshape(-1, 1) / eps) / eps * phi(X[:, :1])

        return pair(R, phi, cfg).value, integrate(f, box, cfg).value

    vals = {}
    rep.compare(
        "regularized density vs double quadrature",
        "regularization",
        lambda: vals.setdefault("v", fubini())[0],
        lambda: vals["v"][1],
        1e-7,
    )
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "identity": identity_suite,
    "dilation": dilation_suite,
    "eigenvalues": eigenvalue_suite,
    "euler_form": euler_form_suite,
    "commutation": commutation_suite,
    "euler_identities": euler_identities_suite,
    "factorization": factorization_suite,
    "fourier_extension": lambda cfg, seed=0: fourier_extension_suite(cfg=cfg),
    "unbounded_kernel": lambda cfg, seed=0: unbounded_kernel_suite(cfg=cfg),
    "extendability": extendability_suite,
    "membership": membership_suite,
}


def run_suites(names=("all",), cfg: PairingConfig | None = None, seed: int = 0) -> list[SuiteReport]:
    """Run the named suites (``"all"`` selects every suite) in catalog order."""
    cfg = cfg or PairingConfig()
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites {unknown}; known: {sorted(SUITES)}")
    return [SUITES[n](cfg, seed) for n in names]


def theorem_suites(cfg: PairingConfig | None = None) -> list[SuiteReport]:
    return run_suites(("all",), cfg)


def reports_to_json(reports: list[SuiteReport], timing: bool = True) -> str:
    return json.dumps(
        {"passed": all(r.passed for r in reports), "suites": [r.to_json(timing) for r in reports]}, indent=2
    )
