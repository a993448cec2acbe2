"""Catalog of densities t(x) used as building blocks of distributions.

Each density knows its support (a union of boxes), declares decay bounds
``decay_bound(k) = M`` with (1+|x|²)^{k/2}|t(x)| ≤ M (None when no bound is
declared for that k) and serializes to JSON by registered name, so a spec
file reproduces it exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, ClassVar

import numpy as np

from .foundation import Box, BoxUnion, DomainError, MultiIndex, as_points, monomial
from .testfn import TestFunction, cutoff

__all__ = [
    "Density",
    "register",
    "density_from_json",
    "Indicator",
    "Power",
    "Rational",
    "ExpDecay",
    "FlatExp",
    "CutoffPower",
    "ExpOsc",
    "GaussOsc",
    "Scaled",
    "Times",
    "PowerWeight",
    "Sharp",
    "Product",
    "axis_distances",
    "TestFunctionDensity",
    "monomial_density",
]

REGISTRY: dict[str, type] = {}


def register(name: str):
    def deco(cls):
        cls.kind = name
        REGISTRY[name] = cls
        return cls

    return deco


def _num(c):
    return [c.real, c.imag] if isinstance(c, complex) else c


def _unnum(c):
    return complex(c[0], c[1]) if isinstance(c, list) else float(c)


def _floats(v) -> tuple[float, ...]:
    return tuple(float(x) for x in np.atleast_1d(v))


def _json_float(v: float):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _box_radius(union: BoxUnion) -> float:
    return math.sqrt(sum(max(abs(a), abs(b)) ** 2 for a, b in zip(union.bounding_box().lo, union.bounding_box().hi)))


def axis_distances(union: BoxUnion) -> tuple[float, ...]:
    """Per axis, the distance of the support to the hyperplane x_j = 0."""
    out = []
    for j in range(union.d):
        dist = math.inf
        for b in union.boxes():
            lo, hi = b.lo[j], b.hi[j]
            dist = min(dist, 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi)))
        out.append(dist)
    return tuple(out)


class Density:
    """Base class; subclasses are frozen dataclasses."""

    kind: ClassVar[str] = ""
    d: int
    is_complex: bool = False

    def __call__(self, X) -> np.ndarray:
        raise NotImplementedError

    def region(self) -> BoxUnion:
        raise NotImplementedError

    def decay_bound(self, k: float) -> float | None:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_params(cls, params: dict) -> "Density":
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"name": self.kind, "params": self.params()}

    @property
    def bounded(self) -> bool:
        return self.region().bounded

    def _compact_bound(self, sup: float, k: float) -> float:
        return sup * (1.0 + _box_radius(self.region()) ** 2) ** (k / 2)


def density_from_json(obj: dict) -> Density:
    unknown = set(obj) - {"name", "params"}
    if unknown:
        raise DomainError(f"unknown density fields {sorted(unknown)}")
    name = obj["name"]
    if name not in REGISTRY:
        raise DomainError(f"unknown density '{name}'; known: {sorted(REGISTRY)}")
    return REGISTRY[name].from_params(obj.get("params", {}))


def _box_params(lo, hi) -> dict:
    return {"lo": [_json_float(v) for v in lo], "hi": [_json_float(v) for v in hi]}


def _box_from(params) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return _floats([float(v) for v in params["lo"]]), _floats([float(v) for v in params["hi"]])


def _check_keys(params: dict, allowed: set[str]) -> None:
    unknown = set(params) - allowed
    if unknown:
        raise DomainError(f"unknown density parameters {sorted(unknown)}")


# ---------------------------------------------------------------------------
# elementary densities


@register("indicator")
@dataclass(frozen=True)
class Indicator(Density):
    """c · 1_B for a box B (bounds may be infinite)."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]
    coeff: float | complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "lo", _floats(self.lo))
        object.__setattr__(self, "hi", _floats(self.hi))

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.lo)

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return isinstance(self.coeff, complex)

    def __call__(self, X):
        X = as_points(X, self.d)
        inside = np.all((X >= np.array(self.lo)) & (X <= np.array(self.hi)), axis=1)
        return np.where(inside, self.coeff, 0.0 * self.coeff)

    def region(self):
        return BoxUnion((Box(self.lo, self.hi),))

    def decay_bound(self, k):
        if self.bounded:
            return self._compact_bound(abs(self.coeff), k)
        return abs(self.coeff) if k <= 0 else None

    def params(self):
        return {**_box_params(self.lo, self.hi), "coeff": _num(self.coeff)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"lo", "hi", "coeff"})
        lo, hi = _box_from(p)
        return cls(lo, hi, _unnum(p.get("coeff", 1.0)))


@register("power")
@dataclass(frozen=True)
class Power(Density):
    """c · x^p on a box; integer exponents, negative ones need the box off that hyperplane."""

    p: tuple[int, ...]
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    coeff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(v) for v in np.atleast_1d(self.p)))
        object.__setattr__(self, "lo", _floats(self.lo))
        object.__setattr__(self, "hi", _floats(self.hi))
        dist = axis_distances(self.region())
        if any(e < 0 and dj == 0 for e, dj in zip(self.p, dist)):
            raise DomainError("negative powers need the support away from the hyperplane")

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.p)

    def __call__(self, X):
        X = as_points(X, self.d)
        inside = np.all((X >= np.array(self.lo)) & (X <= np.array(self.hi)), axis=1)
        out = np.zeros(X.shape[0])
        out[inside] = self.coeff * monomial(X[inside], self.p)
        return out

    def region(self):
        return BoxUnion((Box(self.lo, self.hi),))

    def _sup_abs(self) -> float:
        total = abs(self.coeff)
        for e, a, b in zip(self.p, self.lo, self.hi):
            if e > 0:
                total *= max(abs(a), abs(b)) ** e
            elif e < 0:
                total *= (0.0 if a <= 0 <= b else min(abs(a), abs(b))) ** e
        return total

    def decay_bound(self, k):
        if self.bounded:
            return self._compact_bound(self._sup_abs(), k)
        if self.d == 1 and self.lo[0] > 0 and k <= -self.p[0]:
            x0 = self.lo[0]
            return abs(self.coeff) * (1 + x0 * x0) ** (k / 2) * x0 ** self.p[0]
        if self.d == 1 and self.hi[0] < 0 and k <= -self.p[0]:
            x0 = -self.hi[0]
            return abs(self.coeff) * (1 + x0 * x0) ** (k / 2) * x0 ** self.p[0]
        return None

    def params(self):
        return {"p": list(self.p), **_box_params(self.lo, self.hi), "coeff": self.coeff}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"p", "lo", "hi", "coeff"})
        lo, hi = _box_from(p)
        return cls(tuple(p["p"]), lo, hi, float(p.get("coeff", 1.0)))


@register("rational")
@dataclass(frozen=True)
class Rational(Density):
    """(1+|x|²)^{-p} restricted to a box."""

    p: float
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", _floats(self.lo))
        object.__setattr__(self, "hi", _floats(self.hi))

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.lo)

    def __call__(self, X):
        X = as_points(X, self.d)
        inside = np.all((X >= np.array(self.lo)) & (X <= np.array(self.hi)), axis=1)
        return np.where(inside, (1.0 + np.sum(X * X, axis=1)) ** (-self.p), 0.0)

    def region(self):
        return BoxUnion((Box(self.lo, self.hi),))

    def decay_bound(self, k):
        if self.bounded:
            return self._compact_bound(1.0, k)
        return 1.0 if k <= 2 * self.p else None

    def params(self):
        return {"p": self.p, **_box_params(self.lo, self.hi)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"p", "lo", "hi"})
        lo, hi = _box_from(p)
        return cls(float(p["p"]), lo, hi)


@register("exp_decay")
@dataclass(frozen=True)
class ExpDecay(Density):
    """exp(-λ Σ_j |x_j|) restricted to a box; rapidly decreasing."""

    lam: float
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", _floats(self.lo))
        object.__setattr__(self, "hi", _floats(self.hi))
        if self.lam <= 0:
            raise DomainError("exp_decay needs lam > 0")

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.lo)

    def __call__(self, X):
        X = as_points(X, self.d)
        inside = np.all((X >= np.array(self.lo)) & (X <= np.array(self.hi)), axis=1)
        return np.where(inside, np.exp(-self.lam * np.sum(np.abs(X), axis=1)), 0.0)

    def region(self):
        return BoxUnion((Box(self.lo, self.hi),))

    def decay_bound(self, k):
        # |x|_1 ≥ |x|_2, so the bound is max_r (1+r²)^{k/2} e^{-λ r}
        lam = self.lam
        if k < 2 * lam:
            return 1.0
        r = (k + math.sqrt(k * k - 4 * lam * lam)) / (2 * lam)
        return (1 + r * r) ** (k / 2) * math.exp(-lam * r)

    def params(self):
        return {"lam": self.lam, **_box_params(self.lo, self.hi)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"lam", "lo", "hi"})
        lo, hi = _box_from(p)
        return cls(float(p["lam"]), lo, hi)


@register("flat_exp")
@dataclass(frozen=True)
class FlatExp(Density):
    """exp(-1/x) on (0, hi]; vanishes to infinite order at 0 (d = 1)."""

    hi: float = 1.0

    d: ClassVar[int] = 1

    def __call__(self, X):
        x = as_points(X, 1)[:, 0]
        out = np.zeros_like(x)
        m = (x > 0) & (x <= self.hi)
        out[m] = np.exp(-1.0 / x[m])
        return out

    def region(self):
        return BoxUnion((Box((0.0,), (self.hi,)),))

    def decay_bound(self, k):
        return self._compact_bound(math.exp(-1.0 / self.hi), k)

    def params(self):
        return {"hi": self.hi}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"hi"})
        return cls(float(p.get("hi", 1.0)))


@register("cutoff_power")
@dataclass(frozen=True)
class CutoffPower(Density):
    """χ(x) x^p / p! for x ≥ 0 and 0 for x < 0 (d = 1); χ the standard cutoff."""

    p: int

    d: ClassVar[int] = 1

    def __call__(self, X):
        x = as_points(X, 1)[:, 0]
        out = np.zeros_like(x)
        m = x >= 0
        out[m] = cutoff(0, x[m]) * x[m] ** self.p / math.factorial(self.p)
        return out

    def region(self):
        return BoxUnion((Box((0.0,), (1.0,)),))

    def decay_bound(self, k):
        return self._compact_bound(1.0 / math.factorial(self.p), k)

    def params(self):
        return {"p": self.p}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"p"})
        return cls(int(p["p"]))


_OUTER = BoxUnion((Box((-math.inf,), (-0.5,)), Box((0.5,), (math.inf,))))
_CORE = BoxUnion((Box((-1.0,), (1.0,)),))
_LINE = BoxUnion((Box((-math.inf,), (math.inf,)),))


@lru_cache(maxsize=None)
def _sampled_sup(key: tuple, fn: Callable[[np.ndarray], np.ndarray]) -> float:
    x = np.linspace(-1.0, 1.0, 20001).reshape(-1, 1)
    return 1.05 * float(np.max(np.abs(fn(x))))


@register("exp_osc")
@dataclass(frozen=True)
class ExpOsc(Density):
    """Pieces of e^{-ix} (d = 1) split with the cutoff χ and an order k.

    ``full``:       e^{-ix}
    ``deriv_base``: i^k (1-χ(x)) e^{-ix}, so that ∂^k of it equals e^{-ix} off [-1, 1]
    ``remainder``:  e^{-ix} - ∂^k(deriv_base) = e^{-ix} Σ_{j≤k} C(k,j) i^j χ^{(j)}(x)
    """

    k: int
    part: str = "full"

    d: ClassVar[int] = 1
    is_complex: ClassVar[bool] = True

    def __post_init__(self):
        if self.part not in ("full", "deriv_base", "remainder"):
            raise DomainError(f"unknown exp_osc part '{self.part}'")

    def __call__(self, X):
        x = as_points(X, 1)[:, 0]
        e = np.exp(-1j * x)
        if self.part == "full":
            return e
        if self.part == "deriv_base":
            return (1j) ** self.k * (1.0 - cutoff(0, x)) * e
        s = sum(math.comb(self.k, j) * (1j) ** j * cutoff(j, x) for j in range(self.k + 1))
        return e * s

    def region(self):
        return {"full": _LINE, "deriv_base": _OUTER, "remainder": _CORE}[self.part]

    def decay_bound(self, k):
        if self.part == "remainder":
            return self._compact_bound(_sampled_sup(("exp_osc", self.k), self), k)
        return 1.0 if k <= 0 else None

    def params(self):
        return {"k": self.k, "part": self.part}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"k", "part"})
        return cls(int(p["k"]), str(p.get("part", "full")))


@register("gauss_osc")
@dataclass(frozen=True)
class GaussOsc(Density):
    """Pieces of e^{iπx²} (d = 1) after one integration by parts off [-1, 1].

    With E = e^{iπx²} and u = (1-χ) E/(2πix):  E = core + u' + tail, where
    ``core`` = χE + χ'E/(2πix) (compact), ``deriv_base`` = u and
    ``tail`` = (1-χ)E/(2πix²).
    """

    part: str = "full"

    d: ClassVar[int] = 1
    is_complex: ClassVar[bool] = True

    def __post_init__(self):
        if self.part not in ("full", "core", "deriv_base", "tail"):
            raise DomainError(f"unknown gauss_osc part '{self.part}'")

    def __call__(self, X):
        x = as_points(X, 1)[:, 0]
        E = np.exp(1j * np.pi * x * x)
        if self.part == "full":
            return E
        chi = cutoff(0, x)
        safe = np.where(x == 0, 1.0, x)
        if self.part == "core":
            return chi * E + np.where(x == 0, 0.0, cutoff(1, x) * E / (2j * np.pi * safe))
        if self.part == "deriv_base":
            return np.where(np.abs(x) < 0.5, 0.0, (1 - chi) * E / (2j * np.pi * safe))
        return np.where(np.abs(x) < 0.5, 0.0, (1 - chi) * E / (2j * np.pi * safe * safe))

    def region(self):
        return {"full": _LINE, "core": _CORE, "deriv_base": _OUTER, "tail": _OUTER}[self.part]

    def decay_bound(self, k):
        if self.part == "core":
            return self._compact_bound(_sampled_sup(("gauss_osc",), self), k)
        if self.part == "full":
            return 1.0 if k <= 0 else None
        # (1+x²)^{k/2}/|x|^q is decreasing on |x| ≥ 1/2 for k ≤ q; evaluate at x = 1/2
        q = 1 if self.part == "deriv_base" else 2
        if k > q:
            return None
        return (1.25) ** (k / 2) * 2.0**q / (2 * math.pi)

    def params(self):
        return {"part": self.part}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"part"})
        return cls(str(p.get("part", "full")))


# ---------------------------------------------------------------------------
# composites


def _scale_box(b: Box, a) -> Box:
    lo, hi = [], []
    for l, h, aj in zip(b.lo, b.hi, a):
        c1, c2 = l / aj, h / aj
        lo.append(min(c1, c2))
        hi.append(max(c1, c2))
    return Box(tuple(lo), tuple(hi))


@register("scaled")
@dataclass(frozen=True)
class Scaled(Density):
    """x ↦ base(a·x) (componentwise product, a_j ≠ 0)."""

    base: Density
    a: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", _floats(self.a))
        if any(v == 0 for v in self.a):
            raise DomainError("dilation factors must be nonzero")

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.base.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.base.is_complex

    def __call__(self, X):
        return self.base(as_points(X, self.d) * np.array(self.a))

    def region(self):
        return BoxUnion(tuple(_scale_box(b, self.a) for b in self.base.region().boxes()))

    def decay_bound(self, k):
        M = self.base.decay_bound(k)
        if M is None:
            return None
        return M * max(1.0, 1.0 / min(abs(v) for v in self.a)) ** k

    def params(self):
        return {"base": self.base.to_json(), "a": list(self.a)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"base", "a"})
        return cls(density_from_json(p["base"]), tuple(p["a"]))


@register("times")
@dataclass(frozen=True)
class Times(Density):
    """c · base."""

    base: Density
    c: float | complex

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.base.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.base.is_complex or isinstance(self.c, complex)

    def __call__(self, X):
        return self.c * self.base(X)

    def region(self):
        return self.base.region()

    def decay_bound(self, k):
        M = self.base.decay_bound(k)
        return None if M is None else abs(self.c) * M

    def params(self):
        return {"base": self.base.to_json(), "c": _num(self.c)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"base", "c"})
        return cls(density_from_json(p["base"]), _unnum(p["c"]))


@register("power_weight")
@dataclass(frozen=True)
class PowerWeight(Density):
    """x^p · base(x) with an integer (possibly negative) exponent vector."""

    base: Density
    p: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(v) for v in np.atleast_1d(self.p)))
        dist = axis_distances(self.base.region())
        if any(e < 0 and dj == 0 for e, dj in zip(self.p, dist)):
            raise DomainError("negative powers need the support away from that hyperplane")

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.base.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.base.is_complex

    def __call__(self, X):
        X = as_points(X, self.d)
        vals = self.base(X)
        out = np.zeros_like(vals)
        nz = vals != 0
        out[nz] = vals[nz] * monomial(X[nz], self.p)
        return out

    def region(self):
        return self.base.region()

    def decay_bound(self, k):
        pos = sum(e for e in self.p if e > 0)
        neg = -sum(e for e in self.p if e < 0)
        dist = axis_distances(self.base.region())
        if neg and self.d == 1:
            eps = dist[0]
            M = self.base.decay_bound(max(k + pos - neg, 0))
            return None if M is None else M * (1.0 + eps**-2) ** (neg / 2)
        M = self.base.decay_bound(k + pos)
        if M is None:
            return None
        for e, dj in zip(self.p, dist):
            if e < 0:
                M *= dj**e
        return M

    def params(self):
        return {"base": self.base.to_json(), "p": list(self.p)}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"base", "p"})
        return cls(density_from_json(p["base"]), tuple(p["p"]))


def _invert_interval(l: float, h: float) -> list[tuple[float, float]]:
    """Image of [l, h] under x ↦ 1/x (0 maps to ±∞)."""

    def inv(v: float, side: float) -> float:
        if v == 0:
            return math.copysign(math.inf, side)
        return 0.0 if math.isinf(v) else 1.0 / v

    if l >= 0:
        return [(inv(h, 1.0), inv(l, 1.0))]
    if h <= 0:
        return [(inv(h, -1.0), inv(l, -1.0))]
    return [(-math.inf, inv(l, -1.0)), (inv(h, 1.0), math.inf)]


def _invert_box(b: Box) -> list[Box]:
    import itertools

    pieces = [_invert_interval(l, h) for l, h in zip(b.lo, b.hi)]
    return [Box(tuple(c[0] for c in combo), tuple(c[1] for c in combo)) for combo in itertools.product(*pieces)]


@register("sharp")
@dataclass(frozen=True)
class Sharp(Density):
    """ξ ↦ base(1/ξ) σ(ξ)/(ξ_1⋯ξ_d) = base(1/ξ)/Π|ξ_j|."""

    base: Density

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.base.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.base.is_complex

    def __call__(self, X):
        X = as_points(X, self.d)
        out = np.zeros(X.shape[0], dtype=complex if self.is_complex else float)
        nz = np.all(X != 0, axis=1)
        Xn = X[nz]
        out[nz] = self.base(1.0 / Xn) / np.prod(np.abs(Xn), axis=1)
        return out

    def region(self):
        return BoxUnion(tuple(p for b in self.base.region().boxes() for p in _invert_box(b)))

    def decay_bound(self, k):
        if not self.bounded:
            return None
        M = self.base.decay_bound(0)
        if M is None:
            return None
        prod_abs = math.prod(self.base.region().bounding_box().abs_max())
        return self._compact_bound(M * prod_abs, k)

    def params(self):
        return {"base": self.base.to_json()}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"base"})
        return cls(density_from_json(p["base"]))


@register("product")
@dataclass(frozen=True)
class Product(Density):
    """Tensor product t_1(x_1) ⋯ t_d(x_d) of one-dimensional densities."""

    factors: tuple[Density, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(f.d != 1 for f in self.factors):
            raise DomainError("product factors must be one-dimensional")

    @property
    def d(self) -> int:  # type: ignore[override]
        return len(self.factors)

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return any(f.is_complex for f in self.factors)

    def __call__(self, X):
        X = as_points(X, self.d)
        out = self.factors[0](X[:, :1])
        for j, f in enumerate(self.factors[1:], start=1):
            out = out * f(X[:, j : j + 1])
        return out

    def region(self):
        import itertools

        parts = []
        for combo in itertools.product(*(f.region().boxes() for f in self.factors)):
            parts.append(Box(tuple(b.lo[0] for b in combo), tuple(b.hi[0] for b in combo)))
        return BoxUnion(tuple(parts))

    def decay_bound(self, k):
        M = 1.0
        for f in self.factors:
            m = f.decay_bound(k)
            if m is None:
                return None
            M *= m
        return M

    def params(self):
        return {"factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"factors"})
        return cls(tuple(density_from_json(f) for f in p["factors"]))


@register("test_function")
@dataclass(frozen=True)
class TestFunctionDensity(Density):
    """A test function used as a density (f in f ⋆ T)."""

    __test__ = False  # not a pytest class

    phi: TestFunction

    @property
    def d(self) -> int:  # type: ignore[override]
        return self.phi.d

    @property
    def is_complex(self) -> bool:  # type: ignore[override]
        return self.phi.is_complex

    def __call__(self, X):
        return self.phi(as_points(X, self.d))

    def region(self):
        return BoxUnion((self.phi.support(),))

    def decay_bound(self, k):
        return self._compact_bound(self.phi.sup_derivative(0), k)

    def params(self):
        return {"terms": self.phi.to_json()}

    @classmethod
    def from_params(cls, p):
        _check_keys(p, {"terms"})
        return cls(TestFunction.from_json(p["terms"]))


def monomial_density(alpha) -> Power:
    """x^α on all of R^d (paired only against compactly supported partners)."""
    alpha = MultiIndex(alpha)
    d = len(alpha)
    return Power(tuple(alpha), (-math.inf,) * d, (math.inf,) * d)
