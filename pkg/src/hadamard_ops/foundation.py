"""Multi-indices, sign function, regions and the adaptive cubature engine.

Everything numeric in the package eventually calls :func:`integrate`, a
globally adaptive tensor Gauss-Kronrod (7/15) rule. Exact combinatorics
(factorials, falling factorials) stay in Python integers.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "MultiIndex",
    "sigma",
    "factorial_ratio",
    "falling_factorial",
    "monomial",
    "Box",
    "WEps",
    "QuadrantBox",
    "BoxUnion",
    "PairingConfig",
    "Estimate",
    "integrate",
    "truncation_radius",
    "HadamardError",
    "DomainError",
    "QuadratureError",
    "SingularityError",
    "CertificateError",
    "InsufficientDecayError",
]


class HadamardError(Exception):
    """Base class for errors raised by this package."""


class DomainError(HadamardError, ValueError):
    """An argument lies outside the domain of an operation."""


class QuadratureError(HadamardError):
    """Subdivision budget exhausted before the tolerance was met.

    The best estimate and its error bound are kept on the exception.
    """

    def __init__(self, message: str, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class SingularityError(QuadratureError):
    """The integrand looks non-integrable near some point."""


class CertificateError(HadamardError, ValueError):
    """A kernel failed a membership gate (support or decay).

    ``predicate`` names the failing check.
    """

    def __init__(self, message: str, predicate: str):
        super().__init__(message)
        self.predicate = predicate


class InsufficientDecayError(CertificateError):
    def __init__(self, message: str):
        super().__init__(message, "decay")


# ---------------------------------------------------------------------------
# multi-indices and combinatorics


class MultiIndex(tuple):
    """Tuple of nonnegative integers with componentwise arithmetic.

    ``+`` and ``-`` act componentwise (not as tuple concatenation).
    """

    def __new__(cls, *values):
        if len(values) == 1 and not isinstance(values[0], (int, np.integer)):
            values = tuple(values[0])
        values = tuple(int(v) for v in values)
        if len(values) < 1:
            raise DomainError("a multi-index needs at least one component")
        if any(v < 0 for v in values):
            raise DomainError(f"negative multi-index component in {values}")
        return super().__new__(cls, values)

    @classmethod
    def zeros(cls, d: int) -> "MultiIndex":
        return cls((0,) * d)

    @classmethod
    def ones(cls, d: int) -> "MultiIndex":
        return cls((1,) * d)

    @classmethod
    def unit(cls, j: int, d: int) -> "MultiIndex":
        return cls(tuple(int(i == j) for i in range(d)))

    @property
    def d(self) -> int:
        return len(self)

    @property
    def order(self) -> int:
        """|α| = Σ α_j."""
        return sum(self)

    def _check(self, other) -> "MultiIndex":
        other = other if isinstance(other, MultiIndex) else MultiIndex(other)
        if len(other) != len(self):
            raise DomainError(f"dimension mismatch: {self} vs {other}")
        return other

    def __add__(self, other) -> "MultiIndex":
        other = self._check(other)
        return MultiIndex(a + b for a, b in zip(self, other))

    __radd__ = __add__

    def __sub__(self, other) -> "MultiIndex":
        other = self._check(other)
        return MultiIndex(a - b for a, b in zip(self, other))

    def leq(self, other) -> bool:
        """Componentwise partial order."""
        other = self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def factorial(self) -> int:
        return math.prod(math.factorial(a) for a in self)

    def below(self) -> Iterator["MultiIndex"]:
        """All j with 0 ≤ j ≤ self, in lexicographic order."""
        for j in itertools.product(*(range(a + 1) for a in self)):
            yield MultiIndex(j)

    @staticmethod
    def all_of_order_at_most(d: int, n: int) -> list["MultiIndex"]:
        return [MultiIndex(j) for j in itertools.product(range(n + 1), repeat=d) if sum(j) <= n]

    def __repr__(self) -> str:
        return f"MultiIndex{tuple(self)}"


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); valid for negative ``n`` too."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def factorial_ratio(alpha, k) -> int:
    """Π_j (α_j + k_j)! / α_j!, exact."""
    alpha, k = MultiIndex(alpha), MultiIndex(k)
    alpha._check(k)
    out = 1
    for a, b in zip(alpha, k):
        out *= math.perm(a + b, b)
    return out


def sigma(x) -> int:
    """Product of the coordinate signs of ``x``; rejects zero coordinates."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x == 0):
        raise DomainError(f"sigma is undefined on coordinate hyperplanes: {x}")
    return int(np.prod(np.sign(x)))


def monomial(X: np.ndarray, alpha) -> np.ndarray:
    """x^α evaluated on the rows of ``X`` (shape (n, d)); integer exponents may be negative."""
    X = np.asarray(X)
    out = np.ones(X.shape[0], dtype=X.dtype if np.iscomplexobj(X) else float)
    for j, a in enumerate(alpha):
        if a:
            out = out * X[:, j] ** int(a) if a > 0 else out / X[:, j] ** int(-a)
    return out


# ---------------------------------------------------------------------------
# regions


def _as_bounds(lo, hi) -> tuple[tuple[float, ...], tuple[float, ...]]:
    lo = tuple(float(v) for v in np.atleast_1d(lo))
    hi = tuple(float(v) for v in np.atleast_1d(hi))
    if len(lo) != len(hi):
        raise DomainError("lower and upper corners differ in dimension")
    return lo, hi


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box Π_j [lo_j, hi_j]; infinite bounds allowed."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo, hi = _as_bounds(self.lo, self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def centered(cls, r) -> "Box":
        """B_r = {x : |x_j| ≤ r_j}."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(r < 0):
            raise DomainError("box radii must be nonnegative")
        return cls(tuple(-r), tuple(r))

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def empty(self) -> bool:
        return any(a > b for a, b in zip(self.lo, self.hi))

    @property
    def bounded(self) -> bool:
        return all(math.isfinite(v) for v in self.lo + self.hi)

    @property
    def volume(self) -> float:
        if self.empty:
            return 0.0
        return math.prod(b - a for a, b in zip(self.lo, self.hi))

    def contains(self, x) -> bool:
        x = np.atleast_1d(x)
        return all(a <= v <= b for a, v, b in zip(self.lo, x, self.hi))

    def intersect(self, other: "Box") -> "Box":
        return Box(
            tuple(max(a, b) for a, b in zip(self.lo, other.lo)),
            tuple(min(a, b) for a, b in zip(self.hi, other.hi)),
        )

    def boxes(self) -> list["Box"]:
        return [] if self.empty else [self]

    def hyperplane_distance(self) -> float:
        """min_j dist(0, [lo_j, hi_j]); zero when the box meets a coordinate hyperplane."""
        dist = []
        for a, b in zip(self.lo, self.hi):
            dist.append(0.0 if a <= 0.0 <= b else min(abs(a), abs(b)))
        return min(dist)

    def abs_max(self) -> tuple[float, ...]:
        return tuple(max(abs(a), abs(b)) for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True)
class WEps:
    """W_ε = {x : min_j |x_j| ≥ ε}."""

    eps: float
    d: int = 1

    def __post_init__(self):
        if not self.eps > 0:
            raise DomainError("W_eps needs eps > 0")

    def contains(self, x) -> bool:
        return bool(np.min(np.abs(np.atleast_1d(x))) >= self.eps)

    def boxes(self) -> list[Box]:
        sides = [(-math.inf, -self.eps), (self.eps, math.inf)]
        return [Box(tuple(s[0] for s in c), tuple(s[1] for s in c)) for c in itertools.product(sides, repeat=self.d)]

    def intersect(self, box: Box) -> "BoxUnion":
        return BoxUnion(tuple(b.intersect(box) for b in self.boxes()))

    @property
    def bounded(self) -> bool:
        return False


@dataclass(frozen=True)
class QuadrantBox:
    """The part of ``box`` lying in the closed quadrant with the given signs."""

    signs: tuple[int, ...]
    box: Box

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise DomainError("quadrant signs must be +1 or -1")

    @property
    def d(self) -> int:
        return len(self.signs)

    def boxes(self) -> list[Box]:
        quad = Box(
            tuple(0.0 if s > 0 else -math.inf for s in self.signs),
            tuple(math.inf if s > 0 else 0.0 for s in self.signs),
        )
        return quad.intersect(self.box).boxes()

    def contains(self, x) -> bool:
        return any(b.contains(x) for b in self.boxes())

    @property
    def bounded(self) -> bool:
        return self.box.bounded


@dataclass(frozen=True)
class BoxUnion:
    """Finite union of boxes with pairwise null intersections."""

    parts: tuple[Box, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(b for b in self.parts if not b.empty))

    @property
    def d(self) -> int:
        return self.parts[0].d if self.parts else 0

    def boxes(self) -> list[Box]:
        return list(self.parts)

    def contains(self, x) -> bool:
        return any(b.contains(x) for b in self.parts)

    def intersect(self, box: Box) -> "BoxUnion":
        return BoxUnion(tuple(b.intersect(box) for b in self.parts))

    @property
    def bounded(self) -> bool:
        return all(b.bounded for b in self.parts)

    @property
    def empty(self) -> bool:
        return not self.parts

    def hyperplane_distance(self) -> float:
        if not self.parts:
            return math.inf
        return min(b.hyperplane_distance() for b in self.parts)

    def bounding_box(self) -> Box:
        return Box(
            tuple(min(b.lo[j] for b in self.parts) for j in range(self.d)),
            tuple(max(b.hi[j] for b in self.parts) for j in range(self.d)),
        )


def as_union(region) -> BoxUnion:
    if isinstance(region, BoxUnion):
        return region
    return BoxUnion(tuple(region.boxes()))


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class PairingConfig:
    """Tolerances governing every numeric evaluation.

    ``truncation_radius=None`` lets the engine derive the radius from the
    integrand's decay bound.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2**16
    truncation_radius: float | None = None
    grid: tuple[int, ...] = (201,)
    max_dim: int = 2

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")
        if self.truncation_radius is not None and not self.truncation_radius > 0:
            raise DomainError("truncation_radius must be positive")

    def tightened(self, factor: float) -> "PairingConfig":
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)

    def check_dim(self, d: int) -> None:
        if not 1 <= d <= self.max_dim:
            raise DomainError(f"dimension {d} outside 1..{self.max_dim}")


class Estimate(NamedTuple):
    value: complex | float
    error: float

    def __add__(self, other):  # type: ignore[override]
        if isinstance(other, Estimate):
            return Estimate(self.value + other.value, self.error + other.error)
        return NotImplemented

    def scaled(self, c) -> "Estimate":
        return Estimate(self.value * c, self.error * abs(c))


ZERO = Estimate(0.0, 0.0)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 nodes (QUADPACK qk15)

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes on [-1, 1], ascending
K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
G_WEIGHTS = np.zeros(15)
G_WEIGHTS[[1, 3, 5]] = _WG[:3]
G_WEIGHTS[7] = _WG[3]
G_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(order=True)
class _Cell:
    priority: float
    seq: int
    lo: np.ndarray = field(compare=False)
    hi: np.ndarray = field(compare=False)
    value: complex = field(compare=False)
    error: float = field(compare=False)
    abs_value: float = field(compare=False)
    axis_err: np.ndarray = field(compare=False)


def _tensor_weights(d: int):
    """Full Kronrod product weights and, per axis, the Gauss-on-that-axis variant."""
    grids = np.meshgrid(*([np.arange(15)] * d), indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=1)
    wk = np.prod(K_WEIGHTS[idx], axis=1)
    wg = np.prod(G_WEIGHTS[idx], axis=1)
    mixed = []
    for j in range(d):
        w = np.ones(idx.shape[0])
        for a in range(d):
            w = w * (G_WEIGHTS[idx[:, a]] if a == j else K_WEIGHTS[idx[:, a]])
        mixed.append(w)
    return NODES[idx], wk, wg, np.array(mixed)


_WEIGHT_CACHE: dict[int, tuple] = {}


def _weights(d: int):
    if d not in _WEIGHT_CACHE:
        _WEIGHT_CACHE[d] = _tensor_weights(d)
    return _WEIGHT_CACHE[d]


def _evaluate_cells(f, los: np.ndarray, his: np.ndarray):
    """Apply the tensor rule to a batch of boxes with a single call to ``f``."""
    nb, d = los.shape
    ref, wk, wg, wmix = _weights(d)
    half = 0.5 * (his - los)
    mid = 0.5 * (his + los)
    pts = mid[:, None, :] + half[:, None, :] * ref[None, :, :]
    vals = np.asarray(f(pts.reshape(-1, d)))
    if vals.shape != (pts.shape[0] * pts.shape[1],):
        vals = np.broadcast_to(vals, (pts.shape[0] * pts.shape[1],))
    vals = vals.reshape(nb, -1)
    if not np.all(np.isfinite(vals)):
        raise SingularityError("integrand returned a non-finite value")
    jac = np.prod(half, axis=1)
    k = vals @ wk * jac
    g = vals @ wg * jac
    absk = np.abs(vals) @ wk * np.abs(jac)
    axis = np.abs(vals @ wmix.T * jac[:, None] - k[:, None])
    err = np.abs(k - g)
    return k, err, absk, axis


def truncation_radius(k: float, bound: float, d: int, abs_tol: float) -> float:
    """Radius R with ∫_{|x|>R} bound·|x|^{-k} dx ≤ abs_tol / 2."""
    if not k > d:
        raise InsufficientDecayError(f"decay exponent {k} does not exceed the dimension {d}")
    surface = 2.0 if d == 1 else 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)
    c = bound * surface / (k - d)
    return max(1.0, (2.0 * c / abs_tol) ** (1.0 / (k - d)))


def _tail_bound(k: float, bound: float, d: int, R: float) -> float:
    surface = 2.0 if d == 1 else 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)
    return bound * surface * R ** (d - k) / (k - d)


def _axis_cuts(a: float, b: float) -> list[float]:
    """Breakpoints for one axis: geometric for ranges spanning decades."""

    def positive(lo: float, hi: float) -> list[float]:
        if lo > 0 and hi / lo > 8:
            return list(np.geomspace(lo, hi, int(math.log(hi / lo, 4)) + 2))
        if lo == 0 and hi > 8:
            return [0.0] + list(np.geomspace(1.0, hi, int(math.log(hi, 4)) + 2))
        return [lo, hi]

    if a >= 0:
        cuts = positive(a, b)
    elif b <= 0:
        cuts = [-c for c in positive(-b, -a)]
    else:
        cuts = [-c for c in positive(0.0, -a)] + positive(0.0, b)
    return sorted(set(float(c) for c in cuts))


def _initial_cells(box: Box) -> list[tuple[np.ndarray, np.ndarray]]:
    axes = [_axis_cuts(a, b) for a, b in zip(box.lo, box.hi)]
    cells = []
    for combo in itertools.product(*(range(len(c) - 1) for c in axes)):
        lo = np.array([axes[j][i] for j, i in enumerate(combo)])
        hi = np.array([axes[j][i + 1] for j, i in enumerate(combo)])
        if np.all(hi > lo):
            cells.append((lo, hi))
    return cells


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    region,
    cfg: PairingConfig | None = None,
    decay: tuple[float, float] | None = None,
) -> Estimate:
    """Adaptive tensor Gauss-Kronrod integral of ``f`` over ``region``.

    ``f`` maps an (n, d) array of points to n real or complex values.
    ``region`` is a :class:`Box`, :class:`WEps`, :class:`QuadrantBox` or
    :class:`BoxUnion`. Unbounded parts need ``decay = (k, M)`` meaning
    ``|f(x)| ≤ M (1+|x|²)^{-k/2}``; they are truncated at a radius where the
    tail bound is below ``abs_tol/2`` and that bound is added to the error.

    Raises :class:`QuadratureError` when ``max_subdivisions`` is exhausted and
    :class:`SingularityError` when a cell shrinks to rounding level without
    its error estimate going down.
    """
    cfg = cfg or PairingConfig()
    union = as_union(region)
    if union.empty:
        return ZERO
    d = union.d
    tail = 0.0
    boxes = union.boxes()
    if not union.bounded:
        if decay is None:
            raise DomainError("unbounded region requires a decay bound (k, M)")
        k, M = decay
        R = cfg.truncation_radius or truncation_radius(k, M, d, cfg.abs_tol)
        tail = 0.0 if M == 0 else _tail_bound(k, M, d, R)
        boxes = [b.intersect(Box.centered([R] * d)) for b in boxes]
        boxes = [b for b in boxes if not b.empty]
    cells = [c for b in boxes for c in _initial_cells(b)]
    if not cells:
        return Estimate(0.0, tail)
    los = np.array([c[0] for c in cells])
    his = np.array([c[1] for c in cells])
    vals, errs, absv, axes = _evaluate_cells(f, los, his)
    heap: list[_Cell] = []
    seq = itertools.count()
    for i in range(len(cells)):
        heapq.heappush(heap, _Cell(-errs[i], next(seq), los[i], his[i], vals[i], errs[i], absv[i], axes[i]))
    total = complex(np.sum(vals)) if np.iscomplexobj(vals) else float(np.sum(vals))
    total_err = float(np.sum(errs))
    total_abs = float(np.sum(absv))
    n_sub = len(cells)
    tol_abs = cfg.abs_tol / 2 if tail else cfg.abs_tol
    frozen: list[_Cell] = []  # cells too small to split
    while True:
        floor = 50 * _EPS * total_abs
        tol = max(tol_abs, cfg.rel_tol * abs(total), floor)
        if total_err <= tol:
            break
        if n_sub >= cfg.max_subdivisions:
            raise QuadratureError(
                f"subdivision budget {cfg.max_subdivisions} exhausted (error {total_err:.3g} > {tol:.3g})",
                total,
                total_err + tail,
            )
        if not heap:
            break
        cell = heapq.heappop(heap)
        width = cell.hi - cell.lo
        scale = np.maximum(np.abs(cell.hi), np.abs(cell.lo))
        splittable = width > 1e3 * _EPS * np.maximum(scale, 1e-300)
        if not np.any(splittable):
            if cell.error > max(tol, 1e-6 * max(abs(total), 1.0)):
                raise SingularityError(
                    f"non-integrable behaviour near {0.5 * (cell.lo + cell.hi)}", total, total_err + tail
                )
            frozen.append(cell)
            continue
        score = np.where(splittable, cell.axis_err + 1e-300 * width, -1.0)
        j = int(np.argmax(score))
        mid = 0.5 * (cell.lo[j] + cell.hi[j])
        lo2, hi1 = cell.lo.copy(), cell.hi.copy()
        hi1[j] = mid
        lo2[j] = mid
        vals, errs, absv, axes = _evaluate_cells(f, np.array([cell.lo, lo2]), np.array([hi1, cell.hi]))
        total += vals[0] + vals[1] - cell.value
        total_err += errs[0] + errs[1] - cell.error
        total_abs += absv[0] + absv[1] - cell.abs_value
        heapq.heappush(heap, _Cell(-errs[0], next(seq), cell.lo, hi1, vals[0], errs[0], absv[0], axes[0]))
        heapq.heappush(heap, _Cell(-errs[1], next(seq), lo2, cell.hi, vals[1], errs[1], absv[1], axes[1]))
        n_sub += 1
    # re-sum in a fixed order so the result does not depend on refinement history
    final = sorted(heap + frozen, key=lambda c: tuple(c.lo) + tuple(c.hi))
    parts = np.array([c.value for c in final])
    if np.iscomplexobj(parts):
        value: complex | float = complex(math.fsum(parts.real), math.fsum(parts.imag))
    else:
        value = math.fsum(parts)
    error = math.fsum(c.error for c in final)
    return Estimate(value, error + tail)


def probe_singularity(
    f: Callable[[np.ndarray], np.ndarray],
    region,
    cfg: PairingConfig | None = None,
    levels: int = 24,
) -> tuple[bool, list[float]]:
    """Integrate ``f`` over ``region ∩ W_δ`` for δ = 2^-1, ..., 2^-levels.

    Returns ``(finite, partial_integrals)``. The integral is judged infinite
    when the increments between successive δ stop shrinking geometrically.
    Intended for nonnegative integrands on bounded regions.
    """
    cfg = cfg or PairingConfig(rel_tol=1e-10, abs_tol=1e-14)
    union = as_union(region)
    d = union.d
    partials = []
    for n in range(1, levels + 1):
        delta = 2.0 ** (-n)
        sub = BoxUnion(tuple(b.intersect(w) for b in union.boxes() for w in WEps(delta, d).boxes()))
        partials.append(float(np.real(integrate(f, sub, cfg).value)))
    inc = np.diff(partials)
    tail = np.abs(inc[-6:])
    scale = max(abs(partials[-1]), 1e-300)
    if np.all(tail <= 1e-12 * scale + 1e-300):
        return True, partials
    ratios = tail[1:] / np.maximum(tail[:-1], 1e-300)
    finite = bool(np.all(ratios < 0.8))
    return finite, partials


def product_points(axes: Sequence[np.ndarray]) -> np.ndarray:
    """Cartesian product grid as an (n, d) array."""
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def as_points(x, d: int | None = None) -> np.ndarray:
    """Coerce a point or batch of points to shape (n, d)."""
    X = np.asarray(x)
    if X.dtype.kind not in "fc":
        X = X.astype(float)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    elif X.ndim == 1:
        X = X.reshape(-1, 1) if d == 1 else X.reshape(1, -1)
    if d is not None and X.shape[1] != d:
        raise DomainError(f"expected points of dimension {d}, got {X.shape[1]}")
    return X


def multi_indices_up_to(upper: Iterable[int]) -> list[MultiIndex]:
    return list(MultiIndex(upper).below())
