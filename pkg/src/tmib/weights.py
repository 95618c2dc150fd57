"""Weight sequences, their growth conditions, and weight functions.

Sequences are stored as finite prefixes ``M_0 .. M_P`` in log form so that
Gevrey-type prefixes with thousands of terms stay representable.  Weight
functions are small immutable objects that evaluate pointwise and know their
translation weight ``sup_y eta(y + x) / eta(y)`` where a closed form exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .errors import KindUnknown, PrefixTooShort, SeriesDivergence, Unsupported

__all__ = [
    "WeightSequence",
    "check_m1",
    "check_m2",
    "check_m6",
    "associated_function",
    "Weight",
    "Exponential",
    "Polynomial",
    "SeriesOmega",
    "Table",
    "Product",
    "unit_weight",
    "eval_weight",
    "translation_weight",
    "tabulate",
    "weight_from_dict",
]

_LOG_TOL = 1e-12
# associated_function guard: this many consecutive strict decreases ...
_GUARD_STEPS = 5
# ... with the current term below exp(-_GUARD_DROP) times the running maximum.
_GUARD_DROP = 12.0
_SERIES_RTOL = 1e-15
_SERIES_CAP = 10_000


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Finite prefix ``M_0, ..., M_P`` of a weight sequence, stored as ``ln M_p``."""

    log_values: np.ndarray
    label: str = ""

    def __post_init__(self):
        logs = np.asarray(self.log_values, dtype=float).copy()
        if logs.ndim != 1 or logs.size < 3:
            raise ValueError("a weight sequence needs at least M_0, M_1, M_2")
        if not np.all(np.isfinite(logs)):
            raise ValueError("weight sequence values must be positive and finite")
        if abs(logs[0]) > _LOG_TOL or abs(logs[1]) > _LOG_TOL:
            raise ValueError("weight sequences are normalised with M_0 = M_1 = 1")
        logs.setflags(write=False)
        object.__setattr__(self, "log_values", logs)

    @property
    def P(self) -> int:
        return self.log_values.size - 1

    @property
    def values(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_values)

    @classmethod
    def from_values(cls, values: Sequence[float], label: str = "") -> "WeightSequence":
        vals = np.asarray(values, dtype=float)
        if np.any(vals <= 0):
            raise ValueError("weight sequence values must be strictly positive")
        return cls(np.log(vals), label)

    @classmethod
    def gevrey(cls, order: float, P: int) -> "WeightSequence":
        """``M_p = p!^order``."""
        p = np.arange(P + 1)
        return cls(order * gammaln(p + 1.0), label=f"gevrey({order:g})")

    @classmethod
    def from_csv(cls, path: str | Path) -> "WeightSequence":
        """One value per line, index implicit."""
        vals = []
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if line:
                vals.append(float(line))
        return cls.from_values(vals, label=Path(path).stem)

    def to_dict(self) -> dict:
        if self.label.startswith("gevrey("):
            return {"gevrey": float(self.label[7:-1]), "length": self.P}
        return {"values": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightSequence":
        if "gevrey" in data:
            return cls.gevrey(float(data["gevrey"]), int(data.get("length", 200)))
        return cls.from_values(data["values"])


def check_m1(seq: WeightSequence) -> bool:
    """Log-convexity ``M_p^2 <= M_{p-1} M_{p+1}`` for ``1 <= p <= P-1``."""
    lv = seq.log_values
    lhs = 2.0 * lv[1:-1]
    rhs = lv[:-2] + lv[2:]
    slack = _LOG_TOL * np.maximum(1.0, np.abs(rhs))
    return bool(np.all(lhs <= rhs + slack))


def check_m2(seq: WeightSequence, H: float) -> float:
    """Smallest ``c0`` with ``M_p <= c0 H^p M_{p-q} M_q`` over the prefix.

    The maximum is taken over all ``0 <= q <= p <= P``; whether it stays
    bounded as ``P`` grows is for the caller to judge.
    """
    if H <= 1:
        raise ValueError("H must exceed 1")
    lv = seq.log_values
    p = np.arange(lv.size)
    pp, qq = np.meshgrid(p, p, indexing="ij")
    valid = qq <= pp
    diff = np.where(valid, pp - qq, 0)
    exponent = lv[pp] - pp * math.log(H) - lv[diff] - lv[qq]
    return float(np.exp(np.max(exponent[valid])))


def check_m6(seq: WeightSequence, c0: float, L0: float) -> bool:
    """``p! <= c0 L0^p M_p`` for every ``p`` in the prefix."""
    if c0 < 1 or L0 < 1:
        raise ValueError("c0 and L0 must be at least 1")
    p = np.arange(seq.P + 1)
    lhs = gammaln(p + 1.0)
    rhs = math.log(c0) + p * math.log(L0) + seq.log_values
    return bool(np.all(lhs <= rhs + _LOG_TOL * np.maximum(1.0, np.abs(rhs))))


def associated_function(seq: WeightSequence, rho: float) -> float:
    """``M(rho) = sup_p ln_+(rho^p / M_p)`` evaluated on the prefix.

    The scan stops once the terms have strictly decreased for five consecutive
    indices and sit more than ``e^12`` below the running maximum.  If that never
    happens inside the prefix the supremum cannot be trusted and
    :class:`PrefixTooShort` is raised.
    """
    if rho < 0:
        raise ValueError("rho must be non-negative")
    if rho == 0:
        return 0.0
    lv = seq.log_values
    p = np.arange(lv.size)
    a = p * math.log(rho) - lv
    runmax = np.maximum.accumulate(a)
    dec = np.zeros(a.size, dtype=bool)
    dec[1:] = a[1:] < a[:-1]
    # window[i] == 5 when each of the steps ending at i-4..i is a strict decrease.
    window = np.convolve(dec.astype(int), np.ones(_GUARD_STEPS, dtype=int))[: a.size]
    stop = (window == _GUARD_STEPS) & (a < runmax - _GUARD_DROP)
    hits = np.flatnonzero(stop)
    if hits.size == 0:
        raise PrefixTooShort(
            f"associated function at rho={rho:g} not settled within P={seq.P}"
        )
    return max(0.0, float(runmax[hits[0]]))


def _abs(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if dim == 1:
        return np.abs(x)
    if x.shape[-1] != dim:
        raise ValueError(f"expected points with trailing dimension {dim}")
    return np.linalg.norm(x, axis=-1)


class Weight:
    """Positive weight function on ``R^dim``."""

    dim: int = 1
    kind: str = ""

    def __call__(self, x) -> np.ndarray:
        return np.exp(self.log(x))

    def log(self, x) -> np.ndarray:
        raise NotImplementedError

    def translation_weight(self, x) -> np.ndarray:
        """Operator norm of ``T_x`` on ``L^p`` weighted by this function."""
        raise Unsupported(f"no translation weight for kind {self.kind!r}")

    @property
    def is_even(self) -> bool:
        return True

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Exponential(Weight):
    """``exp(rate * |x|)``."""

    rate: float = 0.0
    dim: int = 1
    kind: str = field(default="exponential", init=False, repr=False)

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError("rate must be non-negative")

    def log(self, x):
        return self.rate * _abs(x, self.dim)

    def translation_weight(self, x):
        return np.exp(self.rate * _abs(x, self.dim))

    def to_dict(self):
        return {"kind": self.kind, "s": self.rate, "dim": self.dim}


@dataclass(frozen=True)
class Polynomial(Weight):
    """``(1 + |x|)^degree``."""

    degree: float = 0.0
    dim: int = 1
    kind: str = field(default="polynomial", init=False, repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")

    def log(self, x):
        return self.degree * np.log1p(_abs(x, self.dim))

    def translation_weight(self, x):
        return (1.0 + _abs(x, self.dim)) ** self.degree

    def to_dict(self):
        return {"kind": self.kind, "s": self.degree, "dim": self.dim}


@dataclass(frozen=True, eq=False)
class SeriesOmega(Weight):
    """``sum_p (scale |x|)^p / M_p`` summed in log form."""

    sequence: WeightSequence
    scale: float = 1.0
    dim: int = 1
    kind: str = field(default="series", init=False, repr=False)

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def _log_one(self, r: float) -> float:
        if r == 0:
            return 0.0
        lv = self.sequence.log_values[: _SERIES_CAP + 1]
        p = np.arange(lv.size)
        logt = p * math.log(self.scale * r) - lv
        logs = np.logaddexp.accumulate(logt)
        done = np.zeros(lv.size, dtype=bool)
        done[1:] = (logt[1:] - logs[1:] < math.log(_SERIES_RTOL)) & (logt[1:] < logt[:-1])
        hits = np.flatnonzero(done)
        if hits.size:
            return float(logs[hits[0]])
        if self.sequence.P >= _SERIES_CAP:
            raise SeriesDivergence(f"series weight at |x|={r:g} not converged by p={_SERIES_CAP}")
        raise PrefixTooShort(f"series weight at |x|={r:g} needs more than {self.sequence.P} terms")

    def log(self, x):
        r = _abs(x, self.dim)
        uniq, inv = np.unique(r, return_inverse=True)
        out = np.array([self._log_one(float(u)) for u in uniq])
        return out[inv].reshape(r.shape)

    def to_dict(self):
        return {"kind": self.kind, "lambda": self.scale, "sequence": self.sequence.to_dict(),
                "dim": self.dim}


@dataclass(frozen=True, eq=False)
class Table(Weight):
    """Tabulated 1D weight, linearly interpolated between increasing nodes."""

    points: np.ndarray
    values: np.ndarray
    kind: str = field(default="table", init=False, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).copy()
        vals = np.asarray(self.values, dtype=float).copy()
        if pts.ndim != 1 or pts.shape != vals.shape or pts.size < 2:
            raise ValueError("table needs matching 1D points and values")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("table points must be strictly increasing")
        if np.any(vals <= 0) or not np.all(np.isfinite(vals)):
            raise ValueError("table values must be positive and finite")
        pts.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return 1

    @property
    def is_even(self) -> bool:
        mirrored = np.interp(-self.points[::-1], self.points, self.values)
        return bool(np.allclose(mirrored, self.values[::-1], rtol=1e-12, atol=0))

    def _in_range(self, x: np.ndarray) -> np.ndarray:
        span = self.points[-1] - self.points[0]
        lo, hi = self.points[0] - 1e-9 * span, self.points[-1] + 1e-9 * span
        return (x >= lo) & (x <= hi)

    def log(self, x):
        x = np.asarray(x, dtype=float)
        if not np.all(self._in_range(x)):
            raise ValueError("table weight evaluated outside its tabulated range")
        return np.log(np.interp(x, self.points, self.values))

    def translation_weight(self, x):
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape)
        for idx, shift in np.ndenumerate(x):
            moved = self.points + shift
            ok = self._in_range(moved)
            if not np.any(ok):
                raise ValueError("translation moves every table node out of range")
            ratio = np.interp(moved[ok], self.points, self.values) / self.values[ok]
            out[idx] = float(ratio.max())
        return out

    def reflected(self) -> "Table":
        return Table(-self.points[::-1], self.values[::-1])

    def to_dict(self):
        return {"kind": self.kind, "grid": self.points.tolist(), "values": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class Product(Weight):
    """Tensor product ``eta_1(x_1) * ... * eta_k(x_k)`` over stacked coordinates."""

    factors: tuple
    kind: str = field(default="product", init=False, repr=False)

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product weight needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def is_even(self) -> bool:
        return all(f.is_even for f in self.factors)

    def _split(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected points with trailing dimension {self.dim}")
        parts, start = [], 0
        for f in self.factors:
            chunk = x[..., start:start + f.dim]
            parts.append(chunk[..., 0] if f.dim == 1 else chunk)
            start += f.dim
        return parts

    def log(self, x):
        return sum(f.log(part) for f, part in zip(self.factors, self._split(x)))

    def translation_weight(self, x):
        out = 1.0
        for f, part in zip(self.factors, self._split(x)):
            out = out * f.translation_weight(part)
        return out

    def on_lattice(self, *axes) -> np.ndarray:
        """Evaluate a product of 1D factors on the outer-product lattice of ``axes``."""
        if len(axes) != len(self.factors) or any(f.dim != 1 for f in self.factors):
            raise ValueError("on_lattice needs one 1D axis per 1D factor")
        out = np.ones(())
        for f, ax in zip(self.factors, axes):
            out = np.multiply.outer(out, f(np.asarray(ax, dtype=float)))
        return out

    def to_dict(self):
        return {"kind": self.kind, "factors": [f.to_dict() for f in self.factors]}


def unit_weight(dim: int = 1) -> Weight:
    if dim == 1:
        return Exponential(0.0)
    return Product(tuple(Exponential(0.0) for _ in range(dim)))


def eval_weight(spec: Weight, x) -> np.ndarray:
    return spec(x)


def translation_weight(spec: Weight, x) -> np.ndarray:
    return spec.translation_weight(x)


def tabulate(spec: Weight, points) -> Table:
    points = np.asarray(points, dtype=float)
    return Table(points, spec(points))


def weight_from_dict(data: dict) -> Weight:
    kind = data.get("kind")
    dim = int(data.get("dim", 1))
    if kind == "exponential":
        return Exponential(float(data.get("s", 0.0)), dim)
    if kind == "polynomial":
        return Polynomial(float(data.get("s", 0.0)), dim)
    if kind == "series":
        return SeriesOmega(WeightSequence.from_dict(data["sequence"]),
                           float(data.get("lambda", 1.0)), dim)
    if kind == "table":
        return Table(data["grid"], data["values"])
    if kind == "product":
        return Product(tuple(weight_from_dict(f) for f in data["factors"]))
    if kind in (None, "unit", "constant"):
        return unit_weight(dim)
    raise KindUnknown(f"unknown weight kind {kind!r}")

