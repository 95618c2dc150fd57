"""CSV formats for signals and fields, JSON for field-norm specs."""
from __future__ import annotations

import contextlib
import csv
import math
from pathlib import Path

import numpy as np

from .errors import GridNonUniform, KindUnknown, ParseError
from .signal import Grid1D, MixedNormSpec, SampledField, SampledSignal
from .weights import weight_from_dict


def _read_rows(path: Path, header: list[str]) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            first = next(reader, None)
            if first is None or [c.strip() for c in first] != header:
                raise ParseError(f"{path}: expected header {','.join(header)}")
            rows = [r for r in reader if r and any(c.strip() for c in r)]
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text file") from exc
    try:
        data = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise ParseError(f"{path}: non-numeric entry") from exc
    if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] != len(header):
        raise ParseError(f"{path}: expected {len(header)} columns per row")
    return data


def infer_grid(points: np.ndarray) -> Grid1D:
    """Recover ``Grid1D`` from sample positions ``-T, -T + h, ...``."""
    N = points.size
    if N < 2:
        raise ParseError("need at least two samples")
    h = (points[-1] - points[0]) / (N - 1)
    if not h > 0:
        raise GridNonUniform("sample positions must increase")
    expected = points[0] + h * np.arange(N)
    if np.max(np.abs(points - expected)) > 1e-9 * h:
        raise GridNonUniform("sample positions are not uniformly spaced")
    T = N * h / 2.0
    if abs(points[0] + T) > 1e-9 * h:
        raise ParseError(f"grid must start at -T = {-T:g}, got {points[0]:g}")
    try:
        return Grid1D(T, N)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_signal(path) -> SampledSignal:
    data = _read_rows(Path(path), ["t", "re", "im"])
    grid = infer_grid(data[:, 0])
    return SampledSignal(grid, data[:, 1] + 1j * data[:, 2])


@contextlib.contextmanager
def _sink(target):
    """Open a path for writing, or pass an already open text stream through."""
    if hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", newline="") as fh:
            yield fh


def write_signal(path, f: SampledSignal) -> None:
    with _sink(path) as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re", "im"])
        for t, v in zip(f.grid.points, f.values):
            w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])


def read_field(path) -> SampledField:
    data = _read_rows(Path(path), ["x", "xi", "re", "im"])
    xs = np.unique(data[:, 0])
    xis = np.unique(data[:, 1])
    if xs.size * xis.size != data.shape[0]:
        raise ParseError(f"{path}: rows do not form a full lattice")
    order = np.lexsort((data[:, 1], data[:, 0]))
    data = data[order]
    vals = (data[:, 2] + 1j * data[:, 3]).reshape(xs.size, xis.size)
    return SampledField(infer_grid(xs), infer_grid(xis), vals)


def write_field(path, G: SampledField, magnitude: bool = False) -> None:
    X, XI = np.meshgrid(G.xgrid.points, G.xigrid.points, indexing="ij")
    with _sink(path) as fh:
        w = csv.writer(fh)
        if magnitude:
            w.writerow(["x", "xi", "abs"])
            for x, xi, v in zip(X.ravel(), XI.ravel(), G.values.ravel()):
                w.writerow([repr(float(x)), repr(float(xi)), repr(float(abs(v)))])
        else:
            w.writerow(["x", "xi", "re", "im"])
            for x, xi, v in zip(X.ravel(), XI.ravel(), G.values.ravel()):
                w.writerow([repr(float(x)), repr(float(xi)), repr(float(v.real)),
                            repr(float(v.imag))])


def _exponent(value) -> float:
    if isinstance(value, str) and value.lower() in ("inf", "infinity"):
        return math.inf
    return float(value)


def field_spec_from_dict(data: dict) -> MixedNormSpec:
    """``{"kind": "mixed", "p": 2, "q": 1, "eta1": {...}, "eta2": {...}}`` or
    ``{"kind": "nuclear"}`` / ``{"kind": "spectral"}``."""
    kind = data.get("kind")
    if kind == "mixed":
        eta1 = weight_from_dict(data["eta1"]) if "eta1" in data else None
        eta2 = weight_from_dict(data["eta2"]) if "eta2" in data else None
        return MixedNormSpec.mixed(_exponent(data.get("p", 2)), _exponent(data.get("q", 2)),
                                   eta1, eta2)
    if kind == "nuclear":
        return MixedNormSpec.nuclear()
    if kind == "spectral":
        return MixedNormSpec.spectral()
    raise KindUnknown(f"unknown field-norm kind {kind!r}")


def field_spec_to_dict(F: MixedNormSpec) -> dict:
    if F.kind != "mixed":
        return {"kind": F.kind}
    return {"kind": "mixed", "p": _fmt(F.p), "q": _fmt(F.q),
            "eta1": F.eta1.to_dict(), "eta2": F.eta2.to_dict()}


def _fmt(p: float):
    return "inf" if math.isinf(p) else p
