"""Batch verification of the norm inequalities, with a deterministic JSON report.

Each suite draws its random inputs from a generator seeded by the run seed and
the suite name, so suites are independent of each other and of execution
order.  A record compares ``lhs`` with ``rhs`` under one of three relations:
``le`` passes when ``lhs <= rhs (1 + tol)``, ``eq`` when
``|lhs - rhs| <= tol |rhs|`` and ``lt`` when ``lhs < rhs``.
"""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .corpus import gaussian_mixture
from .errors import ConfigInvalid, ZeroSignal
from .modspace import (
    ModulationSpaceSpec,
    field_norm,
    modulation_bound,
    translation_bound,
    verify_embedding_max,
    verify_embedding_min,
    window_equivalence_check,
)
from .signal import (
    Grid1D,
    MixedNormSpec,
    SampledField,
    SampledSignal,
    approximation_error,
    convolve,
    fourier,
    gaussian,
    hausdorff_young,
    inverse_fourier,
    lp_norm,
    lp_translation_weight,
    modulate,
    multiply,
    translate,
    young,
)
from .stft import (
    analyze,
    equivalence_constant,
    gaussian_window,
    pointwise_bound,
    row_bounds,
    synthesis_bound,
    synthesize,
)
from .tensor import (
    Decomposition,
    KernelMatrix,
    frobenius_norm,
    nuclear_norm,
    pi_upper_bound,
    separation_demo,
    singular_values,
    spectral_norm,
    verify_elementary_synthesis,
    young_exponent,
)
from .weights import Exponential, SeriesOmega, WeightSequence, associated_function

SCHEMA = 1
SUITES = (
    "weights",
    "fourier",
    "module-inequalities",
    "stft-inversion",
    "modulation-embeddings",
    "window-equivalence",
    "tensor-prop51",
    "separation-demo",
    "approximation-identity",
)

# weight of the weighted L^p spaces exercised by the suites
_ETA = Exponential(0.5)


@dataclass(frozen=True)
class RunConfig:
    T: float = 8.0
    N: int = 256
    tight: float = 1e-9
    loose: float = 1e-6
    seed: int = 0
    count: int = 10
    suites: tuple = SUITES
    output: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        try:
            Grid1D(self.T, self.N)
        except ValueError as exc:
            raise ConfigInvalid(f"grid: {exc}") from exc
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ConfigInvalid(f"corpus count must be a positive integer, got {self.count!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigInvalid(f"seed must be a non-negative integer, got {self.seed!r}")
        for tol in (self.tight, self.loose):
            if not (isinstance(tol, (int, float)) and 0 <= tol < 1):
                raise ConfigInvalid(f"tolerances must lie in [0, 1), got {tol!r}")
        suites = tuple(self.suites)
        unknown = [s for s in suites if s not in SUITES]
        if unknown or not suites:
            raise ConfigInvalid(f"unknown or empty suite list: {unknown or suites}")
        object.__setattr__(self, "suites", suites)
        if not (isinstance(self.jobs, int) and self.jobs >= 1):
            raise ConfigInvalid("jobs must be a positive integer")

    @property
    def grid(self) -> Grid1D:
        return Grid1D(self.T, self.N)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """Build from the nested JSON layout ``{grid, tolerances, corpus, suites, output}``."""
        if not isinstance(data, dict):
            raise ConfigInvalid("config must be a JSON object")
        known = {"grid", "tolerances", "corpus", "suites", "output", "jobs"}
        extra = set(data) - known
        if extra:
            raise ConfigInvalid(f"unknown config keys: {sorted(extra)}")
        kw = {}
        try:
            grid = data.get("grid", {})
            if "T" in grid:
                kw["T"] = float(grid["T"])
            if "N" in grid:
                kw["N"] = grid["N"]
            tol = data.get("tolerances", {})
            for key in ("tight", "loose"):
                if key in tol:
                    kw[key] = float(tol[key])
            corpus = data.get("corpus", {})
            for key in ("seed", "count"):
                if key in corpus:
                    kw[key] = corpus[key]
        except (TypeError, AttributeError, ValueError) as exc:
            raise ConfigInvalid(f"malformed config: {exc}") from exc
        if "suites" in data:
            kw["suites"] = tuple(data["suites"])
        if "output" in data:
            kw["output"] = data["output"]
        if "jobs" in data:
            kw["jobs"] = data["jobs"]
        return cls(**kw)

    def to_dict(self) -> dict:
        return {
            "grid": {"T": self.T, "N": self.N},
            "tolerances": {"tight": self.tight, "loose": self.loose},
            "corpus": {"seed": self.seed, "count": self.count},
            "suites": list(self.suites),
        }


@dataclass
class CheckRecord:
    suite: str
    check_id: str
    paper_ref: str
    lhs: Optional[float]
    rhs: Optional[float]
    tolerance: float
    status: str
    grid: dict
    wall_time: float


def _status(lhs, rhs, tol: float, relation: str) -> str:
    if lhs is None or rhs is None:
        return "skip"
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return "fail"
    if relation == "le":
        ok = lhs <= rhs + tol * abs(rhs)
    elif relation == "eq":
        ok = abs(lhs - rhs) <= tol * abs(rhs)
    elif relation == "lt":
        ok = lhs < rhs
    else:
        raise ValueError(relation)
    return "pass" if ok else "fail"


class _Recorder:
    def __init__(self, suite: str, grid: Grid1D):
        self.suite = suite
        self.grid = {"T": grid.T, "N": grid.N}
        self.records: list[CheckRecord] = []
        self._t = time.perf_counter()

    def add(self, check_id, ref, lhs, rhs, tol, relation="le", grid=None):
        now = time.perf_counter()
        lhs = None if lhs is None else float(lhs)
        rhs = None if rhs is None else float(rhs)
        self.records.append(CheckRecord(
            self.suite, check_id, ref, lhs, rhs, float(tol),
            _status(lhs, rhs, tol, relation), grid or self.grid, now - self._t))
        self._t = now

    def skip(self, check_id, ref, tol, grid=None):
        self.add(check_id, ref, None, None, tol, grid=grid)


def suite_rng(seed: int, suite: str) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(suite.encode())]))


def _signals(grid, rng, count):
    return [gaussian_mixture(grid, rng) for _ in range(count)]


# -- suites -----------------------------------------------------------------

def _suite_weights(cfg: RunConfig, rec: _Recorder, rng) -> None:
    points = cfg.grid.points
    idx = np.arange(cfg.N)
    for order in (1, 2):
        seq = WeightSequence.gevrey(order, 400)
        for scale in (0.5, 1.0, 2.0):
            w = SeriesOmega(seq, scale)
            logw = w.log(points)
            low = np.array([associated_function(seq, scale * abs(x)) for x in points])
            high = np.array([associated_function(seq, 2 * scale * abs(x)) for x in points])
            tag = f"gevrey{order}-scale{scale:g}"
            rec.add(f"sandwich-lower[{tag}]", "series weight sandwich",
                    math.exp(np.max(low - logw)), 1.0, cfg.tight)
            rec.add(f"sandwich-upper[{tag}]", "series weight sandwich",
                    math.exp(np.max(logw - math.log(2) - high)), 1.0, cfg.tight)
            # t_i + t_j = (i + j - N) h, tabulated once
            table = w.log(np.arange(-cfg.N, cfg.N + 1) * cfg.grid.h)
            excess = table[idx[:, None] + idx[None, :]] - logw[:, None] - logw[None, :]
            rec.add(f"subadditive[{tag}]", "logarithmic subadditivity",
                    math.exp(np.max(excess)), 1.0, cfg.tight)
    rhos = np.geomspace(10, 1e4, 13)
    for order in (1, 2):
        seq = WeightSequence.gevrey(order, 20000)
        ratios = [associated_function(seq, r) / r ** (1 / order) for r in rhos]
        rec.add(f"associated-growth-band[gevrey{order}]", "associated function growth",
                max(ratios) / min(ratios), 20.0, 0.0)


def _suite_fourier(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    g = gaussian(grid)
    err = np.max(np.abs(fourier(g).values - np.exp(-np.pi * grid.dual().points ** 2)))
    rec.add("gaussian-self-dual", "plumbing", err, 1e-12, 0.0)
    signals = _signals(grid, rng, cfg.count)
    for i, f in enumerate(signals):
        rec.add(f"parseval[{i}]", "Parseval identity", lp_norm(fourier(f), 2), lp_norm(f, 2),
                1e-10, "eq")
        back = inverse_fourier(fourier(f))
        rec.add(f"inverse-exact[{i}]", "plumbing",
                lp_norm(back - f, 2), lp_norm(f, 2) * cfg.tight, 0.0)
        for p in (1.0, 1.5, 2.0):
            lhs, rhs = hausdorff_young(f, p)
            rec.add(f"hausdorff-young[{i},p={p:g}]", "Hausdorff-Young inequality",
                    lhs, rhs, cfg.loose)
    for i, (f, h) in enumerate(zip(signals, signals[1:] + signals[:1])):
        for p, q in ((1, 1), (1, 2), (2, 1), (1.5, 1.5)):
            lhs, rhs = young(f, h, p, q)
            rec.add(f"young[{i},p={p:g},q={q:g}]", "Young convolution inequality",
                    lhs, rhs, cfg.loose)
        x0, xi0 = 8 * grid.h, 4 / (2 * grid.T)
        tm = translate(modulate(f, xi0), x0)
        mt = modulate(translate(f, x0), xi0)
        err = np.max(np.abs(tm.values - np.exp(-2j * np.pi * x0 * xi0) * mt.values))
        rec.add(f"commutation-phase[{i}]", "translation-modulation commutation",
                err, cfg.tight * np.max(np.abs(f.values)), 0.0)


def _suite_module(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    omega = lp_translation_weight(_ETA)
    fs, gs = _signals(grid, rng, cfg.count), _signals(grid, rng, cfg.count)
    for i, (f, g) in enumerate(zip(fs, gs)):
        conv = convolve(g, f)
        l1 = lp_norm(g, 1, omega)
        for p in (1.0, 2.0, math.inf):
            rec.add(f"convolution-module[{i},p={p:g}]", "convolution module inequality",
                    lp_norm(conv, p, _ETA), l1 * lp_norm(f, p, _ETA), cfg.tight)
        prod = multiply(g, f)
        a_norm = lp_norm(inverse_fourier(g), 1)
        for p in (1.0, 2.0, math.inf):
            rec.add(f"multiplication-module[{i},p={p:g}]",
                    "multiplication module inequality",
                    lp_norm(prod, p, _ETA), a_norm * lp_norm(f, p, _ETA), cfg.tight)


def _suite_stft(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    g = gaussian_window(grid)
    V = analyze(g, g)
    X, XI = np.meshgrid(V.xgrid.points, V.xigrid.points, indexing="ij")
    exact = np.exp(-np.pi * (X ** 2 + XI ** 2) / 2) * np.exp(-1j * np.pi * X * XI)
    rec.add("gaussian-closed-form", "Gaussian short-time transform",
            np.max(np.abs(V.values - exact)), 1e-8, 0.0)
    g2 = gaussian_window(grid, 2.0)
    ip = complex(grid.h * np.vdot(g2.values, g.values))
    gg = lp_norm(g, 2) ** 2
    for i, f in enumerate(_signals(grid, rng, cfg.count)):
        norm = lp_norm(f, 2)
        back = synthesize(analyze(f, g), g)
        rec.add(f"inversion[{i}]", "inversion formula",
                lp_norm(back - f * gg, 2) / norm, cfg.loose, 0.0)
        cross = synthesize(analyze(f, g2), g)
        rec.add(f"cross-window-inversion[{i}]", "inversion formula",
                lp_norm(cross - f * ip, 2) / norm, cfg.loose, 0.0)
        for p in (1.0, 2.0, math.inf):
            rows, bound = row_bounds(f, g, p, _ETA)
            rec.add(f"row-bound[{i},p={p:g}]", "frequency row bound",
                    float(np.max(rows)), bound, cfg.tight)
            absV, pbound = pointwise_bound(f, g, p, _ETA)
            rec.add(f"pointwise-bound[{i},p={p:g}]", "pointwise bound",
                    float(np.max(absV / pbound)), 1.0, cfg.tight)
    envelope = np.exp(-0.05 * (grid.points[:, None] ** 2 + grid.dual().points[None, :] ** 2))
    for i in range(cfg.count):
        vals = (rng.normal(size=(grid.N, grid.N)) + 1j * rng.normal(size=(grid.N, grid.N)))
        G = SampledField(grid, grid.dual(), vals * envelope)
        for p in (1.0, 2.0, math.inf):
            lhs, rhs = synthesis_bound(G, g, p, _ETA)
            rec.add(f"synthesis-bound[{i},p={p:g}]", "synthesis bound", lhs, rhs, cfg.tight)


def _suite_embeddings(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    g = gaussian_window(grid)
    spec = ModulationSpaceSpec(MixedNormSpec.mixed(2, 2), g)
    weighted = ModulationSpaceSpec(MixedNormSpec.mixed(1, 2, _ETA, _ETA), g)
    x0, xi0 = 16 * grid.h, -6 / (2 * grid.T)
    for i, f in enumerate(_signals(grid, rng, cfg.count)):
        for p in (1.0, 2.0):
            for label, eta in (("unit", None), ("exp", _ETA)):
                lhs, rhs = verify_embedding_min(f, spec, p, eta)
                rec.add(f"embedding-min[{i},p={p:g},{label}]", "minimal embedding", lhs, rhs,
                        cfg.tight)
                lhs, rhs = verify_embedding_max(f, g, p, eta)
                rec.add(f"embedding-max[{i},p={p:g},{label}]", "maximal embedding", lhs, rhs,
                        cfg.tight)
        lhs, rhs = translation_bound(f, x0, weighted)
        rec.add(f"translation-weight[{i}]", "reduced translation weight", lhs, rhs, cfg.tight)
        lhs, rhs = modulation_bound(f, xi0, weighted)
        rec.add(f"modulation-weight[{i}]", "reduced modulation weight", lhs, rhs, cfg.tight)


_EQUIV_SPACES = (("L11", MixedNormSpec.mixed(1, 1)), ("L22", MixedNormSpec.mixed(2, 2)),
                 ("L21", MixedNormSpec.mixed(2, 1)))


def _suite_window(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    windows = {"w1": gaussian_window(grid, 1.0), "w2": gaussian_window(grid, 2.0)}
    pairs = (("w1", "w2"), ("w2", "w1"))
    for i, f in enumerate(_signals(grid, rng, cfg.count)):
        for label, F in _EQUIV_SPACES:
            for a, b in pairs:
                cid = f"window-ratio[{i},{label},{a}/{b}]"
                try:
                    ratio, bound = window_equivalence_check(f, windows[a], windows[b], F)
                except ZeroSignal:
                    rec.skip(cid, "window equivalence", cfg.tight)
                    continue
                rec.add(cid, "window equivalence", ratio, bound, cfg.tight)
    for label, F in _EQUIV_SPACES:
        C = equivalence_constant(windows["w1"], windows["w2"], F)
        for i in range(max(1, cfg.count // 5)):
            vals = rng.normal(size=(grid.N, grid.N)) + 1j * rng.normal(size=(grid.N, grid.N))
            G = SampledField(grid, grid.dual(), vals)
            lhs = field_norm(analyze(synthesize(G, windows["w2"]), windows["w1"]), F)
            rec.add(f"operator-bound[{i},{label}]", "window operator bound",
                    lhs, C * field_norm(G, F), cfg.tight)


def _suite_tensor(cfg: RunConfig, rec: _Recorder, rng) -> None:
    grid = cfg.grid
    g_list = _signals(grid, rng, cfg.count)
    phis, psis = _signals(grid, rng, cfg.count), _signals(grid.dual(), rng, cfg.count)
    for i, (phi, psi, g) in enumerate(zip(phis, psis, g_list)):
        for p1, p2 in ((1, 1), (2, 1), (2, 2)):
            lhs, rhs = verify_elementary_synthesis(phi, psi, g, p1, p2)
            rec.add(f"elementary-synthesis[{i},p1={p1},p2={p2}]",
                    "elementary tensor synthesis bound", lhs, rhs, cfg.loose)
            lhs, rhs = hausdorff_young(psi, p1)
            rec.add(f"hausdorff-young[{i},p={p1}]", "Hausdorff-Young inequality",
                    lhs, rhs, cfg.loose)
            lhs, rhs = young(phi, g, p2, young_exponent(p1, p2))
            rec.add(f"young[{i},p1={p1},p2={p2}]", "Young convolution inequality",
                    lhs, rhs, cfg.loose)
    for i in range(cfg.count):
        A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        K = KernelMatrix(A)
        s = singular_values(K)
        # eigenvalues of K*K as an independent route to the singular values
        ev = np.sqrt(np.clip(np.linalg.eigvalsh(A.conj().T @ A)[::-1], 0, None))
        rec.add(f"singular-values[{i}]", "plumbing", float(np.max(np.abs(s - ev))),
                cfg.tight * max(1.0, float(s[0])), 0.0)
        rec.add(f"frobenius-le-nuclear[{i}]", "tensor norm chain",
                frobenius_norm(K), nuclear_norm(K), cfg.tight)
        rec.add(f"spectral-le-frobenius[{i}]", "tensor norm chain",
                spectral_norm(K), frobenius_norm(K), cfg.tight)
    for n in (2, 8, 32):
        rec.add(f"nuclear-identity[{n}]", "plumbing", nuclear_norm(KernelMatrix(np.eye(n))),
                float(n), 0.0, "eq")
    small = Grid1D(2, 16)
    for i in range(cfg.count):
        terms = []
        for _ in range(3):
            lam = complex(rng.normal(), rng.normal())
            phi = SampledSignal(small, rng.normal(size=16) + 1j * rng.normal(size=16))
            psi = SampledSignal(small, rng.normal(size=16) + 1j * rng.normal(size=16))
            terms.append((lam, phi, psi))
        D = Decomposition(terms)
        rec.add(f"projective-bound[{i}]", "projective decomposition bound",
                nuclear_norm(D.assemble()), pi_upper_bound(D, 2, 2), cfg.tight,
                grid={"T": small.T, "N": small.N})


def _suite_separation(cfg: RunConfig, rec: _Recorder, rng) -> None:
    rows = separation_demo()
    for a, b in zip(rows, rows[1:]):
        rec.add(f"ratio-increase[T={a.T:g}->{b.T:g}]", "separation of the nuclear space",
                a.ratio, b.ratio, 0.0, "lt", grid={"T": b.T, "N": b.N})
    contrast = [r.ratio for r in separation_demo(family=gaussian)]
    spread = (max(contrast) - min(contrast)) / min(contrast)
    rec.add("gaussian-ratio-spread", "plumbing", spread, 0.05, 0.0, "lt",
            grid={"T": rows[-1].T, "N": rows[-1].N})


def _suite_approximation(cfg: RunConfig, rec: _Recorder, rng) -> None:
    f = gaussian(cfg.grid)
    for label, eta in (("L2", None), ("L2-exp", _ETA)):
        errs = {n: approximation_error(f, n, 2, eta) for n in (4, 8, 16, 32, 64)}
        for n in (4, 8, 16, 32):
            rec.add(f"decrease[{label},n={n}]", "approximate identity",
                    errs[2 * n], errs[n], 0.0, "lt")
        rec.add(f"error-at-64[{label}]", "approximate identity", errs[64], 1e-3, 0.0)


_RUNNERS: dict[str, Callable] = {
    "weights": _suite_weights,
    "fourier": _suite_fourier,
    "module-inequalities": _suite_module,
    "stft-inversion": _suite_stft,
    "modulation-embeddings": _suite_embeddings,
    "window-equivalence": _suite_window,
    "tensor-prop51": _suite_tensor,
    "separation-demo": _suite_separation,
    "approximation-identity": _suite_approximation,
}


def run_suite(cfg: RunConfig, suite: str) -> list[CheckRecord]:
    rec = _Recorder(suite, cfg.grid)
    _RUNNERS[suite](cfg, rec, suite_rng(cfg.seed, suite))
    return rec.records


@dataclass
class VerificationReport:
    config: dict
    records: list
    created: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat())

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.status == "fail"]

    def body(self) -> dict:
        """Report content without timings or timestamps."""
        recs = []
        for r in self.records:
            d = asdict(r)
            del d["wall_time"]
            recs.append(d)
        return {"schema": SCHEMA, "config": self.config, "records": recs, "summary": self.summary}

    def body_bytes(self) -> bytes:
        return json.dumps(self.body(), sort_keys=True, indent=1, allow_nan=False).encode("utf-8")

    def to_dict(self) -> dict:
        out = self.body()
        for d, r in zip(out["records"], self.records):
            d["wall_time"] = r.wall_time
        out["created"] = self.created
        out["body_sha256"] = hashlib.sha256(self.body_bytes()).hexdigest()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1, allow_nan=False)


def run_verify(cfg: RunConfig) -> VerificationReport:
    """Run the configured suites and assemble records in suite order."""
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(lambda s: run_suite(cfg, s), cfg.suites))
    else:
        results = [run_suite(cfg, s) for s in cfg.suites]
    report = VerificationReport(cfg.to_dict(), [r for rs in results for r in rs])
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
            fh.write("\n")
    return report
