"""Seeded Monte Carlo experiment harness.

An experiment draws samples from a generalized spherical population over a
schedule of (d, n) pairs, fits the requested scatter estimators, optionally
standardizes them to sqrt(n/d) * (A - I), and summarizes each spectrum
against a reference law.  Trials are independent: trial (i, r) uses the
seed ``derive_seed(base_seed, i, r)``, so a sweep is reproducible and its
persisted output is byte-identical regardless of the parallelism degree.

Config file schema (JSON)::

    {
      "population": {             # template; dimension comes from the schedule
        "radial": "chi" | "scaled-f-root" | "constant" | "signed-chi",
        "p": 1,                   # scaled-f-root only: denominator degrees of freedom
        "c": 2.0,                 # constant only: the radius value
        "coupling": "independent" | "sign-u1"   # default "independent"
      },
      "schedule": [[16, 1600], [32, 3200]]      # explicit (d, n) pairs, or
                  {"preset": "semicircle" | "mp", "dims": [16, 32, 64]},
      "replicates": 20,
      "estimators": ["covariance", "tyler"],
      "standardized": true,
      "reference": {"law": "semicircle"} | {"law": "mp", "y": 0.25},
      "max_moment": 6,
      "base_seed": 12345,
      "tyler": {"tol": 1e-9, "max_iter": 1000},  # optional
      "save_spectra": false,                     # optional
      "out": "results/"                          # optional; CLI --out overrides
    }

The ``semicircle`` preset pairs each d with n = 100 d (d/n = 0.01); the
``mp`` preset uses n = 4 d (d/n = 0.25).

Persisted layout (``write_results``): ``trials.json`` holds one JSON object
per line (schema-versioned, canonical key order, no timing fields so that
re-runs are byte-identical), ``summary.json`` the per-pair aggregates, and
``eigenvalues/{trial_id}.csv`` the raw ascending spectra when requested.
All files are written to a temp name and renamed into place.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .estimators import sample_covariance, tyler
from .laws import MarchenkoPastur, ReferenceLaw, Semicircle
from .metrics import SpectralSummary, summarize
from .sampling import (
    ChiRadius,
    ConstantRadius,
    Coupling,
    PopulationSpec,
    ScaledFRootRadius,
    SignedChiRadius,
    derive_seed,
    sample_population,
)
from .spectral import spectral_norm, standardize, symmetric_eigenvalues

__all__ = [
    "PopulationTemplate",
    "ExperimentConfig",
    "EstimatorResult",
    "TrialResult",
    "PairSummary",
    "SweepSummary",
    "SweepResult",
    "semicircle_schedule",
    "mp_schedule",
    "run_trial",
    "run_sweep",
    "summarize_sweep",
    "write_results",
]

SCHEMA_VERSION = 1

_RADIAL_KINDS = ("chi", "scaled-f-root", "constant", "signed-chi")
_ESTIMATOR_TAGS = ("covariance", "tyler")


def semicircle_schedule(dims) -> tuple[tuple[int, int], ...]:
    """Pairs (d, 100 d): the d/n -> 0 regime used for the semicircle runs."""
    return tuple((int(d), 100 * int(d)) for d in dims)


def mp_schedule(dims) -> tuple[tuple[int, int], ...]:
    """Pairs (d, 4 d): the fixed-ratio regime y = 0.25 for the MP probe."""
    return tuple((int(d), 4 * int(d)) for d in dims)


def _check_keys(d: dict, allowed: set[str], where: str):
    unknown = set(d) - allowed
    if unknown:
        raise ValueError(f"unknown {where} keys: {sorted(unknown)}")


@dataclass(frozen=True)
class PopulationTemplate:
    """Population family with the dimension left open.

    The radial degrees of freedom track the dimension: ``chi`` at dimension
    d uses chi2_d (standard normal population), ``scaled-f-root`` uses
    sqrt(d F_{d,p}) (d-dimensional t with p degrees of freedom), and
    ``signed-chi`` the sign-symmetrized chi.  ``constant`` uses the fixed
    radius ``c``.
    """

    radial: str
    coupling: Coupling = Coupling.INDEPENDENT
    p: int | None = None
    c: float | None = None

    def __post_init__(self):
        if self.radial not in _RADIAL_KINDS:
            raise ValueError(f"radial must be one of {_RADIAL_KINDS}, got {self.radial!r}")
        if self.radial == "scaled-f-root" and (self.p is None or self.p < 1):
            raise ValueError("scaled-f-root requires a positive integer 'p'")
        if self.radial == "constant" and (self.c is None or self.c == 0):
            raise ValueError("constant requires a nonzero 'c'")

    def instantiate(self, dim: int, seed: int) -> PopulationSpec:
        if self.radial == "chi":
            law = ChiRadius(dim)
        elif self.radial == "scaled-f-root":
            law = ScaledFRootRadius(dim, self.p)
        elif self.radial == "signed-chi":
            law = SignedChiRadius(dim)
        else:
            law = ConstantRadius(self.c)
        return PopulationSpec(dim=dim, radial=law, coupling=self.coupling, seed=seed)

    def to_dict(self) -> dict:
        out: dict = {"radial": self.radial, "coupling": self.coupling.value}
        if self.p is not None:
            out["p"] = int(self.p)
        if self.c is not None:
            out["c"] = float(self.c)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "PopulationTemplate":
        _check_keys(d, {"radial", "coupling", "p", "c"}, "population")
        if "radial" not in d:
            raise ValueError("population requires a 'radial' key")
        return cls(
            radial=d["radial"],
            coupling=Coupling(d.get("coupling", "independent")),
            p=d.get("p"),
            c=d.get("c"),
        )


def _reference_to_dict(law: ReferenceLaw) -> dict:
    if isinstance(law, Semicircle):
        return {"law": "semicircle"}
    return {"law": "mp", "y": float(law.y)}


def _reference_from_dict(d: dict) -> ReferenceLaw:
    _check_keys(d, {"law", "y"}, "reference")
    kind = d.get("law")
    if kind == "semicircle":
        return Semicircle()
    if kind == "mp":
        if "y" not in d:
            raise ValueError("reference law 'mp' requires 'y'")
        return MarchenkoPastur(float(d["y"]))
    raise ValueError(f"reference law must be 'semicircle' or 'mp', got {kind!r}")


def _schedule_from_config(spec) -> tuple[tuple[int, int], ...]:
    if isinstance(spec, dict):
        _check_keys(spec, {"preset", "dims"}, "schedule")
        preset, dims = spec.get("preset"), spec.get("dims")
        if preset == "semicircle":
            return semicircle_schedule(dims)
        if preset == "mp":
            return mp_schedule(dims)
        raise ValueError(f"schedule preset must be 'semicircle' or 'mp', got {preset!r}")
    return tuple((int(d), int(n)) for d, n in spec)


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one sweep; see the module docstring for the JSON form."""

    population: PopulationTemplate
    schedule: tuple[tuple[int, int], ...]
    replicates: int
    estimators: tuple[str, ...] = ("tyler",)
    standardized: bool = True
    reference: ReferenceLaw = Semicircle()
    max_moment: int = 6
    base_seed: int = 0
    tol: float = 1e-9
    max_iter: int = 1000
    save_spectra: bool = False
    out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "schedule", tuple((int(d), int(n)) for d, n in self.schedule))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        if not self.schedule:
            raise ValueError("schedule must contain at least one (d, n) pair")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not self.estimators or any(t not in _ESTIMATOR_TAGS for t in self.estimators):
            raise ValueError(f"estimators must be a nonempty subset of {_ESTIMATOR_TAGS}")
        if len(set(self.estimators)) != len(self.estimators):
            raise ValueError("estimators must not repeat")
        if self.max_moment < 1:
            raise ValueError(f"max_moment must be >= 1, got {self.max_moment}")
        if self.tol <= 0 or self.max_iter < 1:
            raise ValueError("tyler settings require tol > 0 and max_iter >= 1")
        for d, n in self.schedule:
            if d < 1 or n < 1:
                raise ValueError(f"schedule pair ({d}, {n}) must be positive")
            if "tyler" in self.estimators and n < d:
                raise ValueError(
                    f"schedule pair ({d}, {n}) has n < d; Tyler's estimator requires n >= d"
                )

    def to_dict(self) -> dict:
        out = {
            "population": self.population.to_dict(),
            "schedule": [[d, n] for d, n in self.schedule],
            "replicates": int(self.replicates),
            "estimators": list(self.estimators),
            "standardized": bool(self.standardized),
            "reference": _reference_to_dict(self.reference),
            "max_moment": int(self.max_moment),
            "base_seed": int(self.base_seed),
            "tyler": {"tol": float(self.tol), "max_iter": int(self.max_iter)},
            "save_spectra": bool(self.save_spectra),
        }
        if self.out is not None:
            out["out"] = self.out
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        _check_keys(
            d,
            {
                "population",
                "schedule",
                "replicates",
                "estimators",
                "standardized",
                "reference",
                "max_moment",
                "base_seed",
                "tyler",
                "save_spectra",
                "out",
            },
            "config",
        )
        for key in ("population", "schedule", "replicates"):
            if key not in d:
                raise ValueError(f"config requires the '{key}' key")
        tyler_cfg = d.get("tyler", {})
        _check_keys(tyler_cfg, {"tol", "max_iter"}, "tyler")
        return cls(
            population=PopulationTemplate.from_dict(d["population"]),
            schedule=_schedule_from_config(d["schedule"]),
            replicates=int(d["replicates"]),
            estimators=tuple(d.get("estimators", ("tyler",))),
            standardized=bool(d.get("standardized", True)),
            reference=_reference_from_dict(d.get("reference", {"law": "semicircle"})),
            max_moment=int(d.get("max_moment", 6)),
            base_seed=int(d.get("base_seed", 0)),
            tol=float(tyler_cfg.get("tol", 1e-9)),
            max_iter=int(tyler_cfg.get("max_iter", 1000)),
            save_spectra=bool(d.get("save_spectra", False)),
            out=d.get("out"),
        )

    @classmethod
    def from_json_file(cls, path) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError as exc:
            raise ValueError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class EstimatorResult:
    """One estimator's spectral summary plus its solver diagnostics."""

    summary: SpectralSummary
    iterations: int | None = None
    residual: float | None = None
    converged: bool | None = None

    def to_dict(self) -> dict:
        return {
            "summary": self.summary.to_dict(),
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EstimatorResult":
        return cls(
            summary=SpectralSummary.from_dict(d["summary"]),
            iterations=d.get("iterations"),
            residual=d.get("residual"),
            converged=d.get("converged"),
        )


@dataclass
class TrialResult:
    """Outcome of one (pair, replicate) trial.

    ``results`` maps estimator tags to their summaries; ``cross_norm`` is
    the spectral norm of sqrt(n/d) (T - S) when both estimators ran.  A
    failed trial carries the error string and an empty ``results``.
    ``wall_time`` and ``spectra`` are in-memory diagnostics: they are
    excluded from equality and from trials.json so that identical configs
    persist byte-identically.
    """

    pair_index: int
    replicate: int
    d: int
    n: int
    seed: int
    results: dict[str, EstimatorResult]
    cross_norm: float | None = None
    error: str | None = None
    wall_time: float = field(default=0.0, compare=False)
    spectra: dict[str, np.ndarray] | None = field(default=None, compare=False, repr=False)

    @property
    def failed(self) -> bool:
        return self.error is not None

    def trial_id(self) -> str:
        return f"pair{self.pair_index:03d}_rep{self.replicate:03d}"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "pair_index": int(self.pair_index),
            "replicate": int(self.replicate),
            "d": int(self.d),
            "n": int(self.n),
            "seed": int(self.seed),
            "results": {tag: r.to_dict() for tag, r in sorted(self.results.items())},
            "cross_norm": self.cross_norm,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialResult":
        return cls(
            pair_index=d["pair_index"],
            replicate=d["replicate"],
            d=d["d"],
            n=d["n"],
            seed=d["seed"],
            results={tag: EstimatorResult.from_dict(r) for tag, r in d["results"].items()},
            cross_norm=d.get("cross_norm"),
            error=d.get("error"),
        )

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "TrialResult":
        return cls.from_dict(json.loads(line))


def run_trial(cfg: ExperimentConfig, pair_index: int, replicate: int) -> TrialResult:
    """Run one seeded trial; estimator or sampling errors yield a failed record."""
    d, n = cfg.schedule[pair_index]
    seed = derive_seed(cfg.base_seed, pair_index, replicate)
    start = time.perf_counter()
    results: dict[str, EstimatorResult] = {}
    spectra: dict[str, np.ndarray] = {}
    cross: float | None = None
    error: str | None = None
    try:
        pop = cfg.population.instantiate(d, seed)
        X = sample_population(pop, n)
        mats: dict[str, np.ndarray] = {}
        for tag in cfg.estimators:
            if tag == "covariance":
                mats[tag] = sample_covariance(X)
                diag = (None, None, None)
            else:
                report = tyler(X, tol=cfg.tol, max_iter=cfg.max_iter)
                mats[tag] = report.estimate
                diag = (report.iterations, report.residual, report.converged)
            A = standardize(mats[tag], n) if cfg.standardized else mats[tag]
            lam = symmetric_eigenvalues(A)
            spectra[tag] = lam
            results[tag] = EstimatorResult(
                summary=summarize(lam, cfg.reference, cfg.max_moment),
                iterations=diag[0],
                residual=diag[1],
                converged=diag[2],
            )
        if "covariance" in mats and "tyler" in mats:
            cross = float(
                spectral_norm(np.sqrt(n / d) * (mats["tyler"] - mats["covariance"]))
            )
    except (ValueError, OverflowError, RuntimeError, np.linalg.LinAlgError) as exc:
        results = {}
        spectra = {}
        cross = None
        error = f"{type(exc).__name__}: {exc}"
    wall = time.perf_counter() - start
    return TrialResult(
        pair_index=pair_index,
        replicate=replicate,
        d=d,
        n=n,
        seed=seed,
        results=results,
        cross_norm=cross,
        error=error,
        wall_time=wall,
        spectra=spectra if cfg.save_spectra and not error else None,
    )


@dataclass
class PairSummary:
    """Aggregates over the successful replicates of one (d, n) pair."""

    pair_index: int
    d: int
    n: int
    trials: int
    failed: int
    estimators: dict[str, dict]
    cross_norm_median: float | None = None
    cross_norm_mean: float | None = None
    cross_norm_var: float | None = None

    def to_dict(self) -> dict:
        return {
            "pair_index": self.pair_index,
            "d": self.d,
            "n": self.n,
            "trials": self.trials,
            "failed": self.failed,
            "estimators": self.estimators,
            "cross_norm_median": self.cross_norm_median,
            "cross_norm_mean": self.cross_norm_mean,
            "cross_norm_var": self.cross_norm_var,
        }


@dataclass
class SweepSummary:
    """Per-pair aggregates plus the log-variance slope probe."""

    pairs: list[PairSummary]
    total_trials: int
    total_failed: int
    variance_slope: float | None = None

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "pairs": [p.to_dict() for p in self.pairs],
            "total_trials": self.total_trials,
            "total_failed": self.total_failed,
            "variance_slope": self.variance_slope,
        }


@dataclass
class SweepResult:
    config: ExperimentConfig
    trials: list[TrialResult]
    summary: SweepSummary


def _estimator_aggregates(records: list[EstimatorResult]) -> dict:
    ks = np.array([r.summary.ks for r in records])
    lmin = np.array([r.summary.lambda_min for r in records])
    lmax = np.array([r.summary.lambda_max for r in records])
    snorm = np.array([r.summary.spectral_norm for r in records])
    moments = np.array([r.summary.moments for r in records])
    return {
        "ks_median": float(np.median(ks)),
        "ks_mean": float(np.mean(ks)),
        "lambda_min_median": float(np.median(lmin)),
        "lambda_max_median": float(np.median(lmax)),
        "spectral_norm_median": float(np.median(snorm)),
        "spectral_norm_mean": float(np.mean(snorm)),
        "moments_median": [float(v) for v in np.median(moments, axis=0)],
    }


def summarize_sweep(cfg: ExperimentConfig, trials: list[TrialResult]) -> SweepSummary:
    """Aggregate per-pair medians/means; failed trials are counted, not pooled."""
    pairs: list[PairSummary] = []
    var_points: list[tuple[int, float]] = []
    for i, (d, n) in enumerate(cfg.schedule):
        mine = [t for t in trials if t.pair_index == i]
        ok = [t for t in mine if not t.failed]
        est: dict[str, dict] = {}
        for tag in cfg.estimators:
            records = [t.results[tag] for t in ok if tag in t.results]
            if records:
                est[tag] = _estimator_aggregates(records)
        ps = PairSummary(
            pair_index=i,
            d=d,
            n=n,
            trials=len(mine),
            failed=len(mine) - len(ok),
            estimators=est,
        )
        crosses = np.array([t.cross_norm for t in ok if t.cross_norm is not None])
        if crosses.size:
            ps.cross_norm_median = float(np.median(crosses))
            ps.cross_norm_mean = float(np.mean(crosses))
            ps.cross_norm_var = float(np.var(crosses, ddof=1)) if crosses.size > 1 else 0.0
            if crosses.size > 1 and ps.cross_norm_var > 0:
                var_points.append((d, ps.cross_norm_var))
        pairs.append(ps)

    slope = None
    if len({d for d, _ in var_points}) >= 2:
        logd = np.log([d for d, _ in var_points])
        logv = np.log([v for _, v in var_points])
        slope = float(np.polyfit(logd, logv, 1)[0])

    return SweepSummary(
        pairs=pairs,
        total_trials=len(trials),
        total_failed=sum(1 for t in trials if t.failed),
        variance_slope=slope,
    )


def run_sweep(cfg: ExperimentConfig, n_jobs: int = 1) -> SweepResult:
    """Run every (pair, replicate) trial; parallelism never changes the output.

    Each trial derives its own seed, so any execution order yields the same
    records; results are sorted by (pair, replicate) before aggregation.
    """
    tasks = [
        (i, r) for i in range(len(cfg.schedule)) for r in range(cfg.replicates)
    ]
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            trials = list(pool.map(lambda t: run_trial(cfg, *t), tasks))
    else:
        trials = [run_trial(cfg, i, r) for i, r in tasks]
    trials.sort(key=lambda t: (t.pair_index, t.replicate))
    return SweepResult(config=cfg, trials=trials, summary=summarize_sweep(cfg, trials))


def _atomic_write_text(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_results(result: SweepResult, out_dir) -> Path:
    """Persist a sweep: trials.json (JSONL), summary.json, optional spectra CSVs.

    Re-running with the same config overwrites atomically (temp file +
    rename).  Returns the output directory.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    lines = [t.to_json_line() for t in result.trials]
    _atomic_write_text(out / "trials.json", "".join(line + "\n" for line in lines))

    summary_doc = {
        "schema": SCHEMA_VERSION,
        "config": result.config.to_dict(),
        "summary": result.summary.to_dict(),
        "wall_time_total": float(sum(t.wall_time for t in result.trials)),
    }
    _atomic_write_text(out / "summary.json", json.dumps(summary_doc, indent=2, sort_keys=True) + "\n")

    spectra_trials = [t for t in result.trials if t.spectra]
    if spectra_trials:
        eig_dir = out / "eigenvalues"
        eig_dir.mkdir(exist_ok=True)
        for t in spectra_trials:
            for tag, lam in sorted(t.spectra.items()):
                path = eig_dir / f"{t.trial_id()}_{tag}.csv"
                _atomic_write_text(path, "".join(f"{v:.17g}\n" for v in lam))
    return out


def read_trials(path) -> list[TrialResult]:
    """Parse a trials.json (one JSON object per line) back into records."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(TrialResult.from_json_line(line))
    return out
