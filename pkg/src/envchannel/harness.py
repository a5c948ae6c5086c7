"""Monte Carlo experiments over random interactions, and the verification suite."""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import channel, measures, teleport
from .qmat import DERIVED_TOL, partial_trace
from .sampling import SeedSpec, haar_unitary

__all__ = [
    "MODES",
    "ExperimentConfig",
    "SampleRecord",
    "PQRecord",
    "TeleportRecord",
    "PartialRecord",
    "CheckResult",
    "cue_sample",
    "run_cue",
    "run_pq_scan",
    "run_teleport",
    "run_partial",
    "run_verify",
    "within_bin_spread",
    "within_pair_bin_spread",
    "inset_regression",
    "write_records",
]

MODES = ("cue", "pq-scan", "teleport", "partial", "verify")
DEFAULT_SAMPLES = {"cue": 10_000, "teleport": 200, "partial": 5_000, "verify": 1_000, "pq-scan": 0}
PQ_GRID = tuple(round(0.1 * k, 10) for k in range(11))
BIN_WIDTH = 1e-3

# purpose tags for SeedSpec streams
_UNITARY = 0


@dataclass
class ExperimentConfig:
    mode: str = "cue"
    sample_count: int | None = None
    master_seed: int = 0
    initial_theta: float = math.pi / 8
    output_path: str | None = None
    output_format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sample_count is None:
            self.sample_count = DEFAULT_SAMPLES[self.mode]
        if self.mode != "pq-scan" and self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        if not 0.0 < self.initial_theta <= math.pi / 4:
            raise ValueError("theta must lie in (0, pi/4]")
        if self.output_format not in ("csv", "jsonl"):
            raise ValueError("output_format must be 'csv' or 'jsonl'")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class SampleRecord:
    sample_index: int
    seed: int
    C_AB: float
    C_EB: float
    C_AE: float
    F_AB: float
    tau_ABE: float
    f_optimal: float
    eq15_residual: float
    eq9_residual: float
    convexity_margin: float


@dataclass(frozen=True)
class PQRecord:
    p: float
    q: float
    C_AB: float
    F_AB: float
    C_EB: float
    C_AB_closed: float
    F_AB_closed: float
    C_EB_closed: float
    closed_form_residual: float
    eq15_residual: float


@dataclass(frozen=True)
class TeleportRecord:
    sample_index: int
    seed: int
    C_AB: float
    C_EB: float
    F_AB: float
    f_simulated: float
    f_pauli: float
    f_formula: float
    f_cc_max: float
    f_qc_max: float
    f_decomposition: float
    convexity_margin: float


@dataclass(frozen=True)
class PartialRecord:
    sample_index: int
    seed: int
    theta: float
    C_AB: float
    C_EB: float
    F_AB: float
    eq15_residual: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""


# ---------------------------------------------------------------- samples


def _unitary(seed: int, index: int) -> np.ndarray:
    return haar_unitary(4, SeedSpec(seed, index, _UNITARY))


def _convexity_margin(psi, c_eb: float) -> float:
    margin = np.inf
    for s in teleport.AXES:
        outcomes = teleport.sts_run(psi, s)
        avg_c = sum(o.probability * o.c_eb_alpha for o in outcomes if o.defined)
        margin = min(margin, avg_c - c_eb)
    return float(margin)


def cue_sample(seed: int, index: int) -> SampleRecord:
    """One Haar-random interaction on Alice's qubit, fully measured."""
    psi = channel.evolve(_unitary(seed, index))
    s = measures.summarize(psi, check_monogamy=False)
    return SampleRecord(
        sample_index=index,
        seed=seed,
        C_AB=s.C_AB,
        C_EB=s.C_EB,
        C_AE=s.C_AE,
        F_AB=s.F_AB,
        tau_ABE=s.tau_ABE,
        f_optimal=(2.0 * s.F_AB + 1.0) / 3.0,
        eq15_residual=abs(s.F_AB - measures.main_relation(s.C_AB, s.C_EB)),
        eq9_residual=abs(s.C_AB**2 + s.C_EB**2 + s.tau_ABE - 1.0),
        convexity_margin=_convexity_margin(psi, s.C_EB),
    )


def teleport_sample(seed: int, index: int) -> TeleportRecord:
    psi = channel.evolve(_unitary(seed, index))
    s = measures.summarize(psi, check_monogamy=False)
    rho_ab = measures.reduced_pairs(psi)["AB"]
    rep = teleport.fidelity_report(psi, s.C_AB, s.C_EB, rho_ab)
    return TeleportRecord(
        sample_index=index,
        seed=seed,
        C_AB=s.C_AB,
        C_EB=s.C_EB,
        F_AB=s.F_AB,
        f_simulated=rep.f_simulated,
        f_pauli=teleport.average_fidelity(psi),
        f_formula=rep.f_formula,
        f_cc_max=rep.f_cc_max,
        f_qc_max=rep.f_qc_max,
        f_decomposition=rep.f_decomposition,
        convexity_margin=rep.convexity_margin,
    )


def partial_sample(seed: int, index: int, theta: float) -> PartialRecord:
    psi = channel.evolve(
        _unitary(seed, index), initial_channel=channel.partially_entangled(theta), strict=False
    )
    s = measures.summarize(psi, check_monogamy=False)
    return PartialRecord(
        sample_index=index,
        seed=seed,
        theta=theta,
        C_AB=s.C_AB,
        C_EB=s.C_EB,
        F_AB=s.F_AB,
        eq15_residual=abs(s.F_AB - measures.main_relation(s.C_AB, s.C_EB)),
    )


def _star(args):
    fn, a = args[0], args[1:]
    return fn(*a)


def _map(fn: Callable, arg_tuples: list[tuple], workers: int) -> list:
    """Order-preserving map; results are identical for any worker count."""
    if workers <= 1:
        return [fn(*a) for a in arg_tuples]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_star, [(fn, *a) for a in arg_tuples], chunksize=64))


# ---------------------------------------------------------------- statistics


def inset_regression(x, y) -> tuple[float, float]:
    """Least-squares ``y = slope * x + intercept``."""
    slope, intercept = np.polyfit(np.asarray(x, float), np.asarray(y, float), 1)
    return float(slope), float(intercept)


def within_bin_spread(c_ab, f_ab, width: float = BIN_WIDTH) -> tuple[float, float, int]:
    """Largest ``max(F) - min(F)`` among samples sharing a ``C_AB`` bin.

    Returns ``(spread, bin_center, bin_count)``.
    """
    c = np.asarray(c_ab, float)
    f = np.asarray(f_ab, float)
    bins = np.floor(c / width).astype(np.int64)
    best = (0.0, float("nan"), 0)
    for b in np.unique(bins):
        sel = f[bins == b]
        if sel.size < 2:
            continue
        spread = float(sel.max() - sel.min())
        if spread > best[0]:
            best = (spread, (b + 0.5) * width, int(sel.size))
    return best


def within_pair_bin_spread(c_ab, c_eb, f_ab, width: float = BIN_WIDTH) -> float:
    """Largest ``F_AB`` spread among samples sharing a ``(C_AB, C_EB)`` cell.

    Unlike :func:`within_bin_spread`, this stays near zero whenever ``F_AB``
    is a function of the two concurrences.
    """
    c = np.floor(np.asarray(c_ab, float) / width).astype(np.int64)
    e = np.floor(np.asarray(c_eb, float) / width).astype(np.int64)
    f = np.asarray(f_ab, float)
    cells = c * (int(1 / width) + 2) + e
    order = np.argsort(cells, kind="stable")
    cells, f = cells[order], f[order]
    starts = np.flatnonzero(np.r_[True, np.diff(cells) != 0])
    hi = np.maximum.reduceat(f, starts)
    lo = np.minimum.reduceat(f, starts)
    return float(np.max(hi - lo))


# ---------------------------------------------------------------- experiments


def run_cue(config: ExperimentConfig) -> tuple[list[SampleRecord], dict]:
    """Haar-random interactions with the environment on Alice's side."""
    n = config.sample_count
    recs = _map(cue_sample, [(config.master_seed, i) for i in range(n)], config.workers)
    c = np.array([r.C_AB for r in recs])
    f = np.array([r.F_AB for r in recs])
    x = np.array([measures.main_relation(r.C_AB, r.C_EB) for r in recs])
    slope, intercept = inset_regression(x, f)
    gap = (1.0 + c) / 2.0 - f
    summary = {
        "samples": n,
        "max_eq15_residual": float(max(r.eq15_residual for r in recs)),
        "max_eq9_residual": float(max(r.eq9_residual for r in recs)),
        "max_above_pure_line": float(-gap.min()),
        "max_below_pure_line": float(gap.max()),
        "inset_slope": slope,
        "inset_intercept": intercept,
        "min_F_AB": float(f.min()),
        "min_tau_ABE": float(min(r.tau_ABE for r in recs)),
        "max_tau_ABE": float(max(r.tau_ABE for r in recs)),
        "min_convexity_margin": float(min(r.convexity_margin for r in recs)),
        "max_within_pair_bin_spread": within_pair_bin_spread(c, [r.C_EB for r in recs], f),
    }
    return recs, summary


def run_pq_scan(config: ExperimentConfig | None = None) -> tuple[list[PQRecord], dict]:
    """Compare simulation with the closed forms on the 11x11 ``(p, q)`` grid."""
    recs = []
    for p in PQ_GRID:
        for q in PQ_GRID:
            psi = channel.evolve(channel.pq_unitary(p, q))
            s = measures.summarize(psi, check_monogamy=False)
            closed = channel.pq_closed_forms(p, q)
            sim = (s.C_AB, s.F_AB, s.C_EB)
            recs.append(
                PQRecord(
                    p=p,
                    q=q,
                    C_AB=s.C_AB,
                    F_AB=s.F_AB,
                    C_EB=s.C_EB,
                    C_AB_closed=closed[0],
                    F_AB_closed=closed[1],
                    C_EB_closed=closed[2],
                    closed_form_residual=float(max(abs(a - b) for a, b in zip(sim, closed))),
                    eq15_residual=abs(s.F_AB - measures.main_relation(s.C_AB, s.C_EB)),
                )
            )
    summary = {
        "cells": len(recs),
        "max_closed_form_residual": max(r.closed_form_residual for r in recs),
        "max_eq15_residual": max(r.eq15_residual for r in recs),
    }
    return recs, summary


def run_teleport(config: ExperimentConfig) -> tuple[list[TeleportRecord], dict]:
    n = config.sample_count
    recs = _map(teleport_sample, [(config.master_seed, i) for i in range(n)], config.workers)
    summary = {
        "samples": n,
        "max_optimality_residual": max(abs(r.f_simulated - (2 * r.F_AB + 1) / 3) for r in recs),
        "max_formula_residual": max(abs(r.f_simulated - r.f_formula) for r in recs),
        "max_decomposition_residual": max(abs(r.f_formula - r.f_decomposition) for r in recs),
        "max_pauli_excess": max(r.f_pauli - r.f_simulated for r in recs),
        "min_convexity_margin": min(r.convexity_margin for r in recs),
    }
    return recs, summary


def run_partial(config: ExperimentConfig) -> tuple[list[PartialRecord], dict]:
    """Random interactions on a partially entangled channel.

    No single function of ``(C_AB, C_EB)`` fixes ``F_AB`` here. The
    ``C_AB``-only spread is large for Bell pairs too; the pair-cell spread is
    the statistic that separates the two cases.
    """
    theta = config.initial_theta
    if theta >= math.pi / 4 - 1e-12:
        raise ValueError("theta = pi/4 is the maximally entangled case; use the cue mode")
    n = config.sample_count
    recs = _map(partial_sample, [(config.master_seed, i, theta) for i in range(n)], config.workers)
    spread, center, count = within_bin_spread([r.C_AB for r in recs], [r.F_AB for r in recs])
    summary = {
        "samples": n,
        "theta": theta,
        "bin_width": BIN_WIDTH,
        "max_within_bin_spread": spread,
        "spread_bin_center": center,
        "spread_bin_count": count,
        "max_within_pair_bin_spread": within_pair_bin_spread(
            [r.C_AB for r in recs], [r.C_EB for r in recs], [r.F_AB for r in recs]
        ),
        "max_eq15_residual": max(r.eq15_residual for r in recs),
        "max_C_AB": max(r.C_AB for r in recs),
    }
    return recs, summary


# ---------------------------------------------------------------- verification


def _check(name: str, residual: float, tol: float, detail: str = "") -> CheckResult:
    residual = float(residual)
    return CheckResult(name, bool(residual <= tol), residual, tol, detail)


def run_verify(config: ExperimentConfig) -> list[CheckResult]:
    """Run every invariant of the model over ``sample_count`` random interactions."""
    n = config.sample_count
    seed = config.master_seed
    recs = _map(cue_sample, [(seed, i) for i in range(n)], config.workers)
    n_tel = min(200, n)
    tel = _map(teleport_sample, [(seed, i) for i in range(n_tel)], config.workers)
    checks: list[CheckResult] = []

    checks.append(_check("main_relation", max(r.eq15_residual for r in recs), DERIVED_TOL))
    above = max(r.F_AB - (1 + r.C_AB) / 2 for r in recs)
    checks.append(_check("pure_line_envelope", max(above, 0.0), 1e-12))
    x = [measures.main_relation(r.C_AB, r.C_EB) for r in recs]
    slope, intercept = inset_regression(x, [r.F_AB for r in recs])
    checks.append(
        _check("inset_linearity", max(abs(slope - 1), abs(intercept)), DERIVED_TOL,
               f"slope={slope!r} intercept={intercept!r}")
    )
    tau_out = max(max(-r.tau_ABE, r.tau_ABE - 1.0, 0.0) for r in recs)
    checks.append(_check("monogamy", max(max(r.eq9_residual for r in recs), tau_out), DERIVED_TOL))
    checks.append(
        _check("symmetric_form",
               max(abs(measures.symmetric_singlet_fraction(r.C_AB, r.tau_ABE)
                       - measures.main_relation(r.C_AB, r.C_EB)) for r in recs),
               DERIVED_TOL)
    )
    checks.append(
        _check("sts_optimality", max(abs(t.f_simulated - (2 * t.F_AB + 1) / 3) for t in tel), DERIVED_TOL)
    )
    checks.append(
        _check("pauli_not_better", max(max(t.f_pauli - t.f_simulated for t in tel), 0.0), DERIVED_TOL)
    )
    checks.append(
        _check("fidelity_formula", max(abs(t.f_simulated - t.f_formula) for t in tel), DERIVED_TOL)
    )
    grid = np.linspace(0.0, 1.0, 11)
    eq2 = max(abs(teleport.fidelity_formula(c, 0.0) - (2 / 3 + c / 3)) for c in grid)
    checks.append(
        _check("fidelity_decomposition",
               max(max(abs(t.f_formula - t.f_decomposition) for t in tel), eq2), DERIVED_TOL)
    )
    checks.append(
        _check("convexity", max(max(-r.convexity_margin for r in recs), 0.0), DERIVED_TOL)
    )

    order = 0.0
    b_ineq = 0.0
    sym = 0.0
    swap = 0.0
    kraus = 0.0
    for i in range(n):
        u = _unitary(seed, i)
        a = recs[i]
        psi_b = channel.evolve(u, coupled="B")
        b = measures.summarize(psi_b, check_monogamy=False)
        order = max(order, b.C_EB - b.C_AE)
        b_ineq = max(b_ineq, teleport.config_b_fidelity(b.C_AB, b.C_AE)
                     - teleport.fidelity_formula(b.C_AB, b.C_EB))
        sym = max(sym, abs(a.F_AB - b.F_AB))
        lam = channel.kraus_from_unitary(u, "Lambda")
        gam = channel.kraus_from_unitary(u, "Gamma")
        m, nn = lam.operators, gam.operators
        for k in range(2):
            for ii in range(2):
                for j in range(2):
                    swap = max(swap, abs(nn[k][ii, j] - m[ii][k, j]))
        if i < 200:
            psi_a = channel.evolve(u)
            rho_ab = partial_trace(np.outer(psi_a, psi_a.conj()), keep=(0, 1))
            rho_eb = measures.reduced_pairs(psi_a)["EB"]
            kraus = max(
                kraus,
                float(np.max(np.abs(channel.choi_state(lam) - rho_ab))),
                float(np.max(np.abs(channel.choi_state(gam) - rho_eb))),
            )
    checks.append(_check("config_b_entanglement_order", max(order, 0.0), DERIVED_TOL,
                         "C_AE >= C_EB with the environment on Bob's side"))
    checks.append(_check("config_b_fidelity_inequality", max(b_ineq, 0.0), DERIVED_TOL))
    checks.append(_check("configuration_symmetry", sym, DERIVED_TOL))
    checks.append(_check("kraus_index_swap", swap, 1e-14))
    checks.append(_check("stinespring_reductions", kraus, 1e-10))

    pq, _ = run_pq_scan()
    checks.append(_check("pq_closed_forms", max(r.closed_form_residual for r in pq), 1e-10))
    checks.append(_check("pq_main_relation", max(r.eq15_residual for r in pq), 1e-10))
    return checks


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_records(records: Iterable, path: str | Path | None, fmt: str = "csv", stream=None) -> None:
    """Write dataclass records as CSV (header + one row each) or JSON lines.

    Floats carry 17 significant digits; lines end with a single ``\\n``.
    """
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    cols = [f.name for f in fields(records[0])]
    if fmt == "csv":
        lines = [",".join(cols)]
        for r in records:
            lines.append(",".join(_fmt(getattr(r, c)) for c in cols))
    elif fmt == "jsonl":
        lines = [json.dumps({c: _jsonable(getattr(r, c)) for c in cols}) for r in records]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    text = "\n".join(lines) + "\n"
    if path is None:
        stream.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v
