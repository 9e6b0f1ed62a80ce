"""Closed-form oracles, parameter sweeps and the decay-constant fit.

The sudden-switch limit admits a closed form for the squeeze magnitude, and
the final instantaneous-basis squeezing across ramp widths is approximated
by a hyperbolic-secant decay in epsilon.  This module evaluates both, runs
the simulation sweeps that they are compared against, and fits the two
decay constants of the secant ansatz to sweep data.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import least_squares

from .errors import DegenerateDataError, FitConditionWarning, ValidityWarning
from .evolution import SimulationConfig, post_transition_summary, propagate_converged
from .frequency import tanh_profile

_VALIDITY_RATIO = 10.0

# Default sweep lattice: ratios crossed with ramp widths, both directions,
# covering the sudden through the deep-adiabatic regime.
SWEEP_RATIOS = (1.5, 2.0, 3.0, 4.0, 5.0)
SWEEP_EPSILONS = (0.0, 0.1, 0.2, 0.4, 0.8, 1.2, 1.6, 2.0)


def jump_sp_closed_form(omega0: float, omegaf: float, t):
    """Squeeze magnitude after a sudden frequency switch, t measured from it.

    Equals arcosh(sqrt(1 + A^2 sin^2(omegaf t))) with
    A = (omegaf^2 - omega0^2)/(2 omega0 omegaf); evaluated through arcsinh,
    which is the same function written stably near the zeros.
    """
    if omega0 <= 0.0 or omegaf <= 0.0:
        raise ValueError(f"frequencies must be positive, got {omega0}, {omegaf}")
    amp = (omegaf**2 - omega0**2) / (2.0 * omega0 * omegaf)
    out = np.arcsinh(np.abs(amp * np.sin(omegaf * np.asarray(t, dtype=float))))
    return float(out) if np.ndim(t) == 0 else out


def fitted_sp(omega0: float, omegaf: float, epsilon, c1: float = 2.0, c2: float = 1.0):
    """Secant-decay approximation of the final instantaneous-basis squeezing.

    R = |rho_f| sech(c1 (|rho_f| + c2) omega_min epsilon) with
    omega_min = min(omega0, omegaf).  Calibrated for frequency ratios up to
    10; a ValidityWarning is emitted beyond that.
    """
    if omega0 <= 0.0 or omegaf <= 0.0:
        raise ValueError(f"frequencies must be positive, got {omega0}, {omegaf}")
    eps = np.asarray(epsilon, dtype=float)
    if np.any(eps < 0.0):
        raise ValueError("epsilon must be >= 0")
    ratio = omegaf / omega0
    if ratio > _VALIDITY_RATIO or ratio < 1.0 / _VALIDITY_RATIO:
        warnings.warn(
            f"frequency ratio {ratio:.6g} outside the calibrated range "
            f"[{1.0 / _VALIDITY_RATIO}, {_VALIDITY_RATIO}]",
            ValidityWarning,
            stacklevel=2,
        )
    rf = abs(0.5 * np.log(ratio))
    out = rf / np.cosh(c1 * (rf + c2) * min(omega0, omegaf) * eps)
    return float(out) if np.ndim(epsilon) == 0 else out


def adiabaticity_measure(omega0: float, omegaf: float, epsilon: float) -> float:
    """Dimensionless speed of the ramp; values well below 1 mean adiabatic.

    Evaluates the midpoint slope over the natural frequency scales,
    1 / (2 epsilon omega_min (|rho_f| + 1)); epsilon = 0 maps to infinity.
    """
    if omega0 <= 0.0 or omegaf <= 0.0:
        raise ValueError(f"frequencies must be positive, got {omega0}, {omegaf}")
    if omegaf == omega0:
        raise ValueError("degenerate transition: omegaf equals omega0")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if epsilon == 0.0:
        return float("inf")
    rf = abs(0.5 * np.log(omegaf / omega0))
    return 1.0 / (2.0 * epsilon * min(omega0, omegaf) * (rf + 1.0))


def is_adiabatic(
    omega0: float, omegaf: float, epsilon: float, threshold: float = 0.1
) -> bool:
    """Whether the ramp is slow at the given cutoff on the adiabaticity measure."""
    if threshold <= 0.0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    return adiabaticity_measure(omega0, omegaf, epsilon) < threshold


class SweepPoint(NamedTuple):
    """One sweep cell: ramp width, final squeezing, error text if it failed."""

    epsilon: float
    R_final: float
    error: str | None = None


def _sweep_cell(args) -> SweepPoint:
    omega0, omegaf, eps, cfg = args
    try:
        p = tanh_profile(omega0, omegaf, epsilon=eps)
        traj = propagate_converged(p, cfg)
        summary = post_transition_summary(traj, p)
        return SweepPoint(eps, summary.R_final)
    except Exception as exc:  # surfaced per cell, the sweep keeps going
        return SweepPoint(eps, float("nan"), f"{type(exc).__name__}: {exc}")


def _run_cells(cells, jobs):
    if jobs is not None and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_cell, cells))
    return [_sweep_cell(c) for c in cells]


def sweep_final_sp(
    omega0: float,
    omegaf: float,
    epsilons,
    cfg: SimulationConfig | None = None,
    jobs: int | None = None,
) -> list[SweepPoint]:
    """Final squeezing across ramp widths for one frequency pair.

    Each cell owns a converged propagation; epsilon = 0 runs the jump
    profile.  Failures are reported in the returned points rather than
    aborting the sweep.  jobs > 1 distributes cells over processes; the
    result order is independent of it.
    """
    cfg = cfg or SimulationConfig()
    cells = [(omega0, omegaf, float(e), cfg) for e in epsilons]
    return _run_cells(cells, jobs)


def reference_sweep_data(
    cfg: SimulationConfig | None = None,
    jobs: int | None = None,
    source: str = "simulation",
    ratios=SWEEP_RATIOS,
    epsilons=SWEEP_EPSILONS,
) -> list[tuple[float, float, float, float]]:
    """Sweep of the default lattice as (omega0, omegaf, epsilon, R) rows.

    Covers every ratio in both directions with omega0 = 1.  source selects
    simulated final squeezing or direct evaluation of the secant formula.
    """
    if source not in ("simulation", "formula"):
        raise ValueError(f"source must be 'simulation' or 'formula', got {source!r}")
    pairs = []
    for k in ratios:
        for omegaf in (float(k), 1.0 / float(k)):
            pairs.append(omegaf)
    data = []
    if source == "formula":
        for omegaf in pairs:
            for eps in epsilons:
                data.append((1.0, omegaf, float(eps), fitted_sp(1.0, omegaf, eps)))
        return data
    cfg = cfg or SimulationConfig()
    for omegaf in pairs:
        for point in sweep_final_sp(1.0, omegaf, epsilons, cfg, jobs):
            if point.error is not None:
                warnings.warn(
                    f"sweep cell (omegaf={omegaf}, eps={point.epsilon}) failed: "
                    f"{point.error}",
                    UserWarning,
                    stacklevel=2,
                )
                continue
            data.append((1.0, omegaf, point.epsilon, point.R_final))
    return data


@dataclass(frozen=True)
class FitResult:
    """Fitted decay constants of the secant ansatz."""

    c1: float
    c2: float
    residual_rms: float
    n_points: int
    grid: str


def fit_ansatz(sweep_data) -> FitResult:
    """Least-squares fit of the secant decay constants (c1, c2).

    sweep_data rows are (omega0, omegaf, epsilon, R_final).  Residuals are
    taken in R and minimised by Levenberg-Marquardt from the starting point
    (1, 0.5).  The model is even in c1, so its sign is normalised to +.
    """
    pts = [(float(o0), float(of), float(e), float(r)) for o0, of, e, r in sweep_data]
    if len(pts) < 2:
        raise DegenerateDataError(f"need at least 2 data points, got {len(pts)}")
    if all(e == 0.0 for _, _, e, _ in pts):
        raise DegenerateDataError(
            "all data points have epsilon = 0; the decay constants are unconstrained"
        )
    rho_mags = {round(abs(0.5 * np.log(of / o0)), 12) for o0, of, _, _ in pts}
    if len(rho_mags) < 2:
        warnings.warn(
            "single frequency ratio in fit data: c1 and c2 are only jointly "
            "constrained and c2 is poorly determined",
            FitConditionWarning,
            stacklevel=2,
        )

    o0s = np.array([p[0] for p in pts])
    ofs = np.array([p[1] for p in pts])
    eps = np.array([p[2] for p in pts])
    robs = np.array([p[3] for p in pts])
    rfs = np.abs(0.5 * np.log(ofs / o0s))
    wmin = np.minimum(o0s, ofs)

    def residuals(c):
        # cosh overflow during step exploration is benign: the model value
        # underflows to 0 and the optimizer backs off
        with np.errstate(over="ignore"):
            return rfs / np.cosh(c[0] * (rfs + c[1]) * wmin * eps) - robs

    res = least_squares(residuals, x0=(1.0, 0.5), method="lm")
    c1, c2 = float(abs(res.x[0])), float(res.x[1])
    if res.jac is not None and np.linalg.cond(res.jac) > 1e8:
        warnings.warn(
            "fit Jacobian nearly rank deficient; c1 and c2 trade off freely",
            FitConditionWarning,
            stacklevel=2,
        )
    rms = float(np.sqrt(np.mean(res.fun**2)))
    grid = (
        f"{len(pts)} points, ratio in [{float(np.min(ofs / o0s)):.6g}, "
        f"{float(np.max(ofs / o0s)):.6g}], eps in [{float(np.min(eps)):.6g}, "
        f"{float(np.max(eps)):.6g}]"
    )
    return FitResult(c1, c2, rms, len(pts), grid)


@dataclass(frozen=True)
class ContourGrid:
    """Final squeezing over a (ratio, omega0*epsilon) lattice with omega0 = 1."""

    ratios: np.ndarray
    omega0_eps: np.ndarray
    R: np.ndarray
    mode: str
    source: str


def contour_grid(
    ratio_range: tuple[float, float],
    epsilon_range: tuple[float, float],
    n_ratio: int,
    n_eps: int,
    mode: str = "above-unity",
    source: str = "formula",
    cfg: SimulationConfig | None = None,
    jobs: int | None = None,
) -> ContourGrid:
    """Tensor grid of final squeezing versus ratio and ramp width.

    mode fixes which side of unity the ratio axis lives on; values beyond
    the calibrated ratio range trigger per-cell warnings but are still
    evaluated.  source 'formula' evaluates the secant approximation,
    'simulation' runs a converged propagation per cell.
    """
    if mode not in ("above-unity", "below-unity"):
        raise ValueError(f"mode must be 'above-unity' or 'below-unity', got {mode!r}")
    if source not in ("formula", "simulation"):
        raise ValueError(f"source must be 'formula' or 'simulation', got {source!r}")
    lo, hi = float(ratio_range[0]), float(ratio_range[1])
    elo, ehi = float(epsilon_range[0]), float(epsilon_range[1])
    if not 0.0 < lo < hi:
        raise ValueError(f"ratio range must be positive and increasing, got {ratio_range}")
    if not 0.0 <= elo < ehi:
        raise ValueError(f"epsilon range must be >= 0 and increasing, got {epsilon_range}")
    if n_ratio < 2 or n_eps < 2:
        raise ValueError("need at least 2 points per axis")
    if mode == "above-unity" and lo <= 1.0:
        raise ValueError(f"above-unity mode needs ratios > 1, got {ratio_range}")
    if mode == "below-unity" and hi >= 1.0:
        raise ValueError(f"below-unity mode needs ratios < 1, got {ratio_range}")
    ratios = np.linspace(lo, hi, n_ratio)
    xs = np.linspace(elo, ehi, n_eps)
    big_r = np.empty((n_ratio, n_eps))
    if source == "formula":
        for i, k in enumerate(ratios):
            big_r[i] = fitted_sp(1.0, float(k), xs)
    else:
        cfg = cfg or SimulationConfig()
        cells = [(1.0, float(k), float(x), cfg) for k in ratios for x in xs]
        points = _run_cells(cells, jobs)
        for idx, point in enumerate(points):
            if point.error is not None:
                warnings.warn(
                    f"contour cell {cells[idx][1], cells[idx][2]} failed: {point.error}",
                    UserWarning,
                    stacklevel=2,
                )
            big_r[idx // n_eps, idx % n_eps] = point.R_final
    return ContourGrid(ratios, xs, big_r, mode, source)
