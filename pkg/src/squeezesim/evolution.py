"""Propagation of the vacuum through a frequency ramp.

The evolution operator over [t_start, t_end] is approximated by a product of
piecewise-constant steps of width tau = (t_end - t_start)/n.  Each step is
exact for a constant frequency, so the only approximation is sampling
omega(t) once per step (right endpoint by default).  The whole product is
tracked through a single complex variable chi obeying a Moebius recurrence;
the squeeze parameters of the state follow from chi at the recorded steps.

Convergence is assessed by doubling n until the recorded squeeze magnitudes
move by less than a sup-norm tolerance between consecutive refinements.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .algebra import _bch_arrays, _clamped_magnitude, _wrap_angle
from .errors import StepSingularityError, WindowError
from .frequency import FrequencyProfile, eval_omega, transition_interval

_CHUNK = 1 << 18

# Test hook: flipping the sign of the phase coefficient breaks the propagator
# in a way every downstream oracle check must catch.
_flip_b_sign = False


@dataclass(frozen=True)
class SimulationConfig:
    """Stepping and convergence controls for one propagation.

    t_end = None resolves to t0 + 3*epsilon + three post-transition periods
    of the final frequency.  n_slices is the seed step count; the convergence
    ladder doubles it until the recorded squeeze magnitudes are stable to
    convergence_tol in sup norm or n_max is hit.  Records are kept every
    record_stride steps.  midpoint switches the frequency sampling from the
    right endpoint to the middle of each step.
    """

    t_start: float = 0.0
    t_end: float | None = None
    n_slices: int = 4096
    record_stride: int = 1
    convergence_tol: float = 1e-6
    n_max: int = 1 << 24
    midpoint: bool = False

    def __post_init__(self):
        if self.n_slices < 1:
            raise ValueError(f"n_slices must be >= 1, got {self.n_slices}")
        if self.record_stride < 1:
            raise ValueError(f"record_stride must be >= 1, got {self.record_stride}")
        if self.n_slices % self.record_stride:
            raise ValueError(
                f"n_slices ({self.n_slices}) must be a multiple of "
                f"record_stride ({self.record_stride})"
            )
        if not np.isfinite(self.t_start):
            raise ValueError(f"t_start must be finite, got {self.t_start}")
        if self.t_end is not None and (
            not np.isfinite(self.t_end) or self.t_end <= self.t_start
        ):
            raise ValueError(
                f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]"
            )
        if self.convergence_tol <= 0.0:
            raise ValueError(f"convergence_tol must be > 0, got {self.convergence_tol}")
        if self.n_max < self.n_slices:
            raise ValueError(
                f"n_max ({self.n_max}) must be >= n_slices ({self.n_slices})"
            )


@dataclass
class Trajectory:
    """Recorded evolution of the squeeze parameters along one propagation.

    Arrays are aligned per record: time, driving frequency, basis exponent
    rho, propagator variable chi, initial-basis squeeze (r, phi),
    instantaneous-basis squeeze (R, Phi) and the central composition
    coefficient (beta_mod, upsilon).
    """

    t: np.ndarray
    omega: np.ndarray
    rho: np.ndarray
    chi: np.ndarray
    r: np.ndarray
    phi: np.ndarray
    R: np.ndarray
    Phi: np.ndarray
    beta_mod: np.ndarray
    upsilon: np.ndarray
    profile: FrequencyProfile
    config: SimulationConfig
    n_slices: int
    converged: bool | None = None
    achieved_delta: float | None = None
    delta_history: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.t)

    def unitarity_defect(self) -> float:
        """Largest |alpha|^2 + |beta| - 1 deviation across the records."""
        return float(np.max(np.abs(np.tanh(self.R) ** 2 + self.beta_mod - 1.0)))


@dataclass(frozen=True)
class PostTransitionSummary:
    """Oscillation statistics of a trajectory after the frequency switch."""

    window: tuple[float, float]
    n_records: int
    r_min: float
    r_max: float
    r_midpoint: float
    amplitude: float
    period: float
    n_maxima: int
    R_final: float
    R_std: float


def default_t_end(p: FrequencyProfile) -> float:
    """Transition end plus three periods of the final frequency."""
    if p.kind == "sampled":
        return p.samples[-1][0]
    return p.t0 + 3.0 * p.epsilon + 3.0 * np.pi / p.omegaf


def step_coeffs(omega_j: float, omega0: float, tau: float) -> tuple[complex, complex]:
    """Moebius coefficients (a_j, b_j) of one constant-frequency step.

    The propagator variable advances through
    chi -> a_j + b_j * chi / (1 - a_j * chi), with coefficients satisfying
    |a_j|^2 + |b_j| = 1.
    """
    if omega_j <= 0.0 or omega0 <= 0.0:
        raise ValueError(f"frequencies must be positive, got {omega_j}, {omega0}")
    if tau <= 0.0:
        raise ValueError(f"step width must be positive, got {tau}")
    a, b = _step_arrays(np.asarray(omega_j, dtype=float), omega0, tau)
    return complex(a), complex(b)


def _step_arrays(omega, omega0: float, tau: float):
    """Vectorized step coefficients for an array of sampled frequencies."""
    ph = omega * tau
    s = np.sin(ph)
    c = np.cos(ph)
    w = omega / omega0
    # sinh and cosh of 2*rho_j written through the frequency ratio
    sh2 = 0.5 * (w - 1.0 / w)
    ch2 = 0.5 * (w + 1.0 / w)
    den = c + 1j * (ch2 * s)
    a = -1j * sh2 * s / den
    b = 1.0 / (den * den)
    return a, b


def _resolve_t_end(p: FrequencyProfile, cfg: SimulationConfig) -> float:
    t_end = default_t_end(p) if cfg.t_end is None else cfg.t_end
    if t_end <= cfg.t_start:
        raise ValueError(f"t_end {t_end} must exceed t_start {cfg.t_start}")
    return float(t_end)


def _propagate_raw(p: FrequencyProfile, cfg: SimulationConfig, n: int, t_end: float):
    """Run the recurrence with n steps; return the recorded chi values."""
    t_start = cfg.t_start
    tau = (t_end - t_start) / n
    stride = cfg.record_stride
    n_rec = n // stride
    chi_rec = np.empty(n_rec + 1, dtype=complex)
    chi_rec[0] = 0j
    chi = 0j
    chunk = stride * max(1, _CHUNK // stride)
    j = 0
    k = 1
    while j < n:
        m = min(chunk, n - j)
        idx = np.arange(j + 1, j + m + 1, dtype=float)
        ts = t_start + (idx - 0.5) * tau if cfg.midpoint else t_start + idx * tau
        om = eval_omega(p, ts)
        a_arr, b_arr = _step_arrays(om, p.omega0, tau)
        if _flip_b_sign:
            b_arr = -b_arr
        al = a_arr.tolist()
        bl = b_arr.tolist()
        for b0 in range(0, m, stride):
            for i in range(b0, b0 + stride):
                aj = al[i]
                chi = aj + bl[i] * chi / (1.0 - aj * chi)
            if not cmath.isfinite(chi):
                raise StepSingularityError(j + b0 + stride)
            chi_rec[k] = chi
            k += 1
        j += m
    steps = np.arange(n_rec + 1, dtype=float) * stride
    t_rec = t_start + steps * tau
    return t_rec, chi_rec


def _finalize(
    p: FrequencyProfile,
    cfg: SimulationConfig,
    n: int,
    t_rec: np.ndarray,
    chi_rec: np.ndarray,
    converged: bool | None,
    achieved_delta: float | None,
    delta_history: list[float],
) -> Trajectory:
    """Convert recorded chi values into the full squeeze trajectory."""
    omega_rec = np.asarray(eval_omega(p, t_rec), dtype=float)
    rho_rec = 0.5 * np.log(omega_rec / p.omega0)
    mag = _clamped_magnitude(np.abs(chi_rec), "squeeze")
    r = np.arctanh(mag)
    phi = _wrap_angle(np.angle(chi_rec) + np.pi)
    alpha, beta, _ = _bch_arrays(r, phi, rho_rec)
    amag = _clamped_magnitude(np.abs(alpha), "instantaneous squeeze")
    big_r = np.arctanh(amag)
    big_phi = _wrap_angle(np.angle(alpha) + np.pi)
    return Trajectory(
        t=t_rec,
        omega=omega_rec,
        rho=rho_rec,
        chi=chi_rec,
        r=r,
        phi=phi,
        R=big_r,
        Phi=big_phi,
        beta_mod=np.abs(beta),
        upsilon=_wrap_angle(np.angle(beta)),
        profile=p,
        config=cfg,
        n_slices=n,
        converged=converged,
        achieved_delta=achieved_delta,
        delta_history=delta_history,
    )


def propagate(p: FrequencyProfile, cfg: SimulationConfig) -> Trajectory:
    """Propagate the vacuum with the configured fixed step count."""
    t_end = _resolve_t_end(p, cfg)
    t_rec, chi_rec = _propagate_raw(p, cfg, cfg.n_slices, t_end)
    return _finalize(p, cfg, cfg.n_slices, t_rec, chi_rec, None, None, [])


def propagate_converged(p: FrequencyProfile, cfg: SimulationConfig) -> Trajectory:
    """Propagate with step doubling until the recorded squeeze stabilises.

    Consecutive refinements share every record time of the coarser run, so
    the sup norm of the squeeze magnitude difference is taken over exactly
    aligned records.  Returns the finer trajectory of the last comparison,
    flagged converged when the difference dropped below convergence_tol.
    """
    t_end = _resolve_t_end(p, cfg)
    n = cfg.n_slices
    t_rec, chi_rec = _propagate_raw(p, cfg, n, t_end)
    r_prev = np.arctanh(_clamped_magnitude(np.abs(chi_rec), "squeeze"))
    history: list[float] = []
    converged = False
    while 2 * n <= cfg.n_max:
        n *= 2
        t_rec, chi_rec = _propagate_raw(p, cfg, n, t_end)
        r_next = np.arctanh(_clamped_magnitude(np.abs(chi_rec), "squeeze"))
        delta = float(np.max(np.abs(r_next[::2] - r_prev)))
        history.append(delta)
        r_prev = r_next
        if delta < cfg.convergence_tol:
            converged = True
            break
    achieved = history[-1] if history else None
    return _finalize(p, cfg, n, t_rec, chi_rec, converged, achieved, history)


def post_transition_summary(
    traj: Trajectory, p: FrequencyProfile, window_start: float | None = None
) -> PostTransitionSummary:
    """Oscillation statistics over the settled part of a trajectory.

    The window opens at the end of the transition (t0 + 3*epsilon, or
    window_start for sampled profiles) and must span at least three periods
    pi/omega_f of the squeeze oscillation.  Local maxima of r(t) are located
    by quadratic interpolation through the three bracketing records; the
    period is the mean spacing of successive maxima (nan when fewer than two
    are found).
    """
    if window_start is None:
        if p.kind == "sampled":
            raise ValueError("sampled profile: pass window_start explicitly")
        window_start = transition_interval(p)[1]
    t_last = float(traj.t[-1])
    period_ref = np.pi / p.omegaf
    span = t_last - window_start
    if span < 3.0 * period_ref * (1.0 - 1e-9):
        raise WindowError(
            f"window [{window_start}, {t_last}] spans {span:.6g}, "
            f"need at least three periods ({3.0 * period_ref:.6g})"
        )
    mask = traj.t > window_start
    if np.count_nonzero(mask) < 4:
        raise WindowError("too few records after the transition")
    t_w = traj.t[mask]
    r_w = traj.r[mask]
    big_r_w = traj.R[mask]
    r_min = float(np.min(r_w))
    r_max = float(np.max(r_w))
    inner = (r_w[1:-1] > r_w[:-2]) & (r_w[1:-1] >= r_w[2:])
    peaks = np.flatnonzero(inner) + 1
    dt = float(t_w[1] - t_w[0])
    vertices = []
    for i in peaks:
        lo, mid, hi = r_w[i - 1], r_w[i], r_w[i + 1]
        denom = lo - 2.0 * mid + hi
        shift = 0.0 if abs(denom) < 1e-300 else 0.5 * dt * (lo - hi) / denom
        vertices.append(float(t_w[i]) + shift)
    period = float(np.mean(np.diff(vertices))) if len(vertices) >= 2 else float("nan")
    return PostTransitionSummary(
        window=(float(window_start), t_last),
        n_records=int(np.count_nonzero(mask)),
        r_min=r_min,
        r_max=r_max,
        r_midpoint=0.5 * (r_min + r_max),
        amplitude=r_max - r_min,
        period=period,
        n_maxima=len(vertices),
        R_final=float(np.mean(big_r_w)),
        R_std=float(np.std(big_r_w)),
    )
