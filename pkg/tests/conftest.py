"""Shared heavy fixtures: the reference runs reused across test modules.

Each converged propagation is computed once per session; individual tests
read arrays out of these instead of re-propagating.
"""

import pytest

from squeezesim import (
    SimulationConfig,
    jump_profile,
    post_transition_summary,
    propagate,
    propagate_converged,
    reference_sweep_data,
    tanh_profile,
)

OMEGA0, OMEGAF, T0 = 1.0, 3.0, 10.0


@pytest.fixture(scope="session")
def jump_run():
    """Sudden switch on a fixed fine grid; steps are exact between samples."""
    p = jump_profile(OMEGA0, OMEGAF, T0)
    cfg = SimulationConfig(n_slices=1 << 16, record_stride=16, convergence_tol=1e-4)
    traj = propagate(p, cfg)
    return p, traj, post_transition_summary(traj, p)


@pytest.fixture(scope="session")
def eps_small_run():
    """Near-sudden smooth ramp (eps = 1e-3), converged."""
    p = tanh_profile(OMEGA0, OMEGAF, T0, 1e-3)
    cfg = SimulationConfig(n_slices=4096, record_stride=16, convergence_tol=1e-4)
    traj = propagate_converged(p, cfg)
    return p, traj, post_transition_summary(traj, p)


@pytest.fixture(scope="session")
def smooth_runs():
    """Converged ramps at eps in {0.5, 1.0, 1.5}, keyed by eps."""
    out = {}
    cfg = SimulationConfig(n_slices=4096, record_stride=4, convergence_tol=1e-4)
    for eps in (0.5, 1.0, 1.5):
        p = tanh_profile(OMEGA0, OMEGAF, T0, eps)
        traj = propagate_converged(p, cfg)
        out[eps] = (p, traj, post_transition_summary(traj, p))
    return out


@pytest.fixture(scope="session")
def design_sweep():
    """Simulated final squeezing on the default ratio-by-width lattice."""
    cfg = SimulationConfig(n_slices=4096, record_stride=8, convergence_tol=5e-5)
    return reference_sweep_data(cfg=cfg, source="simulation")
