r"""
Shared builders of the test suite.
\date 2026
"""

import numpy as np
import pytest

from patchcp.model.configurations import MesoConfig
from patchcp.model.params import ModelParams
from patchcp.simulation.trajectory import Trajectory

def make_trajectory(initial: MesoConfig, events: list, horizon: float, extinct: bool = False, origin: int = 0) -> Trajectory:
	r"""
	Recorded trajectory from a list of events `(time, patch, delta)`.
	"""
	times = np.array([e[0] for e in events], dtype=float)
	patches = np.array([e[1] for e in events], dtype=np.int64)
	deltas = np.array([e[2] for e in events], dtype=np.int64)
	terminal = float(times[-1]) if extinct and len(events) > 0 else horizon
	return Trajectory(initial, times, patches, deltas, terminal, extinct, horizon, origin=origin)

def two_sided_within(value: float, expected: float, se: float, k: float = 4.0) -> bool:
	return abs(value - expected) <= k*se

@pytest.fixture
def small_params():
	return ModelParams(a=1.0, b=1.0, N=3, M=1, L=3)

@pytest.fixture
def rng():
	return np.random.default_rng(20260101)
