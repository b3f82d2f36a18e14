r"""
Tests of oriented site percolation and of the good sites of patch chain trajectories.
\date 2026
"""

import warnings

import numpy as np
import pytest

from conftest import make_trajectory
from patchcp import meanfield
from patchcp import percolation
from patchcp.model.configurations import MesoConfig
from patchcp.model.params import ModelParams
from patchcp.utils import errors

@pytest.fixture
def ring():
	return ModelParams(a=0.0, b=12.0, N=4, M=1, L=5)

def test_evolve_open_sites(rng):
	w = percolation.WetSet.origin()
	for n in range(1, 6):
		w = percolation.evolve(w, 0.0, rng)
		assert w.level == n and len(w.wet) == n + 1
		assert percolation.full_cone_event(w)

def test_evolve_closed_sites(rng):
	w = percolation.evolve(percolation.WetSet.origin(), 1.0, rng)
	assert w.is_empty
	assert percolation.evolve(w, 0.0, rng).is_empty

def test_wet_set_parity():
	with pytest.raises(ValueError):
		percolation.WetSet(1, {0})
	assert percolation.WetSet(3, {-3, 1}).wet == frozenset({-3, 1})

def test_evolve_width_cap(rng):
	w = percolation.WetSet(2, {-2, 0, 2})
	with pytest.warns(RuntimeWarning):
		clipped = percolation.evolve(w, 0.0, rng, width_cap=2)
	assert clipped.wet == frozenset({-1, 1}) and clipped.truncated
	assert percolation.evolve(clipped, 0.0, rng).truncated

def test_params_validation():
	assert percolation.PercParams(0.1, 10).width_cap == 11
	with pytest.raises(ValueError):
		percolation.PercParams(1.5, 10)
	with pytest.raises(ValueError):
		percolation.PercParams(0.1, -1)
	with pytest.raises(ValueError):
		percolation.PercParams(0.1, 10, width_cap=0)

def test_estimate_extremes():
	with warnings.catch_warnings():
		warnings.simplefilter("error")
		full = percolation.estimate_perc_survival(0.0, 50, 100, seed=1)
	assert full.point == 1.0 and full.truncated == 0
	assert percolation.estimate_perc_survival(1.0, 50, 100, seed=1).point == 0.0
	assert percolation.estimate_perc_survival(0.5, 100, 2000, seed=2).point == 0.0
	with pytest.raises(ValueError):
		percolation.estimate_perc_survival(0.1, 10, 0, seed=1)

def test_estimate_monotone_in_q():
	estimates = [percolation.estimate_perc_survival(q, 100, 2000, seed=3) for q in (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35)]
	for lower, higher in zip(estimates, estimates[1:]):
		assert higher.point <= lower.point + 2*(lower.ci_halfwidth + higher.ci_halfwidth)
	assert estimates[0].point > 0.9
	assert estimates[-1].point < estimates[0].point

def test_estimate_reproducible():
	first = percolation.estimate_perc_survival(0.2, 40, 500, seed=4)
	second = percolation.estimate_perc_survival(0.2, 40, 500, seed=4)
	assert first == second

def test_estimate_width_cap():
	with pytest.warns(RuntimeWarning):
		estimate = percolation.estimate_perc_survival(0.0, 10, 5, seed=5, width_cap=3)
	assert estimate.truncated == 5
	assert estimate.point == 1.0

def test_good_sites_full(ring):
	trajectory = make_trajectory(MesoConfig.full(ring), [], 40.0, origin=2)
	good = percolation.good_sites(trajectory, "A1", ring)
	assert sorted(good) == [0, 1, 2, 3]
	assert good[0] == frozenset({-2, 0, 2})
	assert good[1] == frozenset({-1, 1})
	good = percolation.good_sites(trajectory, "A2", ring, roots=meanfield.roots(4.5))
	assert sorted(good) == [0, 1, 2]
	assert good[2] == frozenset({-2, 0, 2})
	assert percolation.cluster_depth(good) == 3

def test_good_sites_empty(ring):
	trajectory = make_trajectory(MesoConfig.empty(ring), [], 40.0, origin=2)
	good = percolation.good_sites(trajectory, "A1", ring)
	assert all(not z for z in good.values())
	assert percolation.cluster_depth(good) == 0

def test_good_sites_coverage(ring):
	trajectory = make_trajectory(MesoConfig.full(ring), [], 40.0, origin=2)
	with pytest.raises(errors.CoverageError) as info:
		percolation.good_sites(trajectory, "A1", ring, levels=4)
	assert info.value.max_level == 3
	extinct = make_trajectory(MesoConfig.empty(ring), [], 40.0, extinct=True, origin=2)
	assert len(percolation.good_sites(extinct, "A1", ring, levels=6)) == 7

def test_good_sites_errors(ring):
	trajectory = make_trajectory(MesoConfig.full(ring), [], 40.0, origin=2)
	with pytest.raises(errors.DomainError):
		percolation.good_sites(trajectory, "A2", ring)
	with pytest.raises(ValueError):
		percolation.good_sites(trajectory, "A3", ring)

def test_good_sites_after_deaths(ring):
	events = [(9.0, 2, -1), (10.0, 2, -1)]
	trajectory = make_trajectory(MesoConfig.full(ring), events, 40.0, origin=2)
	good = percolation.good_sites(trajectory, "A1", ring)
	assert good[0] == frozenset({-2, 2})
	assert good[1] == frozenset({1})
	assert percolation.cluster_depth(good) == 0

def test_good_sites_ignore_later_events(ring):
	events = [(9.0, 2, -1), (10.0, 2, -1)]
	later = events + [(20.0, 0, -1), (21.0, 0, -1), (22.0, 4, -1)]
	before = percolation.good_sites(make_trajectory(MesoConfig.full(ring), events, 40.0, origin=2), "A1", ring, levels=0)
	after = percolation.good_sites(make_trajectory(MesoConfig.full(ring), later, 40.0, origin=2), "A1", ring, levels=0)
	assert before == after

def test_cluster_depth():
	good = {0: frozenset({0}), 1: frozenset({1}), 2: frozenset({0, 2}), 3: frozenset({-3})}
	assert percolation.cluster_depth(good) == 3
	assert percolation.cluster_depth({0: frozenset({2})}) == 0
	assert percolation.cluster_depth({}) == 0

def test_evolve_batch_matches_cone(rng):
	wet = np.zeros((3, 11), dtype=bool)
	wet[:, 5] = True
	for _ in range(3):
		wet = percolation.evolve_batch(wet, 0.0, rng)
	assert np.flatnonzero(wet[0]).tolist() == [2, 4, 6, 8]
