r"""
Tests of the patch chain simulators and the survival estimation.
\date 2026
"""

import math

import numpy as np
import pytest
import scipy.stats

from conftest import make_trajectory
from patchcp.model import rates
from patchcp.model.configurations import MesoConfig
from patchcp.model.params import ModelParams
from patchcp.simulation import gillespie
from patchcp.simulation import survival
from patchcp.simulation.gillespie import MesoSimulator
from patchcp.simulation.ratetable import FenwickTree
from patchcp.utils import errors
from patchcp.utils import seeding

def test_fenwick_tree_find_and_update():
	tree = FenwickTree([1.0, 0.0, 2.0, 3.0])
	assert tree.total == 6.0
	assert tree.find(0.5) == (0, 0.5)
	index, residual = tree.find(1.0)
	assert index == 2 and residual == pytest.approx(0.0)
	index, residual = tree.find(5.9)
	assert index == 3 and residual == pytest.approx(2.9)
	tree.add(1, 4.0)
	assert tree.total == 10.0
	assert tree.prefix(2) == pytest.approx(5.0)
	assert tree.find(3.0)[0] == 1

def test_direct_step_on_empty_configuration(small_params):
	rng = np.random.default_rng(0)
	assert gillespie.step(MesoConfig.empty(small_params), small_params, rng) is None
	result = gillespie.step(MesoConfig.single_full_patch(small_params), small_params, rng)
	assert result.waiting_time > 0
	assert result.delta in (-1, 1)

def test_direct_step_event_law():
	params = ModelParams(a=1.0, b=2.0, N=4, M=1, L=3)
	config = MesoConfig([4, 2, 1])
	table = np.concatenate([rates.up_rates(config, params), config.counts.astype(float)])
	total = rates.total_rate(config, params)
	rng = np.random.default_rng(2)
	n = 20000
	results = [gillespie.step(config, params, rng) for _ in range(n)]
	waits = np.array([r.waiting_time for r in results])
	assert abs(waits.mean() - 1/total) <= 4*(1/total)/math.sqrt(n)
	indices = np.array([r.patch if r.delta > 0 else params.L + r.patch for r in results])
	observed = np.bincount(indices, minlength=table.size)
	assert np.all(observed[table == 0] == 0)
	p_death = config.counts.sum()/total
	deaths = (indices >= params.L).mean()
	assert abs(deaths - p_death) <= 4*math.sqrt(p_death*(1 - p_death)/n)
	positive = table > 0
	_, p = scipy.stats.chisquare(observed[positive], n*table[positive]/total)
	assert p > 1e-3

def test_run_is_deterministic_and_valid():
	params = ModelParams(a=2.0, b=3.0, N=10, M=2, L=9)
	initial = MesoConfig.single_full_patch(params)
	first = gillespie.run(initial, params, 30.0, seed=11)
	second = gillespie.run(initial, params, 30.0, seed=11)
	other = gillespie.run(initial, params, 30.0, seed=12)
	assert first == second
	assert first != other
	first.validate(params.N)
	assert first.outcome[0] in ("extinct_at", "alive_at_horizon")

def test_pure_death_chain():
	params = ModelParams(a=0.0, b=0.0, N=8, M=1, L=3)
	trajectory = gillespie.run(MesoConfig.single_full_patch(params), params, 1e6, seed=5)
	assert trajectory.extinct
	assert trajectory.deltas.tolist() == [-1]*8
	assert trajectory.outcome == ("extinct_at", trajectory.times[-1])
	assert trajectory.final.is_empty

def _emptied_at(trajectory, x):
	for t, y, counts in trajectory.replay():
		if y == x and counts[x] == 0:
			return t
	return None

def test_patches_without_dispersal_are_independent():
	params = ModelParams(a=2.0, b=0.0, N=5, M=1, L=3)
	simulator = MesoSimulator()
	replicas = 500
	pair = [simulator.run(MesoConfig([5, 5, 0]), params, 1e6, seed=13, stream=(k,)) for k in range(replicas)]
	alone = [simulator.run(MesoConfig([5, 0, 0]), params, 1e6, seed=14, stream=(k,)) for k in range(replicas)]
	assert all(tr.extinct for tr in pair + alone)
	reference = [tr.times[-1] for tr in alone]
	first = [_emptied_at(tr, 0) for tr in pair]
	second = [_emptied_at(tr, 1) for tr in pair]
	assert scipy.stats.ks_2samp(first, reference).pvalue > 1e-3
	assert scipy.stats.ks_2samp(second, reference).pvalue > 1e-3
	assert abs(scipy.stats.spearmanr(first, second)[0]) <= 4/math.sqrt(replicas)

def test_replay_and_state_at():
	params = ModelParams(a=1.0, b=5.0, N=6, M=1, L=5)
	trajectory = gillespie.run(MesoConfig.single_full_patch(params), params, 5.0, seed=3)
	assert trajectory.events
	counts = trajectory.initial.counts.copy()
	for (t, x, d), (t_replay, x_replay, view) in zip(trajectory.events, trajectory.replay()):
		counts[x] += d
		assert (t, x) == (t_replay, x_replay)
		assert np.array_equal(view, counts)
		assert np.array_equal(trajectory.state_at(t).counts, counts)

def test_unrecorded_trajectory():
	params = ModelParams(a=1.0, b=1.0, N=4, M=1, L=3)
	trajectory = MesoSimulator(record=False).run(MesoConfig.single_full_patch(params), params, 5.0, seed=1)
	with pytest.raises(RuntimeError):
		trajectory.state_at(1.0)

def test_validate_rejects_bad_trajectories():
	params = ModelParams(a=1.0, b=1.0, N=3, M=1, L=3)
	initial = MesoConfig([0, 1, 0])
	with pytest.raises(ValueError):
		make_trajectory(initial, [(0.5, 1, 1), (0.2, 1, 1)], 1.0).validate(params.N)
	with pytest.raises(ValueError):
		make_trajectory(initial, [(0.1, 1, 1), (0.2, 1, 1), (0.3, 1, 1)], 1.0).validate(params.N)
	with pytest.raises(ValueError):
		make_trajectory(initial, [(0.1, 1, -1)], 1.0).validate(params.N)
	make_trajectory(initial, [(0.1, 1, -1)], 1.0, extinct=True).validate(params.N)

def test_runaway_keeps_partial_trajectory():
	params = ModelParams(a=0.0, b=12.0, N=20, M=1, L=11)
	simulator = MesoSimulator(max_events=100)
	with pytest.raises(errors.RunawayError) as info:
		simulator.run(MesoConfig.single_full_patch(params), params, 1e6, seed=0)
	assert info.value.partial.steps == 100

def test_seam_monitoring():
	params = ModelParams(a=0.0, b=12.0, N=20, M=1, L=3)
	with pytest.raises(errors.SeamError):
		MesoSimulator(monitor_seam=True).run(MesoConfig.single_full_patch(params), params, 100.0, seed=0)
	trajectory = MesoSimulator().run(MesoConfig.single_full_patch(params), params, 100.0, seed=0)
	assert trajectory.seam_touched

def test_collision_time_is_first_double_occupation():
	params = ModelParams(a=0.0, b=8.0, N=10, M=5, L=41)
	for seed in range(10):
		trajectory = MesoSimulator(rebuild_interval=50).run(MesoConfig.single_full_patch(params), params, 3.0, seed=seed)
		for t, x, counts in trajectory.replay():
			if trajectory.collision_time is not None and t >= trajectory.collision_time:
				break
			others = np.delete(counts, trajectory.origin)
			assert others.max(initial=0) <= 1
		if trajectory.collision_time is not None:
			assert trajectory.state_at(trajectory.collision_time).counts.max() >= 2

def _direct_extinct_by(params, initial, t, seed):
	rng = seeding.generator(seed)
	config, clock = initial, 0.0
	while True:
		result = gillespie.step(config, params, rng)
		if result is None:
			return True
		clock += result.waiting_time
		if clock > t:
			return False
		config = config.with_count(result.patch, config[result.patch] + result.delta)

def test_cached_rates_agree_with_direct_method():
	params = ModelParams(a=1.0, b=1.0, N=3, M=1, L=3)
	initial = MesoConfig([3, 1, 0])
	replicas = 2000
	direct = np.mean([_direct_extinct_by(params, initial, 1.0, s) for s in range(replicas)])
	simulator = MesoSimulator(record=False)
	cached = np.mean([simulator.run(initial, params, 1.0, seed=7, stream=(k,)).extinct for k in range(replicas)])
	se = math.sqrt(direct*(1 - direct)/replicas + cached*(1 - cached)/replicas)
	assert abs(direct - cached) <= 4*max(se, 1/replicas)

def test_branching_domination_extinction():
	params = ModelParams(a=0.45, b=0.45, N=20, M=1)
	estimate = survival.estimate_survival(params, horizon=200.0, replicas=500, seed=1)
	assert estimate.survived == 0
	assert estimate.point == 0.0

@pytest.mark.slow
def test_branching_domination_extinction_full_scale():
	params = ModelParams(a=0.45, b=0.45, N=20, M=1)
	assert survival.estimate_survival(params, horizon=200.0, replicas=10**4, seed=1).survived == 0

def test_workers_do_not_change_results():
	params = ModelParams(a=2.0, b=4.0, N=8, M=1, L=9)
	serial = survival.SurvivalEstimator(workers=1).run(params, horizon=20.0, replicas=30, seed=4)
	parallel = survival.SurvivalEstimator(workers=3).run(params, horizon=20.0, replicas=30, seed=4)
	assert serial.records == parallel.records
	assert [r.replica for r in parallel.records] == list(range(30))

def test_single_point_sweep_matches_estimate():
	params = ModelParams(a=2.0, b=4.0, N=8, M=1, L=9)
	swept = survival.range_sweep(params, [1], horizon=20.0, replicas=25, seed=3, monitor_seam=False)
	direct = survival.estimate_survival(params, horizon=20.0, replicas=25, seed=3)
	assert swept[0].records == direct.records
	assert swept[0].upper_bound == pytest.approx(0.5 + 4.0*8/(1 - 0.5))

def test_sweep_requires_ranges():
	with pytest.raises(ValueError):
		survival.range_sweep(ModelParams(a=1, b=1, N=5), [])

def test_sweep_bound_decreases_with_range():
	params = ModelParams(a=2.0, b=1.0, N=10, L=201)
	estimates = survival.range_sweep(params, [1, 10, 100], horizon=20.0, replicas=10, seed=0, monitor_seam=False)
	bounds = [e.upper_bound for e in estimates]
	assert bounds[1]/bounds[0] == pytest.approx(10**(-1/3))
	assert bounds[2]/bounds[1] == pytest.approx(10**(-1/3))

@pytest.mark.slow
def test_survival_nonincreasing_in_range():
	params = ModelParams(a=2.0, b=1.0, N=10, L=2001)
	estimates = survival.range_sweep(params, [1, 10, 100], horizon=400.0, replicas=2000, seed=0)
	for first, second in zip(estimates, estimates[1:]):
		assert second.point <= first.point + first.ci_halfwidth + second.ci_halfwidth

def _band(estimate, k=4):
	se = math.sqrt(estimate.point*(1 - estimate.point)/estimate.replicas)
	return estimate.point - k*se, estimate.point + k*se

@pytest.mark.slow
def test_nearest_neighbor_survival_grows_with_capacity():
	# with N=2 all patches soon hold at most one individual, which cannot reproduce
	small = survival.estimate_survival(ModelParams(a=0.0, b=12.0, N=2, M=1), replicas=200, seed=0)
	large = survival.estimate_survival(ModelParams(a=0.0, b=12.0, N=20, M=1), replicas=200, seed=0)
	assert _band(large)[0] > _band(small)[1]

@pytest.mark.slow
def test_nearest_neighbor_survival_nondecreasing_in_dispersal():
	estimates = [survival.estimate_survival(ModelParams(a=0.0, b=b, N=100, M=1), horizon=50.0, replicas=100, seed=1) for b in (2.0, 6.0, 12.0)]
	for first, second in zip(estimates, estimates[1:]):
		assert first.point <= second.point + first.ci_halfwidth + second.ci_halfwidth
	assert _band(estimates[-1])[0] > _band(estimates[0])[1]
