r"""
Tests of the parameters, the torus geometry, the configurations and the rates.
\date 2026
"""

import numpy as np
import pytest

from patchcp.model import lattice
from patchcp.model import rates
from patchcp.model.configurations import MesoConfig, MicroConfig, project
from patchcp.model.params import ModelParams

def test_params_default_torus():
	params = ModelParams(a=1, b=2, N=5, M=3)
	assert params.L == 7
	assert isinstance(params.a, float)
	assert params.replace(M=1).L == 7

@pytest.mark.parametrize("kwargs", [
	dict(a=-1.0, b=1.0, N=5),
	dict(a=1.0, b=float("nan"), N=5),
	dict(a=1.0, b=1.0, N=1),
	dict(a=1.0, b=1.0, N=5, M=0),
	dict(a=1.0, b=1.0, N=5, M=2, L=4),
	])
def test_params_invalid(kwargs):
	with pytest.raises(ValueError):
		ModelParams(**kwargs)

def test_neighbors_complete_torus():
	params = ModelParams(a=1, b=1, N=4, M=3, L=7)
	assert sorted(lattice.neighbors(3, params)) == [0, 1, 2, 4, 5, 6]

def test_neighbors_wrap_around():
	params = ModelParams(a=1, b=1, N=4, M=1, L=5)
	assert lattice.neighbors(0, params) == [4, 1]
	assert lattice.neighbors(4, params) == [3, 0]

def test_neighbor_sum_matches_neighbors():
	params = ModelParams(a=1, b=1, N=4, M=2, L=9)
	values = np.arange(9)**2
	summed = lattice.neighbor_sum(values, params.M)
	for x in range(params.L):
		assert summed[x] == sum(values[y] for y in lattice.neighbors(x, params))

def test_meso_config_validation():
	params = ModelParams(a=1, b=1, N=3, M=1, L=3)
	with pytest.raises(ValueError):
		MesoConfig([1, -1, 0])
	with pytest.raises(ValueError):
		MesoConfig([4, 0, 0]).check(params)
	with pytest.raises(ValueError):
		MesoConfig([1, 0]).check(params)
	config = MesoConfig.single_full_patch(params)
	assert config.counts.tolist() == [0, 3, 0]
	assert config.population == 3
	assert not config.counts.flags.writeable

def test_micro_projection_roundtrip():
	params = ModelParams(a=1, b=1, N=4, M=1, L=5)
	meso = MesoConfig([0, 4, 2, 1, 3])
	micro = MicroConfig.from_meso(meso, params)
	assert project(micro) == meso
	assert micro.is_occupied((1, 3))
	assert not micro.is_occupied(2*4 + 2)

def test_empty_configuration_is_absorbing():
	params = ModelParams(a=3, b=5, N=6, M=2, L=7)
	assert rates.total_rate(MesoConfig.empty(params), params) == 0.0

def test_rates_of_single_full_patch():
	params = ModelParams(a=2.0, b=3.0, N=5, M=2, L=7)
	config = MesoConfig.single_full_patch(params, 3)
	assert rates.up_rate(config, 3, params) == 0.0
	assert rates.down_rate(config, 3) == 5.0
	for y in lattice.neighbors(3, params):
		assert rates.up_rate(config, y, params) == pytest.approx(params.b*params.N/(2*params.M))
	assert rates.up_rate(config, 0, params) == 0.0
	assert rates.up_rates(config, params) == pytest.approx([rates.up_rate(config, x, params) for x in range(params.L)])

def test_lumpability_of_individual_rates(rng):
	params = ModelParams(a=1.3, b=2.1, N=4, M=2, L=5)
	for _ in range(1000):
		micro = MicroConfig.random(params, rng, density=rng.random())
		meso = project(micro)
		for x in range(params.L):
			up = sum(rates.micro_up_rate_into(micro, (x, j), params) for j in range(params.N))
			down = sum(rates.micro_down_rate(micro, (x, j)) for j in range(params.N))
			assert abs(up - rates.up_rate(meso, x, params)) <= 1e-12
			assert abs(down - rates.down_rate(meso, x)) <= 1e-12

def test_branching_rate_bound(rng):
	params = ModelParams(a=3.0, b=1.5, N=6, M=1, L=5)
	for _ in range(200):
		config = MesoConfig(rng.integers(0, params.N + 1, params.L))
		births = rates.up_rates(config, params).sum()
		assert births <= rates.branching_rate_bound(config.population, params) + 1e-12
