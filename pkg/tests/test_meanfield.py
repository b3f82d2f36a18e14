r"""
Tests of the mean-field equation and the integrator.
\date 2026
"""

import math

import numpy as np
import pytest

from patchcp import meanfield
from patchcp.utils import errors
from patchcp.utils.integration import Integrator

def test_roots_above_threshold():
	r = meanfield.roots(4.5)
	assert r.c_plus == pytest.approx(2.0/3.0, abs=1e-12)
	assert r.c_minus == pytest.approx(1.0/3.0, abs=1e-12)
	assert not r.degenerate

def test_roots_degenerate_and_absent():
	r = meanfield.roots(4.0)
	assert r.degenerate and r.c_minus == r.c_plus == 0.5
	assert meanfield.roots(3.9) is None
	with pytest.raises(errors.DomainError):
		meanfield.roots(0.0)

@pytest.mark.parametrize("a", [4.5, 6.0, 10.0])
def test_q_sign_pattern_above_threshold(a):
	r = meanfield.roots(a)
	for u in np.linspace(1e-3, r.c_minus, 20, endpoint=False):
		assert meanfield.q_eval(u, a) < 0
	for u in np.linspace(r.c_minus, r.c_plus, 22)[1:-1]:
		assert meanfield.q_eval(u, a) > 0
	for u in np.linspace(r.c_plus, 1.0, 21)[1:]:
		assert meanfield.q_eval(u, a) < 0

@pytest.mark.parametrize("a", [0.5, 2.0, 3.9])
def test_q_negative_below_threshold(a):
	assert all(meanfield.q_eval(u, a) < 0 for u in np.linspace(1e-3, 1.0, 50))

@pytest.mark.parametrize("a", [4.5, 6.0, 10.0])
def test_basins_of_attraction(a):
	r = meanfield.roots(a)
	for u0 in (r.c_minus + 0.05, 0.5*(r.c_minus + r.c_plus), 0.95):
		assert meanfield.integrate(u0, a, horizon=100.0).limit == "upper_equilibrium"
	for u0 in (r.c_minus - 0.05, 0.5*r.c_minus):
		assert meanfield.integrate(u0, a, horizon=100.0).limit == "extinct"

@pytest.mark.parametrize("a", np.linspace(4.01, 100.0, 25))
def test_root_identities(a):
	r = meanfield.roots(a)
	assert abs(meanfield.q_eval(r.c_minus, a)) < 1e-10
	assert abs(meanfield.q_eval(r.c_plus, a)) < 1e-10
	assert r.c_minus + r.c_plus == pytest.approx(1.0, abs=1e-10)
	assert r.c_minus*r.c_plus == pytest.approx(1.0/a, abs=1e-10)

def test_inner_threshold():
	r = meanfield.roots(5.0)
	assert meanfield.inner_threshold(5.0) == pytest.approx(2*125*r.c_minus**4, rel=1e-12)
	with pytest.raises(errors.DomainError):
		meanfield.inner_threshold(4.0)

def test_integrate_upper_equilibrium():
	trajectory = meanfield.integrate(0.5, 4.5)
	assert abs(trajectory.final - 2.0/3.0) < 1e-3
	assert trajectory.limit == "upper_equilibrium"
	assert trajectory.times[-1] == pytest.approx(200.0)

def test_integrate_extinction_below_threshold():
	trajectory = meanfield.integrate(0.9, 3.0, horizon=50.0)
	assert trajectory.final < 1e-3
	assert trajectory.limit == "extinct"

def test_integrate_near_unstable_root():
	trajectory = meanfield.integrate(0.3333333, 4.5, horizon=10.0)
	assert trajectory.limit == "undetermined"
	# the default horizon resolves the separatrix towards extinction
	assert meanfield.integrate(0.3333333, 4.5).limit == "extinct"

@pytest.mark.parametrize("u0", [0.0, 1.0, -0.1, 1.5])
def test_integrate_invalid_start(u0):
	with pytest.raises(ValueError):
		meanfield.integrate(u0, 4.5)

def test_solve_ivp_agrees_with_rk4():
	rk4 = meanfield.integrate(0.5, 4.5, horizon=20.0)
	ivp = meanfield.integrate(0.5, 4.5, horizon=20.0, integrator=Integrator(method="solve_ivp"))
	assert ivp.times.shape == rk4.times.shape
	assert np.max(np.abs(ivp.values - rk4.values)) < 1e-6

def test_integrator_exponential_decay():
	times, values, left = Integrator(step=1e-2).solve(lambda u: -u, 1.0, 1.0)
	assert not left
	assert values[-1] == pytest.approx(math.exp(-1.0), abs=1e-9)

def test_integrator_bounds_and_options():
	times, values, left = Integrator().solve(lambda u: 1.0, 0.0, 5.0, bounds=(0.0, 1.0))
	assert left and values[-1] > 1.0
	with pytest.raises(ValueError):
		Integrator(method="euler").solve(lambda u: -u, 1.0, 1.0)
	with pytest.raises(ValueError):
		Integrator().solve(lambda u: -u, 1.0, 1.0, step=0.0)

def test_unstable_step_is_reported():
	with pytest.raises(errors.NumericalInstabilityError):
		meanfield.integrate(0.9, 50.0, step=1.0, horizon=20.0)

def test_regime_flags():
	flags = meanfield.regime(0.4, 0.4)
	assert flags["branching_extinction"] and flags["dual_extinction"]
	assert not flags["nearest_neighbor_survival"]
	flags = meanfield.regime(5.0, 2.0)
	assert flags["internal_survival"]
	assert not flags["dual_extinction"]
	assert meanfield.regime(0.0, 12.0)["nearest_neighbor_survival"]
