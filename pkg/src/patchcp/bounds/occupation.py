r"""
Contains the truncated birth-death chain \f$Z_t\f$, which dominates the population of an
isolated patch, and the expected visits and occupation times of its states.

From state \f$1 \leq j < N\f$ the chain jumps up at rate \f$\beta_j = (a/4) j\f$ and down at
rate \f$\mu_j = j\f$; state \f$N\f$ only jumps down and state 0 is absorbing.
With \f$r = a/4\f$ and \f$S_j = \sum_{i=0}^{j-1} r^i\f$, the expected visits starting from \f$N\f$ are
\f[
	v_0 = 1, \quad v_j = (1+r) S_j \;(1 \leq j \leq N-1), \quad v_N = S_N,
\f]
and the expected occupation times are \f$\sigma_j = v_j / ((1+r) j) = S_j / j\f$ for \f$j < N\f$
and \f$\sigma_N = v_N / N\f$.
\date 2026
"""

import dataclasses
import logging

import numpy as np

from ..utils import base
from ..utils import seeding
from ..utils.misc import geometric_partial_sums

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True, eq=False)
class OccupationTable:
	r"""
	Expected visits and occupation times of the truncated chain started at \f$N\f$.
	"""
	## Internal birth coefficient \f$a\f$.
	a: float
	## Capacity \f$N\f$.
	N: int
	## Expected number of visits \f$v_j\f$ for \f$j = 0, \dots, N\f$.
	v: np.array
	## Expected occupation times \f$\sigma_j\f$ for \f$j = 0, \dots, N\f$ (\f$\sigma_0 = 0\f$, state 0 is absorbing).
	sigma: np.array
	## The sums \f$\sum_{i=0}^{j} r^i\f$ for \f$j = 0, \dots, N\f$.
	## They coincide with \f$v_j\f$ for \f$r = 0\f$ only, but still dominate \f$j \sigma_j\f$.
	stated_v: np.array
	## \f$\sum_{j=1}^{N} \sum_{i=0}^{j} r^i\f$, a bound on \f$\sum_j j \sigma_j\f$.
	weighted_bound: float
	## Largest relative residual of the first step equations over all states.
	recursion_residual: float
	@property
	def weighted_time(self) -> float:
		r"""
		\f$\sum_j j \sigma_j\f$, the expected total individual time of the chain.
		"""
		return float(np.dot(np.arange(self.N + 1), self.sigma))

def _rates(a: float, N: int) -> tuple:
	j = np.arange(N + 1, dtype=float)
	up = a/4.0*j
	up[N] = 0.0
	return up, j.copy()

def occupation_table(a: float, N: int) -> OccupationTable:
	r"""
	Closed forms of the expected visits and occupation times, verified against the first step equations
	\f[
		v_j = \frac{\mu_{j+1}}{\beta_{j+1}+\mu_{j+1}} v_{j+1} + \frac{\beta_{j-1}}{\beta_{j-1}+\mu_{j-1}} v_{j-1},
		\qquad v_N = 1 + \frac{\beta_{N-1}}{\beta_{N-1}+\mu_{N-1}} v_{N-1},
	\f]
	where the term with \f$\beta_0 = \mu_0 = 0\f$ is dropped.
	\param a Internal birth coefficient \f$a \geq 0\f$.
	\param N Capacity \f$N \geq 2\f$.
	"""
	if a < 0 or N < 2:
		raise ValueError("Occupation table requires a >= 0 and N >= 2, got a={}, N={}.".format(a, N))
	r = a/4.0
	sums = geometric_partial_sums(r, N + 1)
	v = np.empty(N + 1)
	v[0] = 1.0
	v[1:N] = (1.0 + r)*sums[1:N]
	v[N] = sums[N]
	j = np.arange(1, N + 1)
	sigma = np.zeros(N + 1)
	sigma[1:N] = sums[1:N]/j[:-1]
	sigma[N] = v[N]/N
	stated = sums[1:]
	table = OccupationTable(a, N, v, sigma, stated, float(stated[1:].sum()), _recursion_residual(v, a, N))
	logger.debug("Occupation table a=%g N=%d: residual %.3g", a, N, table.recursion_residual)
	return table

def _recursion_residual(v: np.array, a: float, N: int) -> float:
	up, down = _rates(a, N)
	out = up + down
	p_up = np.divide(up, out, out=np.zeros_like(up), where=out > 0)
	p_down = np.divide(down, out, out=np.zeros_like(down), where=out > 0)
	residual = np.zeros(N + 1)
	residual[0] = v[0] - p_down[1]*v[1]
	for k in range(1, N):
		residual[k] = v[k] - p_down[k+1]*v[k+1] - p_up[k-1]*v[k-1]
	residual[N] = v[N] - 1.0 - p_up[N-1]*v[N-1]
	return float(np.max(np.abs(residual)/np.maximum(1.0, np.abs(v))))

@dataclasses.dataclass(frozen=True, eq=False)
class BirthDeathSample:
	r"""
	Per-replica visit counts and occupation times of simulated paths of the truncated chain.
	"""
	## Internal birth coefficient \f$a\f$.
	a: float
	## Capacity \f$N\f$.
	N: int
	## Integer array of shape `(replicas, N+1)`, visits to each state.
	visits: np.array
	## Float array of shape `(replicas, N+1)`, time spent in each state.
	times: np.array
	## Mapping from a requested time \f$t\f$ to the array of states \f$Z_t\f$ of all replicas.
	states_at: dict
	@property
	def replicas(self) -> int:
		return self.visits.shape[0]
	@property
	def mean_visits(self) -> np.array:
		return self.visits.mean(axis=0)
	@property
	def se_visits(self) -> np.array:
		return self.visits.std(axis=0, ddof=1)/np.sqrt(self.replicas)
	@property
	def mean_times(self) -> np.array:
		return self.times.mean(axis=0)
	@property
	def se_times(self) -> np.array:
		return self.times.std(axis=0, ddof=1)/np.sqrt(self.replicas)
	@property
	def weighted_times(self) -> np.array:
		r"""
		Per replica \f$\sum_j j \tau_j\f$, with \f$\tau_j\f$ the time spent in state \f$j\f$.
		"""
		return self.times @ np.arange(self.N + 1)
	def survival_function(self, t: float) -> np.array:
		r"""
		Empirical \f$P(Z_t \geq i)\f$ for \f$i = 0, \dots, N\f$.
		"""
		states = self.states_at[t]
		return np.array([(states >= i).mean() for i in range(self.N + 1)])

class BirthDeathSampler(base.Task):
	r"""
	Vectorized simulation of independent paths of the truncated chain from \f$Z_0 = N\f$ to absorption.
	All replicas advance in lockstep, one jump per iteration.
	"""
	def __init__(self,
				max_jumps: int = 10**7,
			*args, **kwargs):
		r"""
		Constructs a BirthDeathSampler object.
		\param max_jumps \copybrief max_jumps For more, see \ref max_jumps.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Cap on the number of lockstep iterations (the longest path).
		self.max_jumps = max_jumps
	def run(self, a: float, N: int, replicas: int, seed: int, times: tuple = ()) -> BirthDeathSample:
		r"""
		\param a Internal birth coefficient.
		\param N Capacity.
		\param replicas Number of paths.
		\param seed Root seed.
		\param times Times \f$t\f$, at which the states \f$Z_t\f$ are recorded.
		"""
		rng = seeding.generator(seed)
		r = a/4.0
		p_up = r/(1.0 + r)
		visits = np.zeros((replicas, N + 1), dtype=np.int64)
		occupation = np.zeros((replicas, N + 1))
		snapshots = {float(t): np.zeros(replicas, dtype=np.int64) for t in times}
		state = np.full(replicas, N, dtype=np.int64)
		clock = np.zeros(replicas)
		active = np.arange(replicas)
		jumps = 0
		while active.size > 0:
			if jumps >= self.max_jumps:
				raise RuntimeError("Birth-death paths not absorbed after {} jumps.".format(jumps))
			jumps += 1
			j = state[active]
			visits[active, j] += 1
			rate = np.where(j < N, (1.0 + r)*j, float(N))
			hold = rng.exponential(1.0, active.size)/rate
			occupation[active, j] += hold
			start = clock[active]
			for t, snapshot in snapshots.items():
				hit = (start <= t) & (t < start + hold)
				snapshot[active[hit]] = j[hit]
			clock[active] = start + hold
			up = (j < N) & (rng.random(active.size) < p_up)
			state[active] = np.where(up, j + 1, j - 1)
			active = active[state[active] > 0]
		visits[:, 0] = 1
		logger.info("Simulated %d birth-death paths (a=%g, N=%d) in %d lockstep jumps.", replicas, a, N, jumps)
		return BirthDeathSample(a, N, visits, occupation, snapshots)

def simulate_birth_death(a: float, N: int, replicas: int, seed: int, times: tuple = ()) -> BirthDeathSample:
	r"""
	Simulate the truncated chain, see \ref BirthDeathSampler.run().
	"""
	return BirthDeathSampler().run(a, N, replicas, seed, times)
