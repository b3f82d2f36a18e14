r"""
Contains exact event-driven simulation of the patch chain.

\ref step() is the direct method over the full table of up and down rates.
\ref MesoSimulator runs long trajectories with one cached rate per patch:
\f[
	r(k) = k + \frac{a}{N(N-1)} k(k-1)(N-k) + \frac{b}{N-1} k(k-1),
\f]
i.e. deaths, internal births and an emission envelope.
An emission picks one of the \f$2M\f$ neighbors \f$y\f$ uniformly and is accepted with
probability \f$(N - \xi(y))/N\f$, which thins the envelope to the exact immigration rate.
An event at patch \f$x\f$ changes only \f$r(\xi(x))\f$.
\date 2026
"""

import dataclasses
import logging
import math

import numpy as np

from ..model import rates
from ..model.configurations import MesoConfig
from ..model.lattice import neighbor_offsets
from ..model.params import ModelParams
from ..utils import base
from ..utils import errors
from ..utils import seeding
from ..utils.misc import torus_distance
from .ratetable import FenwickTree
from .trajectory import Trajectory

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class StepResult:
	r"""
	Next event of the patch chain.
	"""
	## Exponentially distributed waiting time.
	waiting_time: float
	## Patch of the event.
	patch: int
	## \f$+1\f$ for a birth, \f$-1\f$ for a death.
	delta: int

def step(config: MesoConfig, params: ModelParams, rng: np.random.Generator) -> StepResult:
	r"""
	Draw the next event from `config` by the direct method.
	The waiting time is exponential with mean \f$1/\f$\ref model.rates.total_rate()
	and the event is chosen with probability proportional to its rate,
	using the cumulative sums of the rate table and a single uniform.
	\return \ref StepResult or `None`, if `config` is absorbed (all-zero).
	"""
	ups = rates.up_rates(config, params)
	table = np.concatenate([ups, config.counts.astype(float)])
	total = table.sum()
	if total <= 0:
		return None
	waiting_time = rng.exponential(1.0/total)
	cumulative = np.cumsum(table)
	index = int(np.searchsorted(cumulative, rng.random()*cumulative[-1], side="right"))
	index = min(index, table.size - 1)
	while table[index] <= 0:
		index -= 1
	if index < params.L:
		return StepResult(waiting_time, index, +1)
	return StepResult(waiting_time, index - params.L, -1)

class MesoSimulator(base.Task):
	r"""
	Exact simulator of the patch chain with cached per-patch rates.
	"""
	def __init__(self,
				max_events: int = 10**9,
				rebuild_interval: int = 10**6,
				record: bool = True,
				monitor_seam: bool = False,
			*args, **kwargs):
		r"""
		Constructs a MesoSimulator object.
		\param max_events \copybrief max_events For more, see \ref max_events.
		\param rebuild_interval \copybrief rebuild_interval For more, see \ref rebuild_interval.
		\param record \copybrief record For more, see \ref record.
		\param monitor_seam \copybrief monitor_seam For more, see \ref monitor_seam.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Safety cap on the number of simulated events.
		## Exceeding it raises \ref utils.errors.RunawayError with the partial trajectory.
		self.max_events = max_events
		## Number of events, after which the rate table is rebuilt from the counts.
		## The incrementally updated total must agree with the rebuilt one to \f$10^{-9}\f$ (relative).
		self.rebuild_interval = rebuild_interval
		## Whether the events are stored in the trajectory.
		self.record = record
		## If `True`, a birth near the seam opposite to the origin raises \ref utils.errors.SeamError.
		## The touch is recorded in the trajectory in any case.
		self.monitor_seam = monitor_seam
	def run(self,
			initial: MesoConfig,
			params: ModelParams,
			horizon: float,
			seed: int,
			stream: tuple = (),
			origin: int = None,
			record: bool = None,
			) -> Trajectory:
		r"""
		Simulate the chain from `initial` until extinction or `horizon`.
		\param initial Configuration at time 0.
		\param params Model parameters.
		\param horizon End of the simulated interval.
		\param seed Root seed.
		\param stream Substream keys below `seed`, see \ref utils.seeding.
		\param origin Reference patch for collision and seam monitoring.
			Defaults to the fullest patch of `initial`.
		\param record \copybrief record Defaults to \ref record.
		"""
		record = record if record is not None else self.record
		if not horizon > 0:
			raise ValueError("Horizon must be positive, got {}.".format(horizon))
		initial.check(params)
		origin = origin if origin is not None else int(np.argmax(initial.counts))
		N, M, L = params.N, params.M, params.L
		counts = initial.counts.tolist()
		population = sum(counts)
		# cached rate of a patch with k individuals and its channel boundaries
		internal = [params.a*k*(k - 1)*(N - k)/(N*(N - 1)) for k in range(N + 1)]
		emission = [params.b*k*(k - 1)/(N - 1) for k in range(N + 1)]
		patch_rate = [k + internal[k] + emission[k] for k in range(N + 1)]
		tree = FenwickTree(patch_rate[k] for k in counts)
		offsets = neighbor_offsets(M)
		seam_zone = [torus_distance(x, origin, L) > L//2 - M for x in range(L)]
		uniform = seeding.UniformStream(seeding.generator(seed, *stream))
		times, patches, deltas = [], [], []
		t = 0.0
		steps = 0
		collision_time = None
		seam_touched = False
		extinct = population == 0
		while not extinct:
			if steps >= self.max_events:
				partial = self._trajectory(initial, times, patches, deltas, t, False, horizon, origin, collision_time, seam_touched, steps, record)
				raise errors.RunawayError("Event cap of {} exceeded at t={:.6g}.".format(self.max_events, t), partial)
			if steps > 0 and steps % self.rebuild_interval == 0:
				tree = self._rebuild(tree, counts, patch_rate)
			total = tree.total
			t_next = t + uniform.exponential(total)
			if t_next >= horizon:
				t = horizon
				break
			t = t_next
			steps += 1
			x, residual = tree.find(uniform()*total)
			while x >= L or counts[x] == 0:
				# round-off put the target beyond the last positive rate
				x, residual = tree.find(uniform()*tree.total)
			k = counts[x]
			if residual < k:
				target, delta = x, -1
			elif residual < k + internal[k]:
				target, delta = x, +1
			else:
				y = (x + offsets[uniform.integer(2*M)]) % L
				if uniform()*N >= N - counts[y]:
					continue
				if collision_time is None and y != origin and counts[y] > 0:
					collision_time = t
				target, delta = y, +1
			old = counts[target]
			counts[target] = old + delta
			tree.add(target, patch_rate[old + delta] - patch_rate[old])
			population += delta
			if delta > 0 and seam_zone[target] and not seam_touched:
				seam_touched = True
				if self.monitor_seam:
					raise errors.SeamError("Birth at patch {} reaches across the seam opposite to origin {} at t={:.6g}.".format(target, origin, t))
			if record:
				times.append(t)
				patches.append(target)
				deltas.append(delta)
			if population == 0:
				extinct = True
		logger.debug("Run finished at t=%g after %d events, extinct=%s.", t, steps, extinct)
		return self._trajectory(initial, times, patches, deltas, t, extinct, horizon, origin, collision_time, seam_touched, steps, record)
	def _rebuild(self, tree: FenwickTree, counts: list, patch_rate: list) -> FenwickTree:
		fresh = FenwickTree(patch_rate[k] for k in counts)
		if abs(fresh.total - tree.total) > 1e-9*max(fresh.total, 1.0):
			raise errors.NumericalInstabilityError("Rate table drifted: cached total {} != rebuilt total {}.".format(tree.total, fresh.total))
		return fresh
	@staticmethod
	def _trajectory(initial, times, patches, deltas, t, extinct, horizon, origin, collision_time, seam_touched, steps, record) -> Trajectory:
		return Trajectory(
			initial=initial,
			times=np.array(times, dtype=float),
			patches=np.array(patches, dtype=np.int64),
			deltas=np.array(deltas, dtype=np.int64),
			terminal_time=t,
			extinct=extinct,
			horizon=horizon,
			origin=origin,
			collision_time=collision_time,
			seam_touched=seam_touched,
			steps=steps,
			recorded=record,
			)

def run(initial: MesoConfig, params: ModelParams, horizon: float, seed: int, **kwargs) -> Trajectory:
	r"""
	Simulate the patch chain with a default \ref MesoSimulator.
	\param **kwargs Further arguments of \ref MesoSimulator.run().
	"""
	return MesoSimulator().run(initial, params, horizon, seed, **kwargs)
