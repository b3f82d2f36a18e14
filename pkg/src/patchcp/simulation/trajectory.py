r"""
Contains the record of one realization of the patch chain.
\date 2026
"""

import dataclasses

import numpy as np

from ..model.configurations import MesoConfig

@dataclasses.dataclass(frozen=True, eq=False)
class Trajectory:
	r"""
	Realization of the patch chain as the initial configuration and the ordered list of
	events \f$(t, x, \pm 1)\f$.
	The run ends at extinction or at the horizon, whichever comes first.
	"""
	## Configuration at time 0.
	initial: MesoConfig
	## Event times, strictly increasing.
	times: np.array
	## Patch of each event.
	patches: np.array
	## Change of the patch count of each event, \f$+1\f$ or \f$-1\f$.
	deltas: np.array
	## Time, at which the run ended: the extinction time or the horizon.
	terminal_time: float
	## `True`, if the run ended in the all-zero configuration.
	extinct: bool
	## Horizon, up to which the run was requested.
	horizon: float
	## Patch, which counts as origin for collision and seam monitoring.
	origin: int = 0
	## Time of the first emigrant birth into an occupied patch other than the origin, `None` if none occurred.
	collision_time: float = None
	## `True`, if a birth happened in a patch, whose neighborhood reaches across the seam opposite to the origin.
	seam_touched: bool = False
	## Number of simulated events (including rejected emission proposals).
	steps: int = 0
	## `False`, if the events were not recorded (only the outcome is valid).
	recorded: bool = True
	def __eq__(self, other) -> bool:
		if not isinstance(other, Trajectory):
			return NotImplemented
		return (self.initial == other.initial
			and np.array_equal(self.times, other.times)
			and np.array_equal(self.patches, other.patches)
			and np.array_equal(self.deltas, other.deltas)
			and self.terminal_time == other.terminal_time
			and self.extinct == other.extinct
			and self.collision_time == other.collision_time)
	@property
	def events(self) -> list:
		r"""
		Events as list of tuples `(time, patch, delta)`.
		"""
		return list(zip(self.times.tolist(), self.patches.tolist(), self.deltas.tolist()))
	@property
	def outcome(self) -> tuple:
		r"""
		`("extinct_at", time)` or `("alive_at_horizon", horizon)`.
		"""
		if self.extinct:
			return ("extinct_at", self.terminal_time)
		return ("alive_at_horizon", self.terminal_time)
	def replay(self):
		r"""
		Generator over the configurations after each event.
		Yields tuples `(time, patch, counts)`, where `counts` is a read-only view,
		which is modified in place by the following iterations.
		"""
		self._require_events()
		counts = self.initial.counts.copy()
		view = counts.view()
		view.setflags(write=False)
		for t, x, d in zip(self.times.tolist(), self.patches.tolist(), self.deltas.tolist()):
			counts[x] += d
			yield t, x, view
	def state_at(self, t: float) -> MesoConfig:
		r"""
		Configuration at time `t`, after all events with times \f$\leq t\f$.
		"""
		self._require_events()
		count = int(np.searchsorted(self.times, t, side="right"))
		counts = self.initial.counts.copy()
		np.add.at(counts, self.patches[:count], self.deltas[:count])
		return MesoConfig(counts)
	@property
	def final(self) -> MesoConfig:
		return self.state_at(self.terminal_time)
	def validate(self, N: int):
		r"""
		Check the invariants of a recorded trajectory and raise `ValueError` on the first violation:
		strictly increasing times, patch counts within \f$\{0, \dots, N\}\f$ along the replay,
		and an all-zero final configuration exactly for extinct runs.
		"""
		self._require_events()
		if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
			raise ValueError("Event times are not strictly increasing.")
		if self.times.size > 0 and (self.times[0] <= 0 or self.times[-1] > self.terminal_time):
			raise ValueError("Event times exceed the simulated interval.")
		population = self.initial.population
		for index, (t, x, counts) in enumerate(self.replay()):
			if population == 0:
				raise ValueError("Event at t={} after absorption in the empty configuration.".format(t))
			if not 0 <= counts[x] <= N:
				raise ValueError("Patch {} left [0, {}] at t={}.".format(x, N, t))
			population += int(self.deltas[index])
		final = self.final
		if self.extinct != final.is_empty:
			raise ValueError("Outcome does not match the final configuration.")
		if self.extinct and self.times.size > 0 and self.times[-1] != self.terminal_time:
			raise ValueError("Extinction time does not match the last event.")
	def _require_events(self):
		if not self.recorded:
			raise RuntimeError("The events of this trajectory were not recorded.")
