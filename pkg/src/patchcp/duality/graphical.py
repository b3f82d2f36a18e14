r"""
Contains the graphical representation of the individual-level chain on a finite
space-time window: independent Poisson arrivals of birth triples and death marks,
from which the forward process and its dual are built pathwise.

Locations are addressed by the flat index \f$xN + j\f$ of patch \f$x\f$ and slot \f$j\f$.
For a target \f$\mathbf{x}\f$,
- \f$A(\mathbf{x})\f$ holds the \f$N(N-1)\f$ ordered pairs of distinct locations of the patch of
  \f$\mathbf{x}\f$ (\f$\mathbf{x}\f$ itself may be a parent), each with intensity \f$a/(N(N-1))\f$,
- \f$B(\mathbf{x})\f$ holds the ordered pairs of distinct locations of each of the \f$2M\f$
  neighboring patches, each with intensity \f$(b/2M)/(N(N-1))\f$,
- deaths arrive at intensity 1.

The total intensities per location are therefore \f$a\f$, \f$b\f$ and 1.
They are sampled as one Poisson count per location and kind with a uniformly chosen parent pair,
which is the superposition of the individual processes.
\date 2026
"""

import collections
import dataclasses
import logging

import numpy as np

from ..model.lattice import neighbor_offsets
from ..model.params import ModelParams
from ..utils import errors
from ..utils import seeding

logger = logging.getLogger(__name__)

## Event kind of a birth with parents in the target's patch.
INTERNAL = 0
## Event kind of a birth with parents in a neighboring patch.
DISPERSAL = 1
## Event kind of a death.
DEATH = 2

@dataclasses.dataclass(frozen=True, eq=False)
class GraphicalRep:
	r"""
	Realized arrivals on the window \f$\{0, \dots, L-1\} \times \{0, \dots, N-1\} \times [0, t_{max}]\f$,
	stored as one table sorted by time.
	"""
	## Model parameters.
	params: ModelParams
	## End of the time window.
	t_max: float
	## Seed, which generated the arrivals (`None` for hand-made representations).
	seed: int
	## Arrival times, ascending.
	times: np.array
	## Event kind per arrival: \ref INTERNAL, \ref DISPERSAL or \ref DEATH.
	kinds: np.array
	## Target location per arrival.
	targets: np.array
	## Parent locations per arrival, shape `(count, 2)`, `-1` for deaths.
	parents: np.array
	@property
	def window(self) -> tuple:
		return (self.params.L, self.params.N, self.t_max)
	def __len__(self) -> int:
		return self.times.size
	def location(self, flat: int) -> tuple:
		return divmod(int(flat), self.params.N)
	def _arrivals(self, kind: int, with_parents: bool) -> dict:
		arrivals = collections.defaultdict(list)
		for t, k, x, (y, z) in zip(self.times.tolist(), self.kinds.tolist(), self.targets.tolist(), self.parents.tolist()):
			if k == kind:
				arrivals[(x, (y, z)) if with_parents else x].append(t)
		return {key: tuple(value) for key, value in arrivals.items()}
	@property
	def a_arrivals(self) -> dict:
		r"""
		Mapping `(target, (parent, parent))` to the sorted arrival times of internal births.
		"""
		return self._arrivals(INTERNAL, True)
	@property
	def b_arrivals(self) -> dict:
		r"""
		Mapping `(target, (parent, parent))` to the sorted arrival times of dispersal births.
		"""
		return self._arrivals(DISPERSAL, True)
	@property
	def d_arrivals(self) -> dict:
		r"""
		Mapping `target` to the sorted death times.
		"""
		return self._arrivals(DEATH, False)
	def is_admissible(self, kind: int, target: int, y: int, z: int) -> bool:
		r"""
		Membership of the parent pair \f$(y, z)\f$ in \f$A(\mathbf{x})\f$ or \f$B(\mathbf{x})\f$.
		"""
		N, M, L = self.params.N, self.params.M, self.params.L
		if y == z:
			return False
		patch, patch_y, patch_z = target//N, y//N, z//N
		if patch_y != patch_z:
			return False
		if kind == INTERNAL:
			return patch_y == patch
		offset = (patch_y - patch) % L
		return offset in {o % L for o in neighbor_offsets(M)}
	def validate(self):
		r"""
		Raise `ValueError`, if an arrival lies outside the window or a parent pair is not admissible.
		"""
		if self.times.size and (self.times.min() < 0 or self.times.max() > self.t_max):
			raise ValueError("Arrival outside [0, {}].".format(self.t_max))
		if self.times.size > 1 and np.any(np.diff(self.times) < 0):
			raise ValueError("Arrivals are not sorted by time.")
		for k, x, (y, z) in zip(self.kinds.tolist(), self.targets.tolist(), self.parents.tolist()):
			if k != DEATH and not self.is_admissible(k, x, y, z):
				raise ValueError("Parent pair ({}, {}) not admissible for target {}.".format(y, z, x))
	@classmethod
	def from_events(cls, params: ModelParams, t_max: float, events: list) -> "GraphicalRep":
		r"""
		Representation from explicit arrivals.
		\param events List of tuples `(time, kind, target)` for deaths and
			`(time, kind, target, (parent, parent))` for births, with flat locations.
		"""
		events = sorted(events, key=lambda e: e[0])
		times = np.array([e[0] for e in events], dtype=float)
		kinds = np.array([e[1] for e in events], dtype=np.int64)
		targets = np.array([e[2] for e in events], dtype=np.int64)
		parents = np.array([e[3] if len(e) > 3 else (-1, -1) for e in events], dtype=np.int64).reshape(-1, 2)
		rep = cls(params, t_max, None, times, kinds, targets, parents)
		rep.validate()
		return rep

def build_rep(params: ModelParams, t_max: float, seed: int, cap: float = 1e7, stream: tuple = ()) -> GraphicalRep:
	r"""
	Sample all arrivals of the window upfront.
	\param params Model parameters.
	\param t_max End of the time window.
	\param seed Root seed.
	\param cap Largest admissible expected number of arrivals \f$LN t_{max}(1+a+b)\f$.
	\param stream Keys of the substream below `seed`, see \ref utils.seeding.generator().
	\throws WindowTooLargeError if the expected number of arrivals exceeds `cap`.
	"""
	if not t_max > 0:
		raise ValueError("Window length must be positive, got {}.".format(t_max))
	L, N, M = params.L, params.N, params.M
	locations = L*N
	expected = locations*t_max*(1.0 + params.a + params.b)
	if expected > cap:
		raise errors.WindowTooLargeError("Expected {:.3g} arrivals exceed the cap {:.3g}.".format(expected, cap))
	rng = seeding.generator(seed, *stream)
	offsets = np.array(neighbor_offsets(M))
	def sample(intensity):
		counts = rng.poisson(intensity*t_max, locations)
		targets = np.repeat(np.arange(locations), counts)
		times = rng.uniform(0.0, t_max, targets.size)
		return times, targets
	def parent_slots(count):
		first = rng.integers(0, N, count)
		second = rng.integers(0, N - 1, count)
		second = second + (second >= first)
		return first, second
	d_times, d_targets = sample(1.0)
	a_times, a_targets = sample(params.a)
	first, second = parent_slots(a_targets.size)
	a_patch = a_targets//N
	a_parents = np.stack([a_patch*N + first, a_patch*N + second], axis=-1)
	b_times, b_targets = sample(params.b)
	b_patch = (b_targets//N + offsets[rng.integers(0, offsets.size, b_targets.size)]) % L
	first, second = parent_slots(b_targets.size)
	b_parents = np.stack([b_patch*N + first, b_patch*N + second], axis=-1)
	times = np.concatenate([a_times, b_times, d_times])
	kinds = np.concatenate([np.full(a_times.size, INTERNAL), np.full(b_times.size, DISPERSAL), np.full(d_times.size, DEATH)])
	targets = np.concatenate([a_targets, b_targets, d_targets])
	parents = np.concatenate([a_parents.reshape(-1, 2), b_parents.reshape(-1, 2), np.full((d_times.size, 2), -1)])
	order = np.argsort(times, kind="stable")
	logger.debug("Graphical representation with %d arrivals (expected %.1f).", times.size, expected)
	return GraphicalRep(params, float(t_max), seed, times[order], kinds[order].astype(np.int64), targets[order].astype(np.int64), parents[order].astype(np.int64))
