r"""
Contains the dual process of the individual-level chain.

Started at location \f$\mathbf{w}\f$ and time \f$t\f$, the dual runs backward through the arrivals of a
graphical representation. Its state is a family of finite sets of locations with
\f[
	\mathbf{w} \in \eta_t \iff B \subset \eta_{t-s} \text{ for some } B \in \hat\eta_s(\mathbf{w}, t).
\f]
- A birth at \f$\mathbf{x}\f$ with parents \f$(\mathbf{y}, \mathbf{z})\f$ adds, for each set \f$B \ni \mathbf{x}\f$,
  the set \f$(B \setminus \{\mathbf{x}\}) \cup \{\mathbf{y}, \mathbf{z}\}\f$.
- A death at \f$\mathbf{x}\f$ removes all sets containing \f$\mathbf{x}\f$.

A birth acting on the family is a collision, if \f$\mathbf{y}\f$ or \f$\mathbf{z}\f$ already appears in some set of the family.
\date 2026
"""

import dataclasses
import logging

import numpy as np

from ..model.configurations import MicroConfig
from ..utils import base
from ..utils import errors
from .forward import forward_micro
from .graphical import DEATH, GraphicalRep

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class DualState:
	r"""
	Family of sets of locations at dual time \f$s\f$.
	"""
	## Frozen set of frozen sets of flat locations. Duplicates collapse.
	sets: frozenset
	## Start `(location, time)` of the dual.
	origin: tuple
	## Dual time \f$s \in [0, t]\f$.
	dual_clock: float
	@property
	def is_empty(self) -> bool:
		return len(self.sets) == 0
	def canonical(self) -> tuple:
		r"""
		Sorted tuple of sorted tuples, a canonical form of \ref sets.
		"""
		return tuple(sorted(tuple(sorted(b)) for b in self.sets))
	def union(self) -> frozenset:
		return frozenset().union(*self.sets)
	def satisfied_by(self, occupied) -> bool:
		r"""
		Whether some set of the family is fully occupied.
		\param occupied Flat occupancy, indexable by location.
		"""
		return any(all(occupied[x] for x in b) for b in self.sets)

@dataclasses.dataclass(frozen=True)
class DualRun:
	r"""
	Path of a dual process.
	"""
	## States after each change of the family, starting with \f$\{\{\mathbf{w}\}\}\f$ at \f$s = 0\f$.
	## Only the first and the final state, if the path was not recorded.
	states: tuple
	## Dual times of the collisions.
	collisions: tuple
	## Dual time, at which the family became empty, `None` if it survived to \f$s = t\f$.
	extinction_time: float
	@property
	def final(self) -> DualState:
		return self.states[-1]
	@property
	def collided(self) -> bool:
		return len(self.collisions) > 0
	@property
	def extinct(self) -> bool:
		return self.extinction_time is not None

class DualProcess(base.Task):
	r"""
	Backward evolution of the dual family on a graphical representation.
	The union of the family is maintained as a map from location to the sets containing it.
	"""
	def __init__(self,
				max_sets: int = 10**6,
				record: bool = True,
			*args, **kwargs):
		r"""
		Constructs a DualProcess object.
		\param max_sets \copybrief max_sets For more, see \ref max_sets.
		\param record \copybrief record For more, see \ref record.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Cap on the number of sets in the family, exceeding it raises \ref utils.errors.ExplosionError.
		self.max_sets = max_sets
		## Whether every intermediate state is stored.
		self.record = record
	def run(self, rep: GraphicalRep, w: int, t: float, record: bool = None) -> DualRun:
		r"""
		Run the dual from location `w` at time `t` back to time 0.
		\param rep Graphical representation with \f$t \leq t_{max}\f$.
		\param w Flat start location.
		\param t Start time.
		\param record \copybrief record Defaults to \ref record.
		"""
		record = record if record is not None else self.record
		if t > rep.t_max:
			raise ValueError("Time {} lies beyond the window end {}.".format(t, rep.t_max))
		origin = (int(w), float(t))
		start = frozenset([w])
		family = {start}
		containing = {w: {start}}
		states = [DualState(frozenset(family), origin, 0.0)]
		collisions = []
		extinction_time = None
		count = int(np.searchsorted(rep.times, t, side="right"))
		for index in range(count - 1, -1, -1):
			x = int(rep.targets[index])
			if x not in containing:
				continue
			s = t - float(rep.times[index])
			hit = list(containing[x])
			if rep.kinds[index] == DEATH:
				for b in hit:
					family.discard(b)
					for y in b:
						sets = containing[y]
						sets.discard(b)
						if not sets:
							del containing[y]
			else:
				y, z = (int(p) for p in rep.parents[index])
				if y in containing or z in containing:
					collisions.append(s)
				for b in hit:
					new = (b - {x}) | {y, z}
					if new in family:
						continue
					family.add(new)
					for v in new:
						containing.setdefault(v, set()).add(new)
				if len(family) > self.max_sets:
					raise errors.ExplosionError("Dual family exceeded {} sets at dual time {:.6g}.".format(self.max_sets, s))
			if record:
				states.append(DualState(frozenset(family), origin, s))
			if not family:
				extinction_time = s
				break
		if not record:
			states.append(DualState(frozenset(family), origin, extinction_time if extinction_time is not None else t))
		return DualRun(tuple(states), tuple(collisions), extinction_time)

def dual_run(rep: GraphicalRep, w: int, t: float, **kwargs) -> DualRun:
	r"""
	Run the dual with a default \ref DualProcess.
	\param **kwargs Further arguments of \ref DualProcess.
	"""
	return DualProcess(**kwargs).run(rep, w, t)

def duality_check(rep: GraphicalRep, initial: MicroConfig, w: int, t: float, process: DualProcess = None) -> bool:
	r"""
	Evaluate both sides of the duality relation on one realization:
	\f$\mathbf{w} \in \eta_t\f$ from \ref forward.forward_micro(), and the existence of a set of
	\f$\hat\eta_t(\mathbf{w}, t)\f$ contained in \f$\eta_0\f$ = `initial`.
	\return `True`, if both sides agree.
	"""
	process = process if process is not None else DualProcess(record=False)
	forward = forward_micro(rep, initial, t).flat()[w]
	backward = process.run(rep, w, t, record=False).final.satisfied_by(initial.flat())
	if bool(forward) != backward:
		logger.warning("Duality violated at w=%d, t=%g (forward %s, dual %s).", w, t, forward, backward)
	return bool(forward) == backward
