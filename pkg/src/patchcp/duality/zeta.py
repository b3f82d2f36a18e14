r"""
Contains the collision-free version \f$\hat\zeta\f$ of the dual process.

It follows the rules of the dual, except that the parents of each birth are fresh points,
which never occurred before.
Every alive point carries a birth clock of rate \f$a + b\f$ and a death clock of rate \f$1\f$.
Fresh identifiers replace the uniformly distributed marks of the parents, since only their identity matters.

Because no point is ever shared, the family is a read-once formula:
a point \f$p\f$ stands for "\f$p\f$ or (\f$p_1\f$ and \f$p_2\f$) or ...", one pair per birth at \f$p\f$.
The family is stored as this tree and materialized as sets only on demand.

The probability \f$q(t)\f$, that the family started at one point survives a dual time \f$t\f$, satisfies
\f[
	q'(t) = (a+b) q^2 (1 - q) - q, \quad q(0) = 1,
\f]
so it converges to the largest root of \f$\rho \mapsto (a+b)\rho^2(1-\rho) - \rho\f$ in \f$[0, 1]\f$.

The number of alive points grows like \f$e^{(a+b-1)s}\f$ even where the family dies out,
so a large number of points does not indicate survival.
Instead, a run may stop at a point threshold: every alive point then starts an independent copy of the process,
which survives the remaining time \f$r\f$ with probability \f$q(r)\f$,
and the formula evaluated with these probabilities is the exact conditional survival probability.
\date 2026
"""

import concurrent.futures
import dataclasses
import logging

import numpy as np

from .. import meanfield
from ..utils import base
from ..utils import errors
from ..utils import integration
from ..utils import seeding
from ..utils.misc import binomial_ci_halfwidth

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class ZetaState:
	r"""
	Snapshot of the collision-free dual at dual time \f$s\f$.
	"""
	## Frozen set of frozen sets of point identifiers.
	sets: frozenset
	## Identifiers of the alive points, the points still carrying clocks.
	alive_points: frozenset
	## Dual time.
	dual_clock: float
	@property
	def is_empty(self) -> bool:
		return len(self.sets) == 0

@dataclasses.dataclass(frozen=True)
class ZetaResult:
	r"""
	Outcome of one run of \ref ZetaProcess.
	"""
	## `True`, if the family became empty before the horizon.
	extinct: bool
	## Dual time of extinction, `None` for survivors.
	died_at: float
	## Horizon of the run.
	horizon: float
	## `"birth"` or `"death"` for the first event, `None` if no event happened before the horizon.
	first_event: str
	## Maximal number of alive points along the run.
	max_alive: int
	## Number of alive points at the requested sample times.
	alive_counts: tuple = ()
	## Number of events.
	steps: int = 0
	## `True`, if the run stopped at \ref ZetaProcess.survival_threshold.
	saturated: bool = False
	## Dual time of the last simulated event of a saturated run.
	stopped_at: float = None
	## Probability of survival up to the horizon given the run:
	## 0 or 1 for completed runs, the conditional probability for saturated ones.
	survival_probability: float = None
	@property
	def outcome(self) -> tuple:
		r"""
		`("died_at", s)` or `("alive_at", t)`.
		A saturated run reports `("alive_at", s)` with the dual time \f$s\f$, at which it stopped.
		"""
		if self.saturated:
			return ("alive_at", self.stopped_at)
		if self.extinct:
			return ("died_at", self.died_at)
		return ("alive_at", self.horizon)

class _Node:
	__slots__ = ("identifier", "self_alive", "pairs", "parent", "relevant")
	def __init__(self, identifier: int, parent=None):
		self.identifier = identifier
		self.self_alive = True
		self.pairs = []
		# pair, in which this node is a parent, None for the root
		self.parent = parent
		self.relevant = True

class _Pair:
	__slots__ = ("owner", "left", "right", "alive")
	def __init__(self, owner: _Node):
		self.owner = owner
		self.left = None
		self.right = None
		self.alive = True

class ZetaProcess(base.Task):
	r"""
	Event-driven simulation of \f$\hat\zeta\f$ started from a single point.
	"""
	def __init__(self,
				max_points: int = 10**6,
				survival_threshold: int = None,
				step: float = 1e-3,
			*args, **kwargs):
		r"""
		Constructs a ZetaProcess object.
		\param max_points \copybrief max_points For more, see \ref max_points.
		\param survival_threshold \copybrief survival_threshold For more, see \ref survival_threshold.
		\param step \copybrief step For more, see \ref step.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Cap on the number of alive points, exceeding it raises \ref utils.errors.ExplosionError.
		self.max_points = max_points
		## Number of alive points, at which a run stops and reports its conditional survival probability.
		## `None` runs every replica to extinction, the horizon or \ref max_points.
		self.survival_threshold = survival_threshold
		## Step width for \ref survival_curve(), used by saturated runs.
		self.step = step
		self._reset()
	def _reset(self):
		self._next_identifier = 1
		self._root = _Node(0)
		self._nodes = {0: self._root}
		self._alive = [self._root]
		self._position = {0: 0}
		self.clock = 0.0
		self.first_event = None
	@property
	def alive_count(self) -> int:
		return len(self._alive)
	@property
	def is_empty(self) -> bool:
		return not self._root.relevant
	def _add_alive(self, node: _Node):
		self._position[node.identifier] = len(self._alive)
		self._alive.append(node)
	def _remove_alive(self, node: _Node):
		index = self._position.pop(node.identifier)
		last = self._alive.pop()
		if last is not node:
			self._alive[index] = last
			self._position[last.identifier] = index
	def _prune(self, node: _Node):
		stack = [node]
		while stack:
			current = stack.pop()
			current.relevant = False
			if current.self_alive:
				self._remove_alive(current)
			del self._nodes[current.identifier]
			for pair in current.pairs:
				if pair.alive:
					pair.alive = False
					stack.extend((pair.left, pair.right))
	def _point(self, identifier: int) -> _Node:
		node = self._nodes.get(identifier)
		if node is None or not node.self_alive:
			raise ValueError("Point {} is not alive.".format(identifier))
		return node
	def birth(self, identifier: int) -> tuple:
		r"""
		Birth at the alive point `identifier`: its position in the formula becomes
		"point or (fresh and fresh)".
		\return Identifiers of the two fresh points.
		"""
		pair = self._birth(self._point(identifier))
		return pair.left.identifier, pair.right.identifier
	def death(self, identifier: int):
		r"""
		Death at the alive point `identifier`: all sets containing it vanish.
		Subformulas, which became false, are removed bottom up.
		"""
		self._death(self._point(identifier))
	def _birth(self, node: _Node) -> _Pair:
		pair = _Pair(node)
		pair.left = _Node(self._next_identifier, pair)
		pair.right = _Node(self._next_identifier + 1, pair)
		self._next_identifier += 2
		node.pairs.append(pair)
		for child in (pair.left, pair.right):
			self._nodes[child.identifier] = child
			self._add_alive(child)
		if len(self._alive) > self.max_points:
			raise errors.ExplosionError("Zeta process exceeded {} alive points at dual time {:.6g}.".format(self.max_points, self.clock))
		return pair
	def _death(self, node: _Node):
		node.self_alive = False
		self._remove_alive(node)
		current = node
		while not current.self_alive and not any(p.alive for p in current.pairs):
			# the subtree of current is false, which kills the pair it belongs to
			pair = current.parent
			current.relevant = False
			del self._nodes[current.identifier]
			if pair is None:
				return
			pair.alive = False
			sibling = pair.right if current is pair.left else pair.left
			self._prune(sibling)
			current = pair.owner
	def run(self,
			a: float,
			b: float,
			t: float,
			seed: int,
			sample_times=(),
			curve: tuple = None,
			) -> ZetaResult:
		r"""
		Run the process from a single point up to the dual horizon `t`, extinction or \ref survival_threshold.
		\param a Internal birth coefficient.
		\param b Dispersal birth coefficient.
		\param t Dual horizon, must be positive.
		\param seed Root seed or `numpy.random.SeedSequence`.
		\param sample_times Increasing dual times, at which the number of alive points is recorded.
			Samples after the stop of a saturated run are not recorded.
		\param curve Precomputed \ref survival_curve() for `a`, `b` and `t`, computed on demand otherwise.
		"""
		if not t > 0:
			raise ValueError("The dual horizon must be positive, got t={}.".format(t))
		if a < 0 or b < 0:
			raise ValueError("Coefficients must be nonnegative, got a={}, b={}.".format(a, b))
		threshold = self.survival_threshold
		if threshold is not None and threshold < 2:
			raise ValueError("The survival threshold must be at least 2, got {}.".format(threshold))
		rng = np.random.default_rng(seed)
		stream = seeding.UniformStream(rng)
		self._reset()
		samples = list(sample_times)
		counts = []
		max_alive = 1
		steps = 0
		saturated = False
		while not self.is_empty:
			if threshold is not None and len(self._alive) >= threshold:
				saturated = True
				break
			waiting_time, kind = self.next_event(a, b, stream)
			if self.clock + waiting_time > t:
				break
			while samples and samples[0] < self.clock + waiting_time:
				counts.append(len(self._alive))
				samples.pop(0)
			self.clock += waiting_time
			if self.first_event is None:
				self.first_event = kind
			node = self._alive[stream.integer(len(self._alive))]
			if kind == "birth":
				self._birth(node)
			else:
				self._death(node)
			max_alive = max(max_alive, len(self._alive))
			steps += 1
		extinct = self.is_empty
		if saturated:
			if curve is None:
				curve = survival_curve(a, b, t, step=self.step)
			probability = self.conditional_survival(float(np.interp(t - self.clock, *curve)))
		else:
			for _ in samples:
				counts.append(len(self._alive))
			probability = 0.0 if extinct else 1.0
		logger.debug("Zeta run ended after %d events, extinct=%s, saturated=%s.", steps, extinct, saturated)
		return ZetaResult(
			extinct=extinct,
			died_at=self.clock if extinct else None,
			horizon=t,
			first_event=self.first_event,
			max_alive=max_alive,
			alive_counts=tuple(counts),
			steps=steps,
			saturated=saturated,
			stopped_at=self.clock if saturated else None,
			survival_probability=probability,
			)
	def conditional_survival(self, q: float) -> float:
		r"""
		Probability, that the current family is nonempty after a further dual time \f$r\f$,
		if each alive point independently survives \f$r\f$ with probability `q` \f$= q(r)\f$.
		A point survives, if it survives itself or both parents of one of its births survive.
		"""
		if self.is_empty:
			return 0.0
		probability = {}
		stack = [(self._root, False)]
		while stack:
			node, expanded = stack.pop()
			pairs = [pair for pair in node.pairs if pair.alive]
			if not expanded:
				stack.append((node, True))
				for pair in pairs:
					stack.extend(((pair.left, False), (pair.right, False)))
				continue
			dead = 1.0 - q if node.self_alive else 1.0
			for pair in pairs:
				dead *= 1.0 - probability.pop(pair.left.identifier)*probability.pop(pair.right.identifier)
			probability[node.identifier] = 1.0 - dead
		return probability[self._root.identifier]
	def next_event(self, a: float, b: float, stream: seeding.UniformStream) -> tuple:
		r"""
		Draw the waiting time and the kind of the next event, the point is drawn separately.
		\return Tuple `(waiting_time, kind)` with `kind` either `"birth"` or `"death"`.
		"""
		rate = len(self._alive)*(1.0 + a + b)
		waiting_time = stream.exponential(rate)
		kind = "birth" if stream()*(1.0 + a + b) < a + b else "death"
		return waiting_time, kind
	def state(self) -> ZetaState:
		r"""
		Materialize the current family as sets of point identifiers.
		The number of sets can grow exponentially in the number of points.
		"""
		alive = frozenset(node.identifier for node in self._alive)
		if self.is_empty:
			return ZetaState(frozenset(), alive, self.clock)
		return ZetaState(frozenset(self._sets(self._root)), alive, self.clock)
	def _sets(self, node: _Node) -> set:
		result = {frozenset([node.identifier])} if node.self_alive else set()
		for pair in node.pairs:
			if pair.alive:
				left = self._sets(pair.left)
				right = self._sets(pair.right)
				result.update(x | y for x in left for y in right)
		return result

def zeta_run(a: float, b: float, t: float, seed: int, **kwargs) -> ZetaResult:
	r"""
	Run \ref ZetaProcess once.
	\param **kwargs Further arguments of \ref ZetaProcess.run().
	"""
	return ZetaProcess().run(a, b, t, seed, **kwargs)

@dataclasses.dataclass(frozen=True)
class ZetaRecord:
	r"""
	Outcome of one replica of \ref estimate_zeta().
	"""
	replica: int
	extinct: bool
	## Dual time of extinction, `None` for survivors.
	died_at: float
	## `"birth"`, `"death"` or `None`.
	first_event: str
	## `True`, if the replica exceeded the point cap and was censored.
	exploded: bool
	max_alive: int
	## `True`, if the replica stopped at the survival threshold.
	saturated: bool = False
	## 0 or 1 for completed replicas, 1 for censored ones, the conditional probability for saturated ones.
	survival_probability: float = None

@dataclasses.dataclass(frozen=True)
class ZetaEstimate:
	r"""
	Aggregate of independent runs of the collision-free dual.
	"""
	## Internal birth coefficient.
	a: float
	## Dispersal birth coefficient.
	b: float
	## Dual horizon.
	horizon: float
	## Number of replicas.
	replicas: int
	## Number of replicas, which died before the horizon.
	died: int
	## Number of replicas, which exceeded the point cap; they count as alive.
	exploded: int
	## Number of replicas, whose first event was a birth.
	first_births: int
	## Root seed.
	seed: int
	## Per-replica \ref ZetaRecord, ordered by replica index.
	records: tuple = ()
	## Number of replicas, which stopped at the survival threshold.
	saturated: int = 0
	@property
	def survival(self) -> float:
		r"""
		Mean of the per-replica survival probabilities.
		Without saturated replicas, this is the fraction of replicas alive at the horizon.
		"""
		if not self.records:
			return 1.0 - self.died/self.replicas
		return float(np.mean([r.survival_probability for r in self.records]))
	@property
	def death_frequency(self) -> float:
		return 1.0 - self.survival
	@property
	def ci_halfwidth(self) -> float:
		return binomial_ci_halfwidth(self.death_frequency, self.replicas)
	@property
	def first_birth_frequency(self) -> float:
		return self.first_births/self.replicas

def estimate_zeta(a: float,
		b: float,
		t: float,
		replicas: int,
		seed: int,
		max_points: int = 10**5,
		workers: int = 1,
		survival_threshold: int = None,
		) -> ZetaEstimate:
	r"""
	Run `replicas` independent copies of \ref ZetaProcess, replica \f$k\f$ on substream \f$k\f$ of `seed`.
	Replicas exceeding `max_points` are censored as alive.
	\param survival_threshold \copybrief ZetaProcess.survival_threshold
		Saturated replicas contribute their conditional survival probability, which keeps the estimate unbiased.
	"""
	if replicas < 1:
		raise ValueError("At least one replica is required, got {}.".format(replicas))
	curve = survival_curve(a, b, t) if survival_threshold is not None else None
	def replica(k):
		process = ZetaProcess(max_points=max_points, survival_threshold=survival_threshold)
		try:
			result = process.run(a, b, t, seeding.seed_sequence(seed, k), curve=curve)
		except errors.ExplosionError:
			return ZetaRecord(k, False, None, process.first_event, True, max_points, survival_probability=1.0)
		return ZetaRecord(k, result.extinct, result.died_at, result.first_event, False, result.max_alive,
			saturated=result.saturated, survival_probability=result.survival_probability)
	if workers > 1:
		with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
			records = tuple(pool.map(replica, range(replicas)))
	else:
		records = tuple(replica(k) for k in range(replicas))
	died = sum(r.extinct for r in records)
	exploded = sum(r.exploded for r in records)
	saturated = sum(r.saturated for r in records)
	if exploded:
		logger.warning("%d of %d zeta replicas exceeded %d points and were censored.", exploded, replicas, max_points)
	logger.info("Zeta estimate at a+b=%g, t=%g: %d of %d died, %d saturated.", a + b, t, died, replicas, saturated)
	first_births = sum(r.first_event == "birth" for r in records)
	return ZetaEstimate(a, b, t, replicas, died, exploded, first_births, seed, records, saturated)

def survival_curve(a: float, b: float, t: float, step: float = 1e-3, integrator: integration.Integrator = None) -> tuple:
	r"""
	Survival function \f$q\f$ of \f$\hat\zeta\f$ on a grid of \f$[0, t]\f$.
	Solves \f$q' = (a+b) q^2 (1-q) - q\f$, \f$q(0) = 1\f$, the first step equation of the process:
	after a birth the point survives, if it survives itself or both fresh parents survive.
	\return Tuple `(times, values)`.
	"""
	integrator = integrator if integrator is not None else integration.Integrator(step=step)
	c = a + b
	times, values, left = integrator.solve(lambda q: c*q*q*(1.0 - q) - q, 1.0, t, bounds=(-1e-9, 1.0 + 1e-9))
	if left:
		raise errors.NumericalInstabilityError("Survival function left [0, 1] at t={}.".format(times[-1]))
	return times, np.clip(values, 0.0, 1.0)

def zeta_survival(a: float, b: float, t: float, step: float = 1e-3, integrator: integration.Integrator = None) -> float:
	r"""
	Probability, that \f$\hat\zeta\f$ started at one point is nonempty at dual time `t`.
	The last value of \ref survival_curve().
	"""
	return float(survival_curve(a, b, t, step, integrator)[1][-1])

def rho_fixed_points(a: float, b: float) -> tuple:
	r"""
	Roots in \f$[0, 1]\f$ of \f$(a+b)\rho^2(1-\rho) - \rho\f$, in increasing order.
	The nontrivial roots solve \f$(a+b)\rho(1-\rho) = 1\f$, so they are the mean-field roots at \f$a+b\f$.
	"""
	c = a + b
	if not c > 0:
		raise ValueError("The fixed point equation requires a+b > 0, got {}.".format(c))
	r = meanfield.roots(c)
	if r is None:
		return (0.0,)
	if r.degenerate:
		return (0.0, 0.5)
	return (0.0, r.c_minus, r.c_plus)
