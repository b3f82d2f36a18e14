r"""
Contains oriented site percolation on
\f$\mathcal{H} = \{(z, n) \in \mathbb{Z}^2: z + n \text{ even},\ n \geq 0\}\f$
with the edges \f$(z, n) \to (z \pm 1, n + 1)\f$, and the extraction of good sites
from trajectories of the patch chain, which is compared to it.

A site is closed with probability \f$q\f$, independently of all other sites.
The wet set \f$W_n\f$ consists of the open sites at level \f$n\f$, which are reachable from \f$W_0 = \{0\}\f$.

Good sites of a trajectory, with \f$z\f$ relative to the origin patch:
- `"A1"`: \f$(\xi_t(z), \xi_t(z+1)) \in \Omega_0\f$ for all \f$t \in ((2n+2)N, (2n+4)N)\f$,
- `"A2"`: \f$\xi_t(z) > c_+ N - 3\sqrt{N}\f$ at \f$t = 4nN\f$, requires \f$a > 4\f$.
\date 2026
"""

import dataclasses
import logging
import math
import warnings

import numpy as np

from . import meanfield
from .bounds.regions import omega_rho
from .model.params import ModelParams
from .simulation.trajectory import Trajectory
from .utils import errors
from .utils import seeding
from .utils.misc import binomial_ci_halfwidth

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class PercParams:
	r"""
	Parameters of a percolation run.
	"""
	## Closure probability per site.
	q: float
	## Number of generations after level 0.
	levels: int
	## Maximal \f$|z|\f$ tracked, defaults to `levels + 1`, beyond the light cone of \f$W_0 = \{0\}\f$.
	width_cap: int = None
	def __post_init__(self):
		if not 0.0 <= self.q <= 1.0:
			raise ValueError("Closure probability q={} is not in [0, 1].".format(self.q))
		if self.levels < 0:
			raise ValueError("Number of levels must be nonnegative, got {}.".format(self.levels))
		if self.width_cap is None:
			object.__setattr__(self, "width_cap", self.levels + 1)
		elif self.width_cap < 1:
			raise ValueError("Width cap must be positive, got {}.".format(self.width_cap))

@dataclasses.dataclass(frozen=True)
class WetSet:
	r"""
	Wet sites \f$W_n\f$ at level \f$n\f$.
	"""
	## Level \f$n\f$.
	level: int
	## Frozen set of wet \f$z\f$.
	wet: frozenset
	## `True`, if the front was clipped by the width cap at some level up to this one.
	truncated: bool = False
	def __post_init__(self):
		object.__setattr__(self, "wet", frozenset(int(z) for z in self.wet))
		if any((z + self.level) % 2 for z in self.wet):
			raise ValueError("Wet set at level {} violates the parity of H: {}.".format(self.level, sorted(self.wet)))
	@property
	def is_empty(self) -> bool:
		return len(self.wet) == 0
	@classmethod
	def origin(cls) -> "WetSet":
		return cls(0, frozenset([0]))

def evolve(w: WetSet, q: float, rng: np.random.Generator, width_cap: int = None) -> WetSet:
	r"""
	One generation: \f$z'\f$ is wet at level \f$n+1\f$, if it is open and \f$z' - 1\f$ or \f$z' + 1\f$ is wet at level \f$n\f$.
	Candidates are visited in increasing order, each consuming one uniform variate.
	\param width_cap Sites with \f$|z'| >\f$ `width_cap` are dropped with a `RuntimeWarning`.
	"""
	candidates = sorted({z + d for z in w.wet for d in (-1, 1)})
	truncated = w.truncated
	if width_cap is not None:
		inside = [z for z in candidates if abs(z) <= width_cap]
		if len(inside) < len(candidates):
			warnings.warn("Wet front clipped at |z| = {} on level {}.".format(width_cap, w.level + 1), RuntimeWarning)
			truncated = True
		candidates = inside
	opened = rng.random(len(candidates)) >= q
	return WetSet(w.level + 1, frozenset(z for z, o in zip(candidates, opened) if o), truncated)

def evolve_batch(wet: np.array, q: float, rng: np.random.Generator) -> np.array:
	r"""
	One generation for many independent replicas at once.
	\param wet Boolean array of shape `(replicas, 2*width_cap + 1)`, column \f$c\f$ stands for \f$z = c - \f$ `width_cap`.
	\return The next level in the same layout. Sites beyond the cap are dropped.
	"""
	reached = np.zeros_like(wet)
	reached[:, 1:] |= wet[:, :-1]
	reached[:, :-1] |= wet[:, 1:]
	return reached & (rng.random(wet.shape) >= q)

@dataclasses.dataclass(frozen=True)
class PercEstimate:
	r"""
	Fraction of replicas with \f$W_n \neq \emptyset\f$ at the final level.
	"""
	## Parameters of the runs.
	params: PercParams
	## Number of replicas.
	replicas: int
	## Number of replicas wet at the final level.
	survived: int
	## Root seed.
	seed: int
	## Number of replicas, whose front reached the width cap.
	truncated: int = 0
	@property
	def point(self) -> float:
		return self.survived/self.replicas
	@property
	def ci_halfwidth(self) -> float:
		return binomial_ci_halfwidth(self.point, self.replicas)

def estimate_perc_survival(q: float, levels: int, replicas: int, seed: int, width_cap: int = None) -> PercEstimate:
	r"""
	Estimate the probability, that the cluster of \f$W_0 = \{0\}\f$ reaches level `levels`.
	All replicas are evolved together by \ref evolve_batch() on the generator of `seed`.
	"""
	if replicas < 1:
		raise ValueError("At least one replica is required, got {}.".format(replicas))
	params = PercParams(q, levels, width_cap)
	cap = params.width_cap
	wet = np.zeros((replicas, 2*cap + 1), dtype=bool)
	wet[:, cap] = True
	rng = seeding.generator(seed)
	touched = np.zeros(replicas, dtype=bool)
	for _ in range(levels):
		touched |= wet[:, 0] | wet[:, -1]
		wet = evolve_batch(wet, q, rng)
		if not wet.any():
			break
	truncated = int(touched.sum())
	if truncated:
		warnings.warn("{} of {} replicas reached the width cap {}.".format(truncated, replicas, cap), RuntimeWarning)
	survived = int(wet.any(axis=1).sum())
	logger.info("Percolation at q=%g over %d levels: %d/%d wet.", q, levels, survived, replicas)
	return PercEstimate(params, replicas, survived, seed, truncated)

def _coverage(horizon: float, variant: str, N: int) -> int:
	if variant == "A1":
		return math.floor((horizon/N - 4.0)/2.0)
	return math.floor(horizon/(4.0*N))

def _offsets(level: int, L: int) -> np.array:
	half = (L - 1)//2
	z = np.arange(-half, half + 1)
	return z[(z + level) % 2 == 0]

def good_sites(trajectory: Trajectory,
		variant: str,
		params: ModelParams,
		roots: meanfield.MeanFieldRoots = None,
		levels: int = None,
		) -> dict:
	r"""
	Good sites \f$(z, n) \in \mathcal{H}\f$ of a recorded trajectory.
	The offsets \f$z\f$ are taken relative to the origin patch of the trajectory
	and range over \f$|z| \leq (L-1)/2\f$.
	\param trajectory Recorded \ref simulation.trajectory.Trajectory.
	\param variant `"A1"` or `"A2"`, see the module description.
	\param params Model parameters of the trajectory.
	\param roots Mean-field roots for `"A2"`, defaults to the roots at \f$a\f$.
	\param levels Number of levels \f$n = 0, \dots,\f$ `levels`.
		Defaults to the largest level covered by the horizon.
	\return Dictionary from level \f$n\f$ to the frozen set of good \f$z\f$.
	"""
	if variant not in ("A1", "A2"):
		raise ValueError("No such option '{}' known for `variant`.".format(variant))
	coverage = _coverage(trajectory.horizon, variant, params.N)
	levels = levels if levels is not None else coverage
	# an extinct trajectory stays empty beyond its horizon
	if levels < 0 or (levels > coverage and not trajectory.extinct):
		raise errors.CoverageError("Horizon {} covers levels up to {} for variant {}, requested {}.".format(
			trajectory.horizon, coverage, variant, levels), coverage)
	if variant == "A1":
		result = _good_a1(trajectory, params, levels)
	else:
		if roots is None:
			roots = meanfield.roots(params.a)
			if roots is None or roots.degenerate:
				raise errors.DomainError("Good sites of variant A2 require a > 4, got a={}.".format(params.a))
		result = _good_a2(trajectory, params, roots, levels)
	logger.debug("Good sites (%s): %s", variant, {n: len(z) for n, z in result.items()})
	return result

def _good_a2(trajectory, params, roots, levels):
	threshold = roots.c_plus*params.N - 3.0*math.sqrt(params.N)
	result = {}
	for n in range(levels + 1):
		counts = trajectory.state_at(4.0*n*params.N).counts
		z = _offsets(n, params.L)
		good = counts[(trajectory.origin + z) % params.L] > threshold
		result[n] = frozenset(z[good].tolist())
	return result

def _good_a1(trajectory, params, levels):
	N, L = params.N, params.L
	region = omega_rho(N, 0.0)
	result = {}
	for n in range(levels + 1):
		start, end = (2*n + 2)*N, (2*n + 4)*N
		counts = trajectory.state_at(start).counts.copy()
		# pair (x, x+1) of patches is indexed by x
		good = region.contains(counts, np.roll(counts, -1))
		first = int(np.searchsorted(trajectory.times, start, side="right"))
		last = int(np.searchsorted(trajectory.times, end, side="left"))
		for x, d in zip(trajectory.patches[first:last].tolist(), trajectory.deltas[first:last].tolist()):
			counts[x] += d
			for p in ((x - 1) % L, x):
				if good[p] and not region.contains(counts[p], counts[(p + 1) % L]):
					good[p] = False
			if not good.any():
				break
		z = _offsets(n, L)
		result[n] = frozenset(z[good[(trajectory.origin + z) % L]].tolist())
	return result

def cluster_depth(good: dict) -> int:
	r"""
	Number of consecutive levels, starting at 0, reached by the oriented cluster of good sites,
	which contains \f$(0, 0)\f$. Returns 0, if \f$(0, 0)\f$ is not good.
	"""
	wet = {0} & set(good.get(0, ()))
	depth = 0
	n = 0
	while wet:
		depth += 1
		n += 1
		if n not in good:
			break
		wet = {z + d for z in wet for d in (-1, 1)} & set(good[n])
	return depth

def full_cone_event(w: WetSet) -> bool:
	r"""
	Whether \f$W_n = \{-n, -n+2, \dots, n\}\f$, all sites of the light cone at level \f$n\f$ are wet.
	"""
	return w.wet == frozenset(range(-w.level, w.level + 1, 2))
