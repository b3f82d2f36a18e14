r"""
Contains Monte Carlo estimation of survival probabilities of the patch chain,
started from a single fully occupied patch.
Survival is operationalized as "alive at the horizon"; runs still alive at the
horizon are censored and reported as survivors.
\date 2026
"""

import concurrent.futures
import dataclasses
import logging

from ..bounds import emigration
from ..model.configurations import MesoConfig
from ..model.params import ModelParams
from ..utils import base
from ..utils.misc import binomial_ci_halfwidth
from .gillespie import MesoSimulator

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class ReplicaRecord:
	r"""
	Outcome of one replica.
	"""
	## Replica index \f$k\f$, the substream key below the root seed.
	replica: int
	## `True`, if the replica was alive at the horizon.
	survived: bool
	## Extinction time, or the horizon for survivors.
	terminal_time: float
	## Number of simulated events.
	steps: int
	## Time of the first collision, `None` if none occurred.
	collision_time: float
	## Whether the occupied region touched the seam of the torus.
	seam_touched: bool

@dataclasses.dataclass(frozen=True)
class SurvivalEstimate:
	r"""
	Estimated survival probability with its 95 % normal approximation confidence interval.
	"""
	## Model parameters.
	params: ModelParams
	## Number of replicas.
	replicas: int
	## Horizon of every replica.
	horizon: float
	## Number of replicas alive at the horizon.
	survived: int
	## Root seed.
	seed: int
	## Per-replica outcomes, ordered by replica index.
	records: tuple = ()
	## Survival upper bound for long-range dispersal, attached by \ref range_sweep().
	upper_bound: float = None
	@property
	def point(self) -> float:
		return self.survived/self.replicas
	@property
	def ci_halfwidth(self) -> float:
		return binomial_ci_halfwidth(self.point, self.replicas)
	@property
	def censored(self) -> int:
		r"""
		Number of replicas, whose extinction was not observed before the horizon.
		"""
		return self.survived
	@property
	def collided(self) -> int:
		r"""
		Number of replicas with a collision before their end.
		"""
		return sum(r.collision_time is not None for r in self.records)

class SurvivalEstimator(base.Workflow):
	r"""
	Runs independent seeded replicas of \ref MesoSimulator and aggregates them.
	Replica \f$k\f$ uses the substream \f$(k)\f$ of the root seed, so the result does
	not depend on the number of workers or the completion order.
	"""
	def __init__(self,
				simulator: MesoSimulator = None,
				workers: int = 1,
			*args, **kwargs):
		r"""
		Constructs a SurvivalEstimator object.
		\param simulator \copybrief simulator For more, see \ref simulator.
		\param workers \copybrief workers For more, see \ref workers.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## \ref MesoSimulator used for each replica. Events are not recorded by default.
		self.simulator = simulator if simulator is not None else MesoSimulator(record=False)
		## Number of worker threads.
		self.workers = workers
	def run(self,
			params: ModelParams,
			horizon: float = None,
			replicas: int = 1000,
			seed: int = 0,
			origin: int = None,
			workers: int = None,
			) -> SurvivalEstimate:
		r"""
		Estimate the probability, that the chain started with a single full patch is alive at `horizon`.
		\param params Model parameters.
		\param horizon Defaults to \f$40N\f$.
		\param replicas Number of replicas, at least 1.
		\param seed Root seed.
		\param origin The initially full patch, defaults to \f$\lfloor L/2 \rfloor\f$.
		\param workers \copybrief workers Defaults to \ref workers.
		"""
		horizon = horizon if horizon is not None else 40.0*params.N
		workers = workers if workers is not None else self.workers
		origin = origin if origin is not None else params.L//2
		if replicas < 1:
			raise ValueError("At least one replica is required, got {}.".format(replicas))
		initial = MesoConfig.single_full_patch(params, origin)
		def replica(k):
			trajectory = self.simulator.run(initial, params, horizon, seed, stream=(k,), origin=origin)
			return ReplicaRecord(k, not trajectory.extinct, trajectory.terminal_time, trajectory.steps, trajectory.collision_time, trajectory.seam_touched)
		if workers > 1:
			with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
				records = tuple(pool.map(replica, range(replicas)))
		else:
			records = tuple(replica(k) for k in range(replicas))
		survived = sum(r.survived for r in records)
		estimate = SurvivalEstimate(params, replicas, horizon, survived, seed, records)
		logger.info("Survival %s: %d/%d alive at t=%g (point %.4f +- %.4f).", params, survived, replicas, horizon, estimate.point, estimate.ci_halfwidth)
		return estimate

def estimate_survival(params: ModelParams, horizon: float = None, replicas: int = 1000, seed: int = 0, workers: int = 1) -> SurvivalEstimate:
	r"""
	Estimate the survival probability from a single full patch, see \ref SurvivalEstimator.run().
	"""
	return SurvivalEstimator(workers=workers).run(params, horizon=horizon, replicas=replicas, seed=seed)

def range_sweep(params: ModelParams,
		m_values: list,
		horizon: float = None,
		replicas: int = 1000,
		seed: int = 0,
		workers: int = 1,
		monitor_seam: bool = True,
		) -> list:
	r"""
	Estimate the survival probability for each dispersal range in `m_values`.
	Sweep point \f$i\f$ uses the root seed \f$s+i\f$, so a sweep over a single range
	reproduces \ref estimate_survival() with seed \f$s\f$.
	Each estimate carries the survival upper bound
	\ref bounds.emigration.survival_upper_bound() in \ref SurvivalEstimate.upper_bound.
	\param params Parameters, whose \f$M\f$ is replaced by each entry of `m_values`.
	\param m_values Nonempty list of ranges, each with \f$L \geq 2M+1\f$.
	\param monitor_seam If `True`, a replica reaching the seam of the torus fails the sweep
		with \ref utils.errors.SeamError.
	"""
	if len(m_values) == 0:
		raise ValueError("The list of dispersal ranges is empty.")
	estimator = SurvivalEstimator(simulator=MesoSimulator(record=False, monitor_seam=monitor_seam), workers=workers)
	results = []
	for i, m in enumerate(m_values):
		params_m = params.replace(M=int(m))
		estimate = estimator.run(params_m, horizon=horizon, replicas=replicas, seed=seed + i)
		bound = emigration.survival_upper_bound(params.a, params.b, params.N, int(m))
		results.append(dataclasses.replace(estimate, upper_bound=bound))
	return results
