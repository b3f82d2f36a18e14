r"""
Contains the deterministic skeleton of the patch model, the mean-field equation
\f[
	u'(t) = Q(u) = a u^2 (1 - u) - u
\f]
for the occupied fraction \f$u\f$ of a patch.
For \f$a > 4\f$, \f$Q\f$ has the nontrivial roots
\f$c_\pm(a) = 1/2 \pm \sqrt{1/4 - 1/a}\f$, where \f$c_-\f$ is unstable (Allee threshold)
and \f$c_+\f$ is stable (carrying fraction).
For \f$a < 4\f$, \f$0\f$ is the only root in \f$[0, 1]\f$ and every solution goes extinct.
\date 2026
"""

import dataclasses
import logging
import math

import numpy as np

from .utils import errors
from .utils import integration

logger = logging.getLogger(__name__)

## Values of \f$a\f$ within this distance of 4 are treated as the double root case.
DEGENERACY_TOLERANCE = 1e-12

@dataclasses.dataclass(frozen=True)
class MeanFieldRoots:
	r"""
	The nontrivial roots \f$c_- \leq c_+\f$ of \f$Q\f$.
	"""
	## Unstable root \f$c_- \in (0, 1/2]\f$.
	c_minus: float
	## Stable root \f$c_+ \in [1/2, 1)\f$.
	c_plus: float
	## `True` for \f$a = 4\f$, where both roots coincide at \f$1/2\f$.
	degenerate: bool = False

def q_eval(u: float, a: float) -> float:
	r"""
	Evaluate \f$Q(u) = a u^2 (1 - u) - u\f$.
	Works elementwise on `np.array`.
	"""
	return a*u*u*(1.0 - u) - u

def roots(a: float) -> MeanFieldRoots:
	r"""
	Nontrivial roots of \f$Q\f$.
	\param a Internal birth coefficient, must be positive.
	\return \ref MeanFieldRoots for \f$a \geq 4\f$ (flagged degenerate at \f$a = 4\f$), `None` for \f$a < 4\f$.
	"""
	if not a > 0:
		raise errors.DomainError("Roots of Q are defined for a > 0, got a={}.".format(a))
	if abs(a - 4.0) <= DEGENERACY_TOLERANCE:
		return MeanFieldRoots(0.5, 0.5, degenerate=True)
	if a < 4.0:
		return None
	root = math.sqrt(0.25 - 1.0/a)
	# the smaller root from the product c_- c_+ = 1/a, without cancellation
	c_plus = 0.5 + root
	c_minus = 1.0/(a*c_plus)
	return MeanFieldRoots(c_minus, c_plus)

def inner_threshold(a: float) -> float:
	r"""
	Threshold \f$2 a^3 c_-^4\f$ on \f$b\f$, above which internal reproduction
	with \f$a > 4\f$ sustains survival.
	The value is cross-checked against the equivalent form \f$2 c_- / c_+^3\f$.
	"""
	if not a > 4.0 + DEGENERACY_TOLERANCE:
		raise errors.DomainError("The inner threshold requires a > 4, got a={}.".format(a))
	r = roots(a)
	value = 2.0*a**3*r.c_minus**4
	alternative = 2.0*r.c_minus/r.c_plus**3
	if abs(value - alternative) > 1e-10*max(1.0, abs(value)):
		raise errors.NumericalInstabilityError("Inconsistent inner threshold: {} != {}.".format(value, alternative))
	return value

@dataclasses.dataclass(frozen=True)
class MeanFieldTrajectory:
	r"""
	Sampled solution of the mean-field equation and the classification of its limit.
	"""
	## Time grid.
	times: np.array
	## Solution values on \ref times.
	values: np.array
	## Coefficient \f$a\f$.
	a: float
	## One of `"extinct"`, `"upper_equilibrium"` or `"undetermined"`.
	limit: str
	@property
	def final(self) -> float:
		return float(self.values[-1])

def classify(u: float, a: float, tolerance: float = 1e-3) -> str:
	r"""
	Classify the value \f$u\f$ at the end of a horizon.
	\return `"extinct"` below `tolerance`, `"upper_equilibrium"` within `tolerance` of
		\f$c_+\f$ (if it exists), `"undetermined"` otherwise.
	"""
	if u < tolerance:
		return "extinct"
	r = roots(a) if a > 0 else None
	if r is not None and abs(u - r.c_plus) < tolerance:
		return "upper_equilibrium"
	return "undetermined"

def integrate(u0: float,
		a: float,
		step: float = 1e-3,
		horizon: float = 200.0,
		integrator: integration.Integrator = None,
		tolerance: float = 1e-3,
		) -> MeanFieldTrajectory:
	r"""
	Integrate \f$u' = Q(u)\f$ from \f$u(0) = u_0\f$ with a fixed step fourth order scheme.
	\param u0 Initial fraction in \f$(0, 1)\f$.
	\param a Internal birth coefficient.
	\param step Step width.
	\param horizon End time.
	\param integrator Integrator to use, defaults to \ref utils.integration.Integrator with `"rk4"`.
	\param tolerance Classification tolerance, see \ref classify().
	\throws NumericalInstabilityError if the solution leaves \f$[-10^{-9}, 1+10^{-9}]\f$.
	"""
	if not 0.0 < u0 < 1.0:
		raise ValueError("Initial fraction must lie in (0, 1), got {}.".format(u0))
	integrator = integrator if integrator is not None else integration.Integrator()
	times, values, left = integrator.solve(lambda u: q_eval(u, a), u0, horizon, step=step, bounds=(-1e-9, 1.0 + 1e-9))
	if left:
		raise errors.NumericalInstabilityError("Mean-field solution left [0, 1] at t={:.6g}; reduce the step {}.".format(times[-1], step))
	limit = classify(float(values[-1]), a, tolerance)
	logger.info("Mean-field a=%g u0=%g: u(%g)=%.6g, %s", a, u0, times[-1], values[-1], limit)
	return MeanFieldTrajectory(times, values, a, limit)

def regime(a: float, b: float) -> dict:
	r"""
	Known survival and extinction conditions, which apply to the coefficients.
	\return Dictionary of flags:
		- `"branching_extinction"`: \f$a + b \leq 1\f$, extinction by domination with a branching process.
		- `"dual_extinction"`: \f$a + b < 4\f$, the collision-free dual dies out.
		- `"nearest_neighbor_survival"`: \f$b > 8\f$, survival for \f$M = 1\f$ and large \f$N\f$.
		- `"internal_survival"`: \f$a > 4\f$ and \f$b > 2a^3c_-^4\f$, survival for \f$M = 1\f$ and large \f$N\f$.
		- `"conjectured_survival"`: \f$b > 4\f$, conjectured survival region (not proven).
	"""
	internal = a > 4.0 + DEGENERACY_TOLERANCE and b > inner_threshold(a)
	return {
		"branching_extinction": a + b <= 1.0,
		"dual_extinction": a + b < 4.0,
		"nearest_neighbor_survival": b > 8.0,
		"internal_survival": internal,
		"conjectured_survival": b > 4.0,
	}
