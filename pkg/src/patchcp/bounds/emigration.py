r"""
Contains the closed form bounds behind extinction under long-range dispersal.

Offspring sent out of a patch land on one of \f$2M\f$ patches chosen uniformly.
As long as no two of them land on the same patch, none of the receiving patches
holds a reproducing pair. The bounds combine the expected number of emigrants of an
isolated patch with the probability of such a collision.
\date 2026
"""

import logging
import math
import warnings

import numpy as np

from ..utils.misc import ceil_cube_root

logger = logging.getLogger(__name__)

## Values of \f$a\f$ within this distance of 4 use the \f$a = 4\f$ formula.
CRITICAL_TOLERANCE = 1e-12

def mean_emigrants_bound(a: float, b: float, N: int) -> float:
	r"""
	Bound on the expected number \f$E X\f$ of offspring a single full patch sends out before it dies:
	- \f$a < 4\f$: \f$b N (1 - a/4)^{-1}\f$,
	- \f$a = 4\f$: \f$(b/2)(N+2)^2\f$,
	- \f$a > 4\f$: \f$b (a/4 - 1)^{-2} (a/4)^{N+2}\f$.
	
	The three cases are separate bounds, the result is not continuous in \f$a\f$.
	"""
	if a < 0 or b < 0 or N < 2:
		raise ValueError("Requires a, b >= 0 and N >= 2, got a={}, b={}, N={}.".format(a, b, N))
	r = a/4.0
	if abs(a - 4.0) <= CRITICAL_TOLERANCE:
		return b/2.0*(N + 2)**2
	if a < 4.0:
		return b*N/(1.0 - r)
	return b*(r - 1.0)**-2*r**(N + 2)

def collision_prob_bound(M: int) -> float:
	r"""
	Bound \f$\frac{1}{2} M^{-1/3}\f$ on the probability, that among the first
	\f$\lceil M^{1/3} \rceil\f$ emigrants two land on the same patch. Valid for large \f$M\f$.
	"""
	if M < 1:
		raise ValueError("Range M must be at least 1, got {}.".format(M))
	return 0.5*M**(-1.0/3.0)

def exact_collision_probability(M: int) -> float:
	r"""
	Exact probability \f$1 - \prod_{j=0}^{\lceil M^{1/3} \rceil - 1} (1 - j/(2M))\f$, that
	\f$\lceil M^{1/3} \rceil\f$ emigrants placed uniformly on \f$2M\f$ patches do not all land on distinct patches.
	The product is accumulated in logarithms.
	"""
	if M < 1:
		raise ValueError("Range M must be at least 1, got {}.".format(M))
	k = ceil_cube_root(M)
	j = np.arange(k)
	log_product = np.sum(np.log1p(-j/(2.0*M)))
	return float(-np.expm1(log_product))

def survival_upper_bound(a: float, b: float, N: int, M: int) -> float:
	r"""
	Bound \f$M^{-1/3}(1/2 + E X)\f$ on the survival probability from a single full patch,
	with \f$E X\f$ from \ref mean_emigrants_bound().
	The raw value is returned, it may exceed 1.
	"""
	if M < 1:
		raise ValueError("Range M must be at least 1, got {}.".format(M))
	value = M**(-1.0/3.0)*(0.5 + mean_emigrants_bound(a, b, N))
	if value >= 1.0:
		logger.debug("Survival bound %.4g for a=%g b=%g N=%d M=%d is not informative.", value, a, b, N, M)
	return value

def clamped(value: float) -> float:
	r"""
	Clamp a probability bound to \f$[0, 1]\f$ for display.
	"""
	return min(max(value, 0.0), 1.0)

def dual_collision_bound(a: float, b: float, N: int, t: float) -> float:
	r"""
	Bound \f$K^{-1} e^{2(a+b)t} + 2K(K+1)/N\f$ with \f$K = N^{0.2}\f$ on the probability,
	that the dual family of a single location experiences a collision before dual time \f$t\f$.
	"""
	if N < 2 or not t > 0:
		raise ValueError("Requires N >= 2 and t > 0, got N={}, t={}.".format(N, t))
	K = N**0.2
	value = math.exp(2.0*(a + b)*t)/K + 2.0*K*(K + 1.0)/N
	if value >= 1.0:
		warnings.warn("Dual collision bound {:.4g} is not below 1 for N={}.".format(value, N), RuntimeWarning)
	return value
