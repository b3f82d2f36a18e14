r"""
Contains the exact transition rates of the patch chain and of the individual-level chain.

Births come from ordered pairs \f$(\mathbf{y}, \mathbf{z})\f$ of distinct occupied locations.
A patch with \f$k\f$ individuals therefore contributes \f$k(k-1)\f$ pairs, not \f$k(k-1)/2\f$.
The normalization \f$N(N-1)\f$ is the number of ordered pairs of a full patch.
\date 2026
"""

import numpy as np

from .configurations import MesoConfig, MicroConfig
from .lattice import neighbors, neighbor_sum
from .params import ModelParams

def ordered_pairs(k):
	r"""
	Number of ordered pairs \f$k(k-1)\f$ of distinct individuals among \f$k\f$.
	"""
	return k*(k - 1)

def up_rate(config: MesoConfig, x: int, params: ModelParams) -> float:
	r"""
	Rate of the transition \f$\xi(x) \to \xi(x) + 1\f$,
	\f[
		\frac{a}{N(N-1)} \xi(x)(\xi(x)-1)(N-\xi(x))
		+ \sum_{y \sim x} \frac{1}{2M} \frac{b}{N(N-1)} \xi(y)(\xi(y)-1)(N-\xi(x)).
	\f]
	\param config Patch configuration.
	\param x Patch index.
	\param params Model parameters.
	"""
	N = params.N
	k = int(config.counts[x])
	free = N - k
	internal = params.a*ordered_pairs(k)*free/(N*(N - 1))
	immigrant_pairs = sum(ordered_pairs(int(config.counts[y])) for y in neighbors(x, params))
	immigration = params.b/(2*params.M)*immigrant_pairs*free/(N*(N - 1))
	return internal + immigration

def down_rate(config: MesoConfig, x: int) -> float:
	r"""
	Rate of the transition \f$\xi(x) \to \xi(x) - 1\f$, which is \f$\xi(x)\f$.
	"""
	return float(config.counts[x])

def up_rates(config: MesoConfig, params: ModelParams) -> np.array:
	r"""
	\ref up_rate() of all patches at once.
	"""
	N = params.N
	k = config.counts.astype(float)
	pairs = ordered_pairs(k)
	free = N - k
	internal = params.a*pairs*free/(N*(N - 1))
	immigration = params.b/(2*params.M)*neighbor_sum(pairs, params.M)*free/(N*(N - 1))
	return internal + immigration

def total_rate(config: MesoConfig, params: ModelParams) -> float:
	r"""
	Sum of all transition rates of the patch chain, \f$\sum_x\f$ (up rate + down rate).
	It vanishes exactly for the all-zero configuration.
	"""
	return float(up_rates(config, params).sum() + config.counts.sum())

def micro_up_rate_into(micro: MicroConfig, location: tuple, params: ModelParams) -> float:
	r"""
	Birth rate into the location \f$\mathbf{x} = (x, j)\f$ of the individual-level chain,
	\f[
		\frac{a}{N(N-1)} \sum_{A(\mathbf{x})} \eta(\mathbf{y})\eta(\mathbf{z})
		+ \frac{1}{2M} \frac{b}{N(N-1)} \sum_{B(\mathbf{x})} \eta(\mathbf{y})\eta(\mathbf{z}),
	\f]
	where \f$A(\mathbf{x})\f$ contains the ordered pairs of distinct locations of patch \f$x\f$
	and \f$B(\mathbf{x})\f$ those of the patches \f$y \sim x\f$.
	The rate is 0 if the location is occupied.
	"""
	x, j = location
	if micro.occupied[x, j]:
		return 0.0
	N = params.N
	def occupied_pairs(patch):
		row = micro.occupied[patch].astype(np.int64)
		s = int(row.sum())
		return s*s - int((row*row).sum())
	internal = params.a*occupied_pairs(x)/(N*(N - 1))
	immigration = params.b/(2*params.M)*sum(occupied_pairs(y) for y in neighbors(x, params))/(N*(N - 1))
	return internal + immigration

def micro_down_rate(micro: MicroConfig, location: tuple) -> float:
	r"""
	Death rate of the location \f$\mathbf{x} = (x, j)\f$, 1 if occupied and 0 otherwise.
	"""
	return 1.0 if micro.occupied[location] else 0.0

def branching_rate_bound(j: int, params: ModelParams) -> float:
	r"""
	Upper bound \f$(a+b) j\f$ on the total birth rate of a configuration with \f$j\f$ individuals.
	Any patch with \f$k\f$ individuals contributes at most
	\f$(a+b) k(k-1)(N-k)/(N(N-1)) \leq (a+b) k\f$, so the population is dominated by a
	branching process with birth rate \f$a+b\f$ and death rate 1.
	"""
	return (params.a + params.b)*j
