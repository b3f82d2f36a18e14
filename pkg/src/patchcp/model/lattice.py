r"""
Contains the geometry of the torus of patches.
\date 2026
"""

import functools

import numpy as np

from .params import ModelParams

@functools.lru_cache(maxsize=64)
def neighbor_offsets(M: int) -> tuple:
	r"""
	Offsets \f$-M, \dots, -1, 1, \dots, M\f$ of the dispersal neighborhood in ascending order.
	"""
	return tuple(range(-M, 0)) + tuple(range(1, M + 1))

def neighbors(x: int, params: ModelParams) -> list:
	r"""
	The \f$2M\f$ patches \f$y \neq x\f$ within torus distance \f$M\f$ of the patch `x`,
	ordered by ascending offset \f$-M, \dots, -1, 1, \dots, M\f$.
	\param x Patch index \f$0 \leq x < L\f$.
	\param params Model parameters providing \f$M\f$ and \f$L\f$.
	"""
	return [(x + offset) % params.L for offset in neighbor_offsets(params.M)]

def neighbor_sum(values: np.array, M: int) -> np.array:
	r"""
	For each patch \f$x\f$, the sum of `values` over the neighbors of \f$x\f$ on the torus.
	\param values Array of length \f$L\f$.
	\param M Dispersal range.
	"""
	values = np.asarray(values)
	total = np.zeros(values.shape, dtype=np.result_type(values, float))
	for offset in neighbor_offsets(M):
		total += np.roll(values, -offset)
	return total
