r"""
Contains the rule, which derives independent random streams from one root seed.

Replica \f$k\f$ of a run with root seed \f$s\f$ draws from
`numpy.random.SeedSequence(s, spawn_key=(k,))`.
A replica is thereby reproducible on its own, without generating the others.
\date 2026
"""

import math

import numpy as np

def seed_sequence(seed: int, *keys: int) -> np.random.SeedSequence:
	r"""
	Seed sequence of the substream addressed by `keys` below the root `seed`.
	Without keys, the root sequence itself is returned.
	"""
	return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))

def generator(seed: int, *keys: int) -> np.random.Generator:
	r"""
	Random generator of the substream addressed by `keys` below the root `seed`.
	"""
	return np.random.default_rng(seed_sequence(seed, *keys))

class UniformStream:
	r"""
	Buffered source of uniform variates on \f$[0, 1)\f$ drawn from a `numpy.random.Generator`.
	Event loops draw one variate at a time; buffering avoids the per-call
	overhead of the generator while the sequence stays fully determined by the generator.
	"""
	def __init__(self, rng: np.random.Generator, buffer_size: int = 4096):
		## Underlying generator.
		self.rng = rng
		## Number of variates drawn at once.
		self.buffer_size = buffer_size
		self._buffer = []
		self._position = 0
	def __call__(self) -> float:
		if self._position >= len(self._buffer):
			self._buffer = self.rng.random(self.buffer_size).tolist()
			self._position = 0
		u = self._buffer[self._position]
		self._position += 1
		return u
	def exponential(self, rate: float) -> float:
		r"""
		Exponentially distributed variate with the given rate, by inversion.
		"""
		return -math.log1p(-self())/rate
	def integer(self, n: int) -> int:
		r"""
		Uniformly distributed integer in \f$\{0, \dots, n-1\}\f$.
		"""
		return min(int(self()*n), n - 1)
