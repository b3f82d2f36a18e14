r"""
Contains the configurations of the patch model on patch level (mesoscopic) and on individual level (microscopic).
\date 2026
"""

import dataclasses

import numpy as np

from .params import ModelParams

def _frozen(array: np.array, dtype) -> np.array:
	array = np.array(array, dtype=dtype)
	array.setflags(write=False)
	return array

@dataclasses.dataclass(frozen=True, eq=False)
class MesoConfig:
	r"""
	Number of individuals \f$\xi(x) \in \{0, \dots, N\}\f$ in each patch \f$x\f$ of the torus.
	The all-zero configuration is absorbing.
	"""
	## Read-only integer array of length \f$L\f$.
	counts: np.array
	def __post_init__(self):
		counts = _frozen(self.counts, np.int64)
		if counts.ndim != 1:
			raise ValueError("Patch counts must be one-dimensional, got shape {}.".format(counts.shape))
		if counts.size > 0 and counts.min() < 0:
			raise ValueError("Patch counts must be nonnegative.")
		object.__setattr__(self, "counts", counts)
	def __eq__(self, other) -> bool:
		return isinstance(other, MesoConfig) and np.array_equal(self.counts, other.counts)
	def __hash__(self):
		return hash(self.counts.tobytes())
	def __len__(self) -> int:
		return self.counts.size
	def __getitem__(self, x: int) -> int:
		return int(self.counts[x])
	def check(self, params: ModelParams):
		r"""
		Raise `ValueError`, if the configuration does not fit the parameters.
		"""
		if self.counts.size != params.L:
			raise ValueError("Configuration has {} patches, but L={}.".format(self.counts.size, params.L))
		if self.counts.max(initial=0) > params.N:
			raise ValueError("Patch count exceeds the capacity N={}.".format(params.N))
	@property
	def is_empty(self) -> bool:
		return not self.counts.any()
	@property
	def population(self) -> int:
		return int(self.counts.sum())
	@classmethod
	def empty(cls, params: ModelParams) -> "MesoConfig":
		return cls(np.zeros(params.L, dtype=np.int64))
	@classmethod
	def full(cls, params: ModelParams) -> "MesoConfig":
		return cls(np.full(params.L, params.N, dtype=np.int64))
	@classmethod
	def single_full_patch(cls, params: ModelParams, x: int = None) -> "MesoConfig":
		r"""
		Configuration \f$1_x\f$ with a fully occupied patch `x` and empty patches elsewhere.
		\param x The occupied patch, defaults to the center \f$\lfloor L/2 \rfloor\f$.
		"""
		x = x if x is not None else params.L//2
		counts = np.zeros(params.L, dtype=np.int64)
		counts[x] = params.N
		return cls(counts)
	def with_count(self, x: int, value: int) -> "MesoConfig":
		counts = self.counts.copy()
		counts[x] = value
		return MesoConfig(counts)

@dataclasses.dataclass(frozen=True, eq=False)
class MicroConfig:
	r"""
	Occupancy \f$\eta(\mathbf{x}) \in \{0, 1\}\f$ of every location \f$\mathbf{x} = (x, j)\f$,
	where \f$x\f$ is the patch and \f$j\f$ the slot within the patch.
	Locations are also addressed by the flat index \f$xN + j\f$ (slots counted from 0).
	"""
	## Read-only boolean array of shape \f$(L, N)\f$.
	occupied: np.array
	def __post_init__(self):
		occupied = _frozen(self.occupied, bool)
		if occupied.ndim != 2:
			raise ValueError("Occupancy grid must be two-dimensional, got shape {}.".format(occupied.shape))
		object.__setattr__(self, "occupied", occupied)
	def __eq__(self, other) -> bool:
		return isinstance(other, MicroConfig) and np.array_equal(self.occupied, other.occupied)
	def __hash__(self):
		return hash(self.occupied.tobytes())
	@property
	def shape(self) -> tuple:
		return self.occupied.shape
	def is_occupied(self, location) -> bool:
		r"""
		Occupancy of a location given as tuple `(x, j)` or as flat index.
		"""
		if isinstance(location, tuple):
			return bool(self.occupied[location])
		return bool(self.occupied.flat[location])
	def flat(self) -> np.array:
		r"""
		Occupancy as one-dimensional array over the flat location index.
		"""
		return self.occupied.reshape(-1)
	@classmethod
	def empty(cls, params: ModelParams) -> "MicroConfig":
		return cls(np.zeros((params.L, params.N), dtype=bool))
	@classmethod
	def full(cls, params: ModelParams) -> "MicroConfig":
		return cls(np.ones((params.L, params.N), dtype=bool))
	@classmethod
	def random(cls, params: ModelParams, rng: np.random.Generator, density: float = 0.5) -> "MicroConfig":
		r"""
		Configuration with every location occupied independently with probability `density`.
		"""
		return cls(rng.random((params.L, params.N)) < density)
	@classmethod
	def from_meso(cls, config: MesoConfig, params: ModelParams) -> "MicroConfig":
		r"""
		Microscopic configuration, which fills the first \f$\xi(x)\f$ slots of every patch.
		"""
		slots = np.arange(params.N)
		return cls(slots[np.newaxis, :] < config.counts[:, np.newaxis])

def project(micro: MicroConfig) -> MesoConfig:
	r"""
	Patch counts \f$\xi(x) = \sum_{\pi(\mathbf{x}) = x} \eta(\mathbf{x})\f$ of a microscopic configuration.
	"""
	return MesoConfig(micro.occupied.sum(axis=1))
