r"""
Contains the parameter set of the patch model.
\date 2026
"""

import dataclasses
import math

@dataclasses.dataclass(frozen=True)
class ModelParams:
	r"""
	Parameters of the contact process with sexual reproduction on a torus of patches.
	Each patch hosts up to \f$N\f$ individuals.
	Ordered pairs of distinct individuals of a patch give birth into an empty slot
	of the same patch (coefficient \f$a\f$) or of one of the \f$2M\f$ patches within
	distance \f$M\f$ (coefficient \f$b\f$). Individuals die at rate 1.
	"""
	## Internal birth coefficient \f$a \geq 0\f$.
	a: float
	## Dispersal birth coefficient \f$b \geq 0\f$.
	b: float
	## Patch capacity \f$N \geq 2\f$.
	N: int
	## Dispersal range \f$M \geq 1\f$.
	M: int = 1
	## Number of patches \f$L \geq 2M+1\f$ of the torus.
	L: int = None
	def __post_init__(self):
		if self.L is None:
			object.__setattr__(self, "L", 2*self.M + 1)
		for name in ("a", "b"):
			value = getattr(self, name)
			if not math.isfinite(value) or value < 0:
				raise ValueError("`{}` must be finite and nonnegative, got {}.".format(name, value))
		if int(self.N) != self.N or self.N < 2:
			raise ValueError("Capacity N must be an integer >= 2, got {}.".format(self.N))
		if int(self.M) != self.M or self.M < 1:
			raise ValueError("Range M must be an integer >= 1, got {}.".format(self.M))
		if int(self.L) != self.L or self.L < 2*self.M + 1:
			raise ValueError("Torus size L={} must be an integer >= 2M+1={}.".format(self.L, 2*self.M + 1))
		object.__setattr__(self, "a", float(self.a))
		object.__setattr__(self, "b", float(self.b))
		object.__setattr__(self, "N", int(self.N))
		object.__setattr__(self, "M", int(self.M))
		object.__setattr__(self, "L", int(self.L))
	def replace(self, **changes) -> "ModelParams":
		r"""
		Copy of the parameters with the given fields replaced.
		"""
		return dataclasses.replace(self, **changes)
	def as_dict(self) -> dict:
		return dataclasses.asdict(self)
