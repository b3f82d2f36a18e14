r"""
Contains the regions of the state space of one or two neighboring patches,
on which the drift inequalities are stated.
Predicates act elementwise on integer arrays of patch counts \f$i\f$ (and \f$j\f$).
\date 2026
"""

import dataclasses
import math

import numpy as np

from ..meanfield import MeanFieldRoots

@dataclasses.dataclass(frozen=True)
class RegionSpec:
	r"""
	Region of patch count states for the capacity \f$N\f$.
	"""
	## Identifier of the region.
	name: str
	## Capacity \f$N\f$.
	N: int
	## Vectorized predicate, `contains(i)` for single patch regions and `contains(i, j)` for pairs.
	contains: object
	## `True`, if the states are pairs \f$(i, j)\f$ of two neighboring patches.
	pair: bool = True
	def states(self) -> np.array:
		r"""
		All integer states of the region, as array of shape `(count, 2)` for pairs or `(count,)` for single patches.
		"""
		counts = np.arange(self.N + 1)
		if not self.pair:
			return counts[self.contains(counts)]
		i, j = np.meshgrid(counts, counts, indexing="ij")
		mask = self.contains(i, j)
		return np.stack([i[mask], j[mask]], axis=-1)
	def is_empty(self) -> bool:
		counts = np.arange(self.N + 1)
		if not self.pair:
			return not np.any(self.contains(counts))
		for i in counts:
			if np.any(self.contains(np.full(counts.shape, i), counts)):
				return False
		return True

def omega_rho(N: int, rho: float) -> RegionSpec:
	r"""
	\f$\Omega_\rho = \{(i, j): i, j > N/2 + \rho\sqrt{N}\}\f$, both patches above half occupation.
	"""
	threshold = N/2.0 + rho*math.sqrt(N)
	return RegionSpec("omega_rho", N, lambda i, j: (i > threshold) & (j > threshold))

def omega_minus(N: int) -> RegionSpec:
	r"""
	\f$\Omega_- = \{(i, j): i + j > N - 4\sqrt{N},\ j < N/2 + 2\sqrt{N},\ i > j\}\f$.
	"""
	s = math.sqrt(N)
	return RegionSpec("omega_minus", N, lambda i, j: (i + j > N - 4*s) & (j < N/2.0 + 2*s) & (i > j))

def omega_plus(N: int) -> RegionSpec:
	r"""
	\f$\Omega_+ = \{(i, j): i + j > N - 4\sqrt{N},\ i < N/2 + 2\sqrt{N},\ i < j\}\f$, the mirror image of \ref omega_minus().
	"""
	s = math.sqrt(N)
	return RegionSpec("omega_plus", N, lambda i, j: (i + j > N - 4*s) & (i < N/2.0 + 2*s) & (i < j))

def omega_pm(N: int) -> RegionSpec:
	r"""
	Union \f$\Omega_- \cup \Omega_+\f$.
	"""
	lower, upper = omega_minus(N), omega_plus(N)
	return RegionSpec("omega_pm", N, lambda i, j: lower.contains(i, j) | upper.contains(i, j))

def outer_up_region(N: int) -> RegionSpec:
	r"""
	\f$\{(i, j): i > N/2,\ j < N/2 + 2\sqrt{N}\}\f$, a more than half full patch next to a patch, which is not yet near its level.
	"""
	s = math.sqrt(N)
	return RegionSpec("outer_up", N, lambda i, j: (i > N/2.0) & (j < N/2.0 + 2*s))

def inner_band(N: int, roots: MeanFieldRoots) -> RegionSpec:
	r"""
	Single patch band \f$i \in (c_+N - 4\sqrt{N},\ c_+N - \sqrt{N})\f$ below the carrying fraction.
	"""
	s = math.sqrt(N)
	low, high = roots.c_plus*N - 4*s, roots.c_plus*N - s
	return RegionSpec("inner_band", N, lambda i: (i > low) & (i < high), pair=False)

def inner_drift_1_region(N: int, roots: MeanFieldRoots) -> RegionSpec:
	r"""
	\f$\{(i, j): i > c_+N - 3\sqrt{N},\ j < c_-N + 2\sqrt{N}\}\f$, a patch near its carrying level next to a patch
	at most slightly above the Allee threshold.
	"""
	s = math.sqrt(N)
	return RegionSpec("inner_drift_1", N, lambda i, j: (i > roots.c_plus*N - 3*s) & (j < roots.c_minus*N + 2*s))

def inner_drift_2_region(N: int, roots: MeanFieldRoots) -> RegionSpec:
	r"""
	Single patch band \f$j \in (c_-N + 2\sqrt{N},\ c_+N - 2\sqrt{N})\f$ between the two nontrivial roots.
	"""
	s = math.sqrt(N)
	low, high = roots.c_minus*N + 2*s, roots.c_plus*N - 2*s
	return RegionSpec("inner_drift_2", N, lambda i: (i > low) & (i < high), pair=False)
