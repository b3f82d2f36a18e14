r"""
Contains the exceptions raised by the package.
Each class derives from the builtin exception, which would be raised otherwise,
so callers catching `ValueError` or `RuntimeError` keep working.
\date 2026
"""

class DomainError(ValueError):
	r"""
	A parameter lies outside the domain, where a quantity is defined.
	"""

class WindowTooLargeError(ValueError):
	r"""
	The expected number of Poisson arrivals in a space-time window exceeds the configured cap.
	"""

class CoverageError(ValueError):
	r"""
	A trajectory does not cover the requested percolation levels.
	"""
	def __init__(self, message: str, max_level: int):
		super().__init__(message)
		## Largest level, which can be evaluated from the trajectory (`-1` if none).
		self.max_level = max_level

class DegenerateRegionError(ValueError):
	r"""
	The state space region of a drift inequality contains no integer state for the given capacity.
	"""
	def __init__(self, message: str, minimum_n: int):
		super().__init__(message)
		## Smallest capacity \f$N\f$, for which the region is nonempty (`None` if none was found).
		self.minimum_n = minimum_n

class NumericalInstabilityError(ArithmeticError):
	r"""
	A numerical computation left its admissible range or lost consistency.
	"""

class RunawayError(RuntimeError):
	r"""
	A simulation exceeded its event-count safety cap.
	"""
	def __init__(self, message: str, partial=None):
		super().__init__(message)
		## The trajectory simulated up to the cap.
		self.partial = partial

class ExplosionError(RuntimeError):
	r"""
	A dual family grew beyond its size cap.
	"""

class SeamError(RuntimeError):
	r"""
	The occupied region of a trajectory reached the seam of the torus opposite to its origin.
	"""
