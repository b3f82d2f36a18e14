r"""
Contains miscellaneous standalone functions.
\date 2026
"""

import math

import numpy as np

def np_to_python(data):
	r"""
	Convert the given data to a Python built-in type.
	This function should be used, before data is written to YAML.
	Mappings are converted value by value, other iterables are recursively
	converted into `list` and instances of `np.generic` are converted into
	standard data types using the method
	[`np.item()`](https://numpy.org/doc/stable/reference/generated/numpy.ndarray.item.html).
	"""
	if isinstance(data, dict):
		return {str(k): np_to_python(v) for k, v in data.items()}
	if isinstance(data, str):
		return data
	try:
		return [np_to_python(i) for i in data]
	except TypeError:
		return data.item() if isinstance(data, np.generic) else data

def binomial_ci_halfwidth(point: float, n: int, z: float = 1.96) -> float:
	r"""
	Half width of the normal approximation confidence interval of a binomial proportion,
	\f$z \sqrt{p(1-p)/n}\f$.
	\param point Estimated proportion \f$p\f$.
	\param n Number of trials.
	\param z Quantile of the standard normal distribution, defaults to `1.96` (95 %).
	"""
	return z*math.sqrt(point*(1.0 - point)/n)

def torus_distance(x: int, y: int, length: int) -> int:
	r"""
	Distance between the patches `x` and `y` on a torus with `length` patches.
	"""
	d = abs(x - y) % length
	return min(d, length - d)

def ceil_cube_root(m: int) -> int:
	r"""
	Smallest integer \f$k\f$ with \f$k^3 \geq m\f$, computed without floating point round-off.
	"""
	k = max(int(round(m**(1.0/3.0))), 0)
	while k**3 < m:
		k += 1
	while k > 0 and (k - 1)**3 >= m:
		k -= 1
	return k

def geometric_partial_sums(ratio: float, count: int) -> np.array:
	r"""
	Partial sums \f$S_j = \sum_{i=0}^{j-1} r^i\f$ for \f$j = 0, \dots, \f$ `count`.
	The sums are accumulated term by term, so \f$r = 1\f$ needs no special case.
	\param ratio The ratio \f$r \geq 0\f$.
	\param count Largest index of the returned sums.
	\return Array of length `count + 1`, with \f$S_0 = 0\f$.
	"""
	sums = np.zeros(count + 1)
	term = 1.0
	for j in range(1, count + 1):
		sums[j] = sums[j-1] + term
		term *= ratio
	return sums
