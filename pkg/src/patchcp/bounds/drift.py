r"""
Contains the drift of patch counts under the patch chain and exhaustive scans,
which certify drift inequalities on their regions for a given capacity.

Two drifts are provided for every kind:
- the leading order expression, where \f$i(i-1)/(N(N-1))\f$ is replaced by \f$i^2/N^2\f$
  and internal births are dropped from the two-patch kinds,
- the exact drift of an isolated pair of neighboring patches for \f$M = 1\f$: all birth terms
  of both patches included, immigration from patches outside the pair omitted.
  The omitted terms are nonnegative.

The scans use the exact drift.
\date 2026
"""

import dataclasses
import logging
import math

import numpy as np

from .. import meanfield
from ..model.params import ModelParams
from ..utils import base
from ..utils import errors
from . import regions

logger = logging.getLogger(__name__)

## Available drift kinds.
KINDS = ("sum", "difference", "y_given", "single_patch")

@dataclasses.dataclass(frozen=True)
class DriftValue:
	r"""
	Drift of a patch count functional, as leading order expression and exact generator value.
	"""
	leading: object
	exact: object

def _psi(i, j, N, b):
	return b/2.0*i*i*(N - j)/N**2

def drift(kind: str, i, j=None, params: ModelParams = None) -> DriftValue:
	r"""
	Drift of a functional of the counts \f$i = \xi(x)\f$ and \f$j = \xi(y)\f$ of neighboring patches.
	With \f$\psi(i, j) = N^{-2}(b/2) i^2 (N-j)\f$, the leading order expressions are
	- `"sum"`: \f$\psi(i, j) + \psi(j, i) - (i + j)\f$ for \f$X + Y\f$,
	- `"difference"`: \f$\psi(j, i) - \psi(i, j) - (i - j)\f$ for \f$X - Y\f$,
	- `"y_given"`: \f$\psi(i, j) - j\f$ for \f$Y\f$,
	- `"single_patch"`: \f$N^{-2} a i^2 (N - i) - i\f$ for an isolated patch (`j` is ignored).
	
	Arguments may be `np.array` of equal shape.
	\param kind One of \ref KINDS.
	\param i Count of the first patch.
	\param j Count of the second patch.
	\param params Model parameters (\f$a\f$, \f$b\f$, \f$N\f$).
	"""
	N, a, b = params.N, params.a, params.b
	i = np.asarray(i, dtype=float)
	norm = N*(N - 1.0)
	if kind == "single_patch":
		leading = a*i*i*(N - i)/N**2 - i
		exact = a*i*(i - 1.0)*(N - i)/norm - i
		return DriftValue(leading, exact)
	if j is None:
		raise ValueError("Drift kind '{}' needs the second patch count `j`.".format(kind))
	j = np.asarray(j, dtype=float)
	into_y = b/2.0*i*(i - 1.0)*(N - j)/norm
	into_x = b/2.0*j*(j - 1.0)*(N - i)/norm
	inside_x = a*i*(i - 1.0)*(N - i)/norm
	inside_y = a*j*(j - 1.0)*(N - j)/norm
	if kind == "sum":
		leading = _psi(i, j, N, b) + _psi(j, i, N, b) - (i + j)
		exact = into_x + into_y + inside_x + inside_y - (i + j)
	elif kind == "difference":
		leading = _psi(j, i, N, b) - _psi(i, j, N, b) - (i - j)
		exact = into_x - into_y + inside_x - inside_y - (i - j)
	elif kind == "y_given":
		leading = _psi(i, j, N, b) - j
		exact = into_y + inside_y - j
	else:
		raise ValueError("No such option '{}' known for `kind`.".format(kind))
	return DriftValue(leading, exact)

@dataclasses.dataclass(frozen=True)
class LemmaSpec:
	r"""
	A drift inequality: the region, the drift kind and the target.
	"""
	## Identifier.
	name: str
	## Drift kind, see \ref drift().
	kind: str
	## Function `(params) -> RegionSpec`.
	region: object
	## Function `(params) -> float`.
	target: object
	## `True` for "drift \f$\geq\f$ target", `False` for "drift \f$\leq\f$ target".
	lower: bool = True
	## `True`, if the inequality is strict.
	strict: bool = False

def _outer_target(params):
	return params.N/4.0*(params.b/8.0 - 1.0)

def _roots(params):
	r = meanfield.roots(params.a) if params.a > 0 else None
	if r is None or r.degenerate:
		raise errors.DomainError("The inner regions require a > 4, got a={}.".format(params.a))
	return r

## The certified drift inequalities.
LEMMAS = {
	"outer-sum": LemmaSpec("outer-sum", "sum", lambda p: regions.omega_pm(p.N), _outer_target),
	"outer-difference": LemmaSpec("outer-difference", "difference", lambda p: regions.omega_minus(p.N), lambda p: 0.0, lower=False),
	"outer-up": LemmaSpec("outer-up", "y_given", lambda p: regions.outer_up_region(p.N), _outer_target),
	"inner-1": LemmaSpec("inner-1", "single_patch", lambda p: regions.inner_band(p.N, _roots(p)), lambda p: 0.0, strict=True),
	"inner-drift-1": LemmaSpec("inner-drift-1", "y_given", lambda p: regions.inner_drift_1_region(p.N, _roots(p)), lambda p: 0.0, strict=True),
	"inner-drift-2": LemmaSpec("inner-drift-2", "single_patch", lambda p: regions.inner_drift_2_region(p.N, _roots(p)), lambda p: 0.0, strict=True),
	}

@dataclasses.dataclass(frozen=True)
class ScanResult:
	r"""
	Worst case of a drift inequality over its region.
	The margin is drift minus target for lower bounds and target minus drift for upper bounds,
	so the inequality holds on the region iff the margin is nonnegative (positive if strict).
	"""
	## Name of the inequality.
	lemma: str
	## Scanned parameters.
	params: ModelParams
	## Target value.
	target: float
	## Smallest margin of the exact drift.
	margin: float
	## State \f$(i, j)\f$ (or \f$(i,)\f$) attaining \ref margin.
	argmin: tuple
	## Smallest margin of the leading order expression.
	leading_margin: float
	## State attaining \ref leading_margin.
	leading_argmin: tuple
	## Number of scanned states.
	states: int
	## Whether the inequality is strict.
	strict: bool
	@property
	def passed(self) -> bool:
		return self.margin > 0 if self.strict else self.margin >= 0
	@property
	def status(self) -> str:
		return "PASS" if self.passed else "FAIL"

class DriftScanner(base.Task):
	r"""
	Exhaustive enumeration of the integer states of a drift inequality's region.
	Pair regions are processed in blocks of rows \f$i\f$ to bound the memory.
	"""
	def __init__(self,
				block_rows: int = 256,
				max_n_search: int = 10**5,
			*args, **kwargs):
		r"""
		Constructs a DriftScanner object.
		\param block_rows \copybrief block_rows For more, see \ref block_rows.
		\param max_n_search \copybrief max_n_search For more, see \ref max_n_search.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Number of rows \f$i\f$ evaluated at once.
		self.block_rows = block_rows
		## Largest capacity tried, when searching the smallest capacity with a nonempty region.
		self.max_n_search = max_n_search
	def scan(self, lemma: str, params: ModelParams) -> ScanResult:
		r"""
		Scan the inequality `lemma` (a key of \ref LEMMAS) for the parameters.
		\throws DegenerateRegionError if the region contains no state.
		"""
		try:
			spec = LEMMAS[lemma]
		except KeyError:
			raise ValueError("No such option '{}' known for `lemma`.".format(lemma)) from None
		region = spec.region(params)
		target = float(spec.target(params))
		sign = 1.0 if spec.lower else -1.0
		best = [math.inf, None, math.inf, None]
		count = 0
		N = params.N
		counts = np.arange(N + 1)
		def consider(i, j, mask):
			nonlocal count
			if not np.any(mask):
				return
			value = drift(spec.kind, i[mask], None if j is None else j[mask], params)
			for slot, d in ((0, value.exact), (2, value.leading)):
				margin = sign*(d - target)
				k = int(np.argmin(margin))
				if margin[k] < best[slot]:
					best[slot] = float(margin[k])
					best[slot+1] = (int(i[mask][k]),) if j is None else (int(i[mask][k]), int(j[mask][k]))
			count += int(mask.sum())
		if region.pair:
			for start in range(0, N + 1, self.block_rows):
				rows = counts[start:start + self.block_rows]
				i, j = np.meshgrid(rows, counts, indexing="ij")
				consider(i.ravel(), j.ravel(), region.contains(i, j).ravel())
		else:
			consider(counts, None, region.contains(counts))
		if count == 0:
			minimum = self.minimum_n(lemma, params)
			raise errors.DegenerateRegionError("Region of '{}' is empty for N={}; smallest N with states: {}.".format(lemma, N, minimum), minimum)
		result = ScanResult(lemma, params, target, best[0], best[1], best[2], best[3], count, spec.strict)
		logger.info("Scan %s N=%d a=%g b=%g: %s margin=%.6g at %s (%d states).", lemma, N, params.a, params.b, result.status, result.margin, result.argmin, count)
		return result
	def minimum_n(self, lemma: str, params: ModelParams) -> int:
		r"""
		Smallest capacity \f$N \geq 2\f$, for which the region of `lemma` contains a state,
		`None` if there is none up to \ref max_n_search.
		"""
		spec = LEMMAS[lemma]
		for n in range(2, self.max_n_search + 1):
			if not spec.region(params.replace(N=n)).is_empty():
				return n
		return None

def scan_lemma(lemma: str, params: ModelParams) -> ScanResult:
	r"""
	Scan a drift inequality with a default \ref DriftScanner.
	"""
	return DriftScanner().scan(lemma, params)
