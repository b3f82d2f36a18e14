r"""
Contains the rate table of the event-driven simulator.
\date 2026
"""

class FenwickTree:
	r"""
	Binary indexed tree over nonnegative rates.
	Updating one rate and locating the entry, whose cumulative sum interval
	contains a given target, both take \f$O(\log L)\f$ operations.
	"""
	def __init__(self, values):
		r"""
		Build the tree in \f$O(L)\f$.
		\param values Iterable of nonnegative rates.
		"""
		values = [float(v) for v in values]
		## Number of entries.
		self.size = len(values)
		self._tree = [0.0] + values
		for i in range(1, self.size + 1):
			j = i + (i & -i)
			if j <= self.size:
				self._tree[j] += self._tree[i]
		## Sum of all rates, updated incrementally.
		self.total = sum(values)
		self._top = 1
		while self._top*2 <= self.size:
			self._top *= 2
	def add(self, index: int, delta: float):
		r"""
		Add `delta` to the rate at `index` (counted from 0).
		"""
		self.total += delta
		i = index + 1
		tree = self._tree
		while i <= self.size:
			tree[i] += delta
			i += i & -i
	def prefix(self, index: int) -> float:
		r"""
		Sum of the rates at the positions before `index`.
		"""
		s = 0.0
		i = index
		tree = self._tree
		while i > 0:
			s += tree[i]
			i -= i & -i
		return s
	def find(self, target: float) -> tuple:
		r"""
		Locate the entry \f$i\f$ with \f$\sum_{k<i} r_k \leq\f$ `target` \f$< \sum_{k \leq i} r_k\f$.
		\return Tuple `(index, residual)` with the residual `target` minus the sum before `index`.
			The index equals \ref size, if `target` is not below the sum of all rates.
		"""
		position = 0
		remainder = target
		bit = self._top
		tree = self._tree
		while bit > 0:
			nxt = position + bit
			if nxt <= self.size and tree[nxt] <= remainder:
				position = nxt
				remainder -= tree[nxt]
			bit >>= 1
		return position, remainder
