r"""
Contains the forward evolution of the individual-level chain on a graphical representation.
\date 2026
"""

import numpy as np

from ..model.configurations import MicroConfig
from .graphical import DEATH, GraphicalRep

def forward_micro(rep: GraphicalRep, initial: MicroConfig, t: float = None, path: bool = False):
	r"""
	Evolve `initial` through the arrivals of `rep` with times \f$\leq t\f$ in time order.
	A birth sets its target to 1, if both parents are occupied; a death sets its target to 0.
	\param rep Graphical representation.
	\param initial Configuration at time 0, with the shape \f$(L, N)\f$ of `rep`.
	\param t End time, defaults to \f$t_{max}\f$.
	\param path If `True`, also return the list of changes `(time, location, occupied)`.
	\return The configuration at time `t`, or the tuple `(configuration, changes)` if `path` is set.
	"""
	t = t if t is not None else rep.t_max
	if initial.shape != (rep.params.L, rep.params.N):
		raise ValueError("Configuration shape {} does not match the window {}.".format(initial.shape, rep.window))
	if t > rep.t_max:
		raise ValueError("Time {} lies beyond the window end {}.".format(t, rep.t_max))
	occupied = initial.flat().tolist()
	changes = []
	count = int(np.searchsorted(rep.times, t, side="right"))
	for time, kind, x, (y, z) in zip(rep.times[:count].tolist(), rep.kinds[:count].tolist(), rep.targets[:count].tolist(), rep.parents[:count].tolist()):
		if kind == DEATH:
			if occupied[x]:
				occupied[x] = False
				changes.append((time, x, False))
		elif occupied[y] and occupied[z] and not occupied[x]:
			occupied[x] = True
			changes.append((time, x, True))
	final = MicroConfig(np.array(occupied, dtype=bool).reshape(initial.shape))
	if path:
		return final, changes
	return final
