r"""
Contains the individual-level chain on a finite space-time window and its duals:
- \ref graphical: the Poisson arrivals shared by forward and backward runs,
- \ref forward: the forward evolution of the occupation,
- \ref dual: the dual process with collision detection,
- \ref zeta: the collision-free dual and its extinction fixed points.

\date 2026
"""

from . import graphical
from . import forward
from . import dual
from . import zeta

from .graphical import GraphicalRep, build_rep
from .forward import forward_micro
from .dual import DualState, DualRun, DualProcess, dual_run, duality_check
from .zeta import ZetaState, ZetaResult, ZetaProcess, ZetaRecord, ZetaEstimate, zeta_run, estimate_zeta, survival_curve, zeta_survival, rho_fixed_points
from ..bounds.emigration import dual_collision_bound
