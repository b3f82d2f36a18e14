r"""
Contains exact simulation of the patch chain and the estimation of survival probabilities.

\date 2026
"""

from . import ratetable
from . import trajectory
from . import gillespie
from . import survival

from .trajectory import Trajectory
from .gillespie import MesoSimulator, StepResult, step, run
from .survival import SurvivalEstimate, SurvivalEstimator, estimate_survival, range_sweep
