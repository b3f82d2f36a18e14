r"""
Contains closed form quantities and certificates:
- \ref occupation: visits and occupation times of the truncated birth-death chain,
- \ref emigration: emigrant, collision and survival bounds under long-range dispersal,
- \ref regions and \ref drift: drift inequalities and their exhaustive scans.

\date 2026
"""

from . import occupation
from . import emigration
from . import regions
from . import drift

from .occupation import OccupationTable, occupation_table, simulate_birth_death
from .emigration import mean_emigrants_bound, collision_prob_bound, exact_collision_probability, survival_upper_bound
from .regions import RegionSpec
from .drift import drift as drift_value, scan_lemma, ScanResult
