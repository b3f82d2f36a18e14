r"""
Central package of patchcp, the contact process with sexual reproduction on a torus of patches.

\date 2026
"""

__version__ = "0.1"

# Sub-packages
from . import utils
from . import model
from . import simulation
from . import bounds
from . import duality
# Modules
from . import meanfield
from . import percolation
from . import protocols
