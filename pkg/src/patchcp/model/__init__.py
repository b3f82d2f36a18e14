r"""
Contains the patch model: parameters, torus geometry, configurations and the exact rates of
- the patch (mesoscopic) chain, which counts individuals per patch,
- the individual (microscopic) chain, which tracks every location.

\date 2026
"""

from . import params
from . import lattice
from . import configurations
from . import rates

from .params import ModelParams
from .lattice import neighbors
from .configurations import MesoConfig, MicroConfig, project
from .rates import up_rate, down_rate, total_rate, micro_up_rate_into, micro_down_rate
