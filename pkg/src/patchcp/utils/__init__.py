r"""
Contains utility modules with general purpose.

\date 2026
"""

from . import base
from . import errors
from . import integration
from . import misc
from . import seeding
