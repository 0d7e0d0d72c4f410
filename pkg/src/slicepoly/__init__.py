"""Slice polyanalytic functions of a quaternionic variable and their
reproducing kernels on the Fock space and the unit-ball Bergman space."""
from .complex_poly import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .kernels import *  # noqa: F401,F403
from .quadrature import *  # noqa: F401,F403
from .quaternion import *  # noqa: F401,F403
from .slice_poly import *  # noqa: F401,F403
from .verify import VerifyReport, run_suite  # noqa: F401

__version__ = "0.1.0"
