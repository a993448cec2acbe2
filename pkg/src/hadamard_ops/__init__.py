"""Hadamard operators on distributions: L_T(S) = S ⋆ T, eigenvalues m_α,
Euler operators P(θ) and the numerical checks around them."""
from .densities import *  # noqa: F401,F403
from .dist import *  # noqa: F401,F403
from .euler import *  # noqa: F401,F403
from .foundation import *  # noqa: F401,F403
from .hadamard import *  # noqa: F401,F403
from .specfile import SpecFile, load_spec, parse_spec  # noqa: F401
from .testfn import *  # noqa: F401,F403

__version__ = "0.1.0"
