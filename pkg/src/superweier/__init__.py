"""Superoscillating approximations of the Weierstrass function.

Arbitrary-precision evaluation of ``F_n(x; alpha) = (cos(x/n) + i alpha sin(x/n))^n``
and of the Weierstrass sums built from it, explicit error bounds, and tools
for mapping when the joint limit ``(N, n) -> infinity`` converges.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .numerics import *  # noqa: F401,F403
from .superosc import *  # noqa: F401,F403
from .weierstrass import *  # noqa: F401,F403
from .bounds import *  # noqa: F401,F403
from .regimes import *  # noqa: F401,F403
