"""Vacuum field fluctuations and energy densities in a cavity with a mobile wall.

Thin python facade over the C++ core: scenario configurations, mode
kinematics, dressed-state couplings, zeroth- and first-order fluctuation
profiles, the photon spectrum of the dressed ground state and the
Casimir-Polder probe shift.
"""

from ._mobcav import *  # noqa: F401,F403
from ._mobcav import __version__  # noqa: F401
