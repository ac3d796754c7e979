"""gpkit: exact verification toolkit for real orthogonal Gross–Prasad pairs.

Submodules
----------
quadspace   signatures, discriminants, pure inner forms, Kottwitz signs
weilrep     tempered W_ℝ-representations and their tensor algebra
epsilon     local L- and ε-factors at s = 1/2, exact table + numeric oracle
lparam      L-parameters, component groups, the distinguished character χ_φ
conjclass   κ-data, sign vectors, and the union/fiber set identities
cli         JSON-reporting command-line front end
"""

__version__ = "0.1.0"

from .quadspace import QuadSpace  # noqa: F401
from .weilrep import CharRep, DiscRep, WeilRep  # noqa: F401
