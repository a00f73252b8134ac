"""Exact structure checks for a two-parameter family of finite-dimensional
Hopf algebras built from a coprime exponent pair.

The package constructs the algebra attached to a pair (p1, p2), computes in
it exactly over the cyclotomic field Q(zeta_{4*p1*p2}), and verifies its
structure: the monomial basis and Hopf operations, simple modules, primitive
idempotents and the block decomposition, matrix realizations of the blocks,
and the space of symmetric linear functionals with its integrals and
modified traces.
"""

from .cyclo import CycloField, CycloNumber, Params

__all__ = [
    "Algebra",
    "BlockSystem",
    "CycloField",
    "CycloNumber",
    "Functionals",
    "Params",
    "Realization",
    "RunConfig",
    "VerificationReport",
]
__version__ = "0.1.0"

from .algebra import Algebra
from .ideals import BlockSystem
from .realization import Realization
from .functionals import Functionals
from .report import RunConfig, VerificationReport
