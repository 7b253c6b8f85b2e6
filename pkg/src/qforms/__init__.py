"""Exact quadratic modules over group rings Z[pi] with involution.

Group rings, hermitian forms with quadratic refinement, unitary
transvections and their factorization into elementary ones, hyperbolic
pairs, and the stability bounds for virtually abelian groups.
"""

from .bounds import (VirtuallyAbelianInput, invariant_generators, norm_generators,
                     stability_bound, verify_fg_module)
from .errors import (ContextMismatch, InternalCheckFailed, InvalidElement,
                     PreconditionViolation, QFormsError, Unsupported)
from .factorization import FactorizationInput, factorize, verify_certificate
from .forms import QuadraticModule, Vector, hyperbolic, inner, is_unimodular, mu, \
    orthogonal_sum
from .groups import FiniteGroup, FreeAbelianGroup, InfiniteDihedralGroup
from .pairs import BassModule, HyperbolicPair, complete_pair, transport
from .rings import FormParameter, GroupRing, reduce_mod_lambda
from .transvections import Transvection, compose, make_transvection, verify_isometry

__version__ = "0.1.0"
