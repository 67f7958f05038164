"""psitwist: psi-twisted L-functions over C and Q_p.

The twist multiplies Dirichlet coefficients by psi(n) = alpha^S(n), where
S(n) = sopfr(n) is the sum of prime factors with multiplicity.  For |alpha|<1
this expands the half-plane of convergence, keeps the Euler product, and
yields a meromorphic function with an explicit pole lattice; p-adically a
contractive alpha makes the series converge outright.
"""

from ._kernels import BACKEND as kernel_backend
from .arith import (
    CoefficientArray,
    TwistParameter,
    psi,
    sopfr,
    sopfr_partial_sum,
    sopfr_preimages,
    theta,
)
from .errors import PsitwistError
from .lfun import (
    BoundsPair,
    EvalResult,
    Pole,
    abscissa,
    alpha_expansion,
    bounds,
    eval_euler,
    eval_series,
    eval_split,
    magnitude_bounds,
    mellin_check,
    poles,
    verify_pole,
)
from .padic import (
    PadicContext,
    PadicScalar,
    angle,
    angle_pow,
    eval_mahler,
    eval_padic_euler,
    eval_padic_series,
    mahler_coefficients,
    padic_character_source,
    pexp,
    plog,
    teichmuller,
    trivial_padic_source,
)
from .sources import (
    CoefficientSource,
    DirichletCharacter,
    EllipticCurve,
    EulerFactor,
    character_source,
    count_points,
    elliptic_source,
    newform_source,
    zeta_source,
)

__version__ = "0.1.0"
