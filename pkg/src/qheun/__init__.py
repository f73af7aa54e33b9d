"""Exact q-shift operator calculus for big and little q-Heun operators."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .exact import ONE, X, ZERO, LaurentPoly, RatFunc, as_rational, format_rational, lp_arith, rf_normalize, scale_substitute  # noqa: F401
from .linsolve import LinSystem, Solution, nullspace, solve_exact  # noqa: F401
from .skew import (SkewOperator, anticommutator, commutator, op_add, op_affine, op_anticommutator,  # noqa: F401
                   op_apply, op_commutator, op_conjugate_shiftscale, op_mul, op_scale, op_scale_argument)
from .families import (Params, PolyFamily, big_qjacobi_operator, big_qjacobi_poly, lambda_n, mu_n,  # noqa: F401
                       multiplication_operator, pastro_poly, pochhammer_basis, qpochhammer_symbol,
                       recurrence_coeffs, to_pochhammer_coeffs)
from .heun import (HeunData, TauSet, algebraic_heun, algebraic_heun_closed, big_qheun,  # noqa: F401
                   check_degree_raising, check_tridiagonal, extract_heun_data, finite_restriction_matrix,
                   little_qheun, specialize_w1, specialize_w2, takemura_a3, takemura_a4)
from .relations import (AWTriple, FitResult, NoSolution, RelationTemplate, check_degenerations,  # noqa: F401
                        extra_coefficients, fit_heun_aw, solve_aw_triple, verify_qhahn)
from .pastro import PastroParams, pastro_gevp_check, pastro_l1, pastro_l2, pastro_recurrence_fit  # noqa: F401
