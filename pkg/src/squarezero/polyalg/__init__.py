"""Exact polynomial arithmetic over Q and F_p, polynomial matrices and root search."""
from .fields import QQ, GF, Field, FieldError, is_prime
from .poly import ANY, Poly, PolyError, parse_poly
from .matrix import (
    MatrixError,
    PolyMatrix,
    det,
    is_square_zero,
    matrix_mul,
    minor,
    rank_at_point,
    symbolic_rank,
    symbolic_rank_by_minors,
)
from .roots import (
    find_common_projective_root,
    gcd_homogeneous_bivariate,
    normalize_point,
    projective_points,
)
