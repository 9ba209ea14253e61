"""Projective common roots over F_p and gcds of binary forms."""
from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .fields import Field
from .poly import Poly, PolyError

MAX_ROOT_VARS = 4
MAX_ROOT_PRIME = 10**4


def normalize_point(coords: Sequence, field: Field) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    coords = [field(c) for c in coords]
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise PolyError("the zero vector is not a projective point")
    inv = field.inv(lead)
    return tuple(field.norm(c * inv) for c in coords)


def projective_points(r: int, p: int) -> Iterator[tuple[int, ...]]:
    """All normalized points of P^{r-1}(F_p): leading one in position 0, then 1, ..."""
    for lead in range(r):
        head = (0,) * lead + (1,)
        for tail in product(range(p), repeat=r - lead - 1):
            yield head + tail


def find_common_projective_root(fs: Sequence[Poly], field: Field):
    """First common zero of homogeneous ``fs`` in P^{r-1}(F_p), or None.

    None only means no root over F_p itself; a root may still exist over
    an extension of the field.
    """
    if not field.is_prime_field:
        raise PolyError("no finite enumeration over the rationals")
    if not fs:
        raise PolyError("need at least one polynomial")
    r = fs[0].nvars
    for f in fs:
        if f.field != field or f.nvars != r:
            raise PolyError("polynomials must share the field and variable count")
        if f.homogeneous_degree() is None:
            raise PolyError(f"{f} is not homogeneous")
        if f.is_constant():
            raise PolyError(f"{f} is constant")
    if r > MAX_ROOT_VARS or field.p > MAX_ROOT_PRIME:
        raise PolyError(f"enumeration guard: need r <= {MAX_ROOT_VARS} and p <= {MAX_ROOT_PRIME}")
    for pt in projective_points(r, field.p):
        if all(f.eval(pt) == 0 for f in fs):
            return pt
    return None


def _dehomogenize(f: Poly) -> list:
    """Coefficients (ascending in t) of f(t, 1)."""
    d = f.degree
    coeffs = [f.field.zero] * (d + 1)
    for (a, _b), c in f.terms.items():
        coeffs[a] = c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _x2_power(f: Poly) -> int:
    return min(b for (_a, b) in f.terms)


def _upoly_rem(a: list, b: list, field: Field) -> list:
    a = list(a)
    inv = field.inv(b[-1])
    while len(a) >= len(b) and any(a):
        q = field.norm(a[-1] * inv)
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] = field.norm(a[shift + k] - q * c)
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _upoly_gcd(a: list, b: list, field: Field) -> list:
    while b and any(b):
        a, b = b, _upoly_rem(a, b, field)
    inv = field.inv(a[-1])
    return [field.norm(c * inv) for c in a]


def gcd_homogeneous_bivariate(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two binary forms.

    Powers of x2 are split off, the rest is dehomogenized at x2 = 1, run
    through Euclid, and homogenized back.
    """
    if f.nvars != 2 or g.nvars != 2:
        raise PolyError("general multivariate gcd out of scope: need exactly 2 variables")
    if f.field != g.field:
        raise PolyError("polynomials live over different fields")
    for h in (f, g):
        if h.homogeneous_degree() is None:
            raise PolyError(f"general multivariate gcd out of scope: {h} is not homogeneous")
    field = f.field
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    common_x2 = min(_x2_power(f), _x2_power(g))
    u = _upoly_gcd(_dehomogenize(f), _dehomogenize(g), field)
    m = len(u) - 1
    terms = {(k, m - k + common_x2): c for k, c in enumerate(u) if c != 0}
    return Poly(field, 2, terms)
