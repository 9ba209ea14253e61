"""Sparse multivariate polynomials with exact coefficients.

A polynomial in x1..xr is a dict from exponent tuples to nonzero field
scalars.  Terms are printed in graded-lexicographic order with x1 > x2 > ...
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .fields import Field, FieldError

ANY = "any"  # homogeneous degree of the zero polynomial


class PolyError(ValueError):
    pass


def grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Poly:
    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise PolyError(f"bad exponent vector {e} for {nvars} variables")
            c = field(c)
            if c != 0:
                clean[e] = c
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def _raw(cls, field, nvars, terms):
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms, p._hash = field, nvars, terms, None
        return p

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Poly":
        return cls._raw(field, nvars, {})

    @classmethod
    def const(cls, field: Field, nvars: int, c) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "Poly":
        if not 1 <= i <= nvars:
            raise PolyError(f"x{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i - 1] = 1
        return cls._raw(field, nvars, {tuple(e): field.one})

    @classmethod
    def gens(cls, field: Field, nvars: int) -> list["Poly"]:
        return [cls.var(field, nvars, i) for i in range(1, nvars + 1)]

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field or other.nvars != self.nvars:
                raise PolyError(
                    f"mixing {self.field}[{self.nvars} vars] with {other.field}[{other.nvars} vars]"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.field, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.norm
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = norm(terms.get(e, 0) + c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return Poly._raw(self.field, self.nvars, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.field.norm
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        terms = {e: norm(c) for e, c in terms.items()}
        return Poly._raw(self.field, self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = Poly.const(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.field, self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.field, self.nvars, self.terms) == (other.field, other.nvars, other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading(self):
        """(exponents, coefficient) of the grlex-leading term."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """Common total degree, ``None`` if mixed, ``ANY`` for zero."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return ANY
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * self.field.inv(self.leading()[1])

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} coordinates, expected {self.nvars}")
        f = self.field
        pt = [f(x) for x in point]
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * (pow(x, k, f.p) if f.p else x**k)
            total += v
        return f.norm(total)

    def divexact(self, other: "Poly") -> "Poly":
        """Quotient self / other, raising unless the division is exact."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading()
        inv = self.field.inv(lc)
        q = Poly.zero(self.field, self.nvars)
        rem = self
        while rem.terms:
            e, c = rem.leading()
            diff = tuple(a - b for a, b in zip(e, le))
            if any(k < 0 for k in diff):
                raise PolyError(f"{other} does not divide {self}")
            t = Poly._raw(self.field, self.nvars, {diff: self.field.norm(c * inv)})
            q = q + t
            rem = rem - t * other
        return q

    # text -------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            cs = self.field.format(c)
            neg = cs.startswith("-")
            cs = cs.lstrip("-")
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if out:
                out.append(f"-{body}" if neg else f"+{body}")
            else:
                out.append(f"-{body}" if neg else body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, {self.field}, nvars={self.nvars})"

    @classmethod
    def parse(cls, text: str, field: Field, nvars: int) -> "Poly":
        return parse_poly(text, field, nvars)


_VAR = re.compile(r"x(\d+)(?:\^(\d+))?$")
_COEFF = re.compile(r"\d+(?:/\d+)?$")


def parse_poly(text: str, field: Field, nvars: int) -> Poly:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]*)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise PolyError(f"cannot parse {text!r}")
    total = Poly.zero(field, nvars)
    for sign, body in pieces:
        if not body:
            raise PolyError(f"dangling sign in {text!r}")
        factors = body.split("*")
        coeff = Fraction(1)
        exps = [0] * nvars
        for k, fac in enumerate(factors):
            if _COEFF.match(fac):
                if k != 0:
                    raise PolyError(f"coefficient must lead its term in {body!r}")
                coeff = Fraction(fac)
                continue
            m = _VAR.match(fac)
            if not m:
                raise PolyError(f"bad factor {fac!r} in {text!r}")
            i = int(m.group(1))
            if not 1 <= i <= nvars:
                raise PolyError(f"x{i} out of range for {nvars} variables")
            exps[i - 1] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        try:
            c = field(coeff)
        except FieldError as exc:
            raise PolyError(str(exc)) from None
        total = total + Poly(field, nvars, {tuple(exps): c})
    return total
