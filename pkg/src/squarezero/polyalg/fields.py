"""Exact scalar fields: the rationals and prime fields F_p.

Rationals are ``fractions.Fraction``; F_p elements are ints in ``[0, p)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    kind: str  # "Q" or "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("the rationals take no modulus")
        elif self.kind == "Fp":
            if self.p is None or not (2 <= self.p < 2**31) or not is_prime(self.p):
                raise FieldError(f"F_p needs a prime 2 <= p < 2^31, got {self.p!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.kind == "Q":
            return 1 / a
        return pow(a, -1, self.p)

    def norm(self, a):
        """Reduce the result of raw int/Fraction arithmetic back into the field."""
        if self.kind == "Q":
            return a
        return a % self.p

    def random_element(self, rng: random.Random, bound: int = 1000):
        if self.kind == "Q":
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def format(self, a) -> str:
        """Canonical text for a scalar; F_p uses balanced residues."""
        if self.kind == "Q":
            return str(a)
        return str(a - self.p if a > self.p // 2 else a)

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        if data.get("kind") == "Q":
            return cls("Q")
        if data.get("kind") == "Fp":
            return cls("Fp", int(data["p"]))
        raise FieldError(f"unknown field {data!r}")


QQ = Field("Q")


def GF(p: int) -> Field:
    return Field("Fp", p)


def rank(rows, field: Field) -> int:
    """Rank of a scalar matrix (list of rows) by Gaussian elimination."""
    m = [[field(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = field.norm(m[i][c] * inv)
                row_r = m[r]
                m[i] = [field.norm(x - f * y) for x, y in zip(m[i], row_r)]
        r += 1
        if r == len(m):
            break
    return r


def matmul(a, b, field: Field):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [field.norm(sum(a[i][t] * b[t][j] for t in range(k))) for j in range(m)]
        for i in range(n)
    ]


def inverse(a, field: Field):
    n = len(a)
    m = [[field(x) for x in row] + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise FieldError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = field.inv(m[c][c])
        m[c] = [field.norm(x * inv) for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.norm(x - f * y) for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]
