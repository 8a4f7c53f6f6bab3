"""Exact fields (Q and F_p) and dense Gaussian elimination over them.

Matrices are lists of rows. Elements of Q are ``Fraction``; elements of
F_p are plain ints in ``range(p)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Field:
    """An exact field. ``p == 0`` means the rationals."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or self.p == 1:
            raise ValueError(f"bad characteristic {self.p}")
        if self.p > 1 and any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def tag(self) -> str:
        return "Q" if self.p == 0 else f"F:{self.p}"

    @classmethod
    def from_tag(cls, tag: str) -> "Field":
        if tag == "Q":
            return cls(0)
        if tag.startswith("F:"):
            return cls(int(tag[2:]))
        raise ValueError(f"unknown field tag {tag!r}")

    def __call__(self, x):
        """Coerce an int, Fraction or "p/q" string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    zero = property(lambda self: self(0))
    one = property(lambda self: self(1))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x if self.p == 0 else pow(x, -1, self.p)

    def norm(self, x):
        return x if self.p == 0 else x % self.p

    def random(self, rng: random.Random, span: int = 5):
        if self.p == 0:
            return Fraction(rng.randint(-span, span), rng.randint(1, span))
        return rng.randrange(self.p)

    def fmt(self, x):
        if self.p == 0:
            return str(Fraction(x))
        return int(x) % self.p

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def rref(rows: Sequence[Sequence], F: Field):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    M = [[F.norm(F(x)) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = F.inv(M[rk][col])
        M[rk] = [F.norm(x * inv) for x in M[rk]]
        for i in range(len(M)):
            if i != rk and M[i][col] != 0:
                f = M[i][col]
                M[i] = [F.norm(a - f * b) for a, b in zip(M[i], M[rk])]
        pivots.append(col)
        rk += 1
        if rk == len(M):
            break
    return M[:rk], pivots


def rank(rows, F: Field) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows, F: Field, ncols: int | None = None):
    """Basis of {x : A x = 0}, as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, piv = rref(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, pc in zip(R, piv):
            v[pc] = F.norm(-r[f])
        basis.append(v)
    return basis


def span_basis(vectors, F: Field, dim: int):
    """Row-reduced basis of the span of ``vectors`` inside F^dim."""
    vs = [list(v) for v in vectors if len(v)]
    if not vs:
        return []
    return rref(vs, F)[0]


def in_span(v, basis, F: Field) -> bool:
    if not any(F.norm(x) != 0 for x in v):
        return True
    return rank(list(basis) + [list(v)], F) == len(basis)


def matmul(A, B, F: Field):
    if not A:
        return []
    m = len(B[0]) if B else 0
    return [[F.norm(sum((a * B[k][j] for k, a in enumerate(row)), F.zero)) for j in range(m)] for row in A]


def matvec(A, v, F: Field):
    return [F.norm(sum((a * x for a, x in zip(row, v)), F.zero)) for row in A]


def transpose(A, nrows: int | None = None, ncols: int | None = None):
    """Transpose, keeping track of shape when A has no rows or columns."""
    if nrows is None:
        nrows = len(A)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return [[A[i][j] for i in range(nrows)] for j in range(ncols)]


def zeros(r: int, c: int, F: Field):
    return [[F.zero] * c for _ in range(r)]
