"""The Sklyanin algebra in degrees <= 3.

Generators x, y, z (indices 0, 1, 2) with relations
    a x_i x_{i+1} + b x_{i+1} x_i + c x_{i+2}^2,   i mod 3.
Degree-d tensors are flat vectors of length 3^d, indexed in base 3 with
the leftmost factor most significant. S_d is presented by the standard
monomials, the non-pivot columns of the reduced relation space.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from .fields import QQ, Field, rank, rref

VARS = "xyz"


def dim_graded(m: int) -> int:
    if m < 0:
        raise ValueError("degree must be nonnegative")
    return (m + 1) * (m + 2) // 2


def mono_index(*idx: int) -> int:
    out = 0
    for i in idx:
        out = 3 * out + i
    return out


def mono_name(index: int, degree: int) -> str:
    digits = []
    for _ in range(degree):
        index, r = divmod(index, 3)
        digits.append(VARS[r])
    return "".join(reversed(digits))


def relation_tensors(a, b, c, F: Field) -> list[list]:
    rels = []
    for i in range(3):
        v = [F.zero] * 9
        v[mono_index(i, (i + 1) % 3)] = F.norm(v[mono_index(i, (i + 1) % 3)] + F(a))
        v[mono_index((i + 1) % 3, i)] = F.norm(v[mono_index((i + 1) % 3, i)] + F(b))
        j = (i + 2) % 3
        v[mono_index(j, j)] = F.norm(v[mono_index(j, j)] + F(c))
        rels.append(v)
    return rels


def is_commutative_point(a, b, c, F: Field = QQ) -> bool:
    """(a, b, c) proportional to (1, -1, 0)."""
    a, b, c = F(a), F(b), F(c)
    return c == 0 and a != 0 and F.norm(a + b) == 0


def is_nondegenerate(a, b, c, F: Field) -> bool:
    a, b, c = F(a), F(b), F(c)
    lhs = F.norm((3 * a * b * c) ** 3)
    rhs = F.norm((a ** 3 + b ** 3 + c ** 3) ** 3)
    return lhs != rhs


class DegenerateAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class _Quotient:
    """V^{(x)d} modulo an ideal piece, via a reduced echelon basis."""

    degree: int
    rows: tuple
    pivots: tuple
    standard: tuple

    def reduce(self, vec, F: Field) -> list:
        v = [F.norm(F(x)) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            coef = v[p]
            if coef != 0:
                v = [F.norm(x - coef * y) for x, y in zip(v, row)]
        return [v[i] for i in self.standard]

    def lift(self, coords, F: Field) -> list:
        v = [F.zero] * 3 ** self.degree
        for i, x in zip(self.standard, coords):
            v[i] = F(x)
        return v

    @property
    def dim(self) -> int:
        return len(self.standard)


@dataclass(frozen=True)
class GradedAlgebra:
    a: object
    b: object
    c: object
    field: Field = QQ
    commutative: bool = False
    S2: _Quotient = dc_field(default=None, repr=False)
    S3: _Quotient = dc_field(default=None, repr=False)

    @property
    def params(self):
        return (self.a, self.b, self.c)

    def relations(self):
        return relation_tensors(self.a, self.b, self.c, self.field)

    def reduce2(self, vec) -> list:
        return self.S2.reduce(vec, self.field)

    def reduce3(self, vec) -> list:
        return self.S3.reduce(vec, self.field)

    def lift2(self, coords) -> list:
        return self.S2.lift(coords, self.field)

    def product2(self, i: int, j: int) -> list:
        """x_i x_j as coordinates in S_2."""
        v = [self.field.zero] * 9
        v[mono_index(i, j)] = self.field.one
        return self.reduce2(v)

    def basis_names(self, degree: int) -> list[str]:
        q = {2: self.S2, 3: self.S3}[degree]
        return [mono_name(i, degree) for i in q.standard]


def tensor(u, v, F: Field) -> list:
    return [F.norm(x * y) for x in u for y in v]


def _quotient(span, degree: int, F: Field) -> _Quotient:
    rows, piv = rref(span, F)
    std = tuple(i for i in range(3 ** degree) if i not in piv)
    return _Quotient(degree, tuple(tuple(r) for r in rows), tuple(piv), std)


def degree3_relations(rels, F: Field) -> list:
    span = []
    for r in rels:
        for i in range(3):
            e = [F.zero] * 3
            e[i] = F.one
            span.append(tensor(r, e, F))
            span.append(tensor(e, r, F))
    return span


def make_algebra(a, b, c, field: Field = QQ) -> GradedAlgebra:
    F = field
    a, b, c = F(a), F(b), F(c)
    if a == 0 and b == 0 and c == 0:
        raise DegenerateAlgebraError("(a, b, c) = 0")
    comm = is_commutative_point(a, b, c, F)
    if not comm and not is_nondegenerate(a, b, c, F):
        raise DegenerateAlgebraError(f"(3abc)^3 = (a^3+b^3+c^3)^3 at {(a, b, c)}")
    rels = relation_tensors(a, b, c, F)
    if rank(rels, F) != 3:
        raise DegenerateAlgebraError("relations are not independent")
    S2 = _quotient(rels, 2, F)
    S3 = _quotient(degree3_relations(rels, F), 3, F)
    if S3.dim != dim_graded(3):
        # e.g. the coordinate points (1,0,0), (0,1,0), (0,0,1)
        raise DegenerateAlgebraError(f"dim S_3 = {S3.dim} at {(a, b, c)}")
    return GradedAlgebra(a, b, c, F, comm, S2, S3)


def is_generic(a, b, c) -> bool:
    """Pairwise distinct and nonzero, so that no two candidate entries agree."""
    return len({a, b, c}) == 3 and 0 not in (a, b, c)


def random_algebra(rng, field: Field = QQ, span: int = 9) -> GradedAlgebra:
    """A seeded random generic Sklyanin algebra (not the commutative point)."""
    for _ in range(10_000):
        if field.is_rational:
            a, b, c = (field(rng.randint(-span, span)) for _ in range(3))
        else:
            a, b, c = (field.random(rng) for _ in range(3))
        try:
            alg = make_algebra(a, b, c, field)
        except DegenerateAlgebraError:
            continue
        if not alg.commutative and is_generic(*alg.params):
            return alg
    raise DegenerateAlgebraError(f"no generic parameters found over {field}")


# --------------------------------------------------------------------------
# The four-term resolution 0 -> O(k) -> O(k+1)^3 -> O(k+2)^3 -> O(k+3) -> 0

# A linear form is a tuple (coef, var): coef in "abc1", var in "xyz".
FIRST_MAP = [("1", "z"), ("1", "x"), ("1", "y")]
MIDDLE_MAP = [[("a", "y"), ("c", "x"), ("b", "z")],
              [("b", "x"), ("a", "z"), ("c", "y")],
              [("c", "z"), ("b", "y"), None]]
LAST_MAP = [("1", "x"), ("1", "y"), ("1", "z")]
AMBIGUOUS = (2, 2)
CANDIDATES = [(cf, v) for cf in "abc" for v in VARS]


def _compose(later, earlier):
    """Quadratic form later*earlier: list of ((coef1, coef2), (i, j)).

    The variable of the later map is written first.
    """
    (c1, v1), (c2, v2) = later, earlier
    return ((c1, c2), (VARS.index(v1), VARS.index(v2)))


def composition_entries(entry):
    """The entries of M2*d1 (3) and d3*M2 (3) as lists of quadratic terms."""
    M = [row[:] for row in MIDDLE_MAP]
    M[AMBIGUOUS[0]][AMBIGUOUS[1]] = entry
    first = [[_compose(M[i][j], FIRST_MAP[j]) for j in range(3)] for i in range(3)]
    second = [[_compose(LAST_MAP[i], M[i][j]) for i in range(3)] for j in range(3)]
    return first + second


def _eval_coef(name, alg: GradedAlgebra):
    return {"a": alg.a, "b": alg.b, "c": alg.c, "1": alg.field.one}[name]


def _entry_tensor(terms, alg: GradedAlgebra):
    F = alg.field
    v = [F.zero] * 9
    for (c1, c2), (i, j) in terms:
        k = mono_index(i, j)
        v[k] = F.norm(v[k] + _eval_coef(c1, alg) * _eval_coef(c2, alg))
    return v


def compositions_vanish(alg: GradedAlgebra, entry) -> tuple[bool, int]:
    """Reduce both compositions in S_2. Returns (all zero, #equations)."""
    count = 0
    ok = True
    for terms in composition_entries(entry):
        coords = alg.reduce2(_entry_tensor(terms, alg))
        count += len(coords)
        ok &= not any(coords)
    return ok, count


@functools.lru_cache(maxsize=None)
def compositions_vanish_symbolically(entry) -> bool:
    """Check each composition entry lies in the relation span over Q(a,b,c).

    The relations have c on the z^2, x^2, y^2 diagonal, so the
    coefficients in that span are read off those three columns.
    """
    import sympy as sp
    a, b, c = sp.symbols("a b c")
    sym = {"a": a, "b": b, "c": c, "1": sp.Integer(1)}
    R = []
    for i in range(3):
        row = [sp.Integer(0)] * 9
        row[mono_index(i, (i + 1) % 3)] += a
        row[mono_index((i + 1) % 3, i)] += b
        row[mono_index((i + 2) % 3, (i + 2) % 3)] += c
        R.append(row)
    diag = [mono_index((i + 2) % 3, (i + 2) % 3) for i in range(3)]
    for terms in composition_entries(entry):
        w = [sp.Integer(0)] * 9
        for (c1, c2), (i, j) in terms:
            w[mono_index(i, j)] += sym[c1] * sym[c2]
        lam = [w[d] / c for d in diag]
        for k in range(9):
            if sp.cancel(sum(l * r[k] for l, r in zip(lam, R)) - w[k]) != 0:
                return False
    return True


@dataclass
class ResolutionReport:
    working: list
    results: dict
    equations: int
    symbolic: list | None = None

    @property
    def ok(self) -> bool:
        return len(self.working) == 1

    @property
    def resolved_entry(self) -> str | None:
        return self.working[0] if self.ok else None


def resolution_check(alg: GradedAlgebra, symbolic: bool = False) -> ResolutionReport:
    results = {}
    eqs = 0
    for cand in CANDIDATES:
        ok, eqs = compositions_vanish(alg, cand)
        results["".join(cand)] = ok
    working = [k for k, v in results.items() if v]
    sym = None
    if symbolic:
        sym = ["".join(cd) for cd in CANDIDATES if compositions_vanish_symbolically(cd)]
    return ResolutionReport(working, results, eqs // 2, sym)
