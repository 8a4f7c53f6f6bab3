"""Monads O(j-1)^{n_m1} -> O(j)^{n_0} -> O(j+1)^{n_p1} as quiver
representations: the matrices I_1, I_2, I_3 (n_0 x n_m1) and J_1, J_2, J_3
(n_p1 x n_0), the variable of I_i or J_i being x_i.

Composition J o I = sum_{a,b} x_b x_a J_b I_a, with the later map's
variable written first, reduced into S_2.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import (GF, Field, in_span, matmul, matvec, nullspace, rank, rref,
                     span_basis, transpose, zeros)
from .ktheory import DimVector
from .sklyanin import GradedAlgebra, make_algebra

EXHAUSTIVE_CAP = 8


class MonadError(ValueError):
    pass


@dataclass(frozen=True)
class MonadRep:
    dims: DimVector
    algebra: GradedAlgebra
    I: tuple
    J: tuple

    def __post_init__(self):
        m1, n0, p1 = self.dims.astuple()
        for name, mats, shape in (("I", self.I, (n0, m1)), ("J", self.J, (p1, n0))):
            if len(mats) != 3:
                raise MonadError(f"{name} must have three matrices")
            for i, A in enumerate(mats, 1):
                if len(A) != shape[0] or any(len(row) != shape[1] for row in A):
                    raise MonadError(f"{name}{i} must be {shape[0]}x{shape[1]}")
        F = self.field
        object.__setattr__(self, "I", tuple(tuple(tuple(F(x) for x in r) for r in A) for A in self.I))
        object.__setattr__(self, "J", tuple(tuple(tuple(F(x) for x in r) for r in A) for A in self.J))

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def region(self) -> int:
        return self.dims.region


def zero_monad(dims: DimVector, algebra: GradedAlgebra) -> MonadRep:
    m1, n0, p1 = dims.astuple()
    F = algebra.field
    return MonadRep(dims, algebra, tuple(zeros(n0, m1, F) for _ in range(3)),
                    tuple(zeros(p1, n0, F) for _ in range(3)))


# --------------------------------------------------------------------------
# The complex condition


def composition_coefficients(M: MonadRep) -> list:
    """J o I written in the S_2 basis: one n_p1 x n_m1 matrix per basis monomial."""
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    out = [zeros(p1, m1, F) for _ in range(M.algebra.S2.dim)]
    for b in range(3):
        for a in range(3):
            coords = M.algebra.product2(b, a)
            if not any(coords) or m1 == 0 or p1 == 0:
                continue
            P = matmul(M.J[b], M.I[a], F) if n0 else zeros(p1, m1, F)
            for e, w in enumerate(coords):
                if w:
                    out[e] = [[F.norm(x + w * y) for x, y in zip(r, s)] for r, s in zip(out[e], P)]
    return out


def equation_count(M: MonadRep) -> int:
    return M.algebra.S2.dim * M.dims.n_m1 * M.dims.n_p1


def complex_check(M: MonadRep) -> bool:
    return not any(x for C in composition_coefficients(M) for row in C for x in row)


def _row_system(I, algebra: GradedAlgebra, n0: int, m1: int):
    """Matrix L with: row vector j of J (3*n0 unknowns) works iff L j = 0."""
    F = algebra.field
    L = [[F.zero] * (3 * n0) for _ in range(algebra.S2.dim * m1)]
    for b in range(3):
        for a in range(3):
            coords = algebra.product2(b, a)
            for e, w in enumerate(coords):
                if not w:
                    continue
                for q in range(m1):
                    row = L[e * m1 + q]
                    for c in range(n0):
                        row[b * n0 + c] = F.norm(row[b * n0 + c] + w * I[a][c][q])
    return L


@dataclass(frozen=True)
class SolveResult:
    """kernel_dim is the dimension of the whole solution space in J."""

    monad: MonadRep
    kernel_dim: int
    trivial: bool
    seed: int


def random_matrix(r: int, c: int, F: Field, rng: random.Random):
    return [[F.random(rng) for _ in range(c)] for _ in range(r)]


def solve_J(I, dims: DimVector, algebra: GradedAlgebra, seed: int = 0) -> SolveResult:
    """A seeded random J with J o I = 0, each row drawn from the kernel."""
    F = algebra.field
    m1, n0, p1 = dims.astuple()
    if len(I) != 3 or any(len(A) != n0 or any(len(r) != m1 for r in A) for A in I):
        raise MonadError("I matrices do not match dims")
    rng = random.Random(seed)
    I = [[[F(x) for x in r] for r in A] for A in I]
    L = _row_system(I, algebra, n0, m1)
    K = nullspace(L, F, 3 * n0) if L else [
        [F.one if i == j else F.zero for i in range(3 * n0)] for j in range(3 * n0)]
    J = [zeros(p1, n0, F) for _ in range(3)]
    for r in range(p1):
        coeffs = [F.random(rng) for _ in K]
        vec = [F.norm(sum((c * v[i] for c, v in zip(coeffs, K)), F.zero)) for i in range(3 * n0)]
        for b in range(3):
            J[b][r] = vec[b * n0:(b + 1) * n0]
    M = MonadRep(dims, algebra, tuple(I), tuple(J))
    return SolveResult(M, len(K) * p1, len(K) == 0, seed)


def random_monad(dims: DimVector, algebra: GradedAlgebra, seed: int = 0) -> MonadRep:
    rng = random.Random(seed)
    m1, n0, _ = dims.astuple()
    I = [random_matrix(n0, m1, algebra.field, rng) for _ in range(3)]
    return solve_J(I, dims, algebra, rng.randrange(2 ** 32)).monad


# --------------------------------------------------------------------------
# Subrepresentations


@dataclass(frozen=True)
class SubRep:
    H_m1: tuple
    H_0: tuple
    H_p1: tuple
    region: int = 0

    @property
    def type(self) -> DimVector:
        return DimVector(len(self.H_m1), len(self.H_0), len(self.H_p1), self.region)

    def key(self):
        return (self.type.astuple(), self.H_m1, self.H_0, self.H_p1)

    def as_dict(self, F: Field) -> dict:
        enc = lambda B: [[F.fmt(x) for x in v] for v in B]
        return {"type": list(self.type.astuple()), "H_m1": enc(self.H_m1),
                "H_0": enc(self.H_0), "H_p1": enc(self.H_p1)}


def _basis(vectors, F: Field, d: int) -> tuple:
    return tuple(tuple(v) for v in span_basis([list(v) for v in vectors], F, d))


def is_subrep(M: MonadRep, S: SubRep) -> bool:
    F = M.field
    for A in M.I:
        for v in S.H_m1:
            if not in_span(matvec(A, v, F), S.H_0, F):
                return False
    for B in M.J:
        for v in S.H_0:
            if not in_span(matvec(B, v, F), S.H_p1, F):
                return False
    return True


def is_proper(M: MonadRep, S: SubRep) -> bool:
    t = S.type.astuple()
    return any(t) and t != M.dims.astuple()


def subcomplex_closure(M: MonadRep, seeds: dict | None = None) -> SubRep:
    """Smallest subrepresentation containing the seed vectors.

    ``seeds`` maps a grade (-1, 0, 1) to a list of vectors. The quiver has
    no oriented cycles, so one pass from left to right is enough.
    """
    seeds = seeds or {}
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    Hm = _basis(seeds.get(-1, []), F, m1)
    H0 = _basis(list(seeds.get(0, [])) + [matvec(A, v, F) for A in M.I for v in Hm], F, n0)
    H1 = _basis(list(seeds.get(1, [])) + [matvec(B, v, F) for B in M.J for v in H0], F, p1)
    return SubRep(Hm, H0, H1, M.region)


def king_pairing(rho, sub) -> Fraction:
    t = sub.type if isinstance(sub, SubRep) else sub
    return sum((Fraction(r) * x for r, x in zip(rho, t.astuple())), Fraction(0))


# --------------------------------------------------------------------------
# Destabilizer search


@dataclass(frozen=True)
class SearchResult:
    sub: SubRep | None
    mode: str
    exact: bool
    pairing: Fraction | None = None

    @property
    def verdict(self) -> str:
        if self.sub is not None:
            return "destabilized"
        return "stable-certified" if self.exact else "no-destabilizer-found"


def _violates(p: Fraction, target: str) -> bool:
    return p > 0 if target == "semistable" else p >= 0


def _std(i: int, d: int, F: Field):
    return tuple(F.one if j == i else F.zero for j in range(d))


def _extend(basis, d: int, target_dim: int, F: Field) -> tuple:
    """Extend a rref basis by standard vectors up to target_dim."""
    out = [list(v) for v in basis]
    for i in range(d):
        if len(out) >= target_dim:
            break
        e = list(_std(i, d, F))
        if not in_span(e, out, F):
            out.append(e)
    return _basis(out, F, d)


def _check_rho(M: MonadRep, rho):
    if king_pairing(rho, M.dims) != 0:
        raise MonadError("character is not orthogonal to the dimension vector")


def kernel_search(M: MonadRep, rho, target: str = "semistable") -> SearchResult:
    _check_rho(M, rho)
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    rows = [list(r) for B in M.J for r in B]
    K = nullspace(rows, F, n0) if rows else [list(_std(i, n0, F)) for i in range(n0)]
    if K and _violates(Fraction(rho[1]), target):
        S = SubRep((), _basis(K[:1], F, n0), (), M.region)
        if is_proper(M, S):
            return SearchResult(S, "kernel", False, king_pairing(rho, S))
    return SearchResult(None, "kernel", False)


def _trivial_subreps(M: MonadRep):
    """Subrepresentations that exist for every choice of maps."""
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    full = lambda d: tuple(_std(i, d, F) for i in range(d))
    for c in range(1, p1 + 1):
        yield SubRep((), (), full(p1)[:c], M.region)
    for b in range(1, n0 + 1):
        yield SubRep((), full(n0)[:b], full(p1), M.region)
    for a in range(1, m1 + 1):
        yield SubRep(full(m1)[:a], full(n0), full(p1), M.region)


def cyclic_search(M: MonadRep, rho, budget: int = 100, seed: int = 0,
                  target: str = "semistable") -> SearchResult:
    _check_rho(M, rho)
    F = M.field
    dims = M.dims.astuple()
    for S in _trivial_subreps(M):
        if is_proper(M, S) and _violates(king_pairing(rho, S), target):
            return SearchResult(S, "cyclic", False, king_pairing(rho, S))
    rng = random.Random(seed)
    grades = [g for g, d in zip((-1, 0, 1), dims) if d]
    for trial in range(budget):
        if not grades:
            break
        g = grades[trial % len(grades)]
        d = dims[g + 1]
        v = [F.random(rng) for _ in range(d)]
        S = subcomplex_closure(M, {g: [v]})
        if is_proper(M, S) and _violates(king_pairing(rho, S), target):
            return SearchResult(S, "cyclic", False, king_pairing(rho, S))
    return SearchResult(None, "cyclic", False)


def _rref_subspaces(d: int, k: int, p: int):
    """All k-dim subspaces of F_p^d as rref bases."""
    for piv in itertools.combinations(range(d), k):
        free = [(i, j) for i in range(k) for j in range(d) if j > piv[i] and j not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            yield tuple(tuple(r) for r in rows)


def all_subspaces(d: int, p: int):
    for k in range(d + 1):
        yield from _rref_subspaces(d, k, p)


def _superspaces(U: tuple, d: int, p: int, F: Field):
    """All subspaces of F_p^d containing U (U in rref)."""
    piv = {next(i for i, x in enumerate(u) if x) for u in U}
    comp = [i for i in range(d) if i not in piv]
    for W in all_subspaces(len(comp), p):
        vecs = [list(u) for u in U]
        for w in W:
            v = [0] * d
            for i, x in zip(comp, w):
                v[i] = x
            vecs.append(v)
        yield _basis(vecs, F, d)


def exhaustive_search(M: MonadRep, rho, target: str = "semistable", cap: int = EXHAUSTIVE_CAP,
                      type_filter=None) -> SearchResult:
    """Exact search over all subrepresentations (finite field, small dims).

    Returns the proper subrepresentation with the largest pairing among
    the violating ones (ties broken by the certificate encoding), or a
    proof that none exists. ``type_filter`` restricts the dimension
    vectors that are considered.
    """
    _check_rho(M, rho)
    F = M.field
    if F.is_rational:
        raise MonadError("exhaustive search needs a finite field")
    dims = M.dims.astuple()
    if sum(dims) > cap:
        raise MonadError(f"total dimension {sum(dims)} exceeds the cap {cap}")
    m1, n0, p1 = dims
    p = F.p
    best = None
    for A in all_subspaces(m1, p):
        U0 = _basis([matvec(X, v, F) for X in M.I for v in A], F, n0)
        for B in _superspaces(U0, n0, p, F):
            U1 = _basis([matvec(Y, v, F) for Y in M.J for v in B], F, p1)
            lo = len(U1)
            for c in sorted({lo, lo + 1, p1 - 1, p1}):
                if not lo <= c <= p1:
                    continue
                t = (len(A), len(B), c)
                if not any(t) or t == dims:
                    continue
                if type_filter is not None and not type_filter(t):
                    continue
                pr = king_pairing(rho, DimVector(*t))
                if not _violates(pr, target):
                    continue
                S = SubRep(tuple(A), B, _extend(U1, p1, c, F), M.region)
                cand = (pr, S.key())
                if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1]):
                    best = cand + (S,)
    if best is None:
        return SearchResult(None, "exhaustive", True)
    return SearchResult(best[2], "exhaustive", True, best[0])


def find_destabilizer(M: MonadRep, rho, mode: str = "kernel", budget: int = 100,
                      seed: int = 0, target: str = "semistable") -> SearchResult:
    if mode == "kernel":
        return kernel_search(M, rho, target)
    if mode == "cyclic":
        return cyclic_search(M, rho, budget, seed, target)
    if mode == "exhaustive":
        return exhaustive_search(M, rho, target)
    raise ValueError(f"unknown mode {mode!r}")


# --------------------------------------------------------------------------
# Transpose involution and the line-bundle test


def tt_involution(M: MonadRep, check: bool = True) -> MonadRep:
    m1, n0, p1 = M.dims.astuple()
    T = lambda A, r, c: tuple(tuple(row) for row in transpose([list(x) for x in A], r, c))
    I2 = (T(M.J[1], p1, n0), T(M.J[0], p1, n0), T(M.J[2], p1, n0))
    J2 = (T(M.I[1], n0, m1), T(M.I[0], n0, m1), T(M.I[2], n0, m1))
    out = MonadRep(DimVector(p1, n0, m1, -M.region), M.algebra, I2, J2)
    if check and not complex_check(out):
        raise MonadError("transposed monad is not a complex")
    return out


@dataclass(frozen=True)
class LineBundleVerdict:
    verdict: str
    witness: tuple | None = None
    samples: int = 0


def line_bundle_test(M: MonadRep, samples: int = 100, seed: int = 0) -> LineBundleVerdict:
    """Probe injectivity of l I_1 + m I_2 + n I_3 at sampled triples."""
    F = M.field
    m1, n0, _ = M.dims.astuple()
    if m1 > n0:
        raise MonadError("need n_m1 <= n_0")
    if m1 == 0:
        return LineBundleVerdict("probably-ok", None, 0)
    rng = random.Random(seed)
    triples = [(F.one, F.zero, F.zero), (F.zero, F.one, F.zero), (F.zero, F.zero, F.one)]
    while len(triples) < samples + 3:
        t = tuple(F.random(rng) for _ in range(3))
        if any(t):
            triples.append(t)
    for t in triples:
        A = [[F.norm(sum((c * M.I[i][r][q] for i, c in enumerate(t)), F.zero))
              for q in range(m1)] for r in range(n0)]
        if rank(A, F) < m1:
            return LineBundleVerdict("certified-fail", t, len(triples))
    return LineBundleVerdict("probably-ok", None, len(triples))


# --------------------------------------------------------------------------
# JSON format


def _parse_matrix(obj, rows: int, cols: int, F: Field, where: str):
    if not isinstance(obj, list) or len(obj) != rows:
        raise MonadError(f"{where}: expected {rows} rows")
    out = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != cols:
            raise MonadError(f"{where}[{i}]: expected {cols} entries")
        row = []
        for j, x in enumerate(r):
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise MonadError(f"{where}[{i}][{j}]: entries must be ints or 'p/q' strings")
            try:
                row.append(F(x))
            except (ValueError, ZeroDivisionError) as e:
                raise MonadError(f"{where}[{i}][{j}]: {e}") from None
        out.append(row)
    return out


def monad_from_dict(d: dict) -> MonadRep:
    if not isinstance(d, dict):
        raise MonadError("top level must be an object")
    for key in ("n", "region", "field", "algebra", "I", "J"):
        if key not in d:
            raise MonadError(f"missing field {key!r}")
    n = d["n"]
    if not (isinstance(n, list) and len(n) == 3 and all(isinstance(x, int) and x >= 0 for x in n)):
        raise MonadError("'n' must be three nonnegative integers")
    if not isinstance(d["region"], int):
        raise MonadError("'region' must be an integer")
    try:
        F = Field.from_tag(d["field"])
    except (ValueError, TypeError) as e:
        raise MonadError(f"'field': {e}") from None
    alg = d["algebra"]
    if not (isinstance(alg, list) and len(alg) == 3):
        raise MonadError("'algebra' must be [a, b, c]")
    try:
        algebra = make_algebra(*(F(x) for x in alg), field=F)
    except (ValueError, ZeroDivisionError) as e:
        raise MonadError(f"'algebra': {e}") from None
    m1, n0, p1 = n
    for key, shape in (("I", (n0, m1)), ("J", (p1, n0))):
        if not isinstance(d[key], list) or len(d[key]) != 3:
            raise MonadError(f"'{key}' must hold three matrices")
    I = [_parse_matrix(A, n0, m1, F, f"I[{i}]") for i, A in enumerate(d["I"])]
    J = [_parse_matrix(A, p1, n0, F, f"J[{i}]") for i, A in enumerate(d["J"])]
    return MonadRep(DimVector(m1, n0, p1, d["region"]), algebra, tuple(I), tuple(J))


def monad_to_dict(M: MonadRep) -> dict:
    F = M.field
    enc = lambda A: [[F.fmt(x) for x in r] for r in A]
    return {"n": list(M.dims.astuple()), "region": M.region, "field": F.tag,
            "algebra": [F.fmt(x) for x in M.algebra.params],
            "I": [enc(A) for A in M.I], "J": [enc(A) for A in M.J]}
