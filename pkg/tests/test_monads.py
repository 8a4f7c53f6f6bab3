import itertools
import json
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from hilbwalls.fields import GF, QQ, in_span, matvec, rank
from hilbwalls.ktheory import DimVector, hilbert_type
from hilbwalls.monads import (MonadError, MonadRep, SubRep, all_subspaces, complex_check,
                              composition_coefficients, cyclic_search, equation_count,
                              exhaustive_search, find_destabilizer, is_proper, is_subrep,
                              kernel_search, king_pairing, line_bundle_test, monad_from_dict,
                              monad_to_dict, random_matrix, random_monad, solve_J,
                              subcomplex_closure, tt_involution, zero_monad)
from hilbwalls.sklyanin import make_algebra, mono_index, random_algebra, relation_tensors
from hilbwalls.stability import hilbert_chamber_character

from oracles import sympy_rank

F5, F2 = GF(5), GF(2)


def algebras(F):
    out = [make_algebra(1, -1, 0, F)]
    try:
        out.append(random_algebra(random.Random(1), F))
    except ValueError:
        pass
    return out


def oracle_complex(M):
    """J o I vanishes iff every entry, as a tensor in V (x) V, is in span R."""
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    rels = relation_tensors(*M.algebra.params, F)
    for r in range(p1):
        for q in range(m1):
            w = [F.zero] * 9
            for b in range(3):
                for a in range(3):
                    w[mono_index(b, a)] = F.norm(sum(M.J[b][r][c] * M.I[a][c][q] for c in range(n0)))
            if F.is_rational:
                if sympy_rank(rels + [w]) != 3:
                    return False
            elif rank(rels + [w], F) != 3:
                return False
    return True


# ---------------------------------------------------------------- complexes

def test_zero_monad_is_complex():
    for n in (1, 2):
        M = zero_monad(hilbert_type(n, 0), make_algebra(1, -1, 0, F5))
        assert complex_check(M)
        assert tt_involution(M) == zero_monad(DimVector(n, 2 * n + 1, n, 0), M.algebra)


def test_random_I_with_zero_J():
    alg = make_algebra(1, -1, 0, F5)
    d = DimVector(2, 5, 2)
    rng = random.Random(0)
    I = [random_matrix(5, 2, F5, rng) for _ in range(3)]
    M = MonadRep(d, alg, tuple(I), tuple([[F5.zero] * 5] * 2 for _ in range(3)))
    assert complex_check(M)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solve_J(n):
    for alg in algebras(F5):
        d = hilbert_type(n, 0)
        rng = random.Random(n)
        I = [random_matrix(2 * n + 1, n, F5, rng) for _ in range(3)]
        res = solve_J(I, d, alg, seed=3)
        assert complex_check(res.monad) and oracle_complex(res.monad)
        assert equation_count(res.monad) == 6 * n * n
        assert res.kernel_dim >= 3 * (2 * n + 1) * n - 6 * n * n
        assert solve_J(I, d, alg, seed=3).monad == res.monad


def test_solve_J_with_zero_I():
    alg = make_algebra(1, -1, 0, F5)
    d = DimVector(1, 3, 1)
    zero = [[[0]] * 3 for _ in range(3)]
    res = solve_J(zero, d, alg, seed=9)
    assert res.kernel_dim == 9 and complex_check(res.monad)
    assert any(x for B in res.monad.J for r in B for x in r)


def test_random_monad_over_Q():
    alg = random_algebra(random.Random(4), QQ)
    M = random_monad(DimVector(1, 3, 1), alg, seed=2)
    assert complex_check(M) and oracle_complex(M)


def test_complex_check_detects_violation():
    alg = make_algebra(1, -1, 0, F5)
    d = DimVector(1, 1, 1)
    I = (((1,),), ((0,),), ((0,),))
    J = (((1,),), ((0,),), ((0,),))  # x * x is not a relation
    M = MonadRep(d, alg, I, J)
    assert not complex_check(M) and not oracle_complex(M)
    assert len(composition_coefficients(M)) * 1 * 1 == equation_count(M) == 6


def test_dimension_identity():
    for n in range(1, 31):
        k = 0
        while hilbert_type(n, k).is_nonnegative:
            m1, n0, p1 = hilbert_type(n, k).astuple()
            dim_G = m1 ** 2 + n0 ** 2 + p1 ** 2 - 1
            # parameters minus equations minus gauge leaves the 2n-dimensional moduli space
            assert 3 * m1 * n0 + 3 * n0 * p1 - 6 * m1 * p1 == 2 * n + dim_G
            k += 1


def test_shape_validation():
    alg = make_algebra(1, -1, 0, F5)
    with pytest.raises(MonadError):
        MonadRep(DimVector(1, 2, 1), alg, ((1,),) * 3, ((1, 1),) * 3)


# ---------------------------------------------------------------- involution

@pytest.mark.parametrize("seed", range(6))
def test_tt_involution(seed):
    for alg in algebras(F5):
        n = 1 + seed % 3
        M = random_monad(hilbert_type(n, 0), alg, seed)
        T = tt_involution(M)
        assert T.dims.astuple() == (n, 2 * n + 1, n)
        assert complex_check(T) and oracle_complex(T)
        assert tt_involution(T) == M


# --------------------------------------------------------------- subobjects

def test_closure_empty_and_idempotent():
    alg = make_algebra(1, -1, 0, F5)
    M = random_monad(hilbert_type(2, 0), alg, 1)
    assert subcomplex_closure(M).type.astuple() == (0, 0, 0)
    S = subcomplex_closure(M, {-1: [[1, 2]]})
    assert is_subrep(M, S)
    again = subcomplex_closure(M, {-1: S.H_m1, 0: S.H_0, 1: S.H_p1})
    assert again == S


def test_closure_of_line_seed():
    alg = make_algebra(1, -1, 0, F5)
    for n in (1, 2, 3):
        M = random_monad(hilbert_type(n, 0), alg, 5)
        S = subcomplex_closure(M, {-1: [[1] + [0] * (n - 1)]})
        a, b, c = S.type.astuple()
        assert a == 1 and b <= 3 and c <= n
        assert (a, b, c) in {(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 2, 1)} or b == 3


def test_king_pairing_examples():
    assert king_pairing((1, 0, -1), DimVector(1, 2, 1)) == 0
    assert king_pairing((1, 0, -1), DimVector(0, 1, 0)) == 0
    for n in range(1, 6):
        rho = hilbert_chamber_character(n, 2)
        assert king_pairing(rho.rho, DimVector(0, 1, 0)) == n
        assert king_pairing(rho.rho, rho.total) == 0


def monad_with_common_kernel(seed=0):
    """J's share a zero column, so (0,1,0) is a subrepresentation."""
    alg = make_algebra(1, -1, 0, F5)
    rng = random.Random(seed)
    d = DimVector(1, 3, 1)
    I = [random_matrix(3, 1, F5, rng) for _ in range(3)]
    M = solve_J(I, d, alg, seed).monad
    J = tuple(tuple((0,) + tuple(r[1:]) for r in B) for B in M.J)
    return MonadRep(d, alg, M.I, J)


def test_kernel_mode_certificate():
    M = monad_with_common_kernel()
    rho = (1, 1, -4)
    res = kernel_search(M, rho)
    assert res.sub is not None and res.sub.type.astuple() == (0, 1, 0)
    assert is_subrep(M, res.sub) and is_proper(M, res.sub)
    assert exhaustive_search(M, rho).sub is not None


def test_zero_monad_coordinate_subs():
    M = zero_monad(DimVector(1, 3, 1), make_algebra(1, -1, 0, F5))
    for rho in [(1, 0, -1), (-3, 1, 0), (0, 1, -3)]:
        res = cyclic_search(M, rho)
        assert res.sub is not None and is_subrep(M, res.sub)
        assert exhaustive_search(M, rho).sub is not None


def brute_subreps(M):
    """Every subspace triple, filtered by the closure conditions."""
    F = M.field
    m1, n0, p1 = M.dims.astuple()
    for A in all_subspaces(m1, F.p):
        for B in all_subspaces(n0, F.p):
            for C in all_subspaces(p1, F.p):
                S = SubRep(A, B, C)
                if is_subrep(M, S):
                    yield S


@pytest.mark.parametrize("seed", range(8))
def test_exhaustive_matches_brute_force(seed):
    rng = random.Random(seed)
    F = F2
    alg = make_algebra(1, 1, 0, F)
    d = [DimVector(1, 2, 1), DimVector(1, 3, 1), DimVector(2, 3, 1)][seed % 3]
    M = random_monad(d, alg, seed)
    types = {S.type.astuple() for S in brute_subreps(M) if is_proper(M, S)}
    for _ in range(5):
        x, y = rng.randint(-3, 3), rng.randint(-3, 3)
        # rho orthogonal to d
        a, b, c = d.astuple()
        rho = (Q(x), Q(y), -Q(a * x + b * y, c))
        best = max((king_pairing(rho, DimVector(*t)) for t in types), default=None)
        res = exhaustive_search(M, rho)
        if best is not None and best > 0:
            assert res.pairing == best and is_subrep(M, res.sub)
        else:
            assert res.sub is None and res.exact


@given(st.integers(0, 500))
def test_kernel_agrees_with_restricted_exhaustive(seed):
    alg = make_algebra(1, 1, 0, F2)
    d = DimVector(1, 3, 1)
    M = random_monad(d, alg, seed)
    rng = random.Random(seed)
    rho = (Q(rng.randint(-2, 2)), Q(rng.randint(-2, 2)), Q(0))
    rho = (rho[0], rho[1], -rho[0] - 3 * rho[1])
    k = kernel_search(M, rho)
    full = exhaustive_search(M, rho)
    only_010 = exhaustive_search(M, rho, type_filter=lambda t: t[0] == 0 and t[2] == 0)
    if k.sub is not None:
        assert full.sub is not None
    assert (k.sub is None) == (only_010.sub is None)


def test_exhaustive_errors():
    alg = random_algebra(random.Random(3), QQ)
    M = random_monad(DimVector(1, 3, 1), alg, 0)
    with pytest.raises(MonadError):
        exhaustive_search(M, (1, 0, -1))
    big = random_monad(hilbert_type(2, 0), make_algebra(1, 1, 0, F2), 0)
    with pytest.raises(MonadError):
        exhaustive_search(big, (5, 0, -2))
    with pytest.raises(MonadError):
        kernel_search(big, (1, 1, 1))


def test_modes_dispatch():
    M = monad_with_common_kernel(2)
    for mode in ("kernel", "cyclic", "exhaustive"):
        res = find_destabilizer(M, (1, 1, -4), mode)
        assert res.mode == mode
        if mode != "cyclic":  # random closures need not hit the kernel
            assert res.sub is not None
        assert res.sub is None or is_subrep(M, res.sub)
    with pytest.raises(ValueError):
        find_destabilizer(M, (1, 1, -4), "guess")


def test_search_targets():
    M = zero_monad(DimVector(1, 2, 1), make_algebra(1, -1, 0, F5))
    rho = (1, 0, -1)
    # (0,1,0) has pairing 0: a stability violation but not a semistability one
    sub = exhaustive_search(M, rho, target="stable").sub
    assert sub is not None and king_pairing(rho, sub) >= 0


@given(st.integers(0, 200))
def test_tt_reverses_destabilizers(seed):
    alg = make_algebra(1, 1, 0, F2)
    d = DimVector(1, 3, 1)
    M = random_monad(d, alg, seed)
    rng = random.Random(seed)
    x, y = rng.randint(-2, 2), rng.randint(-2, 2)
    rho = (Q(x), Q(y), Q(-x - 3 * y))
    rev = (-rho[2], -rho[1], -rho[0])
    a = exhaustive_search(M, rho).sub is not None
    b = exhaustive_search(tt_involution(M), rev).sub is not None
    assert a == b


# ------------------------------------------------------------ line bundles

def test_line_bundle_examples():
    alg = make_algebra(1, -1, 0, F5)
    d = DimVector(2, 3, 0)
    I1 = ((1, 0), (0, 0), (0, 0))
    I2 = ((0, 1), (1, 0), (0, 1))
    M = MonadRep(d, alg, (I1, I2, I2), ((), (), ()))
    v = line_bundle_test(M)
    assert v.verdict == "certified-fail" and v.witness == (1, 0, 0)
    ident = ((1, 0), (0, 1), (0, 0))
    rng = random.Random(0)
    rnd = tuple(tuple(F5.random(rng) for _ in range(2)) for _ in range(3))
    ok = MonadRep(d, alg, (ident, ident, rnd), ((), (), ()))
    assert line_bundle_test(ok, samples=0).verdict == "probably-ok"
    empty = zero_monad(DimVector(0, 2, 1), alg)
    assert line_bundle_test(empty).verdict == "probably-ok"


def test_line_bundle_identity_padded_generic():
    F = GF(101)
    alg = make_algebra(1, -1, 0, F)
    rng = random.Random(7)
    d = DimVector(2, 5, 0)
    Is = []
    for _ in range(3):
        A = [[F.random(rng) for _ in range(2)] for _ in range(5)]
        Is.append(tuple(map(tuple, A)))
    # identity padding on I_1 keeps every coordinate triple injective
    Is[0] = ((1, 0), (0, 1), (0, 0), (0, 0), (0, 0))
    M = MonadRep(d, alg, tuple(Is), ((), (), ()))
    assert line_bundle_test(M, samples=100, seed=1).verdict == "probably-ok"


# ------------------------------------------------------------------- JSON

def test_json_roundtrip():
    for F in (F5, QQ):
        alg = make_algebra(1, -1, 0, F)
        M = random_monad(DimVector(1, 3, 1), alg, 3)
        d = json.loads(json.dumps(monad_to_dict(M)))
        assert monad_from_dict(d) == M


@pytest.mark.parametrize("patch,msg", [
    ({"n": [1, 2]}, "'n'"),
    ({"field": "F:4"}, "'field'"),
    ({"algebra": [1, 1, 1]}, "'algebra'"),
    ({"I": [[[1]], [[1]], [[1]]]}, "I[0]"),
    ({"J": [[[1, 2, "x"]]] * 3}, "J[0][0][2]"),
])
def test_json_validation(patch, msg):
    M = random_monad(DimVector(1, 3, 1), make_algebra(1, -1, 0, F5), 0)
    d = monad_to_dict(M)
    d.update(patch)
    with pytest.raises(MonadError, match=msg.replace("[", r"\[").replace("]", r"\]")):
        monad_from_dict(d)
