import random

import pytest
import sympy as sp
from fractions import Fraction
from hypothesis import given, strategies as st

from hilbwalls.fields import GF, QQ, Field, matmul, matvec, nullspace, rank, rref


def rand_matrix(rng, r, c, F):
    return [[F.random(rng) for _ in range(c)] for _ in range(r)]


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
def test_rank_matches_sympy_over_Q(seed, r, c):
    rng = random.Random(seed)
    A = rand_matrix(rng, r, c, QQ)
    if rng.random() < 0.5 and r > 1:
        A[-1] = [x + y for x, y in zip(A[0], A[1 % r])]
    assert rank(A, QQ) == sp.Matrix(A).rank()


@given(st.integers(0, 10_000), st.sampled_from([2, 3, 5, 101]))
def test_nullspace_is_kernel_over_Fp(seed, p):
    F = GF(p)
    rng = random.Random(seed)
    A = rand_matrix(rng, 3, 6, F)
    K = nullspace(A, F)
    assert len(K) == 6 - rank(A, F)
    for v in K:
        assert not any(matvec(A, v, F))


def test_rref_pivots_identity_block():
    R, piv = rref([[2, 4], [1, 3]], QQ)
    assert piv == [0, 1]
    assert R == [[1, 0], [0, 1]]


def test_field_coercion():
    F = GF(7)
    assert F("1/2") == 4
    assert F(-1) == 6
    assert QQ("3/6") == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))
    with pytest.raises(ValueError):
        Field(4)
    assert Field.from_tag("F:5") == GF(5) and Field.from_tag("Q") == QQ


def test_matmul_small():
    F = GF(5)
    assert matmul([[1, 2]], [[3], [4]], F) == [[1]]
