from fractions import Fraction as Q

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from hilbwalls.ktheory import DimVector, NumClass, hilbert_class, hilbert_type, line_bundle
from hilbwalls.stability import (VERTICAL, Character, StabilityParam, central_charge,
                                 character_from_charges, character_rho, character_rho_limit,
                                 generator_charges, hilbert_chamber_character, quiver_regions,
                                 same_ray, slope)
from hilbwalls.walls import line_bundle_wall

from oracles import central_charge as oracle_Z

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)
positive = st.fractions(min_value=Q(1, 12), max_value=4, max_denominator=12)


def test_central_charge_examples():
    assert central_charge(NumClass(1, 0, 1), (-1, 1)) == (0, 1)
    assert central_charge(NumClass(0, 0, 0), (Q(1, 3), 2)) == (0, 0)
    for n in (1, 3, 8):
        assert central_charge(hilbert_class(n), (-1, 1)) == (n, 1)


@given(st.integers(-5, 5), st.integers(-9, 9), st.integers(-9, 9), rationals, positive)
def test_central_charge_matches_integral_formula(r, c, x, s, t):
    re, im = central_charge(NumClass(r, c, x), (s, t))
    z = oracle_Z((r, c, x), s, t)
    assert sp.re(z) == sp.Rational(re) and sp.im(z) == sp.Rational(im)


def test_slope_examples():
    assert slope(hilbert_class(4), (-1, 1)) == -4
    assert slope(NumClass(0, 1, 3), (Q(-1, 2), Q(1, 3))) != VERTICAL
    assert slope(NumClass(2, -2, 0), (-1, Q(1, 2))) == VERTICAL


def test_param_requires_positive_t():
    with pytest.raises(ValueError):
        StabilityParam(0, 0)


def test_quiver_regions_examples():
    assert quiver_regions((Q(-1, 2), Q(1, 2))) == [-1, 0]
    assert quiver_regions((0, 2)) == []
    assert quiver_regions((-2, Q(1, 2))) == [-2]


@given(rationals, positive)
def test_quiver_regions_definition(s, t):
    got = set(quiver_regions((s, t)))
    assert got == {j for j in range(-10, 11) if (s - j) ** 2 + t ** 2 < 1}


def k0_closed_form(n, s, t):
    c = t * s / (t * t / 2 + n - s * s / 2)
    v = ((1 + s) ** 2 / 2 - t * t / 2, t * t / 2 - s * s / 2, (1 - s) ** 2 / 2 - t * t / 2)
    w = (t * (1 + s), -t * s, t * (s - 1))
    return tuple(c * a + b for a, b in zip(v, w))


def left_closed_form(n, s, t, k, tq):
    """The A(-k) closed form with t^2 replaced by t^2 / tq in the bracket."""
    u = s + k
    c = t * s / (t * t / tq + 2 * n - s * s)
    v = ((u + 1) ** 2 - t * t / tq, -u * u + t * t / tq, (u - 1) ** 2 - t * t / tq)
    w = (t * (u + 1), -t * u, t * (u - 1))
    return tuple(c * a + b for a, b in zip(v, w))


def in_region(s, t, j):
    return (s - j) ** 2 + t * t < 1


@given(st.integers(1, 9), st.fractions(min_value=-Q(99, 100), max_value=-Q(1, 100)),
       st.fractions(min_value=Q(1, 100), max_value=Q(99, 100)))
def test_k0_closed_form_up_to_positive_scalar(n, s, t):
    assume(in_region(s, t, 0))
    ch = character_rho(hilbert_type(n, 0), (s, t))
    assert same_ray(ch.rho, k0_closed_form(n, s, t))


@given(st.integers(2, 9), st.integers(1, 3), st.fractions(min_value=Q(1, 100), max_value=Q(99, 100)),
       st.fractions(min_value=Q(1, 100), max_value=Q(99, 100)))
def test_left_closed_form_needs_full_t_squared(n, k, u, t):
    assume(hilbert_type(n, k).is_nonnegative)
    s = -k - u
    assume(in_region(s, t, -k))
    ch = character_rho(hilbert_type(n, k), (s, t), -k)
    cf = left_closed_form(n, s, t, k, 1)
    # the closed form's prefactor changes sign with t^2 + 2n - s^2
    sign = 1 if t * t + 2 * n - s * s > 0 else -1
    assert same_ray(ch.rho, tuple(sign * x for x in cf))


def test_left_closed_form_as_printed_is_not_proportional():
    n, k, s, t = 3, 1, Q(-4, 3), Q(1, 4)
    ch = character_rho(hilbert_type(n, k), (s, t), -k)
    printed = left_closed_form(n, s, t, k, 2)
    assert not same_ray(ch.rho, printed)
    assert not same_ray(ch.rho, tuple(-x for x in printed))


@given(st.integers(1, 9), st.integers(0, 3), rationals, positive)
def test_rho_orthogonal(n, k, s, t):
    total = hilbert_type(n, k)
    assume(total.is_nonnegative)
    for j in quiver_regions((s, t)):
        tot = DimVector(*total.astuple(), j)
        try:
            ch = character_rho(tot, (s, t), j)
        except ValueError:
            continue
        assert ch.dot(tot) == 0


small = st.fractions(min_value=Q(1, 30), max_value=Q(2, 3), max_denominator=30)


@given(st.integers(1, 9), st.integers(0, 3), small, small, st.sampled_from([(3, 4), (-5, 12), (0, 1), (-1, 0), (8, -15)]))
def test_rho_invariant_under_common_rotation(n, k, u, t, rot):
    total = hilbert_type(n, k)
    assume(total.is_nonnegative)
    s = -k - u
    assume(in_region(s, t, -k))
    p, q = rot  # rotation by the phase of p + iq, scaled by |p + iq|
    charges = generator_charges((s, t), -k)
    rotated = [(p * a - q * b, q * a + p * b) for a, b in charges]
    try:
        base = character_from_charges(total, charges)
        turned = character_from_charges(total, rotated)
    except ValueError:  # n.b = 0 for one of the two frames
        assume(False)
    assert same_ray(base.rho, turned.rho)


def test_rho_degenerate_direction_raises():
    total = DimVector(1, 0, 0, 0)
    # n.b = Im Z(O(-1)[2]) vanishes exactly at s = -1
    with pytest.raises(ValueError):
        character_from_charges(total, [(1, 0), (0, 1), (1, 1)])


def sin2(u, v):
    cross = sum((u[i] * v[j] - u[j] * v[i]) ** 2 for i in range(3) for j in range(i + 1, 3))
    return cross / (sum(x * x for x in u) * sum(x * x for x in v))


@pytest.mark.parametrize("n,k,u", [(3, 0, Q(1, 3)), (5, 1, Q(1, 2)), (7, 2, Q(1, 7)),
                                   (6, 1, Q(5, 6)), (9, 3, Q(1, 4)), (2, 0, Q(2, 3))])
def test_rho_converges_to_limit(n, k, u):
    s = -k - u
    lim = character_rho_limit(n, s, k)
    errs = []
    for t in (Q(1, 10), Q(1, 100), Q(1, 1000)):
        ch = character_rho(hilbert_type(n, k), (s, t), -k)
        assert sum(a * b for a, b in zip(ch.rho, lim.rho)) > 0
        errs.append(sin2(ch.rho, lim.rho))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < Q(1, 10 ** 4)


@pytest.mark.parametrize("n", range(1, 12))
def test_limit_endpoints(n):
    k = 0
    while hilbert_type(n, k).is_nonnegative:
        m1, _, p1 = hilbert_type(n, k).astuple()
        assert character_rho_limit(n, -k, k).same_direction((p1, 0, -m1)) or p1 == m1 == 0
        assert character_rho_limit(n, -k - 1, k)[0] == 0
        assert character_rho_limit(n, -k + 1, k)[2] == 0
        assert character_rho_limit(n, Q(-k) - Q(1, 3), k).dot(hilbert_type(n, k)) == 0
        k += 1


def test_limit_out_of_range():
    with pytest.raises(ValueError):
        character_rho_limit(3, 2, 0)


def test_hilbert_chamber_character():
    assert hilbert_chamber_character(3, 2).rho == (7, 3, -14)
    assert hilbert_chamber_character(1, 2).rho == (3, 1, -6)
    for n in range(1, 10):
        for m in range(2, 6):
            ch = hilbert_chamber_character(n, m)
            assert ch.dot(ch.total) == 0
    with pytest.raises(ValueError):
        hilbert_chamber_character(3, 1)


@given(st.integers(2, 12), st.fractions(min_value=Q(1, 20), max_value=Q(19, 20)))
def test_slope_constant_along_wall(n, frac):
    # Points on the O(-1) wall: rational parametrization of the circle.
    w = line_bundle_wall(n, 1)
    R = Q(2 * n - 1, 2)
    lam = frac
    s = w.center + R * (1 - lam * lam) / (1 + lam * lam)
    t = R * 2 * lam / (1 + lam * lam)
    assert w.on_wall(s, t)
    assert slope(hilbert_class(n), (s, t)) == slope(line_bundle(-1), (s, t))


def test_character_integral_rep():
    assert Character((Q(1, 2), Q(-3, 4), Q(1, 4)), DimVector(1, 1, 1)).integral() == (2, -3, 1)
