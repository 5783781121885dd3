import random
from itertools import product

import pytest

from endok.factor import (
    RATIONAL_DEGREE_CAP,
    factor_univariate,
    is_irreducible,
)
from endok.fields import GF, QQ
from endok.poly import UniPoly

from conftest import ALL_FIELDS, field_id

F2, F3, F5 = GF(2), GF(3), GF(5)


def strs(factors):
    return [(str(q), e) for q, e in factors]


def rand_poly(field, rng, max_deg):
    deg = rng.randint(1, max_deg)
    coeffs = [field.random_scalar(rng) for _ in range(deg + 1)]
    if not coeffs[-1]:
        coeffs[-1] = field.one
    return UniPoly(field, coeffs)


# -- independent oracle: exhaustive divisor search ------------------------------


def divisor_sweep_factor_modp(f):
    """Trial division by every monic polynomial, smallest degree first."""
    p = f.field.characteristic
    f = f.monic()
    out = []
    while f.degree > 0:
        found = None
        for d in range(1, f.degree + 1):
            for tail in product(range(p), repeat=d):
                q = UniPoly(f.field, list(tail) + [1])
                if (f % q).is_zero:
                    found = q
                    break
            if found:
                break
        out.append(found)
        f = f // found
    return sorted(strs((q, 1) for q in out))


def has_rational_root(f):
    """Root sweep over candidates p/q with p | a0, q | lead, after clearing
    denominators."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator
    ints = [int(c * den) for c in f.coeffs]
    if not ints or ints[0] == 0:
        return True  # 0 is a root
    a0, an = abs(ints[0]), abs(ints[-1])
    ps = [d for d in range(1, a0 + 1) if a0 % d == 0]
    qs = [d for d in range(1, an + 1) if an % d == 0]
    from fractions import Fraction

    for pnum in ps:
        for qden in qs:
            for sign in (1, -1):
                if not f(Fraction(sign * pnum, qden)):
                    return True
    return False


# -- worked examples -----------------------------------------------------------


def test_factor_rational_quadratic():
    t = UniPoly.gen(QQ)
    assert strs(factor_univariate(t * t - UniPoly.one(QQ))) == [
        ("t - 1", 1),
        ("t + 1", 1),
    ]


def test_factor_irreducible_mod3():
    # squares mod 3 are {0, 1}, so t^2 + 1 has no root and degree 2 forces
    # irreducibility
    f = UniPoly(F3, [1, 0, 1])
    assert strs(factor_univariate(f)) == [("t^2 + 1", 1)]
    assert all(f(a) for a in range(3))


def test_factor_frobenius_square_mod2():
    assert strs(factor_univariate(UniPoly(F2, [1, 0, 1]))) == [("t + 1", 2)]


def test_factor_quartic_matches_divisor_sweep():
    t = UniPoly.gen(QQ)
    f = t**4 - UniPoly.one(QQ)
    got = strs(factor_univariate(f))
    assert got == [("t - 1", 1), ("t + 1", 1), ("t^2 + 1", 1)]
    # cross-check the same factorization over F7 (7 = 3 mod 4, so t^2+1
    # stays irreducible) with the exhaustive divisor sweep
    f7 = UniPoly(GF(7), [-1, 0, 0, 0, 1])
    sweep = divisor_sweep_factor_modp(f7)
    got7 = sorted(strs((q, 1) for q, e in factor_univariate(f7) for _ in range(e)))
    assert got7 == sweep


def test_factor_zero_and_constant():
    with pytest.raises(ValueError):
        factor_univariate(UniPoly.zero(QQ))
    assert factor_univariate(UniPoly.constant(QQ, 5)) == []


def test_degree_cap_over_rationals():
    t = UniPoly.gen(QQ)
    f = t ** (RATIONAL_DEGREE_CAP + 1) - UniPoly.one(QQ)
    with pytest.raises(ValueError, match="degree too large"):
        factor_univariate(f)


def test_multiplicities():
    t = UniPoly.gen(QQ)
    one = UniPoly.one(QQ)
    f = (t + one) ** 2 * (t - one) ** 3 * 7
    assert strs(factor_univariate(f)) == [("t - 1", 3), ("t + 1", 2)]


def test_deterministic_output():
    rng_polys = random.Random(99)
    for field in (F2, F5, QQ):
        for _ in range(10):
            f = rand_poly(field, rng_polys, 9)
            a = factor_univariate(f)
            b = factor_univariate(f)
            c = factor_univariate(f, random.Random(123))
            assert a == b
            assert sorted(strs(a)) == sorted(strs(c))


def test_randomized_splitting_path():
    # p**degree above the deterministic threshold forces distinct-degree plus
    # Cantor-Zassenhaus splitting
    rng = random.Random(17)
    F13 = GF(13)
    for _ in range(20):
        f = rand_poly(F13, rng, 12)
        if f.degree < 9:
            f = f * UniPoly.gen(F13) ** (9 - f.degree)
        assert 13**f.degree > 10**6
        factors = factor_univariate(f, rng)
        prod = UniPoly.constant(F13, f.lc)
        for q, e in factors:
            assert q.is_monic
            prod = prod * q**e
        assert prod == f


# -- soundness sweeps -----------------------------------------------------------


@pytest.mark.parametrize("field", ALL_FIELDS, ids=field_id)
def test_reconstruction(field):
    rng = random.Random(42)
    for _ in range(120):
        f = rand_poly(field, rng, 12)
        factors = factor_univariate(f, rng)
        prod = UniPoly.constant(field, f.lc)
        for q, e in factors:
            prod = prod * q**e
        assert prod == f


@pytest.mark.parametrize("field", ALL_FIELDS, ids=field_id)
def test_low_degree_factors_are_irreducible(field):
    rng = random.Random(43)
    for _ in range(60):
        f = rand_poly(field, rng, 8)
        factors = factor_univariate(f, rng)
        for q, _ in factors:
            if q.degree > 3:
                continue
            if field.is_prime_field:
                # an irreducible of degree 2 or 3 has no root at all
                if q.degree >= 2:
                    assert all(q(a) for a in range(field.characteristic))
            else:
                if q.degree >= 2:
                    assert not has_rational_root(q)
        # no factor divides another reported factor of lower degree
        for q, _ in factors:
            for r, _ in factors:
                if r.degree < q.degree:
                    assert not (q % r).is_zero


def test_is_irreducible():
    t = UniPoly.gen(QQ)
    one = UniPoly.one(QQ)
    assert is_irreducible(t * t + one)
    assert not is_irreducible(t * t - one)
    assert not is_irreducible(one)
    assert is_irreducible(UniPoly(F2, [1, 1, 1]))  # no root in F_2


def all_irreducibles_by_sweep(field, max_deg):
    """Independent list of monic irreducibles of degree <= max_deg: a monic
    polynomial is irreducible iff no smaller-degree monic divides it."""
    p = field.characteristic
    irr = []
    for d in range(1, max_deg + 1):
        for tail in product(range(p), repeat=d):
            q = UniPoly(field, list(tail) + [1])
            if not any(s.degree <= d // 2 and (q % s).is_zero for s in irr):
                irr.append(q)
    return irr


@pytest.mark.parametrize("field", [F2, F3], ids=repr)
def test_exact_multiset_against_sweep_irreducibles(field):
    irr = all_irreducibles_by_sweep(field, 3)
    rng = random.Random(77)
    for _ in range(40):
        chosen = rng.sample(irr, rng.randint(1, 3))
        expected = {}
        f = UniPoly.one(field)
        for q in chosen:
            e = rng.randint(1, 3)
            expected[q] = e
            f = f * q**e
        got = dict(factor_univariate(f, rng))
        assert got == expected


def test_exact_multiset_over_rationals():
    t = UniPoly.gen(QQ)
    one = UniPoly.one(QQ)
    two = UniPoly.constant(QQ, 2)
    # irreducible by Eisenstein at 2 (t^k - 2) or by the absence of roots
    irreducibles = [t - one, t + two, t * t + one, t * t - two, t**3 - two]
    rng = random.Random(78)
    for _ in range(25):
        chosen = rng.sample(irreducibles, rng.randint(1, 4))
        expected = {}
        f = UniPoly.constant(QQ, rng.choice([1, -2, 3, 5]))
        for q in chosen:
            e = rng.randint(1, 2)
            expected[q] = e
            f = f * q**e
        got = dict(factor_univariate(f, rng))
        assert got == expected


def test_large_coefficients_force_deep_lifting():
    t = UniPoly.gen(QQ)
    big1 = t - UniPoly.constant(QQ, 100003)
    big2 = t + UniPoly.constant(QQ, 99991)
    quad = t * t + UniPoly.one(QQ)
    f = big1 * big2 * quad
    assert dict(factor_univariate(f)) == {big1: 1, big2: 1, quad: 1}


def test_odd_prime_cantor_zassenhaus():
    F1009 = GF(1009)
    t = UniPoly.gen(F1009)
    # 1009^3 is far above the deterministic threshold
    f = (t - UniPoly.constant(F1009, 5)) * (t * t + UniPoly.one(F1009))
    factors = factor_univariate(f)
    assert sorted((q.degree, e) for q, e in factors) in ([(1, 1), (2, 1)], [(1, 1), (1, 1), (1, 1)])
    prod = UniPoly.one(F1009)
    for q, e in factors:
        prod = prod * q**e
    assert prod == f
