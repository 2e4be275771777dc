"""Frobenius operations on ideals and the splitting invariants built from them."""

import itertools
from fractions import Fraction

import pytest

from frobtool import Ideal, Polynomial, RingSpec, parse_poly
from frobtool.errors import BadWitness, NotFPure
from frobtool.frobenius import (HypersurfaceContext, bracket_power, compatible_closure,
                                fedder_fpure, find_splitting_prime, frobenius_root,
                                glassbrenner_witness, in_splitting_ideal, jacobian_ideal,
                                splitting_dimension, splitting_ideal, splitting_number,
                                splitting_prime, splitting_ratio_estimate, theoremC_battery)
from frobtool.ideal import ideal_colon, ideal_intersect, ideal_member, zero_dim_length

from conftest import rand_poly, ring_of

EX41 = RingSpec(7, ("x0", "x1", "x2", "x3"))
EX42 = RingSpec(7, ("x", "y", "z", "w"))


def ctx_of(ring, text):
    return HypersurfaceContext(ring, parse_poly(text, ring))


def subset(A, B):
    return all(ideal_member(g, B) for g in A.gens)


def locally_subset(A, B):
    """A inside B after localizing at the origin: each (B : a) escapes m."""
    for a in A.groebner().gb:
        colon = ideal_colon(B, a, "groebner")
        if all(g.constant_term() == 0 for g in colon.groebner().gb):
            return False
    return True


def ideal(ring, *texts):
    return Ideal(ring, [parse_poly(t, ring) for t in texts])


@pytest.fixture(scope="module")
def ex41():
    return ctx_of(EX41, "x0^2 - x1^6*x2^2 + x3^3")


@pytest.fixture(scope="module")
def ex42():
    return ctx_of(EX42, "x^3 + y^3 + z^3")


def random_ctx(rng, p, n, degree=4, fpure=None):
    ring = ring_of(p, n)
    while True:
        f = rand_poly(ring, rng, rng.randint(1, 4), degree, constant=False)
        if not f:
            continue
        ctx = HypersurfaceContext(ring, f)
        if fpure is None or fedder_fpure(ctx) == fpure:
            return ctx


# examples

@pytest.mark.parametrize("p,n,e,gens,expected", [
    (2, 2, 2, ["x", "y"], ["x^4", "y^4"]),
    (3, 2, 1, ["x + y"], ["x^3 + y^3"]),
])
def test_bracket_power_examples(p, n, e, gens, expected):
    ring = ring_of(p, n)
    assert bracket_power(ideal(ring, *gens), e) == ideal(ring, *expected)


def test_bracket_power_of_max_ideal():
    assert bracket_power(Ideal.maximal(EX41), 1) == ideal(EX41, "x0^7", "x1^7", "x2^7", "x3^7")


@pytest.mark.parametrize("p,gen,expected", [
    (3, "x^3", ["x"]),
    (2, "x^2*y^3", ["x*y"]),
])
def test_frobenius_root_examples(p, gen, expected):
    ring = ring_of(p, 2)
    assert frobenius_root(ideal(ring, gen), 1) == ideal(ring, *expected)


def test_fedder_examples(ex41, ex42):
    assert fedder_fpure(ex41)
    assert fedder_fpure(ex42)
    assert not fedder_fpure(ctx_of(ring_of(2, 2), "x^2 + y^2"))


def test_fedder_displayed_term(ex41):
    # the term of f^6 that escapes m^[7]
    f6 = ex41.f ** 6
    m = (6, 6, 2, 6)
    assert f6.terms.get(m, 0) != 0


def test_splitting_ideal_examples(ex41):
    r = ring_of(3, 2)
    assert splitting_ideal(ctx_of(r, "x*y"), 1) == Ideal.maximal(r)
    r2 = ring_of(2, 2)
    assert splitting_ideal(ctx_of(r2, "x"), 1) == ideal(r2, "x", "y^2")
    I1 = splitting_ideal(ex41, 1)
    assert not I1.is_unit()
    assert not ideal_member(parse_poly("x2", EX41), I1)


def test_splitting_number_examples(ex42):
    assert splitting_number(ex42, 1) == 7
    xy = ctx_of(ring_of(3, 2), "x*y")
    assert [splitting_number(xy, e) for e in (1, 2)] == [1, 1]
    assert splitting_number(ctx_of(ring_of(2, 2), "x"), 1) == 2


def test_splitting_number_not_fpure_is_zero():
    ctx = ctx_of(ring_of(2, 2), "x^2 + y^2")
    assert splitting_number(ctx, 1) == 0
    assert splitting_ideal(ctx, 1).is_unit()


def test_splitting_prime_examples(ex41, ex42):
    assert splitting_prime(ex41) == ideal(EX41, "x0", "x1", "x3")
    assert splitting_prime(ex42) == ideal(EX42, "x", "y", "z")
    r = ring_of(3, 2)
    assert splitting_prime(ctx_of(r, "x*y")) == Ideal.maximal(r)
    r2 = ring_of(2, 2)
    prime = find_splitting_prime(ctx_of(r2, "x"))
    assert prime.ideal == ideal(r2, "x") and prime.is_zero


def test_splitting_prime_requires_fpure():
    with pytest.raises(NotFPure):
        splitting_prime(ctx_of(ring_of(2, 2), "x^2 + y^2"))


def test_splitting_dimension_examples(ex41, ex42):
    assert splitting_dimension(ex41) == 1
    assert splitting_dimension(ex42) == 1
    assert splitting_dimension(ctx_of(ring_of(2, 2), "x")) == 1
    assert splitting_dimension(ctx_of(ring_of(3, 2), "x*y")) == 0


def test_ratio_examples(ex42):
    assert splitting_ratio_estimate(ex42, 1) == 1
    assert splitting_ratio_estimate(ctx_of(ring_of(3, 2), "x*y"), 2) == Fraction(1)
    assert splitting_ratio_estimate(ctx_of(ring_of(2, 2), "x"), 1) == 1


def test_glassbrenner_examples():
    w = parse_poly("w", EX42)
    assert glassbrenner_witness(ctx_of(EX42, "x^3 + y^3 + z^3 + w^2"), w) == (True, 1)
    assert glassbrenner_witness(ctx_of(EX42, "x^3 + y^3 + z^3"), w) == (False, None)
    r = ring_of(2, 2)
    assert glassbrenner_witness(ctx_of(r, "x"), Polynomial.constant(r, 1)) == (True, 1)
    with pytest.raises(BadWitness):
        glassbrenner_witness(ctx_of(r, "x"), Polynomial.zero(r))


def test_glassbrenner_displayed_nonmembership():
    # w * (x^3)^2 (y^3)^2 (z^3)^2 is a term of w f^6 outside m^[7]
    g = parse_poly("w*(x^3 + y^3 + z^3 + w^8)^6", EX42)
    assert g.terms.get((6, 6, 6, 1), 0) != 0
    assert not ideal_member(g, bracket_power(Ideal.maximal(EX42), 1))


@pytest.mark.parametrize("text,E,expected", [
    ("x*y", 2, True),
    ("x", 2, False),
])
def test_battery_examples(text, E, expected):
    b = theoremC_battery(ctx_of(ring_of(3 if text == "x*y" else 2, 2), text), E)
    assert b.consistent
    assert set(b.predicates.values()) == {expected}
    assert len(b.predicates) == 7


def test_battery_example_4_1(ex41):
    b = theoremC_battery(ex41, 1)
    assert b.consistent and not any(b.predicates.values())


def test_jacobian_examples(ex41, ex42):
    assert jacobian_ideal(ex41.f) == ideal(EX41, "2*x0", "x1^5*x2^2", "5*x1^6*x2", "3*x3^2")
    assert jacobian_ideal(ex42.f) == ideal(EX42, "3*x^2", "3*y^2", "3*z^2")
    for p in (2, 3, 5):
        r = ring_of(p, 2)
        assert jacobian_ideal(parse_poly(f"x^{p}", r)).gens == ()


def test_context_validation():
    r = ring_of(3, 2)
    with pytest.raises(ValueError):
        ctx_of(r, "x + 1")
    with pytest.raises(ValueError):
        HypersurfaceContext(r, Polynomial.zero(r))


# properties

def random_ideal(rng, ring, deg=3):
    return Ideal(ring, [g for g in (rand_poly(ring, rng, rng.randint(1, 3), deg)
                                    for _ in range(rng.randint(1, 3))) if g])


def test_bracket_root_adjunction(rng):
    for _ in range(200):
        p, e = rng.choice([2, 3]), rng.choice([1, 2])
        ring = ring_of(p, rng.randint(1, 3))
        I = random_ideal(rng, ring)
        assert frobenius_root(bracket_power(I, e), e).groebner().gb == I.groebner().gb
        J = frobenius_root(I, e)
        assert subset(I, bracket_power(J, e))


def test_frobenius_root_is_minimal(rng):
    # I inside J^[q] forces root(I) inside J
    for _ in range(100):
        p = rng.choice([2, 3])
        ring = ring_of(p, 2)
        J = random_ideal(rng, ring, 2)
        I = Ideal(ring, [h * rand_poly(ring, rng, 2, 3) for h in bracket_power(J, 1).gens])
        assert subset(frobenius_root(I, 1), J)


def test_bracket_power_generating_set_independence(rng):
    for _ in range(100):
        p, e = rng.choice([2, 3]), rng.choice([1, 2])
        ring = ring_of(p, rng.randint(1, 3))
        gens = list(random_ideal(rng, ring, 2).gens)
        other = [gens[0]] + [g + gens[0] * rand_poly(ring, rng, 2, 2) for g in gens[1:]]
        other.append(gens[-1] * rand_poly(ring, rng, 2, 2))
        a = bracket_power(Ideal(ring, gens), e).groebner().gb
        b = bracket_power(Ideal(ring, other), e).groebner().gb
        assert a == b


def test_splitting_number_matches_colon_oracle(rng):
    for _ in range(60):
        ctx = random_ctx(rng, rng.choice([2, 3]), rng.randint(1, 3), 3)
        e = rng.choice([1, 2]) if ctx.ring.p == 2 or ctx.ring.nvars < 3 else 1
        q = ctx.ring.p ** e
        M = Ideal(ctx.ring, [x ** q for x in Polynomial.gens(ctx.ring)])
        J = ideal_colon(M, ctx.f ** (q - 1), "groebner")
        assert splitting_ideal(ctx, e) == J
        assert splitting_number(ctx, e) == (0 if J.is_unit() else zero_dim_length(J))


def test_chain_property(rng):
    seen = 0
    while seen < 40:
        ctx = random_ctx(rng, rng.choice([2, 3]), rng.randint(2, 3), 4, fpure=True)
        levels = [splitting_ideal(ctx, e) for e in (1, 2, 3)]
        assert subset(levels[1], levels[0]) and subset(levels[2], levels[1])
        assert all(ideal_member(ctx.f, J) for J in levels)
        seen += 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_positive_a1_iff_fedder(rng, p):
    for _ in range(100):
        ctx = random_ctx(rng, p, rng.randint(2, 3), 4)
        assert (splitting_number(ctx, 1) >= 1) == fedder_fpure(ctx)


def test_splitting_prime_compatibility(rng):
    seen = 0
    while seen < 40:
        p = rng.choice([2, 3])
        ctx = random_ctx(rng, p, rng.randint(2, 3), 4, fpure=True)
        prime = find_splitting_prime(ctx)
        K = prime.ideal.groebner()
        u = ctx.f ** (p - 1)
        rooted = frobenius_root(Ideal(ctx.ring, [u * g for g in K.gb]), 1)
        # root(u K) = K holds in the local ring at the origin
        assert subset(rooted, K)
        assert locally_subset(K, rooted)
        assert locally_subset(K, ideal_intersect(rooted, K))
        assert ideal_member(ctx.f, K)
        for e in (1, 2, 3):
            assert all(in_splitting_ideal(ctx, g, e) for g in K.gb)
        for e in (1, 2):
            assert subset(K, splitting_ideal(ctx, e))
        seen += 1


def test_splitting_prime_is_largest_proper_compatible(rng):
    # every variable outside P generates a compatible ideal escaping m
    for _ in range(30):
        ctx = random_ctx(rng, rng.choice([2, 3]), 2, 4, fpure=True)
        prime = find_splitting_prime(ctx)
        u = ctx.f ** (ctx.ring.p - 1)
        for x in Polynomial.gens(ctx.ring):
            inside = ideal_member(x, prime.ideal)
            assert inside == (compatible_closure([x], u) is not None)


def test_battery_never_inconsistent(rng):
    seen = 0
    while seen < 60:
        ctx = random_ctx(rng, rng.choice([2, 3, 5]), rng.randint(2, 3), 3, fpure=True)
        assert theoremC_battery(ctx, 2).consistent
        seen += 1


@pytest.mark.parametrize("p,n,e", [(p, n, e) for p in (2, 3) for n in (1, 2, 3) for e in (1, 2)])
def test_regular_point_calibration(p, n, e):
    ring = ring_of(p, n)
    for i in range(n):
        ctx = HypersurfaceContext(ring, Polynomial.var(ring, i))
        assert splitting_number(ctx, e) == p ** (e * (n - 1))
