"""Polynomials, rational functions, places, partial fractions, residues."""

from __future__ import annotations

import random

import pytest

from aspw.errors import NotIrreducible, PoleAtPlace, ZeroPolynomial
from aspw.gf import make_field
from aspw.upoly import (
    INF,
    PartialFractions,
    Place,
    Poly,
    RatFunc,
    factor,
    inv_frobenius_mod,
    is_irreducible,
    monic_irreducibles,
    partial_fractions,
    pf_string,
    place_valuation,
    pole_leading_digit,
    poly_extgcd,
    poly_gcd,
    poly_powmod,
    residue_eval,
    residue_field,
)

from conftest import rand_elem, rand_poly, rand_ratfunc


# === polynomial ring =======================================================

class TestPoly:
    def test_trailing_zeros_trimmed(self, F3):
        f = Poly(F3, (F3.one(), F3.zero(), F3.zero()))
        assert f.degree() == 0
        assert Poly(F3).is_zero()
        assert Poly(F3).degree() == -1

    def test_mul_matches_evaluation(self, F9):
        # oracle: ring homomorphism into the field at every point
        rng = random.Random(23)
        for _ in range(40):
            f = rand_poly(rng, F9, 6)
            g = rand_poly(rng, F9, 6)
            h = f * g
            for a in list(F9.elements())[:5]:
                assert h(a) == f(a) * g(a)

    def test_divmod_identity(self, F27):
        rng = random.Random(29)
        for _ in range(40):
            f = rand_poly(rng, F27, 10)
            g = rand_poly(rng, F27, 5)
            q, r = divmod(f, g)
            assert q * g + r == f
            assert r.is_zero() or r.degree() < g.degree()

    def test_gcd_divides_both(self, F4):
        rng = random.Random(31)
        for _ in range(30):
            h = rand_poly(rng, F4, 3)
            f = rand_poly(rng, F4, 4) * h
            g = rand_poly(rng, F4, 4) * h
            d = poly_gcd(f, g)
            assert (f % d).is_zero() and (g % d).is_zero()
            assert d.is_monic()

    def test_extgcd_bezout(self, F9):
        rng = random.Random(37)
        for _ in range(30):
            f = rand_poly(rng, F9, 6)
            g = rand_poly(rng, F9, 6)
            d, x, y = poly_extgcd(f, g)
            assert x * f + y * g == d

    def test_pth_power_and_root(self, F27):
        rng = random.Random(41)
        for _ in range(20):
            f = rand_poly(rng, F27, 5)
            fp = f.pth_power()
            assert fp == f ** 3
            assert fp.pth_root() == f
        t = Poly.variable(F27)
        with pytest.raises(ValueError):
            (t + 1).pth_root()

    def test_derivative_product_rule(self, F9):
        rng = random.Random(43)
        for _ in range(20):
            f = rand_poly(rng, F9, 5)
            g = rand_poly(rng, F9, 5)
            lhs = (f * g).derivative()
            rhs = f.derivative() * g + f * g.derivative()
            assert lhs == rhs

    def test_str_decreasing_powers(self, F27):
        w = F27.gen()
        t = Poly.variable(F27)
        f = t ** 9 + t ** 3 + t + Poly.const(F27, w + 1)
        assert str(f) == "T^9+T^3+T+w+1"
        g = Poly.const(F27, 2 * w) * t ** 2 + Poly.const(F27, 1)
        assert str(g) == "(2w)T^2+1"


# === factoring =============================================================

class TestFactor:
    def test_visible_roots(self, F2):
        t = Poly.variable(F2)
        fs = factor(t * t + t)
        assert [(str(g), m) for g, m in fs] == [("T", 1), ("T+1", 1)]

    def test_power_of_linear(self, F27):
        t = Poly.variable(F27)
        fs = factor((t + 1) ** 54)
        assert len(fs) == 1
        assert fs[0][0] == t + 1 and fs[0][1] == 54

    def test_zero_rejected(self, F3):
        with pytest.raises(ZeroPolynomial):
            factor(Poly(F3))

    def test_random_roundtrip_with_irreducibility(self, F9):
        rng = random.Random(47)
        for _ in range(25):
            f = rand_poly(rng, F9, 6, monic=True)
            if f.degree() == 0:
                continue
            fs = factor(f)
            prod = Poly.const(F9, 1)
            for g, m in fs:
                assert is_irreducible(g)  # cross-check with the Rabin test
                prod = prod * g ** m
            assert prod == f

    def test_inseparable_and_repeated_factors(self, F9):
        t = Poly.variable(F9)
        w = F9.gen()
        f = ((t ** 2 + 1) ** 3) * (t + w) ** 2 * t
        got = dict(factor(f))
        # T^2+1 = (T+w)(T+2w) over F_9 since w^2 = -1
        assert got[t + w] == 5
        assert got[t + 2 * w] == 3
        assert got[t] == 1

    def test_field_polynomial_splits_by_degree(self, F3):
        # T^9 - T is the product of all monic irreducibles of degree 1 and 2
        t = Poly.variable(F3)
        fs = factor(t ** 9 - t)
        assert all(m == 1 for _, m in fs)
        degs = sorted(g.degree() for g, _ in fs)
        assert degs == [1, 1, 1, 2, 2, 2]

    def test_monic_irreducibles_frozen_f3_deg2(self, F3):
        got = [str(g) for g in monic_irreducibles(F3, 2)]
        assert got == ["T^2+1", "T^2+T+2", "T^2+2T+2"]

    def test_powmod_agrees_with_direct(self, F9):
        rng = random.Random(53)
        for _ in range(15):
            f = rand_poly(rng, F9, 4)
            m = rand_poly(rng, F9, 3, monic=True)
            if m.degree() == 0:
                continue
            assert poly_powmod(f, 7, m) == (f ** 7) % m


# === rational functions ====================================================

class TestRatFunc:
    def test_normalization(self, F9):
        t = Poly.variable(F9)
        w = F9.gen()
        u = RatFunc((t + 1) * (t + w) * 2, (t + 1) * t * w)
        assert u.den.is_monic()
        assert poly_gcd(u.num, u.den).degree() == 0
        assert u == RatFunc((t + w) * (2 / w), t)

    def test_field_operations(self, F27):
        rng = random.Random(59)
        for _ in range(25):
            a = rand_ratfunc(rng, F27, 4)
            b = rand_ratfunc(rng, F27, 4)
            assert (a + b) - b == a
            if not b.is_zero():
                assert (a / b) * b == a
        x = RatFunc.variable(F27)
        assert (1 - x) + x == RatFunc.const(F27, 1)

    def test_pth_power_roundtrip(self, F9):
        rng = random.Random(61)
        for _ in range(15):
            a = rand_ratfunc(rng, F9, 4)
            ap = a.pth_power()
            assert ap == a ** 3
            assert ap.is_pth_power()
            assert ap.pth_root() == a


# === places and valuations =================================================

class TestValuation:
    def test_infinite_place_of_monomial(self, F3):
        # v at infinity of T^(lambda*p) is minus lambda*p
        t = RatFunc.variable(F3)
        assert place_valuation(t ** 6, Place.infinite()) == -6
        assert place_valuation(1 / t ** 2, Place.infinite()) == 2

    def test_example_pole_order(self, F27):
        t = Poly.variable(F27)
        u = RatFunc(Poly.const(F27, 1), (t + 1) ** 54) + RatFunc(Poly.const(F27, 1), t + 1)
        assert place_valuation(u, Place.finite(t + 1)) == -54

    def test_unit_has_valuation_zero_everywhere(self, F9):
        one = RatFunc.const(F9, 1)
        t = Poly.variable(F9)
        for P in [Place.infinite(), Place.finite(t), Place.finite(t + 1)]:
            assert place_valuation(one, P) == 0

    def test_zero_gets_infinity(self, F3):
        z = RatFunc(Poly(F3))
        assert place_valuation(z, Place.infinite()) == INF

    def test_multiplicativity_and_ultrametric(self, F9):
        rng = random.Random(67)
        t = Poly.variable(F9)
        quad = next(monic_irreducibles(F9, 2))
        places = [Place.infinite(), Place.finite(t), Place.finite(quad)]
        for _ in range(20):
            a = rand_ratfunc(rng, F9, 5)
            b = rand_ratfunc(rng, F9, 5)
            if a.is_zero() or b.is_zero():
                continue
            for P in places:
                assert place_valuation(a * b, P) == place_valuation(a, P) + place_valuation(b, P)
                s = a + b
                if not s.is_zero():
                    assert place_valuation(s, P) >= min(
                        place_valuation(a, P), place_valuation(b, P)
                    )

    def test_principal_divisor_has_degree_zero(self, F27):
        rng = random.Random(71)
        for _ in range(10):
            u = rand_ratfunc(rng, F27, 6)
            if u.is_zero() or u.is_constant():
                continue
            total = place_valuation(u, Place.infinite())
            seen = set()
            for pol in [u.num, u.den]:
                if pol.degree() > 0:
                    for P, _ in factor(pol):
                        if P not in seen:
                            seen.add(P)
                            total += place_valuation(u, Place.finite(P)) * P.degree()
            assert total == 0

    def test_place_requires_irreducible(self, F9):
        t = Poly.variable(F9)
        with pytest.raises(NotIrreducible):
            Place.finite(t * (t + 1))


# === partial fractions =====================================================

class TestPartialFractions:
    def test_two_simple_poles(self, F2):
        t = Poly.variable(F2)
        u = RatFunc(Poly.const(F2, 1), t * t + t)
        pf = partial_fractions(u)
        assert pf.poly_part.is_zero()
        assert [(str(P), e, str(C)) for P, e, C in pf.digit_triples()] == [
            ("T", 1, "1"),
            ("T+1", 1, "1"),
        ]
        assert pf_string(u) == "1/T + 1/(T+1)"

    def test_worked_example_shape(self, F27):
        w = F27.gen()
        t = Poly.variable(F27)
        poly_part = t ** 9 + t ** 3 + t + Poly.const(F27, w + 1)
        u = (
            RatFunc(Poly.const(F27, 1), (t + 1) ** 54)
            + RatFunc(Poly.const(F27, 1), t + 1)
            + RatFunc(poly_part)
        )
        pf = partial_fractions(u)
        assert pf.poly_part == poly_part
        assert len(pf.terms) == 1
        block = pf.terms[0]
        assert block.place_poly == t + 1
        assert [(e, str(c)) for e, c in block.digits] == [(54, "1"), (1, "1")]
        assert pf_string(u) == "1/(T+1)^54 + 1/(T+1) + T^9+T^3+T+w+1"

    def test_polynomial_input_has_no_terms(self, F9):
        rng = random.Random(73)
        f = rand_poly(rng, F9, 7)
        pf = partial_fractions(RatFunc(f))
        assert pf.terms == ()
        assert pf.poly_part == f

    def test_random_roundtrip(self, F4, F9, F27):
        # recombination is the identity; block numerators are prime to P
        for ctx, seed in ((F4, 79), (F9, 83), (F27, 89)):
            rng = random.Random(seed)
            for _ in range(70):
                u = rand_ratfunc(rng, ctx, 12)
                pf = partial_fractions(u)
                assert pf.recombine() == u
                for P, e, Q in pf.place_triples():
                    assert e >= 1
                    assert Q.degree() < (P ** e).degree()
                    assert poly_gcd(Q, P).degree() == 0

    def test_digit_degrees_bounded_by_place(self, F9):
        t = Poly.variable(F9)
        P = t ** 2 + 1
        w = F9.gen()
        u = RatFunc(t ** 3 + Poly.const(F9, w), P ** 3)
        pf = partial_fractions(u)
        for PP, _, C in pf.digit_triples():
            assert C.degree() < PP.degree()
        assert pf.recombine() == u


# === residues ==============================================================

class TestResidueEval:
    def test_linear_place_substitution(self, F9):
        t = Poly.variable(F9)
        w = F9.gen()
        u = RatFunc.variable(F9)
        assert residue_eval(u, Place.finite(t - Poly.const(F9, w))) == w

    def test_pole_shifted_example(self, F3):
        t = Poly.variable(F3)
        u = RatFunc(Poly.const(F3, 1), t + 1)
        assert residue_eval(u, Place.finite(t)) == F3.one()

    def test_quadratic_place_matches_quotient_ring(self, F3):
        # oracle: value computed in F_3[T]/(P) by modular inversion
        t = Poly.variable(F3)
        for P in monic_irreducibles(F3, 2):
            place = Place.finite(P)
            rf = residue_field(F3, place)
            u = RatFunc(t * t + 1, t + 1)
            got = residue_eval(u, place)
            qq = rf.ctx.order()
            inv_den = poly_powmod(u.den, qq - 2, P)
            val_poly = (u.num * inv_den) % P
            expect = val_poly.eval_embedded(rf.nu, rf.emb)
            assert got == expect

    def test_residue_at_infinity(self, F9):
        w = F9.gen()
        t = Poly.variable(F9)
        u = RatFunc(Poly.const(F9, w) * t ** 2 + 1, t ** 2 + t)
        assert residue_eval(u, Place.infinite()) == w
        v = RatFunc(t, t ** 2 + 1)
        assert residue_eval(v, Place.infinite()).is_zero()

    def test_pole_raises(self, F9):
        t = Poly.variable(F9)
        u = RatFunc(Poly.const(F9, 1), t)
        with pytest.raises(PoleAtPlace):
            residue_eval(u, Place.finite(t))

    def test_residue_field_designated_root(self, F3):
        t = Poly.variable(F3)
        P = t * t + 1
        rf = residue_field(F3, Place.finite(P))
        assert rf.ctx.order() == 9
        assert P.eval_embedded(rf.nu, rf.emb).is_zero()
        # smallest root in canonical order: w itself for this modulus
        assert rf.nu.to_int() == 3
        assert residue_field(F3, Place.finite(P)) is rf  # cached

    def test_residue_is_ring_homomorphism(self, F9):
        rng = random.Random(97)
        P = next(monic_irreducibles(F9, 2))
        place = Place.finite(P)
        picked = 0
        while picked < 10:
            a = rand_ratfunc(rng, F9, 4)
            b = rand_ratfunc(rng, F9, 4)
            if place_valuation(a, place) < 0 or place_valuation(b, place) < 0:
                continue
            picked += 1
            assert residue_eval(a + b, place) == residue_eval(a, place) + residue_eval(b, place)
            assert residue_eval(a * b, place) == residue_eval(a, place) * residue_eval(b, place)


# === reduction helpers =====================================================

class TestPoleDigit:
    def test_leading_digit_reproduces_valuation(self, F27):
        t = Poly.variable(F27)
        w = F27.gen()
        u = RatFunc(Poly.const(F27, w) + t, (t + 1) ** 5) + RatFunc(t ** 2, t + 2)
        e, A = pole_leading_digit(u, Place.finite(t + 1))
        assert e == 5
        assert A.degree() < 1
        # subtracting the digit term raises the pole order
        v = u - RatFunc(A, (t + 1) ** 5)
        assert place_valuation(v, Place.finite(t + 1)) > -5

    def test_higher_degree_place(self, F3):
        t = Poly.variable(F3)
        P = t ** 2 + 1
        u = RatFunc(t ** 3 + t + 1, P ** 2)
        e, A = pole_leading_digit(u, Place.finite(P))
        assert e == 2
        assert A.degree() < 2
        v = u - RatFunc(A, P ** 2)
        assert place_valuation(v, Place.finite(P)) > -2

    def test_inv_frobenius_mod(self, F27):
        rng = random.Random(101)
        t = Poly.variable(F27)
        P = t + 1
        for n in (1, 2, 3):
            for _ in range(10):
                a = rand_poly(rng, F27, 0)
                c = inv_frobenius_mod(a, P, n)
                assert poly_powmod(c, 3 ** n, P) == a % P

    def test_inv_frobenius_mod_quadratic_place(self, F9):
        rng = random.Random(103)
        t = Poly.variable(F9)
        P = t ** 2 + 1
        for n in (1, 2):
            for _ in range(10):
                a = rand_poly(rng, F9, 1)
                c = inv_frobenius_mod(a, P, n)
                assert poly_powmod(c, 3 ** n, P) == a % P
