"""Field contexts, Frobenius, traces, subfield embeddings."""

from __future__ import annotations

import random

import pytest

from aspw.errors import IncompatibleContexts, NotASubfield, NotPrime, ReducibleModulus
from aspw.gf import (
    absolute_trace_value,
    embed_field,
    frobenius_power,
    make_field,
    trace_map,
)

from conftest import rand_elem


# === construction =========================================================

class TestConstruction:
    def test_default_moduli_are_first_irreducible_in_element_order(self):
        # frozen: found by enumerating monic polynomials in ascending
        # integer coefficient order and taking the first irreducible one
        assert make_field(2, 2).modulus == (1, 1, 1)          # x^2+x+1
        assert make_field(2, 3).modulus == (1, 1, 0, 1)       # x^3+x+1
        assert make_field(2, 4).modulus == (1, 1, 0, 0, 1)    # x^4+x+1
        assert make_field(3, 2).modulus == (1, 0, 1)          # x^2+1
        assert make_field(3, 3).modulus == (1, 2, 0, 1)       # x^3+2x+1
        assert make_field(5, 2).modulus == (2, 0, 1)          # x^2+2

    def test_f27_generator_relation(self, F27):
        w = F27.gen()
        assert w ** 3 == w + 2

    def test_not_prime_rejected(self):
        with pytest.raises(NotPrime):
            make_field(4, 1)
        with pytest.raises(NotPrime):
            make_field(1, 2)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ReducibleModulus):
            make_field(2, 2, modulus=(1, 0, 1))  # x^2+1 = (x+1)^2
        with pytest.raises(ReducibleModulus):
            make_field(3, 2, modulus=(0, 1, 1))  # x^2+x = x(x+1)

    def test_wrong_degree_modulus_rejected(self):
        with pytest.raises(ReducibleModulus):
            make_field(3, 2, modulus=(1, 1))

    def test_context_equality_by_structure(self):
        a = make_field(3, 2)
        b = make_field(3, 2, modulus=(1, 0, 1))
        assert a == b and hash(a) == hash(b)
        c = make_field(3, 2, modulus=(2, 1, 1))
        assert a != c

    def test_elements_enumerate_in_integer_order(self, F9):
        elems = list(F9.elements())
        assert len(elems) == 9
        assert [e.to_int() for e in elems] == list(range(9))


# === arithmetic ===========================================================

class TestArithmetic:
    def test_prime_field_matches_int_arithmetic(self, F3):
        # oracle: plain integers mod p
        for a in range(3):
            for b in range(3):
                ea, eb = F3.from_int(a), F3.from_int(b)
                assert (ea + eb).to_int() == (a + b) % 3
                assert (ea - eb).to_int() == (a - b) % 3
                assert (ea * eb).to_int() == (a * b) % 3

    def test_field_axioms_exhaustive_f9(self, F9):
        elems = list(F9.elements())
        one = F9.one()
        for a in elems:
            assert a + F9.zero() == a
            assert a * one == a
            if not a.is_zero():
                assert a * a.inverse() == one
            for b in elems:
                assert a + b == b + a
                assert a * b == b * a
                for c in elems[:3]:
                    assert (a + b) + c == a + (b + c)
                    assert a * (b + c) == a * b + a * c

    def test_pow_and_order(self, F8):
        for a in F8.elements():
            if a.is_zero():
                continue
            assert a ** 7 == F8.one()
            assert a ** -1 == a.inverse()

    def test_division(self, F27):
        rng = random.Random(7)
        for _ in range(50):
            a, b = rand_elem(rng, F27), rand_elem(rng, F27)
            if b.is_zero():
                continue
            assert (a / b) * b == a

    def test_mixed_context_rejected(self, F4, F9):
        with pytest.raises(IncompatibleContexts):
            F4.one() + F9.one()

    def test_str_forms(self, F27):
        w = F27.gen()
        assert str(2 * w * w + w + 2) == "2w^2+w+2"
        assert str(F27.zero()) == "0"
        assert str(w) == "w"
        assert str(F27.from_int(2)) == "2"


# === frobenius and traces ==================================================

class TestFrobenius:
    def test_frobenius_is_field_automorphism(self, F9):
        for a in F9.elements():
            for b in F9.elements():
                assert frobenius_power(a + b, 1) == frobenius_power(a, 1) + frobenius_power(b, 1)
                assert frobenius_power(a * b, 1) == frobenius_power(a, 1) * frobenius_power(b, 1)

    def test_frobenius_power_matches_repeated_pth_power(self, F27):
        rng = random.Random(11)
        for _ in range(30):
            a = rand_elem(rng, F27)
            assert frobenius_power(a, 1) == a ** 3
            assert frobenius_power(a, 2) == (a ** 3) ** 3
            assert frobenius_power(a, 3) == a
            assert frobenius_power(frobenius_power(a, 2), -2) == a

    def test_absolute_trace_matches_power_sum(self, F8):
        for a in F8.elements():
            direct = a + a ** 2 + a ** 4
            assert direct.in_prime_field()
            assert absolute_trace_value(a) == direct.prime_value()

    def test_trace_kernel_size(self, F9):
        # trace is onto F_p with fibers of size p^(s-1)
        kernel = [a for a in F9.elements() if absolute_trace_value(a) == 0]
        assert len(kernel) == 3

    def test_trace_frobenius_invariant(self, F27):
        for a in F27.elements():
            assert absolute_trace_value(a) == absolute_trace_value(a ** 3)

    def test_relative_trace_transitivity(self, F16, F4, F2):
        emb = embed_field(F4, F16)
        for a in F16.elements():
            t = trace_map(a, target_degree=2)
            # t lies in the embedded copy of F_4
            assert t == frobenius_power(t, 2)
            total = absolute_trace_value(a)
            pre = None
            for b in F4.elements():
                if emb(b) == t:
                    pre = b
                    break
            assert pre is not None
            assert absolute_trace_value(pre) == total

    def test_trace_to_non_subfield_rejected(self, F27):
        with pytest.raises(NotASubfield):
            trace_map(F27.gen(), target_degree=2)


# === embeddings ===========================================================

class TestEmbeddings:
    def test_embedding_is_homomorphism(self, F4, F16):
        emb = embed_field(F4, F16)
        for a in F4.elements():
            for b in F4.elements():
                assert emb(a + b) == emb(a) + emb(b)
                assert emb(a * b) == emb(a) * emb(b)
        assert emb(F4.one()) == F16.one()

    def test_embedding_injective(self, F9, F81):
        emb = embed_field(F9, F81)
        images = {emb(a).to_int() for a in F9.elements()}
        assert len(images) == 9

    def test_image_is_fixed_by_relative_frobenius(self, F9, F81):
        emb = embed_field(F9, F81)
        for a in F9.elements():
            assert frobenius_power(emb(a), 2) == emb(a)

    def test_identity_embedding(self, F9):
        emb = embed_field(F9, F9)
        for a in F9.elements():
            assert emb(a) == a

    def test_non_subfield_rejected(self, F8, F16):
        with pytest.raises(NotASubfield):
            embed_field(F8, F16)

    def test_embedding_commutes_with_frobenius_tower(self, F2, F4, F16):
        lo = embed_field(F2, F4)
        hi = embed_field(F4, F16)
        direct = embed_field(F2, F16)
        for a in F2.elements():
            assert hi(lo(a)) == direct(a)
