"""Kernel-group families: validation, arithmetic, enumeration, twists."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcgring.errors import CapacityError, ValidationError
from vcgring.groups import (
    Cyclic,
    Metacyclic,
    Quaternion,
    QuaternionMap,
    Twist,
    ZaZbQ,
    ZbTimesQ,
    apply_twist,
    enumerate_elements,
    generator_elements,
    group_order,
    identity,
    inverse,
    multiply,
    power,
    quaternion_map_permutation,
    theta_permutation,
    validate,
)


class TestValidate:
    def test_metacyclic_7_3_2_valid(self):
        validate(Metacyclic(7, 3, 2))  # 2^3 = 8 ≡ 1 mod 7

    def test_metacyclic_9_3_4_shares_factor(self):
        with pytest.raises(ValidationError, match=r"gcd\(a, b\) = 3"):
            validate(Metacyclic(9, 3, 4))

    def test_metacyclic_r_order_condition(self):
        with pytest.raises(ValidationError, match="r\\^b ≢ 1 mod a"):
            validate(Metacyclic(7, 3, 3))  # 3^3 = 27 ≡ 6 mod 7

    def test_metacyclic_r_minus_one_condition(self):
        # r = 3, a = 4: gcd(4, 2·b) ≠ 1 whatever odd b; pick a=5, r=6? use
        # a=4,b=3,r=3: 3^3=27≡3 mod 4 — r^b fails first; craft gcd failure:
        # a=5, b=4, r=2: gcd(5,4)=1, gcd(5,(2-1)·4)=1, 2^4=16≡1 mod 5: valid.
        # a=7, b=2, r=6: gcd(7,(6-1)·2)=1, 6^2=36≡1: valid. For the (r−1)b
        # clause take a=5, b=2, r=11: r−1=10 shares 5 with a.
        with pytest.raises(ValidationError, match=r"gcd\(a, \(r−1\)·b\)"):
            validate(Metacyclic(5, 2, 11))

    def test_quaternion_needs_i_at_least_3(self):
        validate(Quaternion(3))
        with pytest.raises(ValidationError, match="i must be ≥ 3"):
            validate(Quaternion(2))

    def test_zbq_needs_odd_b(self):
        validate(ZbTimesQ(3, 3))
        with pytest.raises(ValidationError, match="odd"):
            validate(ZbTimesQ(4, 3))

    def test_zazbq_spec_example_valid(self):
        validate(ZaZbQ(5, 3, 3, r=1, r_x=4, r_y=4))  # 1 ≡ 16 ≡ 16 mod 5

    def test_zazbq_action_conditions(self):
        with pytest.raises(ValidationError, match="r_x\\^2 ≢ 1 mod a"):
            validate(ZaZbQ(5, 3, 3, r=1, r_x=2, r_y=4))
        with pytest.raises(ValidationError, match="r_y\\^2 ≢ 1 mod a"):
            validate(ZaZbQ(5, 3, 3, r=1, r_x=4, r_y=2))
        with pytest.raises(ValidationError, match="both be odd"):
            validate(ZaZbQ(5, 2, 3, r=1, r_x=1, r_y=1))


class TestArithmetic:
    def test_metacyclic_conjugation_is_r(self):
        spec = Metacyclic(7, 3, 2)
        a = (1, 0)
        b = (0, 1)
        conj = multiply(spec, multiply(spec, b, a), inverse(spec, b))
        assert conj == (2, 0)

    def test_quaternion_defining_relations(self):
        spec = Quaternion(3)
        x, y = (1, 0), (0, 1)
        assert multiply(spec, multiply(spec, x, y), x) == y  # xyx = y
        assert power(spec, x, 2) == power(spec, y, 2)  # x^2 = y^2 in Q_8

    def test_quaternion_16_relations(self):
        spec = Quaternion(4)
        x, y = (1, 0), (0, 1)
        assert multiply(spec, multiply(spec, x, y), x) == y
        assert power(spec, x, 4) == power(spec, y, 2)
        assert power(spec, y, 4) == identity(spec)

    def test_identity_and_inverses(self):
        for spec in (
            Cyclic(6),
            Metacyclic(7, 3, 2),
            Quaternion(4),
            ZbTimesQ(3, 3),
            ZaZbQ(5, 3, 3, 1, 4, 4),
        ):
            e = identity(spec)
            for g in enumerate_elements(spec):
                assert multiply(spec, e, g) == g
                assert multiply(spec, g, inverse(spec, g)) == e

    def test_associativity_samples(self):
        spec = ZaZbQ(5, 3, 3, 1, 4, 4)
        els = enumerate_elements(spec)
        sample = els[:: max(1, len(els) // 12)]
        for g in sample:
            for h in sample:
                for k in sample:
                    assert multiply(spec, multiply(spec, g, h), k) == multiply(
                        spec, g, multiply(spec, h, k)
                    )


class TestEnumeration:
    def test_orders(self):
        assert len(enumerate_elements(Cyclic(6))) == 6
        assert len(enumerate_elements(Quaternion(3))) == 8
        assert len(enumerate_elements(ZaZbQ(5, 3, 3, 1, 4, 4))) == 120

    def test_identity_first_and_unique(self):
        for spec in (Cyclic(6), Metacyclic(7, 3, 2), ZbTimesQ(3, 3)):
            els = enumerate_elements(spec)
            assert els[0] == identity(spec)
            assert len(set(els)) == len(els) == group_order(spec)

    def test_cap_names_order(self):
        with pytest.raises(CapacityError, match="1000"):
            enumerate_elements(Cyclic(1000))


class TestTwists:
    def test_identity_twist_gives_identity_permutation(self):
        real = theta_permutation(Metacyclic(7, 3, 2), Twist())
        assert real.permutation == tuple(range(21))

    def test_order_three_twist_on_z7(self):
        real = theta_permutation(Metacyclic(7, 3, 2), Twist(c=0, c_a=2, c_b=1))
        perm = real.permutation
        # 2 has order 3 in U(Z_7): applying three times is the identity.
        twice = tuple(perm[p] for p in perm)
        thrice = tuple(perm[p] for p in twice)
        assert perm != tuple(range(21))
        assert thrice == tuple(range(21))

    def test_incompatible_cb_reported_with_witness(self):
        with pytest.raises(ValidationError, match="witness pair"):
            theta_permutation(Metacyclic(7, 3, 2), Twist(c=0, c_a=1, c_b=2))

    def test_non_injective_twist_rejected(self):
        with pytest.raises(ValidationError, match="injective|witness"):
            theta_permutation(Metacyclic(7, 3, 2), Twist(c=0, c_a=0, c_b=1))

    def test_k_must_be_odd(self):
        spec = ZaZbQ(5, 3, 3, 1, 4, 4)
        with pytest.raises(ValidationError, match="k must be odd"):
            theta_permutation(spec, Twist(k=2))

    def test_zazbq_twist_quotient_maps(self):
        spec = ZaZbQ(5, 3, 3, 1, 4, 4)
        real = theta_permutation(spec, Twist(c_a=4, k=3, l=2))
        assert real.on_za == 4
        assert real.on_q == QuaternionMap(s_x=3, t_x=0, s_y=2, t_y=1)

    def test_twist_respects_multiplication_everywhere(self):
        spec = Metacyclic(7, 3, 2)
        twist = Twist(c=3, c_a=2, c_b=1)
        els = enumerate_elements(spec)
        for g in els:
            for h in els:
                lhs = apply_twist(spec, twist, multiply(spec, g, h))
                rhs = multiply(
                    spec, apply_twist(spec, twist, g), apply_twist(spec, twist, h)
                )
                assert lhs == rhs

    def test_quaternion_map_x_to_x_y_to_xy(self):
        els, perm = quaternion_map_permutation(3, QuaternionMap(1, 0, 1, 1))
        idx = {g: n for n, g in enumerate(els)}
        assert perm[idx[(1, 0)]] == idx[(1, 0)]  # x ↦ x
        assert perm[idx[(0, 1)]] == idx[(1, 1)]  # y ↦ xy

    def test_quaternion_map_order_three(self):
        # x ↦ y, y ↦ xy is an order-3 automorphism of Q_8.
        els, perm = quaternion_map_permutation(3, QuaternionMap(0, 1, 1, 1))
        p2 = tuple(perm[p] for p in perm)
        p3 = tuple(perm[p] for p in p2)
        assert p3 == tuple(range(8))
        assert perm != tuple(range(8))

    def test_bad_quaternion_map_rejected(self):
        with pytest.raises(ValidationError):
            quaternion_map_permutation(3, QuaternionMap(2, 0, 0, 1))  # x ↦ x²


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(7, 3, 2), (5, 4, 2), (11, 5, 3), (13, 3, 3), (31, 5, 2)]),
    st.data(),
)
def test_metacyclic_axioms_random_triples(params, data):
    spec = validate(Metacyclic(*params))
    els = enumerate_elements(spec)
    pick = st.sampled_from(els)
    g, h, k = data.draw(pick), data.draw(pick), data.draw(pick)
    assert multiply(spec, multiply(spec, g, h), k) == multiply(
        spec, g, multiply(spec, h, k)
    )
    assert multiply(spec, g, identity(spec)) == g
    assert multiply(spec, inverse(spec, g), g) == identity(spec)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 5), st.data())
def test_quaternion_axioms_random_triples(i, data):
    spec = validate(Quaternion(i))
    els = enumerate_elements(spec)
    pick = st.sampled_from(els)
    g, h, k = data.draw(pick), data.draw(pick), data.draw(pick)
    assert multiply(spec, multiply(spec, g, h), k) == multiply(
        spec, g, multiply(spec, h, k)
    )
    # Every element of a generalized quaternion group of order ≥ 8 has
    # order dividing 2^(i-1), and there is a unique element of order 2.
    assert power(spec, g, 1 << (i - 1)) == identity(spec)


def test_quaternion_unique_involution():
    spec = Quaternion(4)
    invs = [
        g
        for g in enumerate_elements(spec)
        if g != identity(spec) and multiply(spec, g, g) == identity(spec)
    ]
    assert invs == [(4, 0)]  # x^(2^(i-2)) is the unique involution
