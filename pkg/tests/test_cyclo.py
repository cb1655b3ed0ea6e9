"""Exact cyclotomic arithmetic: worked examples against an independent
complex-float oracle, ring axioms, Galois action, canonicalization."""

import cmath
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classfusion.cyclo import (
    InvalidAutomorphism,
    as_integer,
    conductor,
    conj,
    divide_exact,
    galois,
    make,
    value_from_json,
    value_to_json,
    value_vector,
    zeta,
)


def as_complex(v) -> complex:
    """Independent evaluation: map zeta_n to exp(2*pi*i/n) numerically."""
    if isinstance(v, int):
        return complex(v)
    return sum(
        c * cmath.exp(2j * cmath.pi * e / v.n) for e, c in v.coeffs.items()
    )


def close(a: complex, b: complex, tol=1e-9) -> bool:
    return abs(a - b) < tol


# ----------------------------------------------------------------------
# worked examples


def test_conjugate_pair_of_fourth_roots_sums_to_zero():
    assert zeta(4) + zeta(4, 3) == 0


def test_vanishing_sum_of_primitive_fifth_roots():
    a = zeta(5) + zeta(5, 4)
    b = zeta(5, 2) + zeta(5, 3)
    assert a + b == -1


def test_rational_embedding():
    assert make(1, {0: 3}) + make(1, {0: 4}) == 7


def test_third_roots_multiply_to_one():
    assert zeta(3) * zeta(3, 2) == 1


def test_golden_product_is_minus_one():
    # oracle: (z5 + z5^4)(z5^2 + z5^3) evaluated with complex floats
    z = cmath.exp(2j * cmath.pi / 5)
    oracle = (z + z**4) * (z**2 + z**3)
    assert close(oracle, -1)
    a = zeta(5) + zeta(5, 4)
    b = zeta(5, 2) + zeta(5, 3)
    assert a * b == -1


def test_multiplication_by_zero():
    assert (zeta(7) + 3) * 0 == 0


def test_galois_fixes_real_element():
    a = zeta(5) + zeta(5, 4)
    assert galois(a, -1) == a


def test_galois_cubes_third_root():
    assert galois(zeta(3), 2) == zeta(3, 2)


def test_galois_fixes_rationals():
    for k in (1, 2, 5, -1):
        assert galois(7, k) == 7


def test_galois_requires_coprime_exponent():
    with pytest.raises(InvalidAutomorphism):
        zeta(6).galois(3)  # conductor folds to 3; gcd(3, 3) != 1


def test_as_integer():
    assert as_integer(zeta(4) + zeta(4, 3)) == 0
    assert as_integer(zeta(5)) is None
    assert as_integer(-13) == -13


def test_divide_exact():
    assert divide_exact(6, 3) == 2
    v = 3 * zeta(7) + 6
    assert divide_exact(v, 3) == zeta(7) + 2
    with pytest.raises(ArithmeticError):
        divide_exact(zeta(7) + 2, 2)


def test_conductor_minimization_folds_even_conductors():
    # zeta_6 = -zeta_3^2 lives in conductor 3
    z6 = zeta(6)
    assert conductor(z6) == 3
    assert z6 ** 6 == 1
    assert z6 ** 3 == -1


def test_sum_of_all_primitive_roots_is_moebius():
    # sum over a full set of primitive n-th roots = mu(n)
    for n, mu in [(5, -1), (7, -1), (8, 0), (9, 0), (12, 0), (15, 1)]:
        total = sum(zeta(n, e) for e in range(1, n) if _gcd(e, n) == 1)
        assert total == mu, n


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ----------------------------------------------------------------------
# property tests

small_values = st.builds(
    lambda n, items: make(n, dict(items)),
    st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12]),
    st.lists(
        st.tuples(st.integers(0, 11), st.integers(-9, 9)), max_size=4
    ),
)


@given(small_values, small_values, small_values)
@settings(max_examples=200, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(small_values, small_values)
@settings(max_examples=150, deadline=None)
def test_arithmetic_agrees_with_complex_oracle(a, b):
    assert close(as_complex(a + b), as_complex(a) + as_complex(b), 1e-6)
    assert close(as_complex(a * b), as_complex(a) * as_complex(b), 1e-6)


@given(small_values, st.integers(-12, 12))
@settings(max_examples=150, deadline=None)
def test_galois_composition(a, k):
    if isinstance(a, int):
        assert galois(a, k) == a
        return
    n = a.n
    if _gcd(k % n, n) != 1:
        with pytest.raises(InvalidAutomorphism):
            a.galois(k)
        return
    for kk in range(1, n):
        if _gcd(kk, n) == 1:
            assert galois(galois(a, k), kk) == galois(a, (k * kk) % n)
            break


@given(small_values)
@settings(max_examples=150, deadline=None)
def test_conjugation_is_involution(a):
    assert conj(conj(a)) == a


@given(small_values)
@settings(max_examples=150, deadline=None)
def test_canonicalization_idempotent(a):
    if isinstance(a, int):
        assert make(1, {0: a}) == a
    else:
        assert make(a.n, dict(a.coeffs)) == a
        # re-encoding through JSON changes nothing
    assert value_from_json(json.loads(json.dumps(value_to_json(a)))) == a


@given(small_values)
@settings(max_examples=100, deadline=None)
def test_value_vector_roundtrip(a):
    n = conductor(a) if conductor(a) > 1 else 3
    vec = value_vector(a, n * 2 if (n * 2) % 4 != 2 else n)
    m = n * 2 if (n * 2) % 4 != 2 else n
    assert make(m, {e: c for e, c in enumerate(vec)}) == a


def test_immutability():
    z = zeta(5)
    with pytest.raises(AttributeError):
        z.n = 7


def test_json_encoding_shape():
    assert value_to_json(42) == 42
    enc = value_to_json(zeta(5) + 2 * zeta(5, 3))
    assert enc["n"] == 5
    assert [e for e, _ in enc["c"]] == sorted(e for e, _ in enc["c"])
    assert all(isinstance(c, str) for _, c in enc["c"])
