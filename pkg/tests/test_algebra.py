from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffbreak.algebra import (
    MAX_GENERATORS,
    AlgebraDescriptor,
    Multivector,
    Ring,
    Signature,
    blade_product,
    commutator,
    grade_involution,
    grade_project,
    mv_scale,
    reverse,
    unit_product,
)
from cliffbreak.errors import CliffordError, DescriptorMismatch, RingMismatch
from cliffbreak.parser import eval_text
from conftest import multivectors
from oracles import blade_product_bruteforce, dirac_matrix, generic_matrix

CL22 = AlgebraDescriptor.generic(2, 2)
CL31H = AlgebraDescriptor.generic(3, 1, Ring.QUATERNION)
CL31C = AlgebraDescriptor.generic(3, 1, Ring.COMPLEX)
DIRAC_H = AlgebraDescriptor.dirac_algebra(Ring.QUATERNION)
DIRAC_C = AlgebraDescriptor.dirac_algebra(Ring.COMPLEX)


@pytest.mark.parametrize("p,q", [(0, 0), (1, 0), (0, 1), (2, 2), (3, 1), (1, 3), (0, 5), (3, 3)])
def test_blade_product_matches_bruteforce(p, q):
    sig = Signature(p, q)
    n = 1 << (p + q)
    for a, b in product(range(n), repeat=2):
        assert blade_product(sig, a, b) == blade_product_bruteforce(p, q, a, b)


@given(st.integers(0, 12), st.data())
def test_blade_product_large_signatures(n, data):
    p = data.draw(st.integers(0, n))
    a = data.draw(st.integers(0, (1 << n) - 1))
    b = data.draw(st.integers(0, (1 << n) - 1))
    assert blade_product(Signature(p, n - p), a, b) == blade_product_bruteforce(p, n - p, a, b)


def test_quaternion_table():
    i, j, k = 1, 2, 3
    assert unit_product(i, j) == (1, k)
    assert unit_product(j, k) == (1, i)
    assert unit_product(k, i) == (1, j)
    assert unit_product(j, i) == (-1, k)
    for u in (i, j, k):
        assert unit_product(u, u) == (-1, 0)
        assert unit_product(0, u) == unit_product(u, 0) == (1, u)


def test_signature_bounds():
    with pytest.raises(ValueError):
        Signature(MAX_GENERATORS, 1)
    with pytest.raises(ValueError):
        Signature(-1, 2)
    assert Signature(2, 3).square(1) == 1 and Signature(2, 3).square(2) == -1


def test_generator_squares():
    for p, q in [(2, 1), (0, 3), (4, 4)]:
        desc = AlgebraDescriptor.generic(p, q)
        for m in range(p + q):
            e = Multivector.generator(desc, m)
            assert e * e == (1 if m < p else -1)


def test_dirac_conventions():
    g = [Multivector.generator(DIRAC_H, m) for m in range(4)]
    assert [x * x for x in g] == [1, -1, -1, -1]
    assert DIRAC_H.generator_names == ("g0", "g1", "g2", "g3")
    with pytest.raises(ValueError):
        AlgebraDescriptor.dirac_algebra(Ring.REAL)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Multivector.unit(DIRAC_C, "j")
    with pytest.raises(RingMismatch):
        Multivector.unit(CL22, "i")


def test_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        Multivector.scalar(CL22, 1) + Multivector.scalar(CL31H, 1)


def test_exact_rationals_normalise():
    x = Multivector.scalar(CL22, Fraction(4, 2))
    assert type(x.scalar_part()) is int
    y = Multivector.generator(CL22, 0) / 3
    assert y.coefficient(0, 1) == Fraction(1, 3)
    assert (y * 3).coefficient(0, 1) == 1
    with pytest.raises(TypeError):
        Multivector.scalar(CL22, 0.5)


def test_str_uses_parser_syntax():
    x = eval_text("(1 - e1*e2*e3)/2", "cl(0,3)")
    assert str(x) == "1/2 - e1*e2*e3/2"
    assert str(eval_text("j*g5", DIRAC_H)) == "-k*g0*g1*g2*g3"
    assert str(Multivector.zero(CL22)) == "0"


def test_grade_project_range():
    x = eval_text("1 + e1 + e1*e2", "cl(2,2)")
    assert grade_project(x, 1) == eval_text("e1", "cl(2,2)")
    assert grade_project(x, 4).is_zero()
    with pytest.raises(CliffordError):
        grade_project(x, 5)
    with pytest.raises(CliffordError):
        grade_project(x, -1)


def test_mv_scale_by_unit():
    x = eval_text("g0 + 2", DIRAC_H)
    assert mv_scale(x, "j") == eval_text("j*g0 + 2*j", DIRAC_H)
    assert mv_scale(x, Fraction(1, 2)) == x / 2


@settings(max_examples=1000)
@given(multivectors(CL22), multivectors(CL22), multivectors(CL22))
def test_associativity_cl22(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=300)
@given(multivectors(DIRAC_H), multivectors(DIRAC_H), multivectors(DIRAC_H))
def test_associativity_and_distributivity_dirac_h(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@given(multivectors(CL31C), multivectors(CL31C))
def test_reverse_is_anti_automorphism(x, y):
    assert reverse(x * y) == reverse(y) * reverse(x)
    assert reverse(reverse(x)) == x


def test_reverse_over_h_keeps_unit_order():
    # reversal acts on blades only, so with noncommuting units it is not an anti-automorphism
    i, j = Multivector.unit(CL31H, "i"), Multivector.unit(CL31H, "j")
    e1, e2 = Multivector.generator(CL31H, 0), Multivector.generator(CL31H, 1)
    x, y = i * e1, j * e2
    assert reverse(x * y) == i * j * e2 * e1
    assert reverse(y) * reverse(x) == -(i * j * e2 * e1)


@given(multivectors(CL31H), multivectors(CL31H))
def test_grade_involution_is_automorphism(x, y):
    assert grade_involution(x * y) == grade_involution(x) * grade_involution(y)


@given(multivectors(CL22), multivectors(CL22))
def test_commutator_antisymmetric(x, y):
    assert commutator(x, y) == -commutator(y, x)


def test_units_commute_with_blades():
    for u, mask in product(("i", "j", "k"), range(16)):
        U = Multivector.unit(DIRAC_H, u)
        B = Multivector.blade(DIRAC_H, mask)
        assert U * B == B * U


@given(multivectors(DIRAC_H))
def test_rational_scalars_are_central(x):
    assert x * Fraction(3, 2) == Fraction(3, 2) * x
    assert x * Multivector.scalar(DIRAC_H, 5) == Multivector.scalar(DIRAC_H, 5) * x


@settings(max_examples=200)
@given(multivectors(DIRAC_H), multivectors(DIRAC_H))
def test_product_matches_matrix_model_dirac_h(x, y):
    assert np.allclose(dirac_matrix(x * y), dirac_matrix(x) @ dirac_matrix(y))


@settings(max_examples=200)
@given(multivectors(DIRAC_C), multivectors(DIRAC_C))
def test_product_matches_matrix_model_dirac_c(x, y):
    assert np.allclose(dirac_matrix(x * y), dirac_matrix(x) @ dirac_matrix(y))


@pytest.mark.parametrize("p,q", [(2, 2), (3, 1), (1, 3), (0, 4)])
def test_product_matches_matrix_model_generic(p, q):
    desc = AlgebraDescriptor.generic(p, q)
    rng = np.random.default_rng(7)
    for _ in range(50):
        x, y = (Multivector.from_terms(desc, [(0, int(m), int(rng.integers(-3, 4)))
                                              for m in rng.integers(0, 16, size=5)]) for _ in range(2))
        assert np.allclose(generic_matrix(x * y), generic_matrix(x) @ generic_matrix(y))


@given(multivectors(DIRAC_H))
def test_str_round_trips_through_parser(x):
    assert eval_text(str(x), DIRAC_H) == x


def test_g5_identities():
    g5 = eval_text("g5", DIRAC_H)
    assert g5 * g5 == 1
    assert eval_text("i*g5", DIRAC_H) * eval_text("i*g5", DIRAC_H) == -1
    assert eval_text("j*g5", DIRAC_H) == eval_text("-k*g0*g1*g2*g3", DIRAC_H)
