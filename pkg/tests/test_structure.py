import numpy as np
import pytest

from cliffbreak.algebra import AlgebraDescriptor, Multivector, Ring, Signature
from cliffbreak.errors import NotCentral, NotClassifiable, NotClosed, NotInvolution, NotSemisimple, NotUnital
from cliffbreak.linalg import echelonize, full_space, solve_commutant
from cliffbreak.parser import eval_text
from cliffbreak.structure import (
    IsoClass,
    StructureConstants,
    analyze_algebra,
    check_quaternion_triple,
    classify_empirical,
    classify_table,
    even_part,
    even_subalgebra,
    format_factor,
    generated_subalgebra,
    idempotent_split,
    internal_unit,
    is_two_sided_ideal,
    pseudoscalar_factor,
    tensor_with_ring,
    verify_generators,
)
from oracles import classify_recursive, dirac_matrix, real_commutant_dim, real_rank

ALL_SMALL = [(p, n - p) for n in range(5) for p in range(n + 1)]


@pytest.mark.parametrize("p,q", [(p, n - p) for n in range(13) for p in range(n + 1)])
def test_table_matches_recursion(p, q):
    t = classify_table(Signature(p, q))
    assert (t.factors, t.division_ring, t.n) == classify_recursive(p, q)
    assert t.real_dimension == 2 ** (p + q)


@pytest.mark.parametrize("p,q", [(p, n - p) for n in range(11) for p in range(n + 1)])
def test_quaternion_extension_shifts_signature(p, q):
    # H (x) Cl(p,q) = Cl(q, p+2)
    assert classify_table(Signature(p, q), Ring.QUATERNION) == classify_table(Signature(q, p + 2))


@pytest.mark.parametrize("p,q", [(p, n - p) for n in range(12) for p in range(n + 1)])
def test_complex_extension_is_complex_clifford(p, q):
    n = p + q
    t = classify_table(Signature(p, q), Ring.COMPLEX)
    if n % 2 == 0:
        assert t == IsoClass(1, "C", 2 ** (n // 2))
    else:
        assert t == IsoClass(2, "C", 2 ** ((n - 1) // 2))


def test_tensor_with_ring_rules():
    assert tensor_with_ring(IsoClass(1, "H", 2), Ring.QUATERNION) == IsoClass(1, "R", 8)
    # four simple factors never occur for a Clifford algebra and are refused
    with pytest.raises(NotClassifiable):
        tensor_with_ring(IsoClass(2, "C", 2), Ring.COMPLEX)
    assert tensor_with_ring(IsoClass(1, "H", 1), Ring.COMPLEX) == IsoClass(1, "C", 2)


def test_iso_str():
    assert str(IsoClass(1, "R", 8)) == "M(8,R)"
    assert str(IsoClass(2, "H", 1)) == "M(1,H) ⊕ M(1,H)"


@pytest.mark.parametrize("ring", list(Ring))
@pytest.mark.parametrize("p,q", ALL_SMALL)
def test_empirical_agrees_with_table_small(p, q, ring):
    desc = AlgebraDescriptor.generic(p, q, ring)
    assert classify_empirical(full_space(desc)) == classify_table(Signature(p, q), ring)


def test_dirac_h_is_m8r(dirac_h):
    assert classify_empirical(full_space(dirac_h)) == IsoClass(1, "R", 8)


def test_not_semisimple():
    desc = AlgebraDescriptor.generic(1, 1)
    n = eval_text("e1 + e2", desc)
    assert n * n == 0
    S = generated_subalgebra([n])
    assert S.rank == 2
    with pytest.raises(NotSemisimple):
        classify_empirical(S)


def test_not_closed():
    desc = AlgebraDescriptor.generic(2, 0)
    with pytest.raises(NotClosed):
        StructureConstants(echelonize([Multivector.generator(desc, 0)]))


def test_not_unital():
    desc = AlgebraDescriptor.generic(1, 1)
    S = echelonize([eval_text("e1 + e2", desc)])
    with pytest.raises(NotUnital):
        internal_unit(S)


def test_internal_unit_of_ideal():
    triple = [eval_text(t, "cl(0,3)") for t in ("e1 + e2*e3", "e2 + e3*e1", "e3 + e1*e2")]
    S = generated_subalgebra(triple, adjoin_unit=False)
    e = internal_unit(S)
    assert e == eval_text("1/2 - e1*e2*e3/2", "cl(0,3)")
    assert all(e * x == x == x * e for x in S)
    a = analyze_algebra(S)
    assert a.rank == 4 and a.iso == IsoClass(1, "H", 1)


def test_even_part_and_subalgebra(dirac_c):
    gens = [eval_text(t, dirac_c) for t in ("g0", "g1", "g2", "g3")]
    assert even_subalgebra(gens).rank == 8
    assert even_part(dirac_c).rank == 16
    assert classify_empirical(even_part(AlgebraDescriptor.generic(4, 0))) == IsoClass(2, "H", 1)


def test_idempotent_split_errors():
    desc = AlgebraDescriptor.generic(3, 0)
    full = full_space(desc)
    with pytest.raises(NotInvolution):
        idempotent_split(full, eval_text("e1*e2", desc))
    with pytest.raises(NotCentral):
        idempotent_split(full, eval_text("e1", desc))


def test_idempotent_split_cl03():
    desc = AlgebraDescriptor.generic(0, 3)
    full = full_space(desc)
    plus, minus = idempotent_split(full, eval_text("e1*e2*e3", desc))
    assert plus.rank == minus.rank == 4
    assert is_two_sided_ideal(plus, full) and is_two_sided_ideal(minus, full)
    assert all((x * y).is_zero() for x in plus for y in minus)


def test_verify_generators_reports_failures(dirac_h):
    rep = verify_generators([eval_text(t, dirac_h) for t in ("g0", "g1", "g0*g1 + g2")])
    assert not rep.valid and rep.signature is None
    assert rep.squares[2] == "FAIL" or rep.failing_pairs


def test_verify_generators_signature_and_pseudoscalar(dirac_h):
    gens = [eval_text(t, dirac_h) for t in ("i*g1", "i*g2", "i*g3", "i*g0", "j", "k")]
    rep = verify_generators(gens)
    assert rep.signature == Signature(3, 3)
    assert rep.generated_dimension == 64 and rep.full_algebra
    assert format_factor(pseudoscalar_factor(rep.pseudoscalar, eval_text("g5", dirac_h))) == "-1"


def test_pseudoscalar_factor_units(dirac_h):
    g0 = eval_text("g0", dirac_h)
    assert pseudoscalar_factor(eval_text("-3*k*g0", dirac_h), g0) == (3, -3)
    assert pseudoscalar_factor(eval_text("g1", dirac_h), g0) is None
    assert format_factor((2, 1)) == "j" and format_factor(None) == "none"


def test_quaternion_triple_check():
    desc = AlgebraDescriptor.generic(0, 2)
    x, y, z = (eval_text(t, desc) for t in ("e1", "e2", "e1*e2"))
    q = check_quaternion_triple(x, y, z)
    assert q.ok and q.scale == 1 and q.orientation == 1 and q.unit == 1
    bad = check_quaternion_triple(x, y, eval_text("e1", desc))
    assert not bad.ok


# independent matrix route


def _mats(texts, ctx):
    return [dirac_matrix(eval_text(t, ctx)) for t in texts]


def _matrix_closure_rank(mats):
    """Real dimension of the unital algebra generated by matrices."""
    size = mats[0].shape[0]
    span = [np.eye(size, dtype=complex)]
    frontier = list(span)
    while frontier:
        new = []
        for a in frontier:
            for g in mats:
                c = a @ g
                if real_rank(span + [c]) > len(span):
                    span.append(c)
                    new.append(c)
        frontier = new
    return len(span)


@pytest.mark.parametrize("ctx,texts,sig", [
    ("dirac-c", ("g5", "i*g1", "i*g2", "i*g3", "i*g0"), (4, 1)),
    ("dirac-c", ("g1", "g2", "g3", "i*g0", "i*g5"), (0, 5)),
    ("dirac-h", ("i*g1", "i*g2", "i*g3", "i*g0", "j", "k"), (3, 3)),
    ("dirac-h", ("g1", "g2", "g3", "g0", "j*g5", "k*g5"), (3, 3)),
    ("dirac-h", ("g1", "g2", "g3", "g5", "j*g5", "k*g5"), (3, 3)),
    ("dirac-h", ("g1", "g2", "g3", "i*g0", "j*g0", "k*g0"), (0, 6)),
    ("dirac-h", ("i*g1", "i*g2", "i*g3", "g0", "j*g0*g5", "k*g0*g5"), (4, 2)),
])
def test_generator_sets_against_matrices(ctx, texts, sig):
    mats = _mats(texts, ctx)
    eye = np.eye(mats[0].shape[0])
    squares = [1 if np.allclose(m @ m, eye) else -1 if np.allclose(m @ m, -eye) else 0 for m in mats]
    assert (squares.count(1), squares.count(-1)) == sig
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            assert np.allclose(mats[a] @ mats[b] + mats[b] @ mats[a], 0)
    assert _matrix_closure_rank(mats) == 2 ** len(texts)
    rep = verify_generators([eval_text(t, ctx) for t in texts])
    assert rep.signature == Signature(*sig) and rep.full_algebra


def test_centralizer_rank_against_matrices(dirac_h):
    basis = [dirac_matrix(x) for x in full_space(dirac_h)]
    constraints = _mats(("g0", "g1", "g2", "g3"), dirac_h)
    even = [a @ b for a in constraints for b in constraints]
    assert real_commutant_dim(basis, even) == 8
    exact = solve_commutant(even_subalgebra([eval_text(t, dirac_h) for t in ("g0", "g1", "g2", "g3")]).rows,
                            full_space(dirac_h))
    assert exact.rank == 8
