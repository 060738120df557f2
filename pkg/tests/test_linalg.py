from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffbreak.algebra import AlgebraDescriptor, Multivector, Ring
from cliffbreak.linalg import (
    Echelon,
    SymmetricForm,
    TrackedElimination,
    commutator_map_rank,
    echelonize,
    even_space,
    full_space,
    signature_of_symmetric,
    solve_commutant,
    subspace_intersect,
    subspace_sum,
    zero_space,
)
from cliffbreak.parser import eval_text
from conftest import multivectors


def dense_rank(rows):
    """Plain Gauss-Jordan over Fraction on a dense list of lists."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


small_matrix = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=6, max_size=6), min_size=n, max_size=n))


@given(small_matrix)
def test_echelon_rank_matches_dense(rows):
    ech = Echelon({c: v for c, v in enumerate(r) if v} for r in rows)
    assert ech.rank == dense_rank(rows)


@given(small_matrix)
def test_echelon_rows_reduced(rows):
    ech = Echelon({c: v for c, v in enumerate(r) if v} for r in rows)
    pivots = ech.pivots()
    for p in pivots:
        row = ech.rows[p]
        assert row[p] == 1
        assert min(row) == p
        assert all(q == p or q not in row for q in pivots)


@given(small_matrix)
def test_kernel_combinations_vanish(rows):
    vecs = [{c: v for c, v in enumerate(r) if v} for r in rows]
    elim = TrackedElimination(vecs)
    assert elim.rank + len(elim.kernel) == len(rows)
    for combo in elim.kernel:
        total = [sum(Fraction(combo.get(r, 0)) * rows[r][c] for r in range(len(rows))) for c in range(6)]
        assert all(t == 0 for t in total)


@given(small_matrix, st.lists(st.integers(-2, 2), min_size=7, max_size=7))
def test_solve_reproduces_target(rows, coeffs):
    target = [sum(c * r[col] for c, r in zip(coeffs, rows)) for col in range(6)]
    elim = TrackedElimination({c: v for c, v in enumerate(r) if v} for r in rows)
    sol = elim.solve({c: v for c, v in enumerate(target) if v})
    assert sol is not None
    back = [sum(Fraction(sol.get(r, 0)) * rows[r][col] for r in range(len(rows))) for col in range(6)]
    assert back == target


CL21 = AlgebraDescriptor.generic(2, 1)


@given(st.lists(multivectors(CL21, 3), max_size=5), st.lists(multivectors(CL21, 3), max_size=5))
def test_intersection_dimension_formula(xs, ys):
    S, T = echelonize(xs, CL21), echelonize(ys, CL21)
    assert subspace_intersect(S, T).rank == S.rank + T.rank - subspace_sum(S, T).rank
    for v in subspace_intersect(S, T):
        assert v in S and v in T


@given(st.lists(multivectors(CL21, 4), min_size=1, max_size=6), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_coordinates_round_trip(xs, cs):
    S = echelonize(xs)
    x = Multivector.zero(CL21)
    for c, v in zip(cs, xs):
        x = x + v * c
    coords = S.coordinates(x)
    assert coords is not None and S.combine(coords) == x


def test_full_and_even_spaces():
    desc = AlgebraDescriptor.generic(1, 3, Ring.QUATERNION)
    assert full_space(desc).rank == 64
    assert even_space(desc).rank == 32
    assert zero_space(desc).rank == 0


def test_commutant_of_generators_is_center():
    desc = AlgebraDescriptor.generic(3, 0)
    gens = [Multivector.generator(desc, m) for m in range(3)]
    cent = solve_commutant(gens, full_space(desc))
    assert cent == echelonize([Multivector.scalar(desc, 1), eval_text("e1*e2*e3", desc)])


@pytest.mark.parametrize("ctx,exprs", [
    ("dirac-h", ["g0", "g1"]),
    ("dirac-h", ["g5", "j"]),
    ("cl(2,2)", ["e1*e2", "e3"]),
])
def test_commutant_rank_nullity(ctx, exprs):
    cs = [eval_text(t, ctx) for t in exprs]
    amb = full_space(cs[0].descriptor)
    sol = solve_commutant(cs, amb)
    assert sol.rank + commutator_map_rank(cs, amb) == amb.rank
    assert all(x * c == c * x for x in sol for c in cs)


def test_symmetric_form_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymmetricForm(None, [[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        SymmetricForm(None, [[1, 2]])


def test_inertia_examples():
    assert signature_of_symmetric([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature_of_symmetric([[2, 0, 0], [0, -3, 0], [0, 0, 0]]) == (1, 1, 1)
    assert signature_of_symmetric([[0, 0], [0, 0]]) == (0, 0, 2)
    assert signature_of_symmetric([]) == (0, 0, 0)


def sym_matrix(n):
    return st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda xs: [[xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)])


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(sym_matrix(n), st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))))
def test_inertia_congruence_invariant(args):
    A, rand = args
    n = len(A)
    # unit lower triangular P is invertible
    P = [[1 if i == j else (rand[i * n + j] if i > j else 0) for j in range(n)] for i in range(n)]
    PT = [list(r) for r in zip(*P)]
    mul = lambda X, Y: [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    B = mul(mul(PT, A), P)
    assert signature_of_symmetric(A) == signature_of_symmetric(B)


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(sym_matrix))
def test_inertia_matches_eigenvalues(A):
    ev = np.linalg.eigvalsh(np.array(A, dtype=float))
    plus, minus, zero = signature_of_symmetric(A)
    assert plus == int(np.sum(ev > 1e-9))
    assert minus == int(np.sum(ev < -1e-9))
    assert plus + minus == dense_rank(A)
