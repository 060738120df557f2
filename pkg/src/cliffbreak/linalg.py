"""Exact rational linear algebra on the ambient algebra as a real vector space.

Vectors are sparse ``{column: rational}`` dicts, where a column is the packed
``(unit, mask)`` key of :mod:`cliffbreak.algebra`.  Nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraDescriptor, Multivector, ambient_basis, even_project
from .errors import DescriptorMismatch


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    return _norm(Fraction(a) / b)


def _axpy(y: dict, a, x: dict) -> None:
    """y += a * x, in place, dropping zeros."""
    for k, v in x.items():
        new = y.get(k, 0) + a * v
        if new:
            y[k] = _norm(new)
        else:
            y.pop(k, None)


class Echelon:
    """Incremental reduced row-echelon form over sparse rational vectors.

    Every row has a leading 1 at its pivot column and zeros at all other
    pivot columns, so coordinates of a member vector are read off its
    pivot entries.
    """

    def __init__(self, vectors=()):
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.insert(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        out = dict(v)
        for col, c in list(out.items()):
            row = self.rows.get(col)
            if row is not None:
                _axpy(out, -c, row)
        return out

    def insert(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        lead = min(r)
        inv = Fraction(1) / r[lead]
        new = {k: _norm(x * inv) for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(lead)
            if c:
                _axpy(row, -c, new)
        self.rows[lead] = new
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict):
        """``{pivot: coeff}`` if ``v`` lies in the span, else ``None``."""
        rows = self.rows
        coords = {col: c for col, c in v.items() if col in rows}
        residual = dict(v)
        for col, c in coords.items():
            _axpy(residual, -c, self.rows[col])
        return None if residual else coords

    def pivots(self) -> list[int]:
        return sorted(self.rows)


class TrackedElimination:
    """Forward elimination that remembers how each row combines the inputs.

    Used for null spaces (kernel combinations) and for solving ``A a = y``.
    """

    def __init__(self, vectors):
        self.count = 0
        self.pivots: dict[int, tuple[dict, dict]] = {}
        self.kernel: list[dict] = []
        for v in vectors:
            self.add(v)

    def _reduce(self, vec: dict, combo: dict):
        while vec:
            lead = min(vec)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            c = vec[lead]
            _axpy(vec, -c, piv[0])
            _axpy(combo, -c, piv[1])
        return vec, combo

    def add(self, v: dict) -> None:
        r = self.count
        self.count += 1
        vec, combo = self._reduce(dict(v), {r: 1})
        if not vec:
            self.kernel.append(combo)
            return
        lead = min(vec)
        inv = Fraction(1) / vec[lead]
        self.pivots[lead] = ({k: _norm(x * inv) for k, x in vec.items()},
                             {k: _norm(x * inv) for k, x in combo.items()})

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, target: dict):
        """Return ``{index: coeff}`` with sum coeff * v_index == target, or None."""
        vec, combo = self._reduce(dict(target), {})
        if vec:
            return None
        return {k: -c for k, c in combo.items()}


class SubspaceBasis:
    """Reduced row-echelon basis of a subspace of the ambient algebra."""

    __slots__ = ("descriptor", "_ech", "rows")

    def __init__(self, descriptor: AlgebraDescriptor, echelon: Echelon):
        self.descriptor = descriptor
        self._ech = echelon
        self.rows = tuple(Multivector._raw(descriptor, dict(echelon.rows[p])) for p in echelon.pivots())

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __contains__(self, x: Multivector) -> bool:
        return subspace_contains(self, x)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.descriptor == other.descriptor and self.rows == other.rows

    def __hash__(self):
        return hash((self.descriptor, self.rows))

    def coordinates(self, x: Multivector):
        """Coefficients of ``x`` on ``rows`` (list), or ``None`` if ``x`` is outside."""
        _check(self.descriptor, x)
        coords = self._ech.coordinates(x._c)
        if coords is None:
            return None
        return [coords.get(p, 0) for p in self._ech.pivots()]

    def combine(self, coeffs) -> Multivector:
        out = {}
        for c, row in zip(coeffs, self.rows):
            if c:
                _axpy(out, c, row._c)
        return Multivector._raw(self.descriptor, out)

    def __repr__(self):
        return f"SubspaceBasis({self.descriptor.name}, rank={self.rank})"


def _check(desc, x):
    if x.descriptor != desc:
        raise DescriptorMismatch(f"{x.descriptor} vs {desc}")


def _common_descriptor(vectors, descriptor):
    desc = descriptor
    for v in vectors:
        if desc is None:
            desc = v.descriptor
        else:
            _check(desc, v)
    if desc is None:
        raise ValueError("descriptor required for an empty list")
    return desc


def echelonize(vectors, descriptor: AlgebraDescriptor | None = None) -> SubspaceBasis:
    vectors = list(vectors)
    desc = _common_descriptor(vectors, descriptor)
    return SubspaceBasis(desc, Echelon(v._c for v in vectors))


def full_space(descriptor: AlgebraDescriptor) -> SubspaceBasis:
    return echelonize(ambient_basis(descriptor), descriptor)


def zero_space(descriptor: AlgebraDescriptor) -> SubspaceBasis:
    return echelonize([], descriptor)


def subspace_contains(S: SubspaceBasis, x: Multivector) -> bool:
    _check(S.descriptor, x)
    return S._ech.contains(x._c)


def subspace_sum(S: SubspaceBasis, T: SubspaceBasis) -> SubspaceBasis:
    if S.descriptor != T.descriptor:
        raise DescriptorMismatch(f"{S.descriptor} vs {T.descriptor}")
    return echelonize(list(S.rows) + list(T.rows), S.descriptor)


def subspace_intersect(S: SubspaceBasis, T: SubspaceBasis) -> SubspaceBasis:
    if S.descriptor != T.descriptor:
        raise DescriptorMismatch(f"{S.descriptor} vs {T.descriptor}")
    vecs = [r._c for r in S.rows] + [(-r)._c for r in T.rows]
    kernel = TrackedElimination(vecs).kernel
    ns = S.rank
    common = [S.combine([combo.get(r, 0) for r in range(ns)]) for combo in kernel]
    return echelonize(common, S.descriptor)


def _commutator_images(constraints, ambient: SubspaceBasis):
    desc = ambient.descriptor
    for c in constraints:
        _check(desc, c)
    dim = desc.dimension
    images = []
    for b in ambient.rows:
        img = {}
        for i, c in enumerate(constraints):
            off = i * dim
            for k, v in (b * c - c * b)._c.items():
                img[off + k] = v
        images.append(img)
    return images


def solve_commutant(constraints, ambient: SubspaceBasis) -> SubspaceBasis:
    """Basis of ``{x in ambient : x c = c x for every constraint c}``."""
    constraints = list(constraints)
    elim = TrackedElimination(_commutator_images(constraints, ambient))
    n = ambient.rank
    sols = [ambient.combine([combo.get(r, 0) for r in range(n)]) for combo in elim.kernel]
    return echelonize(sols, ambient.descriptor)


def commutator_map_rank(constraints, ambient: SubspaceBasis) -> int:
    """Rank of ``x -> ([x, c])_c`` on ``ambient``, computed without the kernel."""
    return Echelon(_commutator_images(list(constraints), ambient)).rank


def even_space(descriptor: AlgebraDescriptor) -> SubspaceBasis:
    return echelonize([b for b in ambient_basis(descriptor) if b == even_project(b)], descriptor)


@dataclass(frozen=True)
class SymmetricForm:
    """Rational symmetric matrix of a bilinear form on ``basis`` rows."""

    basis: SubspaceBasis | None
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(_norm(Fraction(v)) for v in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("form matrix must be square")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"form matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "matrix", m)


def signature_of_symmetric(B) -> tuple[int, int, int]:
    """Inertia ``(n_plus, n_minus, n_zero)`` by exact congruence reduction.

    Diagonal pivots are taken when available; otherwise a hyperbolic pair
    ``[[0, b], [b, 0]]`` is split off and counts as one plus and one minus.
    """
    matrix = B.matrix if isinstance(B, SymmetricForm) else SymmetricForm(None, B).matrix
    return inertia_sparse({i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(matrix)})


def inertia_sparse(M: dict) -> tuple[int, int, int]:
    """Same as :func:`signature_of_symmetric` on a ``{i: {j: value}}`` matrix.

    ``M`` must be symmetric and is consumed.
    """
    n = len(M)
    plus = minus = zero = 0
    while M:
        for i in [i for i, row in M.items() if not row]:
            del M[i]
            zero += 1
        if not M:
            break
        best = None
        for i, row in M.items():
            if row.get(i) and (best is None or len(row) < len(M[best])):
                best = i
        if best is not None:
            row = M.pop(best)
            d = row.pop(best)
            if d > 0:
                plus += 1
            else:
                minus += 1
            for j in row:
                M[j].pop(best, None)
            others = list(row.items())
            for j, vj in others:
                f = Fraction(vj) / d
                Mj = M[j]
                for k, vk in others:
                    new = Mj.get(k, 0) - f * vk
                    if new:
                        Mj[k] = _norm(new)
                    else:
                        Mj.pop(k, None)
            continue
        i = min(M)
        j = min(M[i])
        b = M[i][j]
        plus += 1
        minus += 1
        ri = M.pop(i)
        rj = M.pop(j)
        for k in ri:
            if k in M:
                M[k].pop(i, None)
        for k in rj:
            if k in M:
                M[k].pop(j, None)
        ri.pop(i, None), ri.pop(j, None), rj.pop(i, None), rj.pop(j, None)
        touched = sorted(set(ri) | set(rj))
        for k in touched:
            Mk = M[k]
            for l in touched:
                delta = (ri.get(k, 0) * rj.get(l, 0) + rj.get(k, 0) * ri.get(l, 0))
                if delta:
                    new = Mk.get(l, 0) - Fraction(delta) / b
                    if new:
                        Mk[l] = _norm(new)
                    else:
                        Mk.pop(l, None)
    assert plus + minus + zero == n
    return plus, minus, zero
