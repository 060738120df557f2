"""Identification of Clifford algebras and their subalgebras.

Two independent routes are provided: :func:`classify_table` reads the
answer off the mod-8 periodicity table, and :func:`classify_empirical`
recovers it from exact structure constants (center, trace-form inertia,
dimension) without knowing where the algebra came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .algebra import (
    UNIT_NAMES,
    AlgebraDescriptor,
    Multivector,
    Ring,
    Signature,
    anticommutator,
)
from .errors import (
    CliffordError,
    DescriptorMismatch,
    NotCentral,
    NotClassifiable,
    NotClosed,
    NotInvolution,
    NotSemisimple,
    NotUnital,
)
from .linalg import (
    Echelon,
    SubspaceBasis,
    TrackedElimination,
    echelonize,
    even_space,
    inertia_sparse,
    subspace_intersect,
)

_RING_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class IsoClass:
    """``factors`` copies of ``n x n`` matrices over ``division_ring``."""

    factors: int
    division_ring: str
    n: int

    def __post_init__(self):
        if self.factors not in (1, 2):
            raise ValueError("factors must be 1 or 2")
        if self.division_ring not in _RING_DIM:
            raise ValueError(f"unknown division ring {self.division_ring!r}")
        if self.n < 1:
            raise ValueError("matrix size must be positive")

    @property
    def real_dimension(self) -> int:
        return self.factors * self.n * self.n * _RING_DIM[self.division_ring]

    def __str__(self):
        one = f"M({self.n},{self.division_ring})"
        return one if self.factors == 1 else f"{one} ⊕ {one}"


# (p - q) mod 8 -> (factors, division ring)
_PERIODIC = {0: (1, "R"), 1: (2, "R"), 2: (1, "R"), 3: (1, "C"),
             4: (1, "H"), 5: (2, "H"), 6: (1, "H"), 7: (1, "C")}


def tensor_with_ring(iso: IsoClass, ring: Ring) -> IsoClass:
    """Class of ``ring ⊗_R A`` for ``A`` in class ``iso``."""
    f, d, n = iso.factors, iso.division_ring, iso.n
    if ring is Ring.REAL:
        return iso
    if ring is Ring.COMPLEX:
        if d == "R":
            return IsoClass(f, "C", n)
        if d == "C":
            if f != 1:
                raise NotClassifiable("C ⊗ (C ⊕ C) has four simple factors")
            return IsoClass(2, "C", n)
        return IsoClass(f, "C", 2 * n)
    # quaternions: H⊗R = H, H⊗C = M(2,C), H⊗H = M(4,R)
    if d == "R":
        return IsoClass(f, "H", n)
    if d == "C":
        return IsoClass(f, "C", 2 * n)
    return IsoClass(f, "R", 4 * n)


def classify_table(sig: Signature, ring: Ring = Ring.REAL) -> IsoClass:
    factors, d = _PERIODIC[(sig.p - sig.q) % 8]
    per_factor = (1 << sig.n) // factors // _RING_DIM[d]
    n = isqrt(per_factor)
    assert n * n == per_factor
    return tensor_with_ring(IsoClass(factors, d, n), ring)


# ---------------------------------------------------------------------------
# generated subalgebras, even parts


def _descriptor_of(vectors, descriptor=None):
    desc = descriptor
    for v in vectors:
        if desc is None:
            desc = v.descriptor
        elif v.descriptor != desc:
            raise DescriptorMismatch(f"{v.descriptor} vs {desc}")
    if desc is None:
        raise ValueError("descriptor required when no generators are given")
    return desc


def generated_subalgebra(gens, adjoin_unit: bool = True, descriptor=None) -> SubspaceBasis:
    """Smallest product-closed subspace containing ``gens`` (and 1 if asked).

    The span of all words in the generators is closed under left
    multiplication by each generator, and that is all the fixed-point
    iteration has to establish.
    """
    gens = list(gens)
    desc = _descriptor_of(gens, descriptor)
    ech = Echelon()
    queue = []
    seeds = list(gens)
    if adjoin_unit:
        seeds.insert(0, Multivector.scalar(desc, 1))
    for v in seeds:
        if ech.insert(v._c):
            queue.append(v)
    while queue:
        v = queue.pop()
        for g in gens:
            w = g * v
            if ech.insert(w._c):
                queue.append(w)
    return SubspaceBasis(desc, ech)


def even_subalgebra(gens, descriptor=None) -> SubspaceBasis:
    """Even part of the algebra generated by ``gens``: words of even length."""
    gens = list(gens)
    pairs = [a * b for a in gens for b in gens]
    return generated_subalgebra(pairs, adjoin_unit=True, descriptor=_descriptor_of(gens, descriptor))


def even_part(obj) -> SubspaceBasis:
    """Span of even-grade monomials of a descriptor, or ``S ∩`` that span."""
    if isinstance(obj, AlgebraDescriptor):
        return even_space(obj)
    return subspace_intersect(obj, even_space(obj.descriptor))


# ---------------------------------------------------------------------------
# structure constants


class StructureConstants:
    """Multiplication table of a closed subspace in its own row coordinates."""

    def __init__(self, S: SubspaceBasis):
        self.space = S
        self.dim = S.rank
        index = {p: i for i, p in enumerate(S._ech.pivots())}
        rows = S.rows
        table = []
        for a in rows:
            line = []
            for b in rows:
                prod = a * b
                coords = S._ech.coordinates(prod._c)
                if coords is None:
                    raise NotClosed(f"subspace of rank {S.rank} is not closed under multiplication")
                line.append({index[p]: c for p, c in coords.items()})
            table.append(line)
        self.table = table

    def multiply(self, x: dict, y: dict) -> dict:
        out = {}
        for a, ca in x.items():
            line = self.table[a]
            for b, cb in y.items():
                for t, c in line[b].items():
                    out[t] = out.get(t, 0) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    def element(self, coords: dict) -> Multivector:
        return self.space.combine([coords.get(i, 0) for i in range(self.dim)])

    def unit(self):
        """Coordinates of the two-sided identity, or ``None``."""
        d = self.dim
        if d == 0:
            return None
        vectors = []
        for r in range(d):
            v = {}
            for t in range(d):
                for i, c in self.table[r][t].items():
                    v[2 * t * d + i] = c
                for i, c in self.table[t][r].items():
                    v[(2 * t + 1) * d + i] = c
            vectors.append(v)
        target = {}
        for t in range(d):
            target[2 * t * d + t] = 1
            target[(2 * t + 1) * d + t] = 1
        return TrackedElimination(vectors).solve(target)

    def center(self) -> list[dict]:
        d = self.dim
        vectors = []
        for r in range(d):
            v = {}
            for t in range(d):
                left, right = self.table[r][t], self.table[t][r]
                for i in set(left) | set(right):
                    c = left.get(i, 0) - right.get(i, 0)
                    if c:
                        v[t * d + i] = c
            vectors.append(v)
        ech = Echelon(TrackedElimination(vectors).kernel)
        return [ech.rows[p] for p in ech.pivots()]

    def trace_vector(self) -> list:
        """``tau[t] = trace of left multiplication by basis element t``."""
        return [sum(self.table[t][r].get(r, 0) for r in range(self.dim)) for t in range(self.dim)]

    def trace_form(self) -> dict:
        """Sparse regular trace form ``B[a][b] = tr(L_(s_a s_b))``."""
        tau = self.trace_vector()
        B = {}
        for a in range(self.dim):
            row = {}
            for b in range(self.dim):
                v = sum(c * tau[t] for t, c in self.table[a][b].items())
                if v:
                    row[b] = v
            B[a] = row
        return B


def _subform(st: StructureConstants, basis: list[dict]) -> dict:
    """Regular trace form of the subalgebra spanned by coordinate vectors ``basis``."""
    ech = Echelon(basis)
    pivots = ech.pivots()
    pos = {p: i for i, p in enumerate(pivots)}
    vecs = [ech.rows[p] for p in pivots]
    m = len(vecs)
    prods = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            coords = ech.coordinates(st.multiply(vecs[i], vecs[j]))
            if coords is None:
                raise NotClosed("center is not closed under multiplication")
            prods[i][j] = {pos[p]: c for p, c in coords.items()}
    tau = [sum(prods[k][i].get(i, 0) for i in range(m)) for k in range(m)]
    form = {}
    for i in range(m):
        row = {}
        for j in range(m):
            v = sum(c * tau[k] for k, c in prods[i][j].items())
            if v:
                row[j] = v
        form[i] = row
    return form


@dataclass
class AlgebraAnalysis:
    """Everything :func:`classify_empirical` computes on the way to its verdict."""

    rank: int
    unit: Multivector
    center: list = field(default_factory=list)
    center_inertia: tuple = ()
    trace_inertia: tuple = ()
    real_center_factors: int = 0
    complex_center_factors: int = 0
    iso: IsoClass | None = None


def internal_unit(S: SubspaceBasis, constants: StructureConstants | None = None) -> Multivector:
    """Two-sided identity of a closed subspace; raises :class:`NotUnital`."""
    one = Multivector.scalar(S.descriptor, 1)
    if S.rank and one in S:
        return one
    st = constants or StructureConstants(S)
    sol = st.unit()
    if sol is None:
        raise NotUnital(f"no internal unit in a subalgebra of rank {S.rank}")
    return st.element(sol)


def analyze_algebra(S: SubspaceBasis) -> AlgebraAnalysis:
    st = StructureConstants(S)
    e = internal_unit(S, st)
    d = st.dim
    tp, tm, tz = inertia_sparse(st.trace_form())
    if tz:
        raise NotSemisimple(f"trace form has a {tz}-dimensional radical")
    center = st.center()
    zp, zm, zz = inertia_sparse(_subform(st, center))
    if zz:
        raise NotSemisimple("center is not semisimple")
    complex_part = zm
    real_part = zp - zm
    out = AlgebraAnalysis(d, e, [st.element(z) for z in center], (zp, zm, zz), (tp, tm, tz),
                          real_part, complex_part)
    f = real_part + complex_part
    if f > 2:
        raise NotClassifiable(f"{f} simple factors")
    if real_part and complex_part:
        raise NotClassifiable("simple factors have different centers")
    if complex_part:
        n = isqrt(d // (2 * f)) if d % (2 * f) == 0 else 0
        if n == 0 or 2 * f * n * n != d or tp != tm:
            raise NotClassifiable(f"dimension {d} with inertia {(tp, tm)} is not f·M(n,C)")
        out.iso = IsoClass(f, "C", n)
    elif tp > tm:
        n, rem = divmod(tp - tm, f)
        if rem or f * n * n != d or 2 * tp != f * n * (n + 1):
            raise NotClassifiable(f"dimension {d} with inertia {(tp, tm)} is not f·M(n,R)")
        out.iso = IsoClass(f, "R", n)
    elif tp < tm:
        n, rem = divmod(tm - tp, 2 * f)
        if rem or 4 * f * n * n != d or tp != f * (2 * n * n - n):
            raise NotClassifiable(f"dimension {d} with inertia {(tp, tm)} is not f·M(n,H)")
        out.iso = IsoClass(f, "H", n)
    else:
        raise NotClassifiable("real-centered factor with balanced trace form")
    return out


def classify_empirical(S: SubspaceBasis) -> IsoClass:
    """Isomorphism class of a closed, unital, semisimple subspace."""
    return analyze_algebra(S).iso


# ---------------------------------------------------------------------------
# idempotent splitting


def idempotent_split(S: SubspaceBasis, omega: Multivector):
    """Split ``S`` into the ideals ``(1 ± omega)/2 · S`` for a central involution."""
    if omega.descriptor != S.descriptor:
        raise DescriptorMismatch(f"{omega.descriptor} vs {S.descriptor}")
    if omega not in S:
        raise CliffordError("omega does not lie in the algebra being split")
    e = internal_unit(S)
    if omega * omega != e:
        raise NotInvolution(f"omega squares to {omega * omega}, not to the unit")
    for s in S.rows:
        if omega * s != s * omega:
            raise NotCentral(f"omega does not commute with {s}")
    p_plus = (e + omega) / 2
    p_minus = (e - omega) / 2
    plus = echelonize([p_plus * s for s in S.rows], S.descriptor)
    minus = echelonize([p_minus * s for s in S.rows], S.descriptor)
    return plus, minus


def is_two_sided_ideal(ideal: SubspaceBasis, algebra: SubspaceBasis) -> bool:
    for a in algebra.rows:
        for x in ideal.rows:
            if a * x not in ideal or x * a not in ideal:
                return False
    return True


def spaces_commute(S: SubspaceBasis, T: SubspaceBasis) -> bool:
    return all(a * b == b * a for a in S.rows for b in T.rows)


def spaces_annihilate(S: SubspaceBasis, T: SubspaceBasis) -> bool:
    return all((a * b).is_zero() and (b * a).is_zero() for a in S.rows for b in T.rows)


# ---------------------------------------------------------------------------
# generator sets


def pseudoscalar_factor(x: Multivector, target: Multivector):
    """``(unit_index, r)`` with ``x == r * unit * target``, or ``None``."""
    if x.descriptor != target.descriptor:
        raise DescriptorMismatch(f"{x.descriptor} vs {target.descriptor}")
    if x.is_zero() or target.is_zero():
        return None
    desc = x.descriptor
    for u in range(desc.ring.size):
        cand = Multivector.blade(desc, 0, 1, u) * target
        k0, c0 = cand.items()[0]
        if k0 not in x._c:
            continue
        r = Fraction(x._c[k0]) / c0
        if x == cand * r:
            return u, (r.numerator if r.denominator == 1 else r)
    return None


def format_factor(factor) -> str:
    if factor is None:
        return "none"
    u, r = factor
    r = Fraction(r)
    if u == 0:
        return str(r)
    name = UNIT_NAMES[u]
    if r == 1:
        return name
    if r == -1:
        return "-" + name
    return f"{r}*{name}"


@dataclass
class GeneratorReport:
    pairwise_anticommute: bool
    squares: list
    signature: Signature | None
    generated_dimension: int
    ambient_dimension: int
    full_algebra: bool
    pseudoscalar: Multivector
    failing_pairs: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.signature is not None


def verify_generators(gens, descriptor=None) -> GeneratorReport:
    gens = list(gens)
    desc = _descriptor_of(gens, descriptor)
    squares = []
    for g in gens:
        s = g * g
        if s.is_scalar() and s.scalar_part() in (1, -1):
            squares.append(int(s.scalar_part()))
        else:
            squares.append("FAIL")
    failing = [(a, b) for a in range(len(gens)) for b in range(a + 1, len(gens))
               if not anticommutator(gens[a], gens[b]).is_zero()]
    ok = not failing and "FAIL" not in squares
    signature = Signature(squares.count(1), squares.count(-1)) if ok else None
    dim = generated_subalgebra(gens, adjoin_unit=True, descriptor=desc).rank
    ps = Multivector.scalar(desc, 1)
    for g in gens:
        ps = ps * g
    return GeneratorReport(not failing, squares, signature, dim, desc.dimension,
                           dim == desc.dimension, ps, failing)


@dataclass
class QuaternionCheck:
    ok: bool
    reason: str = ""
    unit: Multivector | None = None
    scale: Fraction | None = None
    orientation: int = 0


def _rational_sqrt(r):
    r = Fraction(r)
    if r <= 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def check_quaternion_triple(x: Multivector, y: Multivector, z: Multivector) -> QuaternionCheck:
    """Do ``x, y, z`` satisfy the quaternion relations up to a common scale,
    relative to the unit of the algebra they generate?"""
    S = generated_subalgebra([x, y, z], adjoin_unit=False)
    try:
        e = internal_unit(S)
    except NotUnital:
        return QuaternionCheck(False, "generated algebra has no unit")
    mus = []
    for g, label in ((x, "first"), (y, "second"), (z, "third")):
        sq = g * g
        mu = None
        c = e.items()[0][1]
        k0 = e.items()[0][0]
        if k0 in sq._c:
            cand = -Fraction(sq._c[k0]) / c
            if sq == e * (-cand):
                mu = cand
        if mu is None or _rational_sqrt(mu) is None:
            return QuaternionCheck(False, f"{label} element squares to {sq}, not a negative multiple of the unit", e)
        mus.append(mu)
    if len(set(mus)) != 1:
        return QuaternionCheck(False, "squares are not a common multiple of the unit", e)
    lam = _rational_sqrt(mus[0])
    for a, b in ((x, y), (y, z), (z, x)):
        if not anticommutator(a, b).is_zero():
            return QuaternionCheck(False, "elements do not anticommute", e, lam)
    if x * y == z * lam and y * z == x * lam and z * x == y * lam:
        orientation = 1
    elif x * y == -z * lam and y * z == -x * lam and z * x == -y * lam:
        orientation = -1
    else:
        return QuaternionCheck(False, "products do not close on the triple", e, lam)
    return QuaternionCheck(True, "", e, lam, orientation)
