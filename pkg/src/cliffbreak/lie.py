"""Lie algebras inside the Clifford algebra.

Structure constants and Killing forms are exact.  Exponentials are the one
place floating point is used; they back numerical sanity checks that
exponentiated bivectors act as spin transformations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Multivector, commutator, grade_project, product_table
from .errors import CliffordError, NonConvergence
from .linalg import Echelon, SubspaceBasis, inertia_sparse
from .structure import verify_generators

# (dimension, (n_plus, n_minus)) of the Killing form -> real form.
# so(p,q) has p*q noncompact (positive) and dim so(p) + dim so(q) compact directions.
CATALOGUE = {
    (15, (9, 6)): "sl(4,R)",
    (15, (0, 15)): "su(4)",
    (15, (8, 7)): "su(2,2)",
    (15, (5, 10)): "sl(2,H)",
    (3, (0, 3)): "su(2)",
    (3, (2, 1)): "sl(2,R)",
    (6, (3, 3)): "sl(2,C)",
    (6, (0, 6)): "su(2)+su(2)",
}


@dataclass
class LieBasis:
    basis: SubspaceBasis
    constants: list  # constants[r][s] = {t: c} with [b_r, b_s] = sum_t c b_t

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def coefficient(self, r, s, t):
        return self.constants[r][s].get(t, 0)


def lie_closure(elements, descriptor=None) -> LieBasis:
    """Smallest subspace containing ``elements`` closed under the commutator."""
    elements = list(elements)
    if descriptor is None:
        if not elements:
            raise ValueError("descriptor required for an empty element list")
        descriptor = elements[0].descriptor
    ech = Echelon()
    members: list[Multivector] = []
    queue = []
    for x in elements:
        if ech.insert(x._c):
            queue.append(x)
    while queue:
        x = queue.pop()
        for y in members:
            z = commutator(x, y)
            if ech.insert(z._c):
                queue.append(z)
        members.append(x)
    return _with_constants(SubspaceBasis(descriptor, ech))


def _with_constants(S: SubspaceBasis) -> LieBasis:
    rows = S.rows
    d = len(rows)
    pos = {p: i for i, p in enumerate(S._ech.pivots())}
    constants = [[None] * d for _ in range(d)]
    for r in range(d):
        constants[r][r] = {}
        for s in range(r + 1, d):
            coords = S._ech.coordinates(commutator(rows[r], rows[s])._c)
            if coords is None:
                raise CliffordError("subspace is not closed under the commutator")
            c = {pos[p]: v for p, v in coords.items()}
            constants[r][s] = c
            constants[s][r] = {t: -v for t, v in c.items()}
    return LieBasis(S, constants)


def bivector_algebra(gens) -> LieBasis:
    """Span of the products ``g_a g_b`` (a < b) of a Clifford generator set."""
    gens = list(gens)
    report = verify_generators(gens)
    if not report.valid:
        raise CliffordError(f"not a Clifford generator set (squares {report.squares})")
    products = [gens[a] * gens[b] for a in range(len(gens)) for b in range(a + 1, len(gens))]
    return lie_closure(products, gens[0].descriptor if gens else None)


def derived_algebra(L: LieBasis) -> LieBasis:
    rows = L.basis.rows
    brackets = [commutator(rows[r], rows[s]) for r in range(len(rows)) for s in range(r + 1, len(rows))]
    return lie_closure(brackets, L.basis.descriptor)


def _bracket_vec(L: LieBasis, x: dict, y: dict) -> dict:
    out = {}
    for r, a in x.items():
        for s, b in y.items():
            for t, c in L.constants[r][s].items():
                out[t] = out.get(t, 0) + a * b * c
    return {k: v for k, v in out.items() if v}


def jacobi_holds(L: LieBasis) -> bool:
    d = L.dimension
    for r in range(d):
        for s in range(r + 1, d):
            rs = L.constants[r][s]
            for t in range(s + 1, d):
                total = {}
                for x, z in ((rs, t), (L.constants[s][t], r), (L.constants[t][r], s)):
                    for k, v in _bracket_vec(L, x, {z: 1}).items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    return False
    return True


def killing_matrix(L: LieBasis) -> list[list]:
    """``B[r][u] = trace(ad b_r ∘ ad b_u)`` from the exact structure constants."""
    d = L.dimension
    c = L.constants
    B = [[0] * d for _ in range(d)]
    for r in range(d):
        for u in range(r, d):
            total = 0
            for t in range(d):
                for s, v in c[r][t].items():
                    w = c[u][s].get(t)
                    if w:
                        total += v * w
            B[r][u] = B[u][r] = total
    return B


@dataclass
class RealFormVerdict:
    dimension: int
    inertia: tuple
    nullity: int
    name: str | None

    @property
    def known(self) -> bool:
        return self.name is not None

    def __str__(self):
        label = self.name or "UNKNOWN_FORM"
        return f"{label} (dim {self.dimension}, Killing inertia {self.inertia})"


def killing_verdict(L: LieBasis) -> RealFormVerdict:
    B = killing_matrix(L)
    a, b, z = inertia_sparse({i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(B)})
    name = CATALOGUE.get((L.dimension, (a, b))) if z == 0 else None
    return RealFormVerdict(L.dimension, (a, b), z, name)


# ---------------------------------------------------------------------------
# floating point


class FloatMultivector:
    """Dense double-precision multivector over the same basis as :class:`Multivector`."""

    __slots__ = ("descriptor", "coeffs")

    def __init__(self, descriptor, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.float64)
        if coeffs.shape != (descriptor.dimension,):
            raise ValueError("coefficient vector has the wrong length")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("non-finite coefficient")
        self.descriptor = descriptor
        self.coeffs = coeffs

    @classmethod
    def from_exact(cls, x: Multivector) -> "FloatMultivector":
        v = np.zeros(x.descriptor.dimension)
        for k, c in x.items():
            v[k] = float(c)
        return cls(x.descriptor, v)

    @classmethod
    def scalar(cls, descriptor, value=1.0):
        v = np.zeros(descriptor.dimension)
        v[0] = value
        return cls(descriptor, v)

    def __add__(self, other):
        return FloatMultivector(self.descriptor, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return FloatMultivector(self.descriptor, self.coeffs - other.coeffs)

    def __neg__(self):
        return FloatMultivector(self.descriptor, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, FloatMultivector):
            if other.descriptor != self.descriptor:
                raise CliffordError("descriptor mismatch")
            index, sign = product_table(self.descriptor)
            a, b = self.coeffs, other.coeffs
            nz_a, nz_b = np.nonzero(a)[0], np.nonzero(b)[0]
            w = sign[np.ix_(nz_a, nz_b)] * np.outer(a[nz_a], b[nz_b])
            out = np.bincount(index[np.ix_(nz_a, nz_b)].ravel(), weights=w.ravel(),
                              minlength=self.descriptor.dimension)
            return FloatMultivector(self.descriptor, out)
        return FloatMultivector(self.descriptor, self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return FloatMultivector(self.descriptor, self.coeffs / float(c))

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def _grade_mask(self) -> np.ndarray:
        desc = self.descriptor
        n = desc.n
        return np.array([(k & ((1 << n) - 1)).bit_count() for k in range(desc.dimension)])

    def reverse(self) -> "FloatMultivector":
        g = self._grade_mask()
        return FloatMultivector(self.descriptor, np.where(np.isin(g % 4, (2, 3)), -self.coeffs, self.coeffs))

    def split_vector_part(self):
        """(real grade-1 part, everything else) as coefficient arrays."""
        desc = self.descriptor
        n = desc.n
        keys = np.arange(desc.dimension)
        is_vec = (self._grade_mask() == 1) & ((keys >> n) == 0)
        return np.where(is_vec, self.coeffs, 0.0), np.where(is_vec, 0.0, self.coeffs)


def exp_float(x: FloatMultivector, tol: float = 1e-14, max_terms: int = 200) -> FloatMultivector:
    """Power-series exponential with scaling and squaring.

    ``x`` is scaled by ``2**-s`` until its max-norm is at most 1/2, the
    series is summed until two consecutive terms fall below ``tol`` relative
    to the partial sum, and the result is squared ``s`` times.
    """
    if isinstance(x, Multivector):
        x = FloatMultivector.from_exact(x)
    norm = x.max_norm()
    s = 0
    while norm / 2.0 ** s > 0.5:
        s += 1
    y = x / 2.0 ** s
    result = FloatMultivector.scalar(x.descriptor, 1.0)
    term = FloatMultivector.scalar(x.descriptor, 1.0)
    small = 0
    for k in range(1, max_terms + 1):
        term = (term * y) / k
        result = result + term
        small = small + 1 if term.max_norm() <= tol * max(result.max_norm(), 1e-300) else 0
        if small == 2:
            break
    else:
        raise NonConvergence(f"series tail not below {tol} after {max_terms} terms")
    for _ in range(s):
        result = result * result
    return result


def exp_inverse_error(x, tol: float = 1e-14) -> float:
    """max-norm of ``exp(x) exp(-x) - 1``."""
    if isinstance(x, Multivector):
        x = FloatMultivector.from_exact(x)
    prod = exp_float(x, tol) * exp_float(-x, tol)
    return (prod - FloatMultivector.scalar(x.descriptor, 1.0)).max_norm()


@dataclass
class SpinActionReport:
    ok: bool
    trials: int
    max_inverse_error: float = 0.0
    max_grade_leak: float = 0.0
    max_form_error: float = 0.0
    notes: list = field(default_factory=list)


def _random_vector(desc, rng) -> FloatMultivector:
    v = np.zeros(desc.dimension)
    for m in range(desc.n):
        v[1 << m] = rng.uniform(-1.0, 1.0)
    return FloatMultivector(desc, v)


def _check_bivector(b: Multivector):
    if b.is_zero():
        return
    split = b.descriptor.split_key
    for k, _ in b.items():
        unit, mask = split(k)
        if unit != 0 or mask.bit_count() != 2:
            raise CliffordError(f"{b} is not a real bivector")


def spin_action_report(b: Multivector, trials: int = 100, tol: float = 1e-9, seed: int = 0) -> SpinActionReport:
    """Check that ``g = exp(b)`` maps vectors to vectors, preserving the quadratic form."""
    _check_bivector(b)
    desc = b.descriptor
    rng = np.random.default_rng(seed)
    g = exp_float(FloatMultivector.from_exact(b))
    g_inv = g.reverse()
    one = FloatMultivector.scalar(desc, 1.0)
    inv_err = max((g * g_inv - one).max_norm(), (g_inv * g - one).max_norm())
    leak = form = 0.0
    for _ in range(trials):
        v = _random_vector(desc, rng)
        w = g * v * g_inv
        _, rest = w.split_vector_part()
        leak = max(leak, float(np.max(np.abs(rest))))
        qv = (v * v).scalar_part()
        qw = (w * w).scalar_part()
        form = max(form, abs(qv - qw) / max(1.0, abs(qv)))
    ok = inv_err <= tol and leak <= tol and form <= tol
    return SpinActionReport(ok, trials, inv_err, leak, form)


def spin_action_check(b: Multivector, trials: int = 100, tol: float = 1e-9, seed: int = 0) -> bool:
    return spin_action_report(b, trials, tol, seed).ok


def ideal_spin_report(triple, ideal_unit: Multivector, trials: int = 100, tol: float = 1e-9,
                      seed: int = 0) -> SpinActionReport:
    """Exponentials of elements of a quaternion ideal.

    For each random rational combination ``x`` of ``triple`` this checks
    exactly that ``x == 2 b P`` with ``b`` the bivector part of ``x`` and
    ``P`` the ideal unit, then numerically that ``P exp(x) = P exp(2b)``,
    ``(1 - P) exp(x) = 1 - P`` and that ``exp(2b)`` passes the spin action
    check.
    """
    triple = list(triple)
    desc = ideal_unit.descriptor
    rng = np.random.default_rng(seed)
    P = FloatMultivector.from_exact(ideal_unit)
    one = FloatMultivector.scalar(desc, 1.0)
    Q = one - P
    report = SpinActionReport(True, trials)
    for t in range(trials):
        coeffs = [Fraction(int(rng.integers(-1000, 1001)), 1000) for _ in triple]
        x = Multivector.zero(desc)
        for c, g in zip(coeffs, triple):
            x = x + g * c
        b = grade_project(x, 2)
        if x != b * 2 * ideal_unit:
            report.ok = False
            report.notes.append(f"trial {t}: element is not 2*bivector*unit")
            break
        g = exp_float(FloatMultivector.from_exact(x))
        G = exp_float(FloatMultivector.from_exact(b * 2))
        err = max((P * g - P * G).max_norm(), (Q * g - Q).max_norm())
        report.max_inverse_error = max(report.max_inverse_error, err)
        sub = spin_action_report(b * 2, trials=1, tol=tol, seed=int(rng.integers(2 ** 31)))
        report.max_grade_leak = max(report.max_grade_leak, sub.max_grade_leak)
        report.max_form_error = max(report.max_form_error, sub.max_form_error)
        if err > tol or not sub.ok:
            report.ok = False
    return report
