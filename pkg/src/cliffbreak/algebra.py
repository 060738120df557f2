"""Exact multivector arithmetic for Cl(p,q) over R, C or H.

Basis monomials are keyed by ``(unit, mask)``: ``unit`` indexes the
coefficient-ring units (1, i, j, k) and ``mask`` is a bitmask over the
generators.  Internally a pair is packed into one integer,
``unit << n | mask``, which is also the fixed column order used by the exact
linear algebra (unit ascending, then mask ascending).

Ring units commute with every blade; among themselves they multiply by the
quaternion table.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .errors import CliffordError, DescriptorMismatch, RingMismatch

MAX_GENERATORS = 12


@dataclass(frozen=True)
class Signature:
    """``p`` generators square to +1, ``q`` to -1.  Generator ``m`` squares to
    +1 exactly when ``m < p``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"negative signature ({self.p},{self.q})")
        if self.p + self.q > MAX_GENERATORS:
            raise ValueError(f"p+q = {self.p + self.q} exceeds the engine bound {MAX_GENERATORS}")

    @property
    def n(self) -> int:
        return self.p + self.q

    def square(self, index: int) -> int:
        return 1 if index < self.p else -1

    def __str__(self):
        return f"({self.p},{self.q})"


class Ring(enum.Enum):
    REAL = "R"
    COMPLEX = "C"
    QUATERNION = "H"

    @property
    def size(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.value]

    @property
    def unit_names(self) -> tuple[str, ...]:
        return ("1", "i", "j", "k")[: self.size]

    @classmethod
    def parse(cls, text: str) -> "Ring":
        t = text.strip().upper()
        aliases = {"R": cls.REAL, "REAL": cls.REAL, "C": cls.COMPLEX, "COMPLEX": cls.COMPLEX,
                   "H": cls.QUATERNION, "QUATERNION": cls.QUATERNION}
        if t not in aliases:
            raise ValueError(f"unknown coefficient ring {text!r}")
        return aliases[t]


UNIT_NAMES = ("1", "i", "j", "k")

# _UNIT_TABLE[a][b] = (sign, c) with unit_a * unit_b = sign * unit_c
_UNIT_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def unit_product(a: int, b: int) -> tuple[int, int]:
    return _UNIT_TABLE[a][b]


def _reorder_sign(a: int, b: int) -> int:
    # parity of pairs (x in a, y in b) with x > y
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades: returns ``(sign, a ^ b)``."""
    limit = 1 << sig.n
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValueError(f"blade mask out of range for Cl{sig}")
    sign = _reorder_sign(a, b)
    minus = (limit - 1) ^ ((1 << sig.p) - 1)
    if (a & b & minus).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


@lru_cache(maxsize=None)
def _sign_table(p: int, q: int):
    n = p + q
    if n > 8:
        return None
    sig = Signature(p, q)
    size = 1 << n
    return tuple(tuple(blade_product(sig, a, b)[0] for b in range(size)) for a in range(size))


@lru_cache(maxsize=None)
def _dirac_names() -> tuple[str, ...]:
    return ("g0", "g1", "g2", "g3")


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Signature plus coefficient ring.

    ``generator_names`` and ``name`` are presentation only and do not take
    part in equality, so ``dirac-h`` and ``cl(1,3):h`` describe the same
    algebra.
    """

    signature: Signature
    ring: Ring = Ring.REAL
    generator_names: tuple[str, ...] = field(default=(), compare=False)
    name: str = field(default="", compare=False)
    dirac: bool = field(default=False, compare=False)

    def __post_init__(self):
        n = self.signature.n
        if not self.generator_names:
            object.__setattr__(self, "generator_names", tuple(f"e{m + 1}" for m in range(n)))
        elif len(self.generator_names) != n:
            raise ValueError("one name per generator required")
        if not self.name:
            suffix = {Ring.REAL: "", Ring.COMPLEX: ":c", Ring.QUATERNION: ":h"}[self.ring]
            object.__setattr__(self, "name", f"cl({self.signature.p},{self.signature.q}){suffix}")

    @classmethod
    def generic(cls, p: int, q: int, ring: Ring = Ring.REAL) -> "AlgebraDescriptor":
        return cls(Signature(p, q), ring)

    @classmethod
    def dirac_algebra(cls, ring: Ring = Ring.COMPLEX) -> "AlgebraDescriptor":
        """Cl(1,3) with g0 squaring to +1 and g1, g2, g3 to -1."""
        if ring is Ring.REAL:
            raise ValueError("the Dirac context needs complex or quaternion coefficients")
        name = "dirac-c" if ring is Ring.COMPLEX else "dirac-h"
        return cls(Signature(1, 3), ring, _dirac_names(), name, True)

    @property
    def n(self) -> int:
        return self.signature.n

    @property
    def dimension(self) -> int:
        """Real dimension ``u * 2**(p+q)``."""
        return self.ring.size << self.signature.n

    def key(self, unit: int, mask: int) -> int:
        return (unit << self.signature.n) | mask

    def split_key(self, key: int) -> tuple[int, int]:
        n = self.signature.n
        return key >> n, key & ((1 << n) - 1)

    def blade_name(self, mask: int) -> str:
        names = [self.generator_names[m] for m in range(self.n) if mask >> m & 1]
        return "*".join(names)

    def __str__(self):
        return self.name


def _normalize(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def _check_rational(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")
    return _normalize(c)


class Multivector:
    """Immutable sparse element of the ambient algebra ``descriptor``.

    Coefficients are ``int`` or ``Fraction``; zero entries are never stored.
    """

    __slots__ = ("descriptor", "_c", "_hash")

    def __init__(self, descriptor: AlgebraDescriptor, coefficients=None):
        data = {}
        if coefficients:
            dim = descriptor.dimension
            for key, c in dict(coefficients).items():
                if not 0 <= key < dim:
                    raise ValueError(f"basis key {key} invalid for {descriptor}")
                c = _check_rational(c)
                if c:
                    data[key] = c
        self.descriptor = descriptor
        self._c = data
        self._hash = None

    @classmethod
    def _raw(cls, descriptor, data):
        mv = cls.__new__(cls)
        mv.descriptor = descriptor
        mv._c = data
        mv._hash = None
        return mv

    # constructors

    @classmethod
    def scalar(cls, descriptor, value=1):
        return cls(descriptor, {0: value})

    @classmethod
    def zero(cls, descriptor):
        return cls._raw(descriptor, {})

    @classmethod
    def unit(cls, descriptor, name: str, coeff=1):
        if name not in UNIT_NAMES:
            raise ValueError(f"unknown ring unit {name!r}")
        u = UNIT_NAMES.index(name)
        if u >= descriptor.ring.size:
            raise RingMismatch(f"unit {name} is not available over {descriptor.ring.value} ({descriptor})")
        return cls(descriptor, {descriptor.key(u, 0): coeff})

    @classmethod
    def blade(cls, descriptor, mask: int, coeff=1, unit: int = 0):
        if not 0 <= mask < 1 << descriptor.n:
            raise ValueError("blade mask out of range")
        if not 0 <= unit < descriptor.ring.size:
            raise RingMismatch(f"unit index {unit} invalid over {descriptor.ring.value}")
        return cls(descriptor, {descriptor.key(unit, mask): coeff})

    @classmethod
    def generator(cls, descriptor, index: int):
        if not 0 <= index < descriptor.n:
            raise ValueError(f"generator index {index} out of range")
        return cls(descriptor, {1 << index: 1})

    @classmethod
    def from_terms(cls, descriptor, terms):
        """Build from ``(unit, mask, coeff)`` triples; repeated keys add up."""
        acc = {}
        for unit, mask, coeff in terms:
            k = descriptor.key(unit, mask)
            acc[k] = acc.get(k, 0) + _check_rational(coeff)
        return cls(descriptor, acc)

    # inspection

    def items(self):
        """``(key, coeff)`` pairs in column order."""
        return sorted(self._c.items())

    def terms(self):
        split = self.descriptor.split_key
        return [(*split(k), c) for k, c in sorted(self._c.items())]

    def coefficient(self, unit: int = 0, mask: int = 0):
        return self._c.get(self.descriptor.key(unit, mask), 0)

    def scalar_part(self):
        return self._c.get(0, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_scalar(self) -> bool:
        return all(k == 0 for k in self._c)

    def grades(self) -> set[int]:
        split = self.descriptor.split_key
        return {split(k)[1].bit_count() for k in self._c}

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.descriptor == other.descriptor and self._c == other._c
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self._c == ({0: _normalize(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.descriptor, frozenset(self._c.items())))
        return self._hash

    # arithmetic

    def _same(self, other):
        if self.descriptor != other.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._same(other)
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return Multivector.scalar(self.descriptor, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mv_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.descriptor, {k: -c for k, c in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mv_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mv_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        if isinstance(other, Rational) and not isinstance(other, bool):
            return mv_scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return mv_scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of a multivector by zero")
            return mv_scale(self, Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Multivector.scalar(self.descriptor, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # formatting

    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({self.descriptor.name}, {format_multivector(self)})"


def format_multivector(x: Multivector) -> str:
    """Render in the expression syntax accepted by :mod:`cliffbreak.parser`."""
    if x.is_zero():
        return "0"
    desc = x.descriptor
    out = []
    for unit, mask, c in x.terms():
        c = Fraction(c)
        negative = c < 0
        num, den = abs(c.numerator), c.denominator
        factors = []
        if num != 1 or (unit == 0 and mask == 0):
            factors.append(str(num))
        if unit:
            factors.append(UNIT_NAMES[unit])
        if mask:
            factors.append(desc.blade_name(mask))
        term = "*".join(factors)
        if den != 1:
            term += f"/{den}"
        if not out:
            out.append(("-" if negative else "") + term)
        else:
            out.append((" - " if negative else " + ") + term)
    return "".join(out)


def _canonical(data: dict) -> dict:
    out = {}
    for k, c in data.items():
        if c:
            out[k] = c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
    return out


def _product_terms(desc: AlgebraDescriptor, xc: dict, yc: dict) -> dict:
    sig = desc.signature
    n = sig.n
    low = (1 << n) - 1
    table = _sign_table(sig.p, sig.q)
    out = {}
    get = out.get
    for kx, cx in xc.items():
        ux, mx = kx >> n, kx & low
        row = table[mx] if table is not None else None
        utab = _UNIT_TABLE[ux]
        for ky, cy in yc.items():
            uy, my = ky >> n, ky & low
            us, uo = utab[uy]
            s = row[my] if row is not None else blade_product(sig, mx, my)[0]
            key = (uo << n) | (mx ^ my)
            v = cx * cy
            if us != s:
                v = -v
            out[key] = get(key, 0) + v
    return _canonical(out)


def mv_mul(x: Multivector, y: Multivector) -> Multivector:
    x._same(y)
    return Multivector._raw(x.descriptor, _product_terms(x.descriptor, x._c, y._c))


def mv_add(x: Multivector, y: Multivector) -> Multivector:
    x._same(y)
    out = dict(x._c)
    for k, c in y._c.items():
        out[k] = out.get(k, 0) + c
    return Multivector._raw(x.descriptor, _canonical(out))


def mv_scale(x: Multivector, c) -> Multivector:
    """Multiply by a rational, or left-multiply by a ring unit given by name."""
    if isinstance(c, str):
        return mv_mul(Multivector.unit(x.descriptor, c), x)
    c = _check_rational(c)
    if not c:
        return Multivector.zero(x.descriptor)
    return Multivector._raw(x.descriptor, _canonical({k: v * c for k, v in x._c.items()}))


def _map_by_grade(x: Multivector, sign_of_grade) -> Multivector:
    split = x.descriptor.split_key
    out = {}
    for k, c in x._c.items():
        g = split(k)[1].bit_count()
        out[k] = c if sign_of_grade(g) > 0 else -c
    return Multivector._raw(x.descriptor, out)


def reverse(x: Multivector) -> Multivector:
    return _map_by_grade(x, lambda g: -1 if g % 4 in (2, 3) else 1)


def grade_involution(x: Multivector) -> Multivector:
    return _map_by_grade(x, lambda g: -1 if g & 1 else 1)


def grade_project(x: Multivector, k: int) -> Multivector:
    if not 0 <= k <= x.descriptor.n:
        raise CliffordError(f"grade {k} out of range for {x.descriptor}")
    split = x.descriptor.split_key
    return Multivector._raw(x.descriptor,
                            {key: c for key, c in x._c.items() if split(key)[1].bit_count() == k})


def even_project(x: Multivector) -> Multivector:
    split = x.descriptor.split_key
    return Multivector._raw(x.descriptor,
                            {key: c for key, c in x._c.items() if not split(key)[1].bit_count() & 1})


def commutator(x: Multivector, y: Multivector) -> Multivector:
    return x * y - y * x


def anticommutator(x: Multivector, y: Multivector) -> Multivector:
    return x * y + y * x


def square(x: Multivector) -> Multivector:
    return x * x


def basis_element(desc: AlgebraDescriptor, key: int) -> Multivector:
    return Multivector._raw(desc, {key: 1})


def ambient_basis(desc: AlgebraDescriptor) -> list[Multivector]:
    return [basis_element(desc, k) for k in range(desc.dimension)]


@lru_cache(maxsize=None)
def product_table(desc: AlgebraDescriptor) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``(index, sign)`` tables: ``e_a * e_b = sign[a, b] * e_index[a, b]``.

    Used by the floating-point layer only.
    """
    dim = desc.dimension
    index = np.empty((dim, dim), dtype=np.intp)
    sign = np.empty((dim, dim), dtype=np.float64)
    for a in range(dim):
        ua, ma = desc.split_key(a)
        for b in range(dim):
            ub, mb = desc.split_key(b)
            us, uo = _UNIT_TABLE[ua][ub]
            s, mo = blade_product(desc.signature, ma, mb)
            index[a, b] = desc.key(uo, mo)
            sign[a, b] = us * s
    return index, sign
