"""The claim catalogue and its runner.

A claim is a record: id, description, a formula-level anchor (``paper_ref``),
an expected status, and a program.  Programs take a :class:`ClaimContext`
and return ``(status, details)``.  The runner knows nothing about
individual claims; adding one means appending to ``CATALOGUE``.
"""

from __future__ import annotations

import concurrent.futures
import traceback
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Callable

from .algebra import AlgebraDescriptor, Multivector, Ring, Signature
from .errors import CliffordError
from .lie import (
    bivector_algebra,
    derived_algebra,
    exp_inverse_error,
    ideal_spin_report,
    jacobi_holds,
    killing_matrix,
    killing_verdict,
    lie_closure,
    spin_action_report,
)
from .linalg import (
    echelonize,
    full_space,
    solve_commutant,
    subspace_intersect,
    subspace_sum,
)
from .parser import eval_text, parse_context
from .structure import (
    IsoClass,
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
    spaces_annihilate,
    spaces_commute,
    verify_generators,
)

PASS, FAIL, DISCREPANCY = "PASS", "FAIL", "DISCREPANCY"
STATUSES = (PASS, FAIL, DISCREPANCY)


@dataclass(frozen=True)
class ClaimContext:
    seed: int = 42
    tol: float = 1e-9


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    paper_ref: str
    program: Callable
    expected: str = PASS


@dataclass
class ClaimResult:
    id: str
    status: str
    expected: str
    description: str
    paper_ref: str
    details: dict = field(default_factory=dict)

    @property
    def as_expected(self) -> bool:
        return self.status == self.expected

    def to_dict(self) -> dict:
        return {"kind": "claim", "id": self.id, "status": self.status, "expected": self.expected,
                "description": self.description, "paper_ref": self.paper_ref, "details": self.details}

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimResult":
        return cls(d["id"], d["status"], d["expected"], d["description"], d["paper_ref"], d["details"])


def new_details() -> dict:
    return {"ranks": {}, "inertia": {}, "factors": {}, "pseudoscalar_factor": {},
            "signatures": {}, "checks": {}, "notes": []}


def _status(details) -> str:
    return PASS if all(details["checks"].values()) else FAIL


def _discrepancy(literal_ok: bool, corrected_ok: bool) -> str:
    if literal_ok:
        return PASS
    return DISCREPANCY if corrected_ok else FAIL


@lru_cache(maxsize=None)
def _ctx(name: str) -> AlgebraDescriptor:
    return parse_context(name)


def _ev(ctx: str, *texts) -> list[Multivector]:
    desc = _ctx(ctx)
    return [eval_text(t, desc) for t in texts]


def _sig(sig) -> str:
    return "none" if sig is None else f"({sig.p},{sig.q})"


# ---------------------------------------------------------------------------
# C01: classification of the named algebras

STATED_CLASSES = [
    ((2, 0), IsoClass(1, "R", 2)),
    ((0, 2), IsoClass(1, "H", 1)),
    ((3, 0), IsoClass(1, "C", 2)),
    ((0, 3), IsoClass(2, "H", 1)),
    ((3, 1), IsoClass(1, "R", 4)),
    ((1, 3), IsoClass(1, "H", 2)),
    ((2, 3), IsoClass(1, "C", 4)),
    ((4, 1), IsoClass(1, "C", 4)),
    ((0, 5), IsoClass(1, "C", 4)),
    ((3, 2), IsoClass(2, "R", 4)),
    ((5, 0), IsoClass(2, "H", 2)),
    ((1, 4), IsoClass(2, "H", 2)),
    ((3, 3), IsoClass(1, "R", 8)),
    ((0, 6), IsoClass(1, "R", 8)),
    ((4, 2), IsoClass(1, "R", 8)),
    ((6, 0), IsoClass(1, "H", 4)),
    ((2, 4), IsoClass(1, "H", 4)),
    ((5, 1), IsoClass(1, "H", 4)),
    ((1, 5), IsoClass(1, "H", 4)),
]


def classification_claim(p, q, expected: IsoClass, ctx: ClaimContext):
    d = new_details()
    sig = Signature(p, q)
    table = classify_table(sig)
    d["factors"]["expected"] = str(expected)
    d["factors"]["table"] = str(table)
    d["checks"]["table"] = table == expected
    if p + q <= 6:
        emp = classify_empirical(full_space(AlgebraDescriptor.generic(p, q)))
        d["factors"]["empirical"] = str(emp)
        d["checks"]["empirical"] = emp == expected
    d["ranks"]["dimension"] = 1 << (p + q)
    return _status(d), d


# ---------------------------------------------------------------------------
# C02: generator sets

@dataclass(frozen=True)
class GeneratorSet:
    key: str
    context: str
    exprs: tuple
    signature: tuple
    pseudoscalar: str | None

    @property
    def anchor(self) -> str:
        p, q = self.signature
        return f"<{', '.join(self.exprs)}> ≅ Cl({p},{q})"


GENERATOR_SETS = [
    GeneratorSet("cl23", "dirac-c", ("g0", "g1", "g2", "g3", "g5"), (2, 3), "i"),
    GeneratorSet("cl41", "dirac-c", ("g5", "i*g1", "i*g2", "i*g3", "i*g0"), (4, 1), "i"),
    GeneratorSet("cl05", "dirac-c", ("g1", "g2", "g3", "i*g0", "i*g5"), (0, 5), "i"),
    GeneratorSet("cl33-igamma", "dirac-h", ("i*g1", "i*g2", "i*g3", "i*g0", "j", "k"), (3, 3), "g5"),
    GeneratorSet("cl33-gamma0", "dirac-h", ("g1", "g2", "g3", "g0", "j*g5", "k*g5"), (3, 3), "g5"),
    GeneratorSet("cl33-gamma5", "dirac-h", ("g1", "g2", "g3", "g5", "j*g5", "k*g5"), (3, 3), "g0"),
    GeneratorSet("cl33-gamma5-expanded", "dirac-h",
                 ("g1", "g2", "g3", "i*g0*g1*g2*g3", "j*g0*g1*g2*g3", "k*g0*g1*g2*g3"), (3, 3), "g0"),
    GeneratorSet("cl06", "dirac-h", ("g1", "g2", "g3", "i*g0", "j*g0", "k*g0"), (0, 6), None),
    GeneratorSet("cl42", "dirac-h", ("i*g1", "i*g2", "i*g3", "g0", "j*g0*g5", "k*g0*g5"), (4, 2), None),
]

_SETS = {s.key: s for s in GENERATOR_SETS}


def generator_claim(gs: GeneratorSet, ctx: ClaimContext):
    d = new_details()
    gens = _ev(gs.context, *gs.exprs)
    rep = verify_generators(gens)
    d["signatures"]["computed"] = _sig(rep.signature)
    d["signatures"]["expected"] = f"({gs.signature[0]},{gs.signature[1]})"
    d["ranks"]["generated"] = rep.generated_dimension
    d["ranks"]["ambient"] = rep.ambient_dimension
    d["checks"]["anticommute"] = rep.pairwise_anticommute
    d["checks"]["signature"] = rep.signature == Signature(*gs.signature)
    d["checks"]["full_dimension"] = rep.full_algebra
    d["notes"].append(f"pseudoscalar = {rep.pseudoscalar}")
    if gs.pseudoscalar:
        target = _ev(gs.context, gs.pseudoscalar)[0]
        factor = pseudoscalar_factor(rep.pseudoscalar, target)
        d["pseudoscalar_factor"][gs.pseudoscalar] = format_factor(factor)
        d["checks"]["pseudoscalar"] = factor is not None
    return _status(d), d


def top_degree_claim(ctx: ClaimContext):
    """Two of the three Cl(3,3) sets have g5 on top, the third has g0."""
    d = new_details()
    tops = {}
    for key in ("cl33-igamma", "cl33-gamma0", "cl33-gamma5"):
        gs = _SETS[key]
        gens = _ev(gs.context, *gs.exprs)
        ps = verify_generators(gens).pseudoscalar
        g0, g5 = _ev(gs.context, "g0", "g5")
        if pseudoscalar_factor(ps, g5) is not None:
            tops[key] = "g5"
            d["pseudoscalar_factor"][key] = format_factor(pseudoscalar_factor(ps, g5)) + "*g5"
        elif pseudoscalar_factor(ps, g0) is not None:
            tops[key] = "g0"
            d["pseudoscalar_factor"][key] = format_factor(pseudoscalar_factor(ps, g0)) + "*g0"
        else:
            tops[key] = "other"
    d["checks"]["two_g5"] = list(tops.values()).count("g5") == 2
    d["checks"]["one_g0"] = list(tops.values()).count("g0") == 1
    return _status(d), d


# ---------------------------------------------------------------------------
# C03 - C05: units, squares, rewriting

def unit_commutation_claim(ctx: ClaimContext):
    d = new_details()
    j, k, g5 = _ev("dirac-h", "j", "k", "g5")
    gammas = _ev("dirac-h", "g0", "g1", "g2", "g3")
    d["checks"]["j_k_commute_with_gammas"] = all(u * g == g * u for u in (j, k) for g in gammas)
    d["checks"]["j_k_anticommute_with_g5"] = all((u * g5 + g5 * u).is_zero() for u in (j, k))
    dirac = classify_table(Signature(1, 3))
    module = dirac.n * {"R": 1, "C": 2, "H": 4}[dirac.division_ring]
    d["factors"]["Cl(1,3)"] = str(dirac)
    d["ranks"]["minimal_real_module"] = module
    d["notes"].append(
        f"Cl(1,3) is {dirac}; its smallest faithful real module has dimension {module}, so no real 4x4 "
        "matrices with squares (-1,-1,-1,+1) exist; the quaternionic extension is modelled as the "
        "ring extension H (x) Cl(1,3) instead")
    return _status(d), d


def squares_claim(ctx: ClaimContext):
    d = new_details()
    minus = ("i", "j", "k", "i*g5")
    plus = ("g5", "j*g5", "k*g5")
    for text in minus + plus:
        x = _ev("dirac-h", text)[0]
        sq = x * x
        d["notes"].append(f"({text})^2 = {sq}")
        d["checks"][text] = sq == (-1 if text in minus else 1)
    return _status(d), d


def rewrite_claim(ctx: ClaimContext):
    d = new_details()
    pairs = [("g5", "i*g0*g1*g2*g3"), ("j*g5", "-k*g0*g1*g2*g3"), ("k*g5", "j*g0*g1*g2*g3")]
    for lhs, rhs in pairs:
        a, b = _ev("dirac-h", lhs, rhs)
        d["checks"][f"{lhs} = {rhs}"] = a == b
    return _status(d), d


# ---------------------------------------------------------------------------
# C06, C07: centralizers

def centralizer_claim(ctx: ClaimContext):
    d = new_details()
    desc = _ctx("dirac-h")
    gammas = _ev("dirac-h", "g0", "g1", "g2", "g3")
    even = even_subalgebra(gammas)
    cent = solve_commutant(even.rows, full_space(desc))
    d["ranks"]["even_Cl(1,3)"] = even.rank
    d["ranks"]["centralizer"] = cent.rank
    d["checks"]["rank_8"] = cent.rank == 8
    d["checks"]["sound"] = all(x * c == c * x for x in cent.rows for c in even.rows)
    triple = _ev("dirac-h", "j", "k", "g5")
    gen = generated_subalgebra(triple)
    d["checks"]["generated_by_j_k_g5"] = gen == cent
    iso = classify_empirical(cent)
    d["factors"]["centralizer"] = str(iso)
    d["checks"]["M(2,C)"] = iso == IsoClass(1, "C", 2)
    for label, exprs, want in (("j,k,g5", ("j", "k", "g5"), Signature(1, 2)),
                               ("j*g5,k*g5,g5", ("j*g5", "k*g5", "g5"), Signature(3, 0))):
        rep = verify_generators(_ev("dirac-h", *exprs))
        d["signatures"][label] = _sig(rep.signature)
        d["ranks"][label] = rep.generated_dimension
        d["checks"][f"{label} signature"] = rep.signature == want
        d["checks"][f"{label} spans centralizer"] = generated_subalgebra(_ev("dirac-h", *exprs)) == cent
    return _status(d), d


def electroweak_claim(ctx: ClaimContext):
    d = new_details()
    i, j, k, g5 = _ev("dirac-h", "i", "j", "k", "g5")
    su2 = echelonize([i, j, k])
    cent = solve_commutant([g5], su2)
    d["ranks"]["centralizer of g5 in span(i,j,k)"] = cent.rank
    d["checks"]["span(i)"] = cent == echelonize([i])
    return _status(d), d


def electroweak_literal_claim(ctx: ClaimContext):
    d = new_details()
    i, j, k, g5 = _ev("dirac-h", "i", "j", "k", "g5")
    su2 = echelonize([i, j, k])
    literal = solve_commutant([i * g5], su2)
    corrected = solve_commutant([g5], su2)
    d["ranks"]["centralizer of i*g5 in span(i,j,k)"] = literal.rank
    d["ranks"]["centralizer of g5 in span(i,j,k)"] = corrected.rank
    literal_ok = literal.rank == 1
    corrected_ok = corrected.rank == 1
    d["checks"]["literal: i*g5 commutes only with a U(1)"] = literal_ok
    d["checks"]["corrected: g5 commutes only with span(i)"] = corrected_ok
    d["notes"].append(f"i*g5 = {i * g5} commutes with each of i, j, k")
    return _discrepancy(literal_ok, corrected_ok), d


# ---------------------------------------------------------------------------
# C08, C09: quaternion ideals

CL03_TRIPLES = {
    "left": ("e1 + e2*e3", "e2 + e3*e1", "e3 + e1*e2"),
    "right": ("e1 + e3*e2", "e2 + e1*e3", "e3 + e2*e1"),
}


def cl03_ideals_claim(ctx: ClaimContext):
    d = new_details()
    full = full_space(_ctx("cl(0,3)"))
    ideals = {}
    for side, exprs in CL03_TRIPLES.items():
        triple = _ev("cl(0,3)", *exprs)
        S = generated_subalgebra(triple, adjoin_unit=False)
        ideals[side] = S
        d["ranks"][side] = S.rank
        d["checks"][f"{side} rank 4"] = S.rank == 4
        d["checks"][f"{side} two-sided ideal"] = is_two_sided_ideal(S, full)
        iso = classify_empirical(S)
        d["factors"][side] = str(iso)
        d["checks"][f"{side} is H"] = iso == IsoClass(1, "H", 1)
        q = check_quaternion_triple(*triple)
        d["checks"][f"{side} quaternion relations"] = q.ok
        d["notes"].append(f"{side} unit = {q.unit}")
    left, right = ideals["left"], ideals["right"]
    d["ranks"]["intersection"] = subspace_intersect(left, right).rank
    d["checks"]["intersect trivially"] = d["ranks"]["intersection"] == 0
    d["checks"]["commute elementwise"] = spaces_commute(left, right)
    d["checks"]["annihilate"] = spaces_annihilate(left, right)
    d["checks"]["sum is Cl(0,3)"] = subspace_sum(left, right) == full
    omega = _ev("cl(0,3)", "e1*e2*e3")[0]
    plus, minus = idempotent_split(full, omega)
    d["checks"]["split by e1*e2*e3"] = {plus, minus} == {left, right}
    L = lie_closure(_ev("cl(0,3)", *(CL03_TRIPLES["left"] + CL03_TRIPLES["right"])))
    verdict = killing_verdict(L)
    d["ranks"]["lie"] = L.dimension
    d["inertia"]["lie"] = list(verdict.inertia)
    d["checks"]["lie dimension 6"] = L.dimension == 6
    d["notes"].append(f"combined Lie algebra: {verdict}")
    return _status(d), d


CL40_GENS = ("g0", "i*g1", "i*g2", "i*g3")
CL40_TRIPLES = {
    "minus": ("g1*g2 + i*g0*g3", "g2*g3 + i*g0*g1", "g3*g1 + i*g0*g2"),
    "plus": ("g1*g2 - i*g0*g3", "g2*g3 - i*g0*g1", "g3*g1 - i*g0*g2"),
}
CL40_LITERAL = {
    "minus": ("g1*g2 + i*g0*g3", "g2*g3 + i*g0*g1", "g3*g1 + i*g2"),
    "plus": ("g1*g2 - i*g0*g3", "g2*g3 - i*g0*g1", "g3*g1 - i*g2"),
}


def _cl40_even():
    gens = _ev("dirac-c", *CL40_GENS)
    return gens, even_subalgebra(gens)


def _triple_in_ideal(exprs, even, ideal, unit_expected):
    triple = _ev("dirac-c", *exprs)
    inside = all(x in even for x in triple)
    q = check_quaternion_triple(*triple)
    ok = inside and q.ok and q.unit == unit_expected
    if ok:
        ok = generated_subalgebra(triple, adjoin_unit=False) == ideal
    return ok, inside, q


def cl40_split_claim(ctx: ClaimContext):
    d = new_details()
    gens, even = _cl40_even()
    rep = verify_generators(gens)
    one, g5 = _ev("dirac-c", "1", "g5")
    d["signatures"]["g0,i*g1,i*g2,i*g3"] = _sig(rep.signature)
    d["checks"]["signature (4,0)"] = rep.signature == Signature(4, 0)
    factor = pseudoscalar_factor(rep.pseudoscalar, g5)
    d["pseudoscalar_factor"]["g5"] = format_factor(factor)
    d["checks"]["pseudoscalar g5"] = factor is not None
    d["ranks"]["even"] = even.rank
    iso = classify_empirical(even)
    d["factors"]["even"] = str(iso)
    d["checks"]["even is H+H"] = iso == IsoClass(2, "H", 1)
    plus, minus = idempotent_split(even, g5)
    ideals = {"plus": plus, "minus": minus}
    units = {"plus": (one + g5) / 2, "minus": (one - g5) / 2}
    for side in ("plus", "minus"):
        d["ranks"][side] = ideals[side].rank
        d["factors"][side] = str(classify_empirical(ideals[side]))
        ok, _, _ = _triple_in_ideal(CL40_TRIPLES[side], even, ideals[side], units[side])
        d["checks"][f"{side} triple generates (1{'+' if side == 'plus' else '-'}g5)/2 ideal"] = ok
    return _status(d), d


def cl40_literal_claim(ctx: ClaimContext):
    d = new_details()
    gens, even = _cl40_even()
    one, g5 = _ev("dirac-c", "1", "g5")
    plus, minus = idempotent_split(even, g5)
    ideals = {"plus": plus, "minus": minus}
    units = {"plus": (one + g5) / 2, "minus": (one - g5) / 2}
    literal_ok = corrected_ok = True
    for side in ("plus", "minus"):
        ok_lit, inside, q = _triple_in_ideal(CL40_LITERAL[side], even, ideals[side], units[side])
        ok_cor, _, _ = _triple_in_ideal(CL40_TRIPLES[side], even, ideals[side], units[side])
        literal_ok &= ok_lit
        corrected_ok &= ok_cor
        third = _ev("dirac-c", CL40_LITERAL[side][2])[0]
        d["notes"].append(f"literal third element {CL40_LITERAL[side][2]}: square = {third * third}, "
                          f"in even part: {third in even}; {q.reason or 'relations hold'}")
    d["checks"]["literal triples"] = literal_ok
    d["checks"]["corrected triples (i*g0*g2 in place of i*g2)"] = corrected_ok
    return _discrepancy(literal_ok, corrected_ok), d


# ---------------------------------------------------------------------------
# C10, C11: pseudoscalars and even parts

def pseudoscalar_square_claim(ctx: ClaimContext):
    d = new_details()
    cases = {
        "g0*g1*g2*g3 in Cl(1,3)": _ev("dirac-h", "g0*g1*g2*g3")[0],
        "(i*g0)(i*g1)(i*g2)(i*g3) in Cl(3,1)": _ev("dirac-h", "i*g0*i*g1*i*g2*i*g3")[0],
        "e1*e2*e3*e4 in cl(1,3)": _ev("cl(1,3)", "e1*e2*e3*e4")[0],
        "e1*e2*e3*e4 in cl(3,1)": _ev("cl(3,1)", "e1*e2*e3*e4")[0],
    }
    for label, x in cases.items():
        d["checks"][f"{label} squares to -1"] = x * x == -1
    g5 = _ev("dirac-h", "g5")[0]
    d["checks"]["g5 squares to +1"] = g5 * g5 == 1
    return _status(d), d


def even_parts_claim(ctx: ClaimContext):
    d = new_details()
    M2C = IsoClass(1, "C", 2)
    cases = {
        "even Cl(3,1) from i*g_mu": (even_subalgebra(_ev("dirac-c", "i*g0", "i*g1", "i*g2", "i*g3")), M2C),
        "even Cl(1,3) from g_mu": (even_subalgebra(_ev("dirac-c", "g0", "g1", "g2", "g3")), M2C),
        "even cl(3,1)": (even_part(_ctx("cl(3,1)")), M2C),
        "even cl(1,3)": (even_part(_ctx("cl(1,3)")), M2C),
        "even cl(4,0)": (even_part(_ctx("cl(4,0)")), IsoClass(2, "H", 1)),
    }
    for label, (S, want) in cases.items():
        iso = classify_empirical(S)
        d["ranks"][label] = S.rank
        d["factors"][label] = str(iso)
        d["checks"][label] = iso == want
    one, w = _ev("cl(0,3)", "1", "e1*e2*e3")
    p, m = (one + w) / 2, (one - w) / 2
    d["checks"]["(1+e123)/2 idempotent"] = p * p == p
    d["checks"]["(1-e123)/2 idempotent"] = m * m == m
    d["checks"]["orthogonal"] = (p * m).is_zero() and (m * p).is_zero()
    d["checks"]["complete"] = p + m == 1
    return _status(d), d


# ---------------------------------------------------------------------------
# C12, C13: parameter count and chirality

LEFT_LABELS = ("g3", "g1*g2", "g1*g2*g3")
RIGHT_LABELS = ("i", "j", "k", "g5", "i*g5", "j*g5", "k*g5")
PSEUDO_LABELS = ("g5", "g5*i", "g5*j", "g5*k")
TRIPLET = ("g1*g2", "g2*g3", "g3*g1")


def parameter_claim(ctx: ClaimContext):
    d = new_details()
    main = _ev("dirac-h", *(f"{a}*{b}" for a in LEFT_LABELS for b in RIGHT_LABELS))
    pseudo = _ev("dirac-h", *PSEUDO_LABELS)
    triplet = _ev("dirac-h", *TRIPLET)
    ranks = {
        "3x7 products": echelonize(main).rank,
        "g5 * {1,i,j,k}": echelonize(pseudo).rank,
        "all 25": echelonize(main + pseudo).rank,
        "25 + spin triplet": echelonize(main + pseudo + triplet).rank,
    }
    d["ranks"].update(ranks)
    for (label, got), want in zip(ranks.items(), (21, 4, 25, 28)):
        d["checks"][f"{label} rank {want}"] = got == want
    return _status(d), d


def chirality_claim(ctx: ClaimContext):
    d = new_details()
    gammas = _ev("dirac-h", "g0", "g1", "g2", "g3")
    ig5, i, j, k = _ev("dirac-h", "i*g5", "i", "j", "k")
    d["checks"]["i*g5 anticommutes with each g_mu"] = all((ig5 * g + g * ig5).is_zero() for g in gammas)
    d["checks"]["i, j, k commute with each g_mu"] = all(u * g == g * u for u in (i, j, k) for g in gammas)
    d["checks"]["g_mu pairwise anticommute"] = all(
        (a * b + b * a).is_zero() for n, a in enumerate(gammas) for b in gammas[n + 1:])
    return _status(d), d


# ---------------------------------------------------------------------------
# C14: real forms of the spin Lie algebras

def killing_claim(context: str, exprs, expected_name: str, expected_inertia, ctx: ClaimContext):
    d = new_details()
    L = bivector_algebra(_ev(context, *exprs))
    verdict = killing_verdict(L)
    B = killing_matrix(L)
    d["ranks"]["lie"] = L.dimension
    d["inertia"]["killing"] = list(verdict.inertia)
    d["factors"]["real_form"] = verdict.name or "UNKNOWN_FORM"
    d["checks"]["dimension 15"] = L.dimension == 15
    d["checks"]["inertia"] = verdict.inertia == tuple(expected_inertia)
    d["checks"]["name"] = verdict.name == expected_name
    d["checks"]["symmetric"] = all(B[r][s] == B[s][r] for r in range(len(B)) for s in range(len(B)))
    d["checks"]["jacobi"] = jacobi_holds(L)
    return _status(d), d


def sl2c_claim(ctx: ClaimContext):
    d = new_details()
    desc = _ctx("cl(3,0)")
    nonscalar = [Multivector.blade(desc, m) for m in range(1, 8)]
    L = lie_closure(nonscalar)
    D = derived_algebra(L)
    outer, inner = killing_verdict(L), killing_verdict(D)
    d["ranks"]["non-scalar part"] = L.dimension
    d["ranks"]["derived"] = D.dimension
    d["inertia"]["non-scalar part"] = [*outer.inertia, outer.nullity]
    d["inertia"]["derived"] = list(inner.inertia)
    d["factors"]["real_form"] = inner.name or "UNKNOWN_FORM"
    d["checks"]["sl(2,C)"] = inner.name == "sl(2,C)"
    d["notes"].append("the non-scalar part has the central element e1*e2*e3; its derived algebra is traceless")
    return _status(d), d


# ---------------------------------------------------------------------------
# C15, C16: larger algebras

def cl32_split_claim(ctx: ClaimContext):
    d = new_details()
    full_set = _SETS["cl33-gamma5"].exprs
    chosen = None
    for drop in range(len(full_set)):
        exprs = full_set[:drop] + full_set[drop + 1:]
        rep = verify_generators(_ev("dirac-h", *exprs))
        if rep.signature == Signature(3, 2):
            chosen = exprs, rep
            break
    d["checks"]["found (3,2) subset"] = chosen is not None
    if chosen is None:
        return FAIL, d
    exprs, rep = chosen
    d["notes"].append("generators: " + ", ".join(exprs))
    d["signatures"]["subset"] = _sig(rep.signature)
    S = generated_subalgebra(_ev("dirac-h", *exprs))
    d["ranks"]["Cl(3,2)"] = S.rank
    iso = classify_empirical(S)
    d["factors"]["Cl(3,2)"] = str(iso)
    d["factors"]["table"] = str(classify_table(Signature(3, 2)))
    d["checks"]["2 x M(4,R)"] = iso == IsoClass(2, "R", 4) == classify_table(Signature(3, 2))
    omega = rep.pseudoscalar
    d["notes"].append(f"pseudoscalar = {omega}")
    plus, minus = idempotent_split(S, omega)
    d["ranks"]["plus"], d["ranks"]["minus"] = plus.rank, minus.rank
    d["checks"]["ranks 16"] = plus.rank == minus.rank == 16
    for side, ideal in (("plus", plus), ("minus", minus)):
        iso = classify_empirical(ideal)
        d["factors"][side] = str(iso)
        d["checks"][f"{side} is M(4,R)"] = iso == IsoClass(1, "R", 4)
    d["checks"]["commute elementwise"] = spaces_commute(plus, minus)
    d["checks"]["annihilate"] = spaces_annihilate(plus, minus)
    return _status(d), d


def cl43_claim(ctx: ClaimContext):
    d = new_details()
    t43 = classify_table(Signature(4, 3))
    e43 = classify_empirical(full_space(_ctx("cl(4,3)")))
    t44 = classify_table(Signature(4, 4))
    e44 = classify_empirical(full_space(_ctx("cl(4,4)")))
    d["factors"].update({"Cl(4,3) table": str(t43), "Cl(4,3) empirical": str(e43),
                         "Cl(4,4) table": str(t44), "Cl(4,4) empirical": str(e44)})
    d["checks"]["Cl(4,3) = 2 x M(8,R)"] = t43 == e43 == IsoClass(2, "R", 8)
    d["checks"]["Cl(4,4) table = empirical"] = t44 == e44
    return _status(d), d


def cl23_claim(ctx: ClaimContext):
    d = new_details()
    table = classify_table(Signature(2, 3))
    S = generated_subalgebra(_ev("dirac-c", *_SETS["cl23"].exprs))
    emp = classify_empirical(S)
    d["ranks"]["generated"] = S.rank
    d["factors"]["table"] = str(table)
    d["factors"]["empirical"] = str(emp)
    d["checks"]["M(4,C)"] = table == emp == IsoClass(1, "C", 4)
    return _status(d), d


# ---------------------------------------------------------------------------
# C17: numerical exponentials (seeded)

def spin_claim(context: str, expr: str, offset: int, ctx: ClaimContext):
    d = new_details()
    b = _ev(context, expr)[0]
    rep = spin_action_report(b, trials=100, tol=ctx.tol, seed=ctx.seed + offset)
    d["ranks"]["trials"] = rep.trials
    d["checks"]["inverse is reverse"] = rep.max_inverse_error <= ctx.tol
    d["checks"]["vectors stay vectors"] = rep.max_grade_leak <= ctx.tol
    d["checks"]["quadratic form preserved"] = rep.max_form_error <= ctx.tol
    return _status(d), d


def ideal_spin_claim(ctx: ClaimContext):
    d = new_details()
    for n, (side, exprs) in enumerate(CL03_TRIPLES.items()):
        triple = _ev("cl(0,3)", *exprs)
        unit = internal_unit(generated_subalgebra(triple, adjoin_unit=False))
        rep = ideal_spin_report(triple, unit, trials=100, tol=ctx.tol, seed=ctx.seed + 10 + n)
        d["ranks"][f"{side} trials"] = rep.trials
        d["checks"][side] = rep.ok
        d["notes"].extend(rep.notes)
    return _status(d), d


def exp_inverse_claim(ctx: ClaimContext):
    import numpy as np

    d = new_details()
    desc = _ctx("dirac-h")
    rng = np.random.default_rng(ctx.seed + 20)
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    worst_ok = True
    samples = 20
    for _ in range(samples):
        terms = {}
        for a, b in pairs:
            for unit in range(4):
                if rng.random() < 0.3:
                    terms[desc.key(unit, (1 << a) | (1 << b))] = float(rng.uniform(-2.0, 2.0))
        from .lie import FloatMultivector

        v = np.zeros(desc.dimension)
        for k, c in terms.items():
            v[k] = c
        err = exp_inverse_error(FloatMultivector(desc, v))
        worst_ok &= err <= 1e-8
    d["ranks"]["samples"] = samples
    d["checks"]["exp(x) exp(-x) = 1 within 1e-8"] = worst_ok
    return _status(d), d


# ---------------------------------------------------------------------------
# catalogue

def _build_catalogue() -> list[Claim]:
    out = []
    for (p, q), iso in STATED_CLASSES:
        out.append(Claim(f"C01-Cl({p},{q})", f"Cl({p},{q}) is {iso}", f"Cl({p},{q}) ≅ {iso}",
                         partial(classification_claim, p, q, iso)))
    for gs in GENERATOR_SETS:
        out.append(Claim(f"C02-{gs.key}",
                         f"{{{', '.join(gs.exprs)}}} in {gs.context} has signature {gs.signature}",
                         gs.anchor, partial(generator_claim, gs)))
    out += [
        Claim("C02-top-degree", "two Cl(3,3) sets have g5 in top degree, one has g0",
              "pseudoscalars ∝ γ5, γ5, γ0", top_degree_claim),
        Claim("C03-units", "j, k commute with the gammas and anticommute with g5",
              "[j,γμ] = [k,γμ] = 0, {j,γ5} = {k,γ5} = 0",
              unit_commutation_claim),
        Claim("C04-squares", "i, j, k, i*g5 square to -1; g5, j*g5, k*g5 square to +1",
              "i² = j² = k² = (iγ5)² = -1", squares_claim),
        Claim("C05-rewrite", "g5, j*g5, k*g5 are i, -k, j times g0*g1*g2*g3",
              "γ5 = iγ0γ1γ2γ3", rewrite_claim),
        Claim("C06-centralizer", "centralizer of even Cl(1,3) in H(x)Cl(1,3) is M(2,C), rank 8",
              "C(Cl⁺(1,3)) = <j, k, γ5>", centralizer_claim),
        Claim("C07-centralizer", "centralizer of g5 in span(i,j,k) is span(i)",
              "C_su(2)(γ5) = u(1)", electroweak_claim),
        Claim("C07-literal", "U(1) generated by i*g5 commutes only with a U(1) in span(i,j,k)",
              "C_su(2)(iγ5) = u(1)", electroweak_literal_claim,
              DISCREPANCY),
        Claim("C08-ideals", "the two Cl(0,3) triples generate commuting quaternion ideals",
              "Cl(0,3) ≅ H ⊕ H", cl03_ideals_claim),
        Claim("C09-split", "corrected triples split even Cl(4,0) by (1 +- g5)/2",
              "Cl⁺(4,0) = (1+γ5)/2 Cl⁺ ⊕ (1-γ5)/2 Cl⁺", cl40_split_claim),
        Claim("C09-literal", "triples as printed satisfy the quaternion relations",
              "γ3γ1 + iγ2", cl40_literal_claim, DISCREPANCY),
        Claim("C10-pseudoscalars", "g0g1g2g3 squares to -1, g5 to +1",
              "(γ0γ1γ2γ3)² = -1", pseudoscalar_square_claim),
        Claim("C11-even-parts", "even parts of Cl(3,1), Cl(1,3) are M(2,C); of Cl(4,0) is H+H",
              "Cl⁺(3,1) ≅ Cl⁺(1,3) ≅ M(2,C)", even_parts_claim),
        Claim("C12-parameters", "parameter labels have ranks 21, 4, 25 and 28 with the triplet",
              "3 × 7 + 4 = 25", parameter_claim),
        Claim("C13-chirality", "i*g5 anticommutes with g_mu; i, j, k commute with g_mu",
              "{iγ5, γμ} = 0", chirality_claim),
        Claim("C14-sl4r", "Spin(3,3) Lie algebra is sl(4,R)", "Spin(3,3) ≅ SL(4,R)",
              partial(killing_claim, "dirac-h", _SETS["cl33-igamma"].exprs, "sl(4,R)", (9, 6))),
        Claim("C14-su4", "Spin(0,6) Lie algebra is su(4)", "Spin(0,6) ≅ SU(4)",
              partial(killing_claim, "dirac-h", _SETS["cl06"].exprs, "su(4)", (0, 15))),
        Claim("C14-su22", "Spin(4,2) Lie algebra is su(2,2)", "Spin(4,2) ≅ SU(2,2)",
              partial(killing_claim, "dirac-h", _SETS["cl42"].exprs, "su(2,2)", (8, 7))),
        Claim("C14-sl2h", "Spin(5,1) Lie algebra is sl(2,H)", "Spin(5,1) ≅ SL(2,H)",
              partial(killing_claim, "cl(5,1)", ("e1", "e2", "e3", "e4", "e5", "e6"), "sl(2,H)", (5, 10))),
        Claim("C14-sl2c", "traceless part of Cl(3,0) under the commutator is sl(2,C)",
              "SL(2,C) ⊂ Cl(3,0)", sl2c_claim),
        Claim("C15-cl32-split", "Cl(3,2) inside Cl(3,3) splits into two commuting M(4,R)",
              "Cl(3,2) ≅ M(4,R) ⊕ M(4,R)", cl32_split_claim),
        Claim("C15-cl43", "Cl(4,3) is two copies of M(8,R)",
              "Cl(4,3) ≅ M(8,R) ⊕ M(8,R)", cl43_claim),
        Claim("C16-cl23", "Cl(2,3) is M(4,C)", "Cl(2,3) ≅ M(4,C)", cl23_claim),
        Claim("C17-spin-rotation", "exp(g1*g2/2) acts on vectors as a rotation",
              "g = exp(B), g v g⁻¹ ∈ V", partial(spin_claim, "dirac-c", "g1*g2/2", 0)),
        Claim("C17-spin-boost", "exp(g0*g1/2) acts on vectors as a boost",
              "g = exp(B), g v g⁻¹ ∈ V", partial(spin_claim, "dirac-c", "g0*g1/2", 1)),
        Claim("C17-spin-ideals", "exponentials of the Cl(0,3) ideal generators",
              "g = exp(B), g v g⁻¹ ∈ V", ideal_spin_claim),
        Claim("C17-exp-inverse", "exp(x) exp(-x) = 1 for random bivectors",
              "g = exp(B), g v g⁻¹ ∈ V", exp_inverse_claim),
    ]
    ids = [c.id for c in out]
    assert len(ids) == len(set(ids)), "duplicate claim ids"
    return out


CATALOGUE: list[Claim] = _build_catalogue()
_BY_ID = {c.id: c for c in CATALOGUE}


def select(filter: str | None = None) -> list[Claim]:
    return [c for c in CATALOGUE if not filter or c.id.startswith(filter)]


def run_claim(claim: Claim | str, seed: int = 42, tol: float = 1e-9) -> ClaimResult:
    if isinstance(claim, str):
        claim = _BY_ID[claim]
    ctx = ClaimContext(seed, tol)
    try:
        status, details = claim.program(ctx)
    except CliffordError as exc:
        status, details = FAIL, new_details()
        details["notes"].append(f"{exc.code}: {exc}")
    except Exception as exc:  # a broken program is a failed claim, not a crashed run
        status, details = FAIL, new_details()
        details["notes"].append(f"internal error: {exc!r}")
        details["notes"].append(traceback.format_exc(limit=3))
    return ClaimResult(claim.id, status, claim.expected, claim.description, claim.paper_ref, details)


def _run_by_id(args):
    claim_id, seed, tol = args
    return run_claim(claim_id, seed, tol)


def run_claims(filter: str | None = None, seed: int = 42, tol: float = 1e-9, jobs: int = 1) -> list[ClaimResult]:
    """Run the catalogue (or the claims whose id starts with ``filter``)."""
    chosen = select(filter)
    if jobs > 1 and len(chosen) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_by_id, [(c.id, seed, tol) for c in chosen]))
    else:
        results = [run_claim(c, seed, tol) for c in chosen]
    return sorted(results, key=lambda r: r.id)
