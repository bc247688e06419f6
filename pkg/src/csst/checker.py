"""Decision procedures for transversal T on stabilizer and CSS codes.

For a stabilizer group ``S`` and an element with X part ``a``, the relevant
objects are

* ``Z_a``: the Z-type stabilizer vectors supported inside ``supp(a)``,
* ``Z~_a``: the same space punctured to the ``w(a)`` coordinates of ``a``,
* ``D_a = (Z~_a)^perp`` in that punctured ambient space.

Transversal T can preserve the code only if ``w(a)`` is even, ``D_a`` lies in
``Z~_a``, and ``E(0, z)`` appears in ``S`` with sign ``i^w(z)`` for every ``z``
in ``D_a``.  It does preserve the code if, in addition, some self-dual
``A_a`` between ``D_a`` and ``Z~_a`` carries those signs on all its words.
All conditions depend only on ``a``, so elements are grouped by X part.
"""

from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable

from .codes import LinearCode, is_even
from .gf2 import (
    BitMatrix,
    BitVector,
    complement_basis,
    intersect,
    kernel,
    lift,
    puncture,
    rank,
    reduce_vector,
    rref,
    shorten_to_support,
    span_contains,
)
from .pauli import (
    PauliOperator,
    StabilizerCode,
    enumerate_elements,
    format_pauli,
    is_nondegenerate,
    multiply,
    stabilizer_distance,
)

log = logging.getLogger(__name__)

WITNESS_BUDGET = 10 ** 6
MAX_PAIR_DIM = 20


class Mode(str, Enum):
    NECESSARY = "necessary"
    SUFFICIENT = "sufficient"


class WitnessBudgetExceeded(RuntimeError):
    """The self-dual witness search ran out of budget; this is not a 'no witness' verdict."""


class CssifyError(ValueError):
    pass


# --- Z-type subgroup -------------------------------------------------------

class ZGroup:
    """The Z-type elements ``eps_z E(0, z)`` of a stabilizer group.

    Signs form a character of the vector space: ``E(0, y) E(0, z) = E(0, y + z)``
    with no extra phase, so a sign is the product of the signs of the basis
    words it is built from.
    """

    def __init__(self, S: StabilizerCode):
        self.n = S.n
        gens = S.generators
        xs = BitMatrix(S.n, tuple(g.a.bits for g in gens))
        # coefficient vectors over the generators whose X parts cancel
        combos = kernel(xs.transpose()) if gens else BitMatrix(0, ())
        elems = []
        for c in combos.rows:
            P = PauliOperator.identity(S.n)
            for i, g in enumerate(gens):
                if (c >> i) & 1:
                    P = multiply(P, g)
            elems.append(P)
        rows: list[tuple[int, int]] = []
        for col in range(S.n):
            bit = 1 << col
            hit = next((i for i in range(len(rows), len(elems)) if elems[i].b.bits & bit), None)
            if hit is None:
                continue
            top = len(rows)
            elems[top], elems[hit] = elems[hit], elems[top]
            for i in range(len(elems)):
                if i != top and elems[i].b.bits & bit:
                    elems[i] = multiply(elems[i], elems[top])
            rows.append((col, 0))
        self.elements = elems[:len(rows)]
        self.pivots = [c for c, _ in rows]
        self.basis = BitMatrix(S.n, tuple(P.b.bits for P in self.elements))

    @property
    def dim(self) -> int:
        return self.basis.r

    def sign_exponent(self, z: int) -> int | None:
        """``kappa`` with ``i^kappa E(0, z)`` in ``S``, or None when ``z`` is not a Z-type stabilizer."""
        kappa = 0
        for P, p in zip(self.elements, self.pivots):
            if (z >> p) & 1:
                z ^= P.b.bits
                kappa += P.kappa
        return kappa % 4 if z == 0 else None


# --- per-support linear algebra --------------------------------------------

def compute_Zj(S: StabilizerCode, a_j: BitVector, zgroup: ZGroup | None = None) -> BitMatrix:
    """Basis of the Z-type stabilizer vectors ``z <= a_j``."""
    zgroup = zgroup or ZGroup(S)
    return shorten_to_support(zgroup.basis, a_j)


def dual_containment_on_support(Zj: BitMatrix, a_j: BitVector) -> tuple[bool, BitMatrix]:
    """Whether ``Z~_j`` contains its own dual in the ``w(a_j)``-dimensional space.

    Returns the verdict and the dual basis lifted back to length ``n``.
    """
    if any(z & ~a_j.bits for z in Zj.rows):
        raise ValueError("Zj has words outside the support of a_j")
    Zp = puncture(Zj, a_j)
    D = kernel(Zp)
    return span_contains(Zp, D), lift(D, a_j)


def find_self_dual_subcode(Zj_punctured: BitMatrix,
                           seed: BitMatrix | None = None,
                           singular: Callable[[int], bool] | None = None,
                           budget: int = WITNESS_BUDGET) -> BitMatrix | None:
    """A self-dual code inside ``Zj_punctured`` (dimension ``w / 2``), or None.

    The code is grown one vector at a time from ``seed`` (default: the dual of
    ``Zj_punctured``), each new vector even, orthogonal to the span so far and
    accepted by ``singular``.  Every maximal subspace built this way has the
    same dimension, so one greedy pass decides existence; ``budget`` caps the
    candidate vectors examined while looking for the next extension.
    """
    Z = Zj_punctured
    w = Z.n
    if w % 2:
        raise ValueError(f"ambient dimension {w} is odd")
    if seed is None:
        seed = kernel(Z)
    if not span_contains(Z, seed):
        return None
    accept = singular or (lambda z: True)
    A, dim, _ = rref(seed)
    if any(r.bit_count() & 1 for r in A.rows):
        return None
    if any((x & y).bit_count() & 1 for x, y in itertools.combinations(A.rows, 2)):
        return None
    if not all(accept(r) for r in A.rows):
        return None
    examined = 0
    while dim < w // 2:
        C = intersect(kernel(A), Z) if A.r else rref(Z)[0]
        extra = complement_basis(C, A).rows
        found = None
        z = 0
        # Gray-code walk over combinations of the complement vectors
        for i in range(1, 1 << len(extra)):
            z ^= extra[(i & -i).bit_length() - 1]
            examined += 1
            if examined > budget:
                raise WitnessBudgetExceeded(f"witness search exceeded budget of {budget} candidates")
            if z.bit_count() % 2 == 0 and accept(z):
                found = z
                break
        if found is None:
            return None
        A, dim, _ = rref(A.append(BitVector(w, found)))
    return A


# --- preservation check ----------------------------------------------------

@dataclass
class ElementRecord:
    element: int
    a: str
    multiplicity: int
    condition1: bool
    zj_dim: int | None = None
    dual_containment: bool | None = None
    dual_basis: list[str] | None = None
    A_basis: list[str] | None = None
    sign_condition: bool | None = None
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return bool(self.condition1 and self.dual_containment and self.sign_condition)


@dataclass
class Theorem1Report:
    passed: bool
    mode: str
    n: int
    k: int
    per_element: list[ElementRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "mode": self.mode, "n": self.n, "k": self.k,
                "per_element": [asdict(r) | {"passed": r.passed} for r in self.per_element]}

    def failures(self) -> list[ElementRecord]:
        return [r for r in self.per_element if not r.passed]


def _x_part_basis(S: StabilizerCode) -> list[tuple[int, int]]:
    """``(generator mask, x part)`` pairs whose x parts form a basis of the X-part space."""
    picked: list[tuple[int, int]] = []
    rows: list[int] = []
    pivots: list[int] = []
    for i, g in enumerate(S.generators):
        red = reduce_vector(BitMatrix(S.n, tuple(rows)), pivots, g.a.bits)
        if red:
            picked.append((1 << i, g.a.bits))
            R, _, pivots = rref(BitMatrix(S.n, tuple(rows) + (red,)))
            rows = list(R.rows)
    return picked


def _sign_matches(zgroup: ZGroup, z: int) -> str | None:
    """None when ``i^w(z) E(0, z)`` is in ``S``; otherwise what went wrong."""
    n = zgroup.n
    w = z.bit_count()
    kappa = zgroup.sign_exponent(z)
    if kappa is None:
        return f"E(0,{BitVector(n, z)}) is not in the stabilizer"
    if w % 2:
        return f"i^{w} E(0,{BitVector(n, z)}) is not Hermitian (odd weight)"
    if kappa != w % 4:
        have = "+" if kappa == 0 else "-"
        want = "+" if w % 4 == 0 else "-"
        return f"sign of E(0,{BitVector(n, z)}) is {have}, needs {want} = i^{w}"
    return None


def check_theorem1(S: StabilizerCode, mode: Mode | str = Mode.NECESSARY) -> Theorem1Report:
    mode = Mode(mode)
    if S.r > 24:
        raise ValueError("element table too large (r > 24)")
    zgroup = ZGroup(S)
    basis = _x_part_basis(S)
    mult = 1 << zgroup.dim
    report = Theorem1Report(True, mode.value, S.n, S.k)
    for sel in range(1, 1 << len(basis)):
        mask = a = 0
        for i, (gm, x) in enumerate(basis):
            if (sel >> i) & 1:
                mask |= gm
                a ^= x
        av = BitVector(S.n, a)
        rec = ElementRecord(element=mask, a=str(av), multiplicity=mult, condition1=av.weight() % 2 == 0)
        report.per_element.append(rec)
        if not rec.condition1:
            rec.failure = f"w_H(a) = {av.weight()} is odd"
            continue
        Zj = shorten_to_support(zgroup.basis, av)
        rec.zj_dim = Zj.r
        ok, D = dual_containment_on_support(Zj, av)
        rec.dual_containment = ok
        rec.dual_basis = [str(v) for v in D.vectors()]
        problems = [p for p in (_sign_matches(zgroup, z) for z in D.rows) if p]
        # D is self-orthogonal once contained, so i^w(z) and the sign are both
        # characters on D and a basis check covers every word
        if not ok:
            rec.failure = "Z_j does not contain its dual on supp(a_j)"
            rec.sign_condition = not problems
            continue
        if problems:
            rec.sign_condition = False
            rec.failure = problems[0]
            continue
        Zp = puncture(Zj, av)
        if mode is Mode.NECESSARY:
            A = find_self_dual_subcode(Zp)
            rec.sign_condition = True
        else:
            def singular(z: int, av=av) -> bool:
                full = lift(BitMatrix(av.weight(), (z,)), av).rows[0]
                return _sign_matches(zgroup, full) is None

            A = find_self_dual_subcode(Zp, seed=kernel(Zp), singular=singular)
            rec.sign_condition = A is not None
            if A is None:
                rec.failure = "no self-dual A_j in Z_j carries the signs i^w(z)"
        if A is not None:
            rec.A_basis = [str(v) for v in lift(A, av).vectors()]
    report.passed = all(r.passed for r in report.per_element)
    return report


# --- CSS-T pairs -----------------------------------------------------------

@dataclass
class CodewordRecord:
    x: str
    self_dual_found: bool
    C_x: list[str] | None = None


@dataclass
class CssTPairReport:
    passed: bool
    even_c2: bool
    n: int
    k: int
    per_codeword: list[CodewordRecord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def self_dual_code_on(C1_dual: BitMatrix, x: int, n: int) -> BitMatrix | None:
    """A ``w(x)/2``-dimensional self-dual code inside ``C1^perp`` supported on ``x``, lifted to length n."""
    xv = BitVector(n, x)
    Zp = puncture(shorten_to_support(C1_dual, xv), xv)
    if xv.weight() % 2:
        return None
    A = find_self_dual_subcode(Zp)
    return None if A is None else lift(A, xv)


def check_css_t_pair(C1: LinearCode, C2: LinearCode, stop_early: bool = False) -> CssTPairReport:
    if C1.n != C2.n:
        raise ValueError("length mismatch")
    if not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    if C2.k > MAX_PAIR_DIM:
        raise ValueError(f"C2 dimension {C2.k} exceeds the enumeration limit {MAX_PAIR_DIM}")
    even = is_even(C2)
    report = CssTPairReport(even, even, C1.n, C1.k - C2.k)
    if not even and stop_early:
        return report
    D = C1.dual_gen
    for x in C2.codewords():
        A = self_dual_code_on(D, x, C1.n)
        report.per_codeword.append(CodewordRecord(
            str(BitVector(C1.n, x)), A is not None,
            None if A is None else [str(v) for v in A.vectors()]))
        if A is None:
            report.passed = False
            if stop_early:
                break
    return report


def is_css_t_pair(C1: LinearCode, C2: LinearCode) -> bool:
    return check_css_t_pair(C1, C2, stop_early=True).passed


# --- CSS-ification ---------------------------------------------------------

def canonical_generators(S: StabilizerCode) -> tuple[list[PauliOperator], list[PauliOperator]]:
    """Split ``S`` into (Z-type generators, generators with nonzero X part).

    X parts are row reduced first; the Z parts of the X-carrying generators are
    then reduced modulo the Z-type subgroup, so a generator comes out mixed
    only when no stabilizer multiple makes it pure X.  Signs are tracked.
    """
    n = S.n
    elems = list(S.generators)
    top = 0
    for col in range(n):
        bit = 1 << col
        hit = next((i for i in range(top, len(elems)) if elems[i].a.bits & bit), None)
        if hit is None:
            continue
        elems[top], elems[hit] = elems[hit], elems[top]
        for i in range(len(elems)):
            if i != top and elems[i].a.bits & bit:
                elems[i] = multiply(elems[i], elems[top])
        top += 1
    xrows, zrows = elems[:top], elems[top:]
    # RREF of the Z block, then clear its pivots from the X-carrying rows
    ztop = 0
    pivots = []
    for col in range(n):
        bit = 1 << col
        hit = next((i for i in range(ztop, len(zrows)) if zrows[i].b.bits & bit), None)
        if hit is None:
            continue
        zrows[ztop], zrows[hit] = zrows[hit], zrows[ztop]
        for i in range(len(zrows)):
            if i != ztop and zrows[i].b.bits & bit:
                zrows[i] = multiply(zrows[i], zrows[ztop])
        pivots.append(col)
        ztop += 1
    for i, P in enumerate(xrows):
        for Z, p in zip(zrows, pivots):
            if (P.b.bits >> p) & 1:
                P = multiply(P, Z)
        xrows[i] = P
    return zrows, xrows


def cssify(S: StabilizerCode, check_degeneracy: bool = True) -> StabilizerCode:
    """Replace every mixed generator ``eps E(a, b)`` by ``eps E(a, 0)``.

    Output lists the Z block first.  The construction is guaranteed only for
    non-degenerate codes; a degenerate input draws a warning and is still
    attempted.
    """
    if check_degeneracy:
        try:
            d = stabilizer_distance(S) if S.k else None
        except ValueError:
            d = None
        if d is not None and not is_nondegenerate(S, d):
            warnings.warn("input code is degenerate; CSS-ification is not guaranteed "
                          "to preserve transversal T", stacklevel=2)
    zrows, xrows = canonical_generators(S)
    out = list(zrows)
    for P in xrows:
        if P.kappa % 2:
            raise CssifyError(f"non-Hermitian canonical generator {format_pauli(P)}")
        out.append(PauliOperator(P.a, BitVector.zeros(S.n), P.kappa))
    try:
        return StabilizerCode(S.n, tuple(out))
    except ValueError as exc:
        raise CssifyError(f"CSS-ified generators are invalid ({exc}); "
                          "the non-degeneracy hypothesis is likely unmet") from exc


# --- signs for CSS-T pairs -------------------------------------------------

def signed_css_stabilizer(C1: LinearCode, C2: LinearCode, offset: int = 0) -> StabilizerCode:
    """CSS code with X generators from ``C2`` and Z generators ``(-1)^(z . offset) E(0, z)`` from ``C1^perp``."""
    n = C1.n
    gens = [PauliOperator.from_bits(n, x, 0) for x in C2.gen.rows]
    gens += [PauliOperator.from_bits(n, 0, z, 2 * ((z & offset).bit_count() & 1)) for z in C1.dual_gen.rows]
    return StabilizerCode(n, tuple(gens))


def _solve(constraints: list[tuple[int, int]], n: int) -> tuple[int, BitMatrix] | None:
    """A particular solution and a null-space basis of ``z . s = bit``."""
    rows: list[tuple[int, int]] = []
    for z, bit in constraints:
        for rz, rb in rows:
            p = rz & -rz
            if z & p:
                z ^= rz
                bit ^= rb
        if z == 0:
            if bit:
                return None
            continue
        p = z & -z
        rows = [(rz ^ z, rb ^ bit) if rz & p else (rz, rb) for rz, rb in rows]
        rows.append((z, bit))
    s = 0
    for z, bit in rows:
        if bit:
            s |= z & -z
    return s, kernel(BitMatrix(n, tuple(z for z, _ in rows)))


def css_t_sign_offset(C1: LinearCode, C2: LinearCode, budget: int = 1 << 12) -> int | None:
    """An offset ``s`` for which ``signed_css_stabilizer(C1, C2, s)`` is preserved by transversal T.

    First tries the signs ``i^w(z)`` on one self-dual witness per codeword of
    ``C2``; if those constraints clash, walks the characters allowed by the
    forced constraints on the duals, up to ``budget`` of them.  None means
    no offset was found (for a non-CSS-T pair there is none).
    """
    n = C1.n
    D1 = C1.dual_gen
    forced, chosen = [], []
    for x in C2.codewords():
        if not x:
            continue
        xv = BitVector(n, x)
        if xv.weight() % 2:
            return None
        Zj = shorten_to_support(D1, xv)
        ok, D = dual_containment_on_support(Zj, xv)
        if not ok:
            return None
        forced += [(z, (z.bit_count() // 2) & 1) for z in D.rows]
        A = find_self_dual_subcode(puncture(Zj, xv))
        if A is None:
            return None
        chosen += [(z, (z.bit_count() // 2) & 1) for z in lift(A, xv).rows]

    def works(s: int) -> bool:
        return check_theorem1(signed_css_stabilizer(C1, C2, s), Mode.SUFFICIENT).passed

    sol = _solve(chosen, n)
    if sol is not None and works(sol[0]):
        return sol[0]
    sol = _solve(forced, n)
    if sol is None:
        return None
    s0, null = sol
    # characters of C1^perp: offsets modulo C1
    reps = complement_basis(rref(null.stack(C1.gen))[0], C1.gen).rows
    if len(reps) > budget.bit_length() - 1:
        raise WitnessBudgetExceeded(f"{2 ** len(reps)} sign patterns exceed the budget {budget}")
    for i in range(1 << len(reps)):
        s = s0
        for j, r in enumerate(reps):
            if (i >> j) & 1:
                s ^= r
        if works(s):
            return s
    return None
