"""Binary linear codes: Reed-Muller and monomial codes, duals, triorthogonality.

Evaluation points of ``m``-variate monomials are enumerated lexicographically
with ``x1`` as the most significant bit: coordinate ``p`` evaluates at
``x_i = bit (m - i) of p``.  This fixes every generator matrix bit for bit.
"""

from __future__ import annotations

import itertools
import re
from math import comb
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .gf2 import (
    BitMatrix,
    BitVector,
    iter_span,
    kernel,
    popcount,
    rref,
    span_contains,
    span_words,
    complement_basis,
    same_span,
)

MAX_ENUM_DIM = 28


@dataclass(frozen=True)
class LinearCode:
    """A binary ``[n, k]`` code; ``gen`` is held in RREF."""

    gen: BitMatrix
    _dual: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        R, _, _ = rref(self.gen)
        object.__setattr__(self, "gen", R)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> LinearCode:
        return cls(BitMatrix.from_strings(rows))

    @property
    def n(self) -> int:
        return self.gen.n

    @property
    def k(self) -> int:
        return self.gen.r

    @property
    def dual_gen(self) -> BitMatrix:
        if not self._dual:
            self._dual.append(kernel(self.gen))
        return self._dual[0]

    def contains(self, v: BitVector | int) -> bool:
        bits = v.bits if isinstance(v, BitVector) else v
        R = self.gen
        for row in R.rows:
            p = (row & -row).bit_length() - 1
            if (bits >> p) & 1:
                bits ^= row
        return bits == 0

    def contains_code(self, other: LinearCode) -> bool:
        return span_contains(self.gen, other.gen)

    def codewords(self) -> Iterator[int]:
        """Packed codewords in Gray-code order."""
        return iter_span(self.gen)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return same_span(self.gen, other.gen)

    def __hash__(self):
        return hash(self.gen.rows)

    def __repr__(self) -> str:
        return f"LinearCode[n={self.n}, k={self.k}]"


def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.dual_gen)


# --- monomials -------------------------------------------------------------

@dataclass(frozen=True)
class MonomialSet:
    """Monomials in ``x1..xm`` as subsets of ``{1..m}``; the empty set is 1."""

    m: int
    monomials: tuple[frozenset, ...]

    def __post_init__(self):
        mons = tuple(frozenset(s) for s in self.monomials)
        if len(set(mons)) != len(mons):
            raise ValueError("duplicate monomial")
        for s in mons:
            if any(not 1 <= i <= self.m for i in s):
                raise ValueError(f"variable index out of range in {sorted(s)}")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def parse(cls, text: str, m: int) -> MonomialSet:
        """Parse ``"1,x1,x2,x1x2"``."""
        mons = []
        for term in text.split(","):
            term = term.strip()
            if not term:
                continue
            if term == "1":
                mons.append(frozenset())
                continue
            if not re.fullmatch(r"(x\d+)+", term):
                raise ValueError(f"bad monomial {term!r}")
            mons.append(frozenset(int(i) for i in re.findall(r"x(\d+)", term)))
        return cls(m, tuple(mons))

    @classmethod
    def all_up_to_degree(cls, r: int, m: int) -> MonomialSet:
        return cls(m, tuple(graded_monomials(m, range(r + 1))))

    def __len__(self):
        return len(self.monomials)

    def labels(self) -> list[str]:
        return [monomial_label(s) for s in self.monomials]

    def __str__(self) -> str:
        return ",".join(self.labels())


def monomial_label(s) -> str:
    return "1" if not s else "".join(f"x{i}" for i in sorted(s))


def graded_monomials(m: int, degrees) -> list[frozenset]:
    """Monomials in graded-lex order: by degree, then ``itertools.combinations`` order."""
    return [frozenset(c) for d in degrees for c in itertools.combinations(range(1, m + 1), d)]


def evaluate_monomial(s, m: int) -> int:
    """Packed evaluation vector of the monomial over all of ``Z2^m``."""
    bits = 0
    for p in range(1 << m):
        if all((p >> (m - i)) & 1 for i in s):
            bits |= 1 << p
    return bits


def monomial_matrix(ms: MonomialSet) -> BitMatrix:
    """Evaluation vectors of the monomials, one row each, in the given order."""
    return BitMatrix(1 << ms.m, tuple(evaluate_monomial(s, ms.m) for s in ms.monomials))


def monomial_code(ms: MonomialSet, check_decreasing: bool = True) -> LinearCode:
    if ms.m > 20:
        raise ValueError("monomial codes are limited to m <= 20")
    if check_decreasing and not is_decreasing(ms):
        warnings.warn(f"monomial set {ms} is not decreasing", stacklevel=2)
    return LinearCode(monomial_matrix(ms))


def reed_muller(r: int, m: int) -> LinearCode:
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    return LinearCode(monomial_matrix(MonomialSet.all_up_to_degree(r, m)))


def monomial_leq(f, g) -> bool:
    """Partial order on monomials: ``f <= g``.

    Same degree: sorted indices compare entrywise.  Different degree: ``f``
    must lie below some divisor of ``g`` of its own degree.
    """
    f, g = sorted(f), sorted(g)
    if len(f) > len(g):
        return False
    if len(f) == len(g):
        return all(a <= b for a, b in zip(f, g))
    return any(all(a <= b for a, b in zip(f, sub))
               for sub in itertools.combinations(g, len(f)))


def is_decreasing(ms: MonomialSet) -> bool:
    present = set(ms.monomials)
    for g in ms.monomials:
        for d in range(len(g) + 1):
            for f in itertools.combinations(range(1, ms.m + 1), d):
                if frozenset(f) not in present and monomial_leq(f, g):
                    return False
    return True


# --- predicates ------------------------------------------------------------

def is_triorthogonal(G: BitMatrix) -> tuple[bool, tuple[int, ...] | None]:
    """Even pair and triple overlaps; returns the first violating row tuple."""
    rows = G.rows
    p = len(rows)
    for a in range(p):
        for b in range(a + 1, p):
            ab = rows[a] & rows[b]
            if ab.bit_count() & 1:
                return False, (a, b)
    for a in range(p):
        for b in range(a + 1, p):
            ab = rows[a] & rows[b]
            for c in range(b + 1, p):
                if (ab & rows[c]).bit_count() & 1:
                    return False, (a, b, c)
    return True, None


def _weight_chunks(G: BitMatrix, chunk_dim: int = 20) -> Iterator[np.ndarray]:
    """Weights of every word of rowspace(G), a chunk of ``2^chunk_dim`` at a time."""
    low = BitMatrix(G.n, G.rows[:chunk_dim])
    high = BitMatrix(G.n, G.rows[chunk_dim:])
    base = span_words(low, chunk_dim)
    shifts = span_words(high, MAX_ENUM_DIM)
    for s in shifts:
        yield popcount(base ^ s)


def weight_distribution(C: LinearCode) -> np.ndarray:
    if C.k > MAX_ENUM_DIM:
        raise ValueError(f"dimension {C.k} too large to enumerate (max {MAX_ENUM_DIM})")
    out = np.zeros(C.n + 1, dtype=np.int64)
    for w in _weight_chunks(C.gen):
        out += np.bincount(w, minlength=C.n + 1)
    return out


def macwilliams(dist: Sequence[int], k: int) -> list[int]:
    """Weight distribution of the dual of a ``k``-dimensional code with distribution ``dist``."""
    n = len(dist) - 1
    out = []
    for j in range(n + 1):
        total = 0
        for i, a in enumerate(dist):
            if a:
                kraw = sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))
                total += int(a) * kraw
        q, r = divmod(total, 1 << k)
        if r:
            raise ArithmeticError("weight distribution is not that of a linear code")
        out.append(q)
    return out


def min_distance(C: LinearCode) -> int:
    """Minimum nonzero weight, exhaustively.

    High-rate codes are handled through the dual's weight distribution.  A
    zero-dimensional code reports ``n``.  When both the code and its dual are
    above dimension 28 the call is refused rather than approximated.
    """
    if C.k == 0:
        return C.n
    if C.k > MAX_ENUM_DIM or (C.k > C.n - C.k and C.k > 16):
        if C.n - C.k > MAX_ENUM_DIM:
            raise ValueError(f"dimension {C.k} too large for exhaustive distance (max {MAX_ENUM_DIM})")
        dist = macwilliams(weight_distribution(dual(C)), C.n - C.k)
        return next(w for w in range(1, C.n + 1) if dist[w])
    best = C.n
    for i, w in enumerate(_weight_chunks(C.gen)):
        if i == 0:
            w = w[1:]
        if w.size:
            best = min(best, int(w.min()))
    return best


def is_even(C: LinearCode) -> bool:
    """Every codeword has even weight.

    Checked on the generators and on all pairwise generator sums; since
    ``w(u+v) = w(u) + w(v) - 2 w(u*v)`` this covers the whole span.
    """
    rows = C.gen.rows
    if any(r.bit_count() & 1 for r in rows):
        return False
    return all(((a ^ b).bit_count() & 1) == 0 for a, b in itertools.combinations(rows, 2))


def coset_basis(C1: LinearCode, C2: LinearCode) -> BitMatrix:
    """Rows extending a basis of ``C2`` to one of ``C1``."""
    if not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    return complement_basis(C1.gen, C2.gen)


def cosets(C1: LinearCode, C2: LinearCode, G_coset: BitMatrix | None = None) -> Iterator[tuple[int, int]]:
    """Yield ``(v, v . G_coset)`` for every ``v`` in ``Z2^(k1-k2)``."""
    if G_coset is None:
        G_coset = coset_basis(C1, C2)
    elif not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    for v in range(1 << G_coset.r):
        yield v, G_coset.combination(v)


def star_containment(C1: LinearCode, C2: LinearCode) -> bool:
    """``C1 * C2`` inside ``C1^perp``.

    For fixed ``x`` the map ``a -> a * x`` is linear, so generators of ``C1``
    suffice on that side; ``x`` ranges over every codeword of ``C2``.
    """
    if C1.n != C2.n:
        raise ValueError("length mismatch")
    D = dual(C1)
    for x in C2.codewords():
        for a in C1.gen.rows:
            if not D.contains(a & x):
                return False
    return True


def self_orthogonal(C: LinearCode) -> bool:
    return orthogonal(C, C)


def orthogonal(A: LinearCode, B: LinearCode) -> bool:
    """``A`` contained in ``B^perp``."""
    return all((a & b).bit_count() % 2 == 0 for a in A.gen.rows for b in B.gen.rows)
