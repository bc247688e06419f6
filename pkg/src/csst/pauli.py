"""Hermitian Paulis E(a, b), stabilizer groups and their dense oracles.

``E(a, b)`` is the tensor product of ``i^(a_j b_j) X^(a_j) Z^(b_j)``, so
``E(1, 1) = iXZ = Y`` is Hermitian.  A :class:`PauliOperator` carries an
extra phase ``i^kappa``; phases are integers mod 4 throughout.

Dense matrices index basis states with qubit 1 as the most significant bit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .codes import LinearCode
from .exact import ZOmegaArray
from .gf2 import BitMatrix, BitVector, kernel, pack_rows, popcount, rank, unpack_words, words

MAX_TABLE_GENERATORS = 24
MAX_DENSE_QUBITS = 12

_SIGNS = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PAULI_RE = re.compile(r"^\s*([+-]?i?)([IXYZ]*)\s*$")


@dataclass(frozen=True)
class PauliOperator:
    """``i^kappa E(a, b)``."""

    a: BitVector
    b: BitVector
    kappa: int = 0

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise ValueError("X and Z parts must have the same length")
        object.__setattr__(self, "kappa", self.kappa % 4)

    @classmethod
    def from_bits(cls, n: int, a: int, b: int, kappa: int = 0) -> PauliOperator:
        return cls(BitVector(n, a), BitVector(n, b), kappa)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls.from_bits(n, 0, 0)

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def weight(self) -> int:
        return (self.a.bits | self.b.bits).bit_count()

    @property
    def is_hermitian(self) -> bool:
        return self.kappa % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError(f"{format_pauli(self)} is not Hermitian")
        return 1 if self.kappa == 0 else -1

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.a, self.b, self.kappa + 2)

    def __str__(self) -> str:
        return format_pauli(self)


def _product_phase(a: int, b: int, c: int, d: int) -> int:
    # E(a,b)E(c,d) = i^(ab + cd + 2bc - (a^c)(b^d)) E(a^c, b^d), overlaps counted over Z
    return ((a & b).bit_count() + (c & d).bit_count() + 2 * (b & c).bit_count()
            - ((a ^ c) & (b ^ d)).bit_count())


def multiply(P: PauliOperator, Q: PauliOperator) -> PauliOperator:
    if P.n != Q.n:
        raise ValueError(f"length mismatch: {P.n} != {Q.n}")
    a, b, c, d = P.a.bits, P.b.bits, Q.a.bits, Q.b.bits
    kappa = P.kappa + Q.kappa + _product_phase(a, b, c, d)
    return PauliOperator.from_bits(P.n, a ^ c, b ^ d, kappa)


def symplectic_product(P: PauliOperator, Q: PauliOperator) -> int:
    if P.n != Q.n:
        raise ValueError(f"length mismatch: {P.n} != {Q.n}")
    return ((P.a.bits & Q.b.bits).bit_count() + (P.b.bits & Q.a.bits).bit_count()) & 1


def commutes(P: PauliOperator, Q: PauliOperator) -> bool:
    return symplectic_product(P, Q) == 0


def parse_pauli_string(s: str) -> PauliOperator:
    """``"-ZZIIII"``, ``"+iY"``, ``"XXXXXX"`` ..."""
    m = _PAULI_RE.match(s)
    if not m or not m.group(2):
        raise ValueError(f"malformed Pauli string: {s!r}")
    kappa = _SIGNS[m.group(1)]
    a = b = 0
    for j, ch in enumerate(m.group(2)):
        if ch in "XY":
            a |= 1 << j
        if ch in "ZY":
            b |= 1 << j
    return PauliOperator.from_bits(len(m.group(2)), a, b, kappa)


def pauli_letters(a: int, b: int, n: int) -> str:
    return "".join("IXZY"[((a >> j) & 1) | (((b >> j) & 1) << 1)] for j in range(n))


def format_pauli(P: PauliOperator) -> str:
    return _SIGN_TEXT[P.kappa] + pauli_letters(P.a.bits, P.b.bits, P.n)


# --- stabilizer groups -----------------------------------------------------

class SignRule(str, Enum):
    ALL_PLUS = "all_plus"
    I_TO_WEIGHT = "i_to_weight"


@dataclass(frozen=True)
class StabilizerCode:
    """Stabilizer ``<nu_i E(c_i, d_i)>`` with commuting, independent, signed generators."""

    n: int
    generators: tuple[PauliOperator, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.n != self.n:
                raise ValueError("generator length differs from n")
            if g.kappa not in (0, 2):
                raise ValueError(f"generator {format_pauli(g)} must carry a real sign")
        for g, h in itertools.combinations(gens, 2):
            if not commutes(g, h):
                raise ValueError(f"generators {format_pauli(g)} and {format_pauli(h)} anticommute")
        if rank(self.symplectic_matrix()) != len(gens):
            raise ValueError("generators are not independent")

    @classmethod
    def from_strings(cls, strings: Sequence[str], n: int | None = None) -> StabilizerCode:
        gens = tuple(parse_pauli_string(s) for s in strings)
        if n is None:
            if not gens:
                raise ValueError("n required for an empty generator list")
            n = gens[0].n
        return cls(n, gens)

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def k(self) -> int:
        return self.n - self.r

    @property
    def is_css(self) -> bool:
        return all(not g.a.bits or not g.b.bits for g in self.generators)

    def symplectic_matrix(self) -> BitMatrix:
        """Rows ``[a | b]`` of width ``2n`` (X part in the low ``n`` bits)."""
        n = self.n
        return BitMatrix(2 * n, tuple(g.a.bits | (g.b.bits << n) for g in self.generators))

    def x_parts(self) -> BitMatrix:
        return BitMatrix(self.n, tuple(g.a.bits for g in self.generators))

    def strings(self) -> list[str]:
        return [format_pauli(g) for g in self.generators]

    def __str__(self) -> str:
        return format_stabilizer(self)


def parse_stabilizer(text: str) -> StabilizerCode:
    """Stabilizer file: ``n=<int>`` line, then one signed Pauli per line; '#' comments."""
    n = None
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"n\s*=\s*(\d+)", line)
            if not m:
                raise ValueError(f"line {lineno}: expected 'n=<int>' header")
            n = int(m.group(1))
            continue
        P = parse_pauli_string(line)
        if P.n != n:
            raise ValueError(f"line {lineno}: expected {n} qubits, got {P.n}")
        gens.append(P)
    if n is None:
        raise ValueError("missing 'n=<int>' header")
    return StabilizerCode(n, tuple(gens))


def format_stabilizer(S: StabilizerCode, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"n={S.n}")
    lines += S.strings()
    return "\n".join(lines) + "\n"


def css_stabilizer(C2: LinearCode, C1: LinearCode,
                   z_sign_rule: SignRule | str = SignRule.ALL_PLUS) -> StabilizerCode:
    """X generators from ``C2``, Z generators from ``C1^perp``.

    ``i_to_weight`` signs each Z generator ``E(0, d)`` by ``i^w(d)``, which
    needs every generator weight to be even.
    """
    rule = SignRule(z_sign_rule)
    if C1.n != C2.n:
        raise ValueError("length mismatch")
    if not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    n = C1.n
    gens = [PauliOperator.from_bits(n, x, 0) for x in C2.gen.rows]
    for d in C1.dual_gen.rows:
        w = d.bit_count()
        if rule is SignRule.I_TO_WEIGHT:
            if w % 2:
                raise ValueError(f"Z generator {BitVector(n, d)} has odd weight; i^w is not a sign")
            kappa = w % 4
        else:
            kappa = 0
        gens.append(PauliOperator.from_bits(n, 0, d, kappa))
    return StabilizerCode(n, tuple(gens))


# --- element enumeration ---------------------------------------------------

class SignedElementTable:
    """All ``2^r`` elements of a stabilizer group with their signs.

    Entry ``j`` is the product of the generators selected by the bits of ``j``.
    Stored as packed word arrays so that ``r`` up to 24 stays tractable.
    """

    def __init__(self, n: int, a: np.ndarray, b: np.ndarray, kappa: np.ndarray):
        self.n = n
        self.a = a
        self.b = b
        self.kappa = kappa

    def __len__(self) -> int:
        return len(self.kappa)

    @property
    def epsilon(self) -> np.ndarray:
        return np.where(self.kappa == 0, 1, -1)

    def element(self, j: int) -> PauliOperator:
        a = unpack_words(self.a[j], self.n)[0]
        b = unpack_words(self.b[j], self.n)[0]
        return PauliOperator.from_bits(self.n, a, b, int(self.kappa[j]))

    def __iter__(self) -> Iterator[tuple[PauliOperator, int]]:
        for j in range(len(self)):
            P = self.element(j)
            yield PauliOperator(P.a, P.b, 0), P.sign

    def weights(self) -> np.ndarray:
        return popcount(self.a | self.b)


def enumerate_elements(S: StabilizerCode) -> SignedElementTable:
    r = S.r
    if r > MAX_TABLE_GENERATORS:
        raise ValueError(f"{r} generators exceed the table limit of {MAX_TABLE_GENERATORS}")
    W = words(S.n)
    size = 1 << r
    A = np.zeros((size, W), dtype=np.uint64)
    B = np.zeros((size, W), dtype=np.uint64)
    K = np.zeros(size, dtype=np.int64)
    xs = pack_rows(S.x_parts())
    zs = pack_rows(BitMatrix(S.n, tuple(g.b.bits for g in S.generators)))
    for i, g in enumerate(S.generators):
        half = 1 << i
        a, b = A[:half], B[:half]
        c, d = xs[i], zs[i]
        phase = (popcount(a & b) + popcount(c & d) + 2 * popcount(b & c)
                 - popcount((a ^ c) & (b ^ d)))
        A[half:2 * half] = a ^ c
        B[half:2 * half] = b ^ d
        K[half:2 * half] = (K[:half] + g.kappa + phase) % 4
    if np.any(K % 2):
        raise ArithmeticError("non-Hermitian element in a commuting Hermitian group")
    return SignedElementTable(S.n, A, B, K)


def is_nondegenerate(S: StabilizerCode, d: int) -> bool:
    """Every non-identity stabilizer element has Pauli weight at least ``d``."""
    if d <= 0 or S.r == 0:
        return True
    w = enumerate_elements(S).weights()
    return bool(w[1:].min() >= d)


def _all_paulis_of_weight(n: int, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Packed ``(a, b)`` for every Pauli of weight exactly ``w`` (n <= 64)."""
    a_list, b_list = [], []
    choices = np.array(list(itertools.product((1, 2, 3), repeat=w)), dtype=np.uint64).reshape(-1, w)
    for supp in itertools.combinations(range(n), w):
        bit = np.array([1 << j for j in supp], dtype=np.uint64)
        a_list.append(((choices & 1) * bit).sum(axis=1, dtype=np.uint64))
        b_list.append(((choices >> 1) * bit).sum(axis=1, dtype=np.uint64))
    return np.concatenate(a_list), np.concatenate(b_list)


def stabilizer_distance(S: StabilizerCode, max_weight: int | None = None) -> int:
    """Minimum weight of a Pauli commuting with ``S`` but outside it (up to phase).

    For ``k = 0`` this is the least weight of a non-identity stabilizer element.
    """
    n = S.n
    if n > 64:
        raise ValueError("distance enumeration supports n <= 64")
    if S.k == 0:
        if S.r == 0:
            return n
        return int(enumerate_elements(S).weights()[1:].min())
    G = S.symplectic_matrix()
    gx = np.array([g.a.bits for g in S.generators], dtype=np.uint64)
    gz = np.array([g.b.bits for g in S.generators], dtype=np.uint64)
    # (a, b) lies in the row space iff it is orthogonal to every kernel vector
    K = kernel(G) if G.r else BitMatrix.identity(2 * n)
    mask = (1 << n) - 1
    kx = np.array([h & mask for h in K.rows], dtype=np.uint64)
    kz = np.array([h >> n for h in K.rows], dtype=np.uint64)
    for w in range(1, (max_weight or n) + 1):
        a, b = _all_paulis_of_weight(n, w)
        if len(gx):
            sp = (np.bitwise_count(a[:, None] & gz[None, :]) + np.bitwise_count(b[:, None] & gx[None, :])) & 1
            ok = ~np.any(sp, axis=1)
        else:
            ok = np.ones(len(a), dtype=bool)
        par = (np.bitwise_count(a[:, None] & kx[None, :]) + np.bitwise_count(b[:, None] & kz[None, :])) & 1
        outside = np.any(par, axis=1)
        if np.any(ok & outside):
            return w
    raise ValueError("no logical operator found within the weight bound")


# --- dense oracle ----------------------------------------------------------

def _basis_coords(n: int) -> np.ndarray:
    """Packed coordinate vector of each dense basis index (qubit 1 = MSB)."""
    idx = np.arange(1 << n, dtype=np.uint64)
    out = np.zeros_like(idx)
    for j in range(n):
        out |= ((idx >> np.uint64(n - 1 - j)) & np.uint64(1)) << np.uint64(j)
    return out


def _check_dense(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense construction limited to n <= {MAX_DENSE_QUBITS}")


def basis_index(bits: int, n: int) -> int:
    return sum(((bits >> j) & 1) << (n - 1 - j) for j in range(n))


def _pauli_entries(n: int, a: int, b: int, kappa: int):
    """Rows, columns and i-powers of the nonzero entries of ``i^kappa E(a, b)``."""
    coords = _basis_coords(n)
    cols = np.arange(1 << n)
    target = coords ^ np.uint64(a)
    rows = np.argsort(coords)[target.astype(np.int64)] if n else cols
    sign = np.bitwise_count(coords & np.uint64(b)).astype(np.int64)
    ipow = (kappa + (a & b).bit_count() + 2 * sign) % 4
    return rows, cols, ipow


def dense_matrix(P: PauliOperator) -> ZOmegaArray:
    _check_dense(P.n)
    N = 1 << P.n
    rows, cols, ipow = _pauli_entries(P.n, P.a.bits, P.b.bits, P.kappa)
    powers = np.zeros((N, N), dtype=np.int64)
    mask = np.zeros((N, N), dtype=bool)
    powers[rows, cols] = 2 * ipow
    mask[rows, cols] = True
    return ZOmegaArray.from_omega_powers(powers, mask)


def dense_projector(S: StabilizerCode) -> ZOmegaArray:
    """``(1/2^r) sum_j eps_j E(a_j, b_j)``, exactly."""
    _check_dense(S.n)
    n = S.n
    N = 1 << n
    table = enumerate_elements(S)
    re_ = np.zeros((N, N), dtype=np.int64)
    im = np.zeros((N, N), dtype=np.int64)
    cols = np.arange(N)
    coords = _basis_coords(n)
    order = np.argsort(coords)
    a_all = unpack_words(table.a, n)
    b_all = unpack_words(table.b, n)
    for j in range(len(table)):
        a, b, kap = a_all[j], b_all[j], int(table.kappa[j])
        rows = order[(coords ^ np.uint64(a)).astype(np.int64)]
        ipow = (kap + (a & b).bit_count() + 2 * np.bitwise_count(coords & np.uint64(b)).astype(np.int64)) % 4
        val = np.where(ipow < 2, 1, -1)
        real = ipow % 2 == 0
        np.add.at(re_, (rows[real], cols[real]), val[real])
        np.add.at(im, (rows[~real], cols[~real]), val[~real])
    coeffs = np.stack([re_, np.zeros_like(re_), im, np.zeros_like(im)])
    return ZOmegaArray(coeffs, S.r)


def dense_projector_product(S: StabilizerCode) -> ZOmegaArray:
    """``prod_i (I + nu_i E(c_i, d_i)) / 2`` by dense multiplication."""
    _check_dense(S.n)
    N = 1 << S.n
    eye = ZOmegaArray.from_omega_powers(np.zeros((N, N), dtype=np.int64), np.eye(N, dtype=bool))
    out = eye
    for g in S.generators:
        factor = eye + dense_matrix(g)
        out = out @ factor
    return ZOmegaArray(out.coeffs, out.k + S.r)
