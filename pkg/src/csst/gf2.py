"""Dense GF(2) vectors and matrices.

Vectors are packed into Python ints: bit ``i`` of the int holds coordinate
``i``.  Python ints are arbitrary-width word arrays, so the usual word-level
tricks (xor for addition, and for the star product, ``int.bit_count`` for
weight) apply at any length.  Bulk enumeration of a span goes through numpy
``uint64`` word arrays instead, see :func:`span_words`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class BitVector:
    """A length-``n`` binary row vector."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits do not fit in length {self.n}")

    @classmethod
    def from_list(cls, values: Iterable[int]) -> BitVector:
        values = list(values)
        bits = 0
        for i, v in enumerate(values):
            if v not in (0, 1, True, False):
                raise ValueError(f"entry {v!r} is not a bit")
            if v:
                bits |= 1 << i
        return cls(len(values), bits)

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls.from_list(int(ch) for ch in text)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(n, _mask(n))

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            bits |= 1 << i
        return cls(n, bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.uint8)

    def support(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def weight(self) -> int:
        return self.bits.bit_count()

    def _check(self, other: BitVector) -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits & other.bits)

    def __or__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits | other.bits)

    def __invert__(self) -> BitVector:
        return BitVector(self.n, self.bits ^ _mask(self.n))

    def dot(self, other: BitVector) -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def __getitem__(self, i: int) -> int:
        if not -self.n <= i < self.n:
            raise IndexError(i)
        return (self.bits >> (i % self.n)) & 1

    def __len__(self) -> int:
        return self.n

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


def star(u: BitVector, v: BitVector) -> BitVector:
    """Coordinatewise product ``u * v``."""
    return u & v


def weight(v: BitVector) -> int:
    return v.weight()


def support_subset(y: BitVector, a: BitVector) -> bool:
    """True when supp(y) is contained in supp(a)."""
    y._check(a)
    return y.bits & ~a.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """A rectangular binary matrix stored as a tuple of packed rows."""

    n: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = self.n
        for r in self.rows:
            if r < 0 or r >> limit:
                raise ValueError(f"row does not fit in width {self.n}")

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], n: int | None = None) -> BitMatrix:
        if n is None:
            if not vectors:
                raise ValueError("width required for an empty matrix")
            n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise ValueError("rows must have equal length")
        return cls(n, tuple(v.bits for v in vectors))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> BitMatrix:
        vecs = [BitVector.from_list(r) for r in rows]
        return cls.from_vectors(vecs, n)

    @classmethod
    def from_strings(cls, rows: Sequence[str], n: int | None = None) -> BitMatrix:
        return cls.from_vectors([BitVector.from_str(r) for r in rows], n)

    @classmethod
    def from_array(cls, array) -> BitMatrix:
        arr = np.asarray(array, dtype=np.int64) % 2
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_lists(arr.tolist(), arr.shape[1])

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def empty(cls, n: int) -> BitMatrix:
        return cls(n, ())

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.n)

    def row(self, i: int) -> BitVector:
        return BitVector(self.n, self.rows[i])

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.n, r) for r in self.rows]

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            out[i] = [(r >> j) & 1 for j in range(self.n)]
        return out

    def stack(self, other: BitMatrix) -> BitMatrix:
        if other.n != self.n:
            raise ValueError("width mismatch")
        return BitMatrix(self.n, self.rows + other.rows)

    def append(self, v: BitVector) -> BitMatrix:
        if v.n != self.n:
            raise ValueError("width mismatch")
        return BitMatrix(self.n, self.rows + (v.bits,))

    def combination(self, coeffs: int) -> int:
        """Packed row combination selected by the bits of ``coeffs``."""
        out = 0
        i = 0
        while coeffs:
            if coeffs & 1:
                out ^= self.rows[i]
            coeffs >>= 1
            i += 1
        return out

    def transpose(self) -> BitMatrix:
        cols = []
        for j in range(self.n):
            c = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    c |= 1 << i
            cols.append(c)
        return BitMatrix(len(self.rows), tuple(cols))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.vectors())

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self.vectors())


def rref(M: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row echelon form with leftmost pivots.

    Returns ``(R, rank, pivots)``; ``R`` keeps only the nonzero rows.
    """
    rows = list(M.rows)
    pivots: list[int] = []
    top = 0
    for col in range(M.n):
        bit = 1 << col
        hit = next((i for i in range(top, len(rows)) if rows[i] & bit), None)
        if hit is None:
            continue
        rows[top], rows[hit] = rows[hit], rows[top]
        p = rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return BitMatrix(M.n, tuple(rows[:top])), top, pivots


def rank(M: BitMatrix) -> int:
    return rref(M)[1]


def kernel(M: BitMatrix) -> BitMatrix:
    """Basis of ``{v : M v^T = 0}`` as rows, in RREF."""
    R, rk, pivots = rref(M)
    pivset = set(pivots)
    free = [j for j in range(M.n) if j not in pivset]
    basis = []
    for f in free:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (R.rows[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    out, _, _ = rref(BitMatrix(M.n, tuple(basis)))
    return out


def member(M: BitMatrix, v: BitVector) -> bool:
    """Row-space membership, by comparing ranks with ``v`` appended."""
    if v.n != M.n:
        raise ValueError("length mismatch")
    return rank(M.append(v)) == rank(M)


def reduce_vector(R: BitMatrix, pivots: Sequence[int], v: int) -> int:
    """Reduce packed ``v`` against an RREF basis; zero iff ``v`` is in the span."""
    for row, p in zip(R.rows, pivots):
        if (v >> p) & 1:
            v ^= row
    return v


def span_contains(A: BitMatrix, B: BitMatrix) -> bool:
    """True when rowspace(B) is a subspace of rowspace(A)."""
    R, _, piv = rref(A)
    return all(reduce_vector(R, piv, b) == 0 for b in B.rows)


def same_span(A: BitMatrix, B: BitMatrix) -> bool:
    return rref(A)[0].rows == rref(B)[0].rows


def puncture(M: BitMatrix, support: BitVector) -> BitMatrix:
    """Keep only the columns where ``support`` is 1."""
    if support.n != M.n:
        raise ValueError("support length must equal the matrix width")
    cols = support.support()
    rows = []
    for r in M.rows:
        out = 0
        for k, j in enumerate(cols):
            if (r >> j) & 1:
                out |= 1 << k
        rows.append(out)
    return BitMatrix(len(cols), tuple(rows))


def lift(M: BitMatrix, support: BitVector) -> BitMatrix:
    """Inverse of :func:`puncture`: place columns back on ``support``, zeros elsewhere."""
    cols = support.support()
    if M.n != len(cols):
        raise ValueError("matrix width must equal the support weight")
    rows = []
    for r in M.rows:
        out = 0
        for k, j in enumerate(cols):
            if (r >> k) & 1:
                out |= 1 << j
        rows.append(out)
    return BitMatrix(support.n, tuple(rows))


def shorten_to_support(M: BitMatrix, support: BitVector) -> BitMatrix:
    """Basis of the subcode of rowspace(M) whose words vanish outside ``support``."""
    outside = ~support
    # coefficient vectors c with (c M) restricted to the complement = 0
    restricted = BitMatrix(M.n, tuple(r & outside.bits for r in M.rows))
    coeffs = kernel(restricted.transpose())
    rows = [M.combination(c) for c in coeffs.rows]
    R, _, _ = rref(BitMatrix(M.n, tuple(rows)))
    return R


def intersect(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Basis of rowspace(A) intersected with rowspace(B)."""
    if A.n != B.n:
        raise ValueError("width mismatch")
    return kernel(kernel(A).stack(kernel(B)))


def complement_basis(big: BitMatrix, small: BitMatrix) -> BitMatrix:
    """Rows of ``big`` that extend a basis of ``small`` to one of ``big``, in order."""
    R, _, piv = rref(small)
    rows = list(R.rows)
    pivots = list(piv)
    picked = []
    for b in big.rows:
        cur = BitMatrix(big.n, tuple(rows))
        red = reduce_vector(cur, pivots, b)
        if red:
            picked.append(b)
            cur, _, pivots = rref(cur.append(BitVector(big.n, red)))
            rows = list(cur.rows)
    return BitMatrix(big.n, tuple(picked))


def iter_span(M: BitMatrix) -> Iterator[int]:
    """All ``2^r`` packed combinations of the rows, in Gray-code order."""
    v = 0
    yield v
    for i in range(1, 1 << len(M.rows)):
        v ^= M.rows[(i & -i).bit_length() - 1]
        yield v


def words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_rows(M: BitMatrix) -> np.ndarray:
    """Rows as a ``(r, words)`` uint64 array; bits past ``n`` are always zero."""
    W = words(M.n)
    out = np.zeros((len(M.rows), W), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, r in enumerate(M.rows):
        for w in range(W):
            out[i, w] = (r >> (64 * w)) & mask
    return out


def span_words(M: BitMatrix, limit: int = 28) -> np.ndarray:
    """Every codeword of rowspace(M) as packed uint64 words.

    Row ``c`` of the result is the combination whose coefficient bits are the
    binary digits of ``c``.
    """
    k = len(M.rows)
    if k > limit:
        raise ValueError(f"span of dimension {k} is too large to enumerate")
    gens = pack_rows(M)
    out = np.zeros((1 << k, words(M.n)), dtype=np.uint64)
    for i in range(k):
        half = 1 << i
        out[half:2 * half] = out[:half] ^ gens[i]
    return out


def popcount(words_array: np.ndarray) -> np.ndarray:
    """Hamming weight of each packed row (last axis holds the words)."""
    return np.bitwise_count(words_array).sum(axis=-1, dtype=np.int64)


def unpack_words(arr: np.ndarray, n: int) -> list[int]:
    out = []
    for row in np.atleast_2d(arr):
        v = 0
        for w, word in enumerate(row):
            v |= int(word) << (64 * w)
        out.append(v & _mask(n))
    return out


def parse_matrix(text: str, n: int | None = None) -> BitMatrix:
    """Parse the matrix text format: one '0'/'1' row per line, '#' comments."""
    rows = []
    header_n = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if "#" in line:
            m = re.search(r"\bn=(\d+)", line.split("#", 1)[1])
            if m and header_n is None:
                header_n = int(m.group(1))
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if any(ch not in "01" for ch in line):
            raise ValueError(f"line {lineno}: not a bit string: {line!r}")
        rows.append(BitVector.from_str(line))
    widths = {v.n for v in rows}
    if len(widths) > 1:
        raise ValueError(f"rows have different lengths: {sorted(widths)}")
    if rows:
        width = rows[0].n
        if n is not None and n != width:
            raise ValueError(f"expected width {n}, got {width}")
    elif n is not None:
        width = n
    elif header_n is not None:
        # an empty code only knows its length from the sidecar header
        width = header_n
    else:
        raise ValueError("empty matrix file carries no width")
    return BitMatrix.from_vectors(rows, width)


def format_matrix(M: BitMatrix, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [str(v) for v in M.vectors()]
    return "\n".join(lines) + "\n"
