"""The logical gate that transversal T induces on a code.

For CSS data ``(C1, C2)`` the logical basis state ``|v>`` is the uniform
superposition over the coset ``s + v G + C2`` (``s`` absorbs the Z-stabilizer
signs), and ``T^n |x> = w^{w(x)} |x>``.  So the induced gate is diagonal with
phase exponent ``w(x) mod 8`` whenever that number is constant on each coset.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codes import LinearCode, coset_basis, is_triorthogonal, self_orthogonal
from .exact import ZOmegaArray
from .gf2 import BitMatrix, BitVector, pack_rows, popcount, rref, span_words, unpack_words
from .pauli import (
    PauliOperator,
    StabilizerCode,
    _basis_coords,
    basis_index,
    dense_projector,
    multiply,
)

log = logging.getLogger(__name__)

MAX_LOGICAL_DIM = 20
MAX_STABILIZER_DIM = 20
MAX_DENSE_ACTION_QUBITS = 10
_CHUNK = 1 << 20


# --- polynomials -----------------------------------------------------------

@dataclass(frozen=True)
class Anf:
    """A multilinear polynomial over GF(2); each term is a sorted tuple of 0-based variables."""

    k: int
    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(set(self.terms), key=lambda t: (len(t), t))))

    @property
    def degree(self) -> int:
        return max((len(t) for t in self.terms), default=-1)

    def evaluate(self, v: int) -> int:
        return sum(all((v >> i) & 1 for i in t) for t in self.terms) & 1

    def term_set(self, labels: list[str] | None = None) -> set[frozenset]:
        name = (lambda i: labels[i]) if labels else (lambda i: i + 1)
        return {frozenset(name(i) for i in t) for t in self.terms}

    def format(self, labels: list[str] | None = None) -> str:
        if not self.terms:
            return "0"

        def var(i: int) -> str:
            return f"v[{labels[i]}]" if labels else f"v{i + 1}"

        return " + ".join(" ".join(var(i) for i in t) if t else "1" for t in self.terms)

    def __str__(self) -> str:
        return self.format()


# --- coset weights ---------------------------------------------------------

def _coset_weights_mod8(G_coset: BitMatrix, C2_gen: BitMatrix, offset: int = 0) -> np.ndarray:
    """``w(offset + v G_coset + c) mod 8`` as a ``(2^k, 2^k2)`` uint8 table."""
    k, k2 = G_coset.r, C2_gen.r
    if k > MAX_LOGICAL_DIM or k2 > MAX_STABILIZER_DIM:
        raise ValueError(f"enumeration too large: k={k}, k2={k2} (limit {MAX_LOGICAL_DIM} each)")
    n = G_coset.n
    shifts = span_words(G_coset, MAX_LOGICAL_DIM)
    if offset:
        shifts = shifts ^ pack_rows(BitMatrix(n, (offset,)))[0]
    c2 = span_words(C2_gen, MAX_STABILIZER_DIM)
    out = np.empty((1 << k, 1 << k2), dtype=np.uint8)
    step = max(1, _CHUNK // (1 << k2))
    for lo in range(0, 1 << k, step):
        block = shifts[lo:lo + step, None, :] ^ c2[None, :, :]
        out[lo:lo + step] = (popcount(block) & 7).astype(np.uint8)
    return out


@dataclass
class LogicalActionReport:
    k: int
    uniform_within_coset: bool
    phases: np.ndarray | None = None
    anf: Anf | None = None
    labels: list[str] | None = None
    violation: dict | None = None
    global_phase: int = 0

    def phase(self, v: int) -> int:
        if self.phases is None:
            raise ValueError("code is not preserved as a diagonal logical gate")
        return int(self.phases[v])

    def is_identity(self) -> bool:
        return self.phases is not None and not np.any(self.phases)

    def to_dict(self) -> dict:
        out = {"k": self.k, "uniform_within_coset": self.uniform_within_coset,
               "global_phase": self.global_phase, "labels": self.labels,
               "violation": self.violation}
        if self.phases is not None:
            out["phases"] = [int(p) for p in self.phases]
        out["anf"] = None if self.anf is None else self.anf.format(self.labels)
        return out


def logical_phases(C1: LinearCode, C2: LinearCode, G_coset: BitMatrix | None = None,
                   offset: BitVector | int = 0, labels: list[str] | None = None) -> LogicalActionReport:
    """Phase exponent (mod 8) of transversal T on each logical basis state.

    ``offset`` is a vector ``s`` with ``z . s`` equal to the sign bit of each
    Z stabilizer; the default 0 is the all-plus CSS code.  Phases are
    normalized so that ``|0>_L`` has exponent 0.
    """
    if G_coset is None:
        G_coset = coset_basis(C1, C2)
    elif not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    if labels is not None and len(labels) != G_coset.r:
        raise ValueError("one label per coset row is required")
    s = offset.bits if isinstance(offset, BitVector) else int(offset)
    table = _coset_weights_mod8(G_coset, C2.gen, s)
    k = G_coset.r
    first = table[:, :1]
    bad = np.nonzero(np.any(table != first, axis=1))[0]
    if bad.size:
        v = int(bad[0])
        j = int(np.nonzero(table[v] != table[v, 0])[0][0])
        c2 = span_words(C2.gen, MAX_STABILIZER_DIM)
        ca, cb = unpack_words(c2[[0, j]], C1.n)
        report = LogicalActionReport(k, False, labels=labels, violation={
            "v": format(v, f"0{max(k, 1)}b")[::-1] if k else "",
            "c": [str(BitVector(C1.n, ca)), str(BitVector(C1.n, cb))],
            "weights_mod8": [int(table[v, 0]), int(table[v, j])],
        })
        return report
    raw = first[:, 0].astype(np.int64)
    phases = (raw - raw[0]) % 8
    report = LogicalActionReport(k, True, phases, labels=labels, global_phase=int(raw[0]))
    if np.all(phases % 4 == 0):
        report.anf = anf_from_phases(report)
    return report


def anf_from_phases(report: LogicalActionReport | np.ndarray) -> Anf:
    """Algebraic normal form of ``q`` where the phase of ``|v>`` is ``(-1)^q(v)``."""
    phases = report.phases if isinstance(report, LogicalActionReport) else np.asarray(report)
    if phases is None:
        raise ValueError("no phases: cosets are not weight-uniform")
    phases = np.asarray(phases, dtype=np.int64) % 8
    if np.any(phases % 4):
        raise ValueError("phases other than +1/-1 present")
    size = phases.size
    k = size.bit_length() - 1
    if size != 1 << k:
        raise ValueError("phase table length must be a power of two")
    f = (phases // 4).astype(np.uint8)
    for i in range(k):
        view = f.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]
    terms = [tuple(i for i in range(k) if (idx >> i) & 1) for idx in np.nonzero(f)[0]]
    return Anf(k, tuple(terms))


# --- logical T -------------------------------------------------------------

@dataclass
class Theorem2Report:
    triorthogonal: bool
    triorthogonal_witness: tuple[int, ...] | None
    mod8_condition: bool
    mod8_witness: dict | None
    direction: str | None
    passed: bool
    literal_mod8: bool = False

    def to_dict(self) -> dict:
        return {"triorthogonal": self.triorthogonal,
                "triorthogonal_witness": list(self.triorthogonal_witness) if self.triorthogonal_witness else None,
                "mod8_condition": self.mod8_condition, "literal_mod8": self.literal_mod8,
                "mod8_witness": self.mod8_witness, "direction": self.direction, "passed": self.passed}


def check_theorem2(C1: LinearCode, C2: LinearCode, G_coset: BitMatrix | None = None) -> Theorem2Report:
    """Does transversal T act as transversal logical T (or T-dagger)?

    Checks that ``[G_coset; G2]`` is triorthogonal and that every
    ``w(v G_coset + a)``, ``a`` in ``C2``, equals ``sign * w(v) mod 8`` for one
    fixed sign.  ``sign = +1`` is logical T; ``sign = -1`` is logical
    T-dagger, which is what the 15-qubit punctured Reed-Muller code gives.
    """
    if G_coset is None:
        G_coset = coset_basis(C1, C2)
    if not C1.contains_code(C2):
        raise ValueError("C2 is not contained in C1")
    stacked = G_coset.stack(C2.gen)
    if rref(stacked)[1] != C1.k or not all(C1.contains(r) for r in stacked.rows):
        raise ValueError("[G_coset; G2] does not generate C1")
    tri, tri_w = is_triorthogonal(stacked)
    table = _coset_weights_mod8(G_coset, C2.gen).astype(np.int64)
    wv = np.array([bin(v).count("1") for v in range(1 << G_coset.r)], dtype=np.int64)
    verdicts = {}
    witness = None
    for sign, name in ((1, "T"), (-1, "T†")):
        diff = (table - sign * wv[:, None]) % 8
        verdicts[name] = not np.any(diff)
        if sign == 1 and not verdicts[name]:
            v, j = (int(t[0]) for t in np.nonzero(diff))
            x = G_coset.combination(v)
            a = unpack_words(span_words(C2.gen, MAX_STABILIZER_DIM)[j], C1.n)[0]
            witness = {"c": format(v, f"0{max(G_coset.r, 1)}b")[::-1] if G_coset.r else "",
                       "x": str(BitVector(C1.n, x)), "a": str(BitVector(C1.n, a)),
                       "weight_mod8": int(table[v, j]), "w_c": int(wv[v])}
    direction = "T" if verdicts["T"] else ("T†" if verdicts["T†"] else None)
    mod8 = direction is not None
    return Theorem2Report(tri, tri_w, mod8, witness, direction, tri and mod8, verdicts["T"])


def check_logical_identity(C1: LinearCode, C2: LinearCode, G_coset: BitMatrix | None = None) -> bool:
    """Every logical phase equal: transversal T is the logical identity up to a global phase."""
    return logical_phases(C1, C2, G_coset).is_identity()


def c1_self_orthogonal(C1: LinearCode) -> bool:
    """The structural counterpart of a trivial logical action for CSS-T codes."""
    return self_orthogonal(C1)


def qrm_admissible(r: int, m: int) -> bool:
    """``(m - 1)/3 < r <= m/3``."""
    return Fraction(m - 1, 3) < r <= Fraction(m, 3)


# --- dense oracle ----------------------------------------------------------

@dataclass
class DenseLogicalAction:
    preserved: bool
    unitary: ZOmegaArray | np.ndarray | None = None
    exact: bool = True
    basis: str = ""

    def unitary_complex(self) -> np.ndarray | None:
        if self.unitary is None:
            return None
        return self.unitary.to_complex() if isinstance(self.unitary, ZOmegaArray) else self.unitary

    def diagonal_exponents(self) -> list[int] | None:
        """Phase exponents of a diagonal unitary whose entries are 8th roots of unity, with entry 0 at exponent 0."""
        U = self.unitary_complex()
        if U is None or np.max(np.abs(U - np.diag(np.diag(U)))) > 1e-9:
            return None
        d = np.diag(U)
        if np.max(np.abs(np.abs(d) - 1)) > 1e-9:
            return None
        e = np.rint(np.angle(d) / (np.pi / 4)).astype(np.int64)
        return [int(x) for x in (e - e[0]) % 8]


def _dense_weights(n: int) -> np.ndarray:
    return np.bitwise_count(_basis_coords(n)).astype(np.int64)


def _pure_group(gens: list[PauliOperator], part: str, n: int) -> tuple[list[PauliOperator], list[int]]:
    """RREF of pure X- or Z-type generators with signs tracked; returns elements and pivots."""
    elems = list(gens)
    pivots = []
    top = 0
    for col in range(n):
        bit = 1 << col
        hit = next((i for i in range(top, len(elems)) if getattr(elems[i], part).bits & bit), None)
        if hit is None:
            continue
        elems[top], elems[hit] = elems[hit], elems[top]
        for i in range(len(elems)):
            if i != top and getattr(elems[i], part).bits & bit:
                elems[i] = multiply(elems[i], elems[top])
        pivots.append(col)
        top += 1
    return elems[:top], pivots


def css_parts(S: StabilizerCode) -> tuple[LinearCode, LinearCode, int, list[PauliOperator]]:
    """``(C1, C2, offset, signed X basis)`` of a CSS stabilizer code."""
    if not S.is_css:
        raise ValueError("stabilizer is not CSS")
    n = S.n
    xg = [g for g in S.generators if g.a.bits]
    zg = [g for g in S.generators if not g.a.bits]
    zs, zp = _pure_group(zg, "b", n)
    xs, _ = _pure_group(xg, "a", n)
    offset = 0
    for P, p in zip(zs, zp):
        if P.kappa == 2:
            offset |= 1 << p
    C2 = LinearCode(BitMatrix(n, tuple(P.a.bits for P in xs)))
    Zspace = LinearCode(BitMatrix(n, tuple(P.b.bits for P in zs)))
    C1 = LinearCode(Zspace.dual_gen)
    return C1, C2, offset, xs


def dense_preservation_and_action(S: StabilizerCode, G_coset: BitMatrix | None = None,
                                  frame: int = 0) -> DenseLogicalAction:
    """Dense check of ``T^n Pi (T^n)^dagger = Pi`` and the induced logical unitary.

    CSS inputs get the coset basis (ordered by the rows of ``G_coset``,
    shifted by the logical ``frame`` word) and an exact unitary; other codes get an orthonormal basis from the projector
    columns in index order and a floating-point unitary.
    """
    n = S.n
    if n > MAX_DENSE_ACTION_QUBITS:
        raise ValueError(f"dense logical action limited to n <= {MAX_DENSE_ACTION_QUBITS}")
    Pi = dense_projector(S)
    w = _dense_weights(n)
    preserved = Pi.rotate(w[:, None] - w[None, :]) == Pi
    if not preserved:
        return DenseLogicalAction(False)
    N = 1 << n
    if S.is_css:
        C1, C2, offset, xs = css_parts(S)
        if G_coset is None:
            G_coset = coset_basis(C1, C2)
        k = G_coset.r
        powers = np.zeros((N, 1 << k), dtype=np.int64)
        mask = np.zeros((N, 1 << k), dtype=bool)
        xsign = [P.kappa // 2 for P in xs]
        for v in range(1 << k):
            base = offset ^ frame ^ G_coset.combination(v)
            for c in range(1 << len(xs)):
                y, sgn = base, 0
                for i, P in enumerate(xs):
                    if (c >> i) & 1:
                        y ^= P.a.bits
                        sgn ^= xsign[i]
                idx = basis_index(y, n)
                powers[idx, v] = 4 * sgn
                mask[idx, v] = True
        B = ZOmegaArray.from_omega_powers(powers, mask)
        TB = B.rotate(np.broadcast_to(w[:, None], (N, 1 << k)))
        U = B.dagger() @ TB
        U = ZOmegaArray(U.coeffs, U.k + len(xs))
        return DenseLogicalAction(True, U, True, "css-coset")
    P = Pi.to_complex()
    cols = []
    for j in range(N):
        v = P[:, j].copy()
        for q in cols:
            v -= q * np.vdot(q, v)
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            cols.append(v / nrm)
        if len(cols) == 1 << S.k:
            break
    B = np.array(cols).T
    phase = np.exp(1j * np.pi / 4 * w)
    U = B.conj().T @ (phase[:, None] * B)
    return DenseLogicalAction(True, U, False, "projector-columns")


def css_sign_offset(C1: LinearCode) -> int:
    """Offset ``s`` matching ``css_stabilizer(..., i_to_weight)``: ``z . s = w(z)/2 mod 2`` on the Z generators."""
    s = 0
    for row in C1.dual_gen.rows:
        if row.bit_count() % 4 == 2:
            s |= row & -row
    return s
