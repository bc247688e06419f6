"""Quadratic-form diagonal (QFD) gates and their action on Paulis.

``tau_R^(l) = sum_v xi^(v R v^T mod 2^l) |v><v|`` with ``xi = exp(2 pi i / 2^l)``
and ``R`` symmetric over ``Z_(2^l)``.  The transversal T gate is ``l = 3``,
``R = I``.  For ``l <= 3`` every number below is an element of Z[w][1/2] and
is handled exactly; finer levels fall back to complex floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import ZOmega, ZOmegaArray
from .gf2 import BitVector
from .pauli import MAX_DENSE_QUBITS, PauliOperator, _basis_coords, dense_matrix, pauli_letters

EXACT_LEVEL = 3
MAX_COEFF_QUBITS = 20


@dataclass(frozen=True)
class QfdGate:
    ell: int
    R: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=np.int64, ndmin=2)
        if R.shape[0] != R.shape[1]:
            raise ValueError("R must be square")
        if self.ell < 1:
            raise ValueError("level must be at least 1")
        R = R % (1 << self.ell)
        if not np.array_equal(R, R.T):
            raise ValueError("R must be symmetric")
        R.setflags(write=False)
        object.__setattr__(self, "R", R)

    @classmethod
    def transversal_t(cls, n: int) -> QfdGate:
        return cls(3, np.eye(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def quadratic_form(self) -> np.ndarray:
        """``v R v^T mod 2^l`` for every packed ``v`` in ``0 .. 2^n - 1``."""
        n = self.n
        v = np.arange(1 << n, dtype=np.int64)
        bits = np.stack([(v >> j) & 1 for j in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)
        q = np.einsum("vi,ij,vj->v", bits, self.R, bits)
        return q % (1 << self.ell)

    def __eq__(self, other):
        if not isinstance(other, QfdGate):
            return NotImplemented
        return self.ell == other.ell and np.array_equal(self.R, other.R)

    def __hash__(self):
        return hash((self.ell, self.R.tobytes()))


def _xi_to_omega(ell: int) -> int:
    if ell > EXACT_LEVEL:
        raise ValueError("exact arithmetic covers levels up to 3")
    return 8 >> ell


def dense_qfd(g: QfdGate):
    """Diagonal matrix of the gate; exact for ``l <= 3``, complex floats above."""
    if g.n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense construction limited to n <= {MAX_DENSE_QUBITS}")
    N = 1 << g.n
    # dense index i has qubit 1 as its most significant bit
    q = g.quadratic_form()[_basis_coords(g.n).astype(np.int64)]
    if g.ell <= EXACT_LEVEL:
        powers = np.zeros((N, N), dtype=np.int64)
        powers[np.arange(N), np.arange(N)] = q * _xi_to_omega(g.ell)
        return ZOmegaArray.from_omega_powers(powers, np.eye(N, dtype=bool))
    return np.diag(np.exp(2j * np.pi * q / (1 << g.ell)))


def dense_conjugate(g: QfdGate, P: PauliOperator):
    """``tau P tau^dagger`` by dense multiplication."""
    U = dense_qfd(g)
    M = dense_matrix(P)
    if isinstance(U, ZOmegaArray):
        return U @ M @ U.dagger()
    Mc = M.to_complex()
    return U @ Mc @ U.conj().T


# --- Pauli sums ------------------------------------------------------------

@dataclass
class PhasedPauliSum:
    """``xi^phase * sum_j c_j E(a_j, b_j)`` with Hermitian basis Paulis."""

    n: int
    ell: int = 3
    global_phase_exponent: int = 0
    terms: list = field(default_factory=list)

    def add(self, coeff, P: PauliOperator) -> None:
        # absorb the operator phase so every term is a bare E(a, b)
        if P.kappa:
            coeff = coeff * (ZOmega.omega(2 * P.kappa) if isinstance(coeff, ZOmega) else 1j ** P.kappa)
        self.terms.append((coeff, PauliOperator(P.a, P.b, 0)))

    def collected(self) -> dict[tuple[int, int], object]:
        out: dict[tuple[int, int], object] = {}
        for c, P in self.terms:
            key = (P.a.bits, P.b.bits)
            out[key] = out[key] + c if key in out else c
        return {k: v for k, v in out.items() if not _is_zero(v)}

    @property
    def exact(self) -> bool:
        return all(isinstance(c, ZOmega) for c, _ in self.terms)

    def global_phase(self):
        if self.ell <= EXACT_LEVEL:
            return ZOmega.omega(self.global_phase_exponent * _xi_to_omega(self.ell))
        return np.exp(2j * np.pi * self.global_phase_exponent / (1 << self.ell))

    def squared_norm(self):
        """``sum |c_j|^2`` over distinct Paulis; 1 for a unitary sum."""
        vals = list(self.collected().values())
        if self.exact:
            total = ZOmega()
            for c in vals:
                total = total + c.abs2()
            return total
        return float(sum(abs(complex(c)) ** 2 for c in vals))

    def to_dense(self):
        """Dense matrix; exact when every coefficient and the phase are exact."""
        if self.n > MAX_DENSE_QUBITS:
            raise ValueError(f"dense construction limited to n <= {MAX_DENSE_QUBITS}")
        N = 1 << self.n
        if self.exact and self.ell <= EXACT_LEVEL:
            out = ZOmegaArray.zeros((N, N))
            for (a, b), c in self.collected().items():
                out = out + dense_matrix(PauliOperator.from_bits(self.n, a, b)).scale(c)
            return out.scale(self.global_phase())
        out = np.zeros((N, N), dtype=complex)
        for (a, b), c in self.collected().items():
            out += complex(c) * dense_matrix(PauliOperator.from_bits(self.n, a, b)).to_complex()
        return complex(self.global_phase()) * out

    def __str__(self) -> str:
        return format_pauli_sum(self)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, ZOmega) else abs(c) < 1e-12


def _dyadic_sign_power(c: ZOmega) -> tuple[int, int] | None:
    """``(sign, s)`` when ``c = sign * 2^(-s/2)``."""
    for s in range(0, 2 * 64):
        base = ZOmega.sqrt2_power(-s)
        if c == base:
            return 1, s
        if c == -base:
            return -1, s
        if c.k * 2 + 2 < s:
            break
    return None


def format_pauli_sum(S: PhasedPauliSum) -> str:
    """``2^-3 * [ +XXXXXX +XXXXXZ ... ]`` when all magnitudes agree, else explicit coefficients."""
    items = sorted(S.collected().items(), key=lambda kv: (kv[0][0], _reverse_order(kv[0][1], S.n)))
    prefix = ""
    if S.global_phase_exponent % (1 << S.ell):
        prefix = f"exp(2pi*i*{S.global_phase_exponent}/{1 << S.ell}) * "
    parsed = [(_dyadic_sign_power(c) if isinstance(c, ZOmega) else None) for _, c in items]
    if items and all(p is not None for p in parsed) and len({p[1] for p in parsed}) == 1:
        s = parsed[0][1]
        scale = f"2^-{Fraction(s, 2)}" if s else "1"
        body = " ".join(("+" if sign > 0 else "-") + pauli_letters(a, b, S.n)
                        for ((a, b), _), (sign, _) in zip(items, parsed))
        return f"{prefix}{scale} * [ {body} ]"
    body = " + ".join(f"({complex(c):.6g})*{pauli_letters(a, b, S.n)}" for (a, b), c in items)
    return f"{prefix}[ {body} ]"


def _reverse_order(bits: int, n: int) -> int:
    # sort Z parts so that later qubits vary fastest, as in XXXXXX, XXXXXZ, ...
    return sum(((bits >> j) & 1) << (n - 1 - j) for j in range(n))


# --- conjugation -----------------------------------------------------------

def _as_int_vector(x, n: int | None = None) -> np.ndarray:
    if isinstance(x, BitVector):
        return np.array(x.to_list(), dtype=np.int64)
    v = np.array(x, dtype=np.int64).reshape(-1)
    if n is not None and v.size != n:
        raise ValueError("vector length mismatch")
    return v


def generalized_pauli(a, b) -> PauliOperator:
    """``E(a, b) = i^(a b^T) X^(a mod 2) Z^(b mod 2)`` for integer vectors."""
    a = _as_int_vector(a)
    b = _as_int_vector(b, a.size)
    a0, b0 = a % 2, b % 2
    kappa = int(a @ b) - int(a0 @ b0)
    n = a.size
    return PauliOperator(BitVector.from_list(a0.tolist()), BitVector.from_list(b0.tolist()), kappa % 4)


@dataclass(frozen=True)
class QfdConjugation:
    """``tau E(a, b) tau^dagger = xi^phase E(a0, b0 + a0 R) tau_residual``."""

    ell: int
    phase_exponent: int
    x_part: np.ndarray
    z_part: np.ndarray
    residual: QfdGate
    kappa: int = 0

    def pauli(self) -> PauliOperator:
        P = generalized_pauli(self.x_part, self.z_part)
        return PauliOperator(P.a, P.b, P.kappa + self.kappa)

    def expand(self) -> PhasedPauliSum:
        """Expand the residual gate in the Pauli basis and multiply through."""
        n = self.residual.n
        out = PhasedPauliSum(n, self.ell, self.phase_exponent)
        base = self.pauli()
        scale = ZOmega.sqrt2_power(-n) if self.residual.ell <= EXACT_LEVEL else 2 ** (-n / 2)
        a = self.x_part
        for x, c in qfd_coefficients(self.residual).items():
            xv = np.array([(x >> j) & 1 for j in range(n)], dtype=np.int64)
            # E(a, z) E(0, x) = i^(-a x^T) E(a, z + x) with integer-vector E
            P = generalized_pauli(a, self.z_part + xv)
            kappa = (self.kappa + P.kappa - int(a @ xv)) % 4
            out.add(c * scale, PauliOperator(P.a, P.b, kappa))
        return out


def qfd_conjugate(g: QfdGate, P) -> QfdConjugation:
    """Conjugate a Pauli by ``tau_R^(l)``.

    ``P`` is a :class:`PauliOperator` or an ``(a, b)`` pair of integer vectors
    ``a = a0 + 2 a1 + ...``; only the ``a0, a1, b0, b1`` digits enter the phase.
    """
    if g.ell < 2:
        raise ValueError("conjugation formula needs level >= 2")
    if isinstance(P, PauliOperator):
        a, b, kappa = _as_int_vector(P.a), _as_int_vector(P.b), P.kappa
    else:
        a, b = (_as_int_vector(x) for x in P)
        kappa = 0
    n = g.n
    if a.size != n or b.size != n:
        raise ValueError("Pauli length differs from the gate size")
    ell = g.ell
    R = g.R
    mod = 1 << ell
    a0, a1 = a % 2, (a // 2) % 2
    b0, b1 = b % 2, (b // 2) % 2
    q = 1 << (ell - 2)
    phase = (1 - q) * int(a0 @ R @ a0) + (mod // 2) * int(a0 @ b1 + b0 @ a1)
    # i^kappa from the operator phase, written as a power of xi
    phase += kappa * q
    a0R = a0 @ R
    abar = 1 - a0
    D = np.diag
    Rt = ((1 + q) * D(a0R) - (D(abar) @ R @ D(a0) + D(a0) @ R @ D(abar) + 2 * D(a0R * a0)))
    residual = QfdGate(ell - 1, Rt % (mod // 2))
    return QfdConjugation(ell, phase % mod, a0, b0 + a0R, residual)


def qfd_coefficients(g: QfdGate) -> dict[int, object]:
    """Nonzero ``c_x = 2^(-n/2) sum_v (-1)^(v x) xi^(v R v^T)``, keyed by packed ``x``.

    The values satisfy ``tau = sum_x c_x E(0, x) / sqrt(2^n)``.
    """
    n = g.n
    if n > MAX_COEFF_QUBITS:
        raise ValueError(f"coefficient sum limited to n <= {MAX_COEFF_QUBITS}")
    q = g.quadratic_form()
    if g.ell <= EXACT_LEVEL:
        f = ZOmegaArray.from_omega_powers(q * _xi_to_omega(g.ell))
        coeffs = np.stack([_walsh_hadamard(f.coeffs[j]) for j in range(4)])
        scale = ZOmega.sqrt2_power(-n)
        out = {}
        for x in np.flatnonzero(np.any(coeffs, axis=0)):
            out[int(x)] = ZOmega(tuple(int(c) for c in coeffs[:, x])) * scale
        return out
    f = np.exp(2j * np.pi * q / (1 << g.ell))
    vals = _walsh_hadamard(f) / np.sqrt(2.0 ** n)
    return {int(x): complex(vals[x]) for x in np.flatnonzero(np.abs(vals) > 1e-12)}


def _walsh_hadamard(f: np.ndarray) -> np.ndarray:
    """``F[x] = sum_v (-1)^(popcount(v & x)) f[v]``."""
    F = f.copy()
    h = 1
    while h < F.size:
        F = F.reshape(-1, 2, h)
        F = np.concatenate([F[:, 0] + F[:, 1], F[:, 0] - F[:, 1]], axis=1).reshape(-1)
        h *= 2
    return F


def transversal_t_conjugate(a: BitVector, b: BitVector) -> PhasedPauliSum:
    """``T^n E(a, b) T^n^dagger = 2^(-w(a)/2) sum_{y <= a} (-1)^(b y) E(a, b + y)``."""
    if a.n != b.n:
        raise ValueError("length mismatch")
    n = a.n
    w = a.weight()
    out = PhasedPauliSum(n, 3, 0)
    mag = ZOmega.sqrt2_power(-w)
    y = a.bits
    # walk every submask of a
    while True:
        sign = -1 if (b.bits & y).bit_count() & 1 else 1
        out.add(mag if sign > 0 else -mag, PauliOperator.from_bits(n, a.bits, b.bits ^ y))
        if y == 0:
            break
        y = (y - 1) & a.bits
    out.terms.reverse()
    return out


def dense_transversal_t(n: int) -> ZOmegaArray:
    return dense_qfd(QfdGate.transversal_t(n))
