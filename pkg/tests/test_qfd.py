import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from csst.exact import ZOmega, ZOmegaArray
from csst.gf2 import BitVector
from csst.pauli import PauliOperator, dense_matrix, parse_pauli_string
from csst.qfd import (
    QfdGate,
    dense_conjugate,
    dense_qfd,
    dense_transversal_t,
    format_pauli_sum,
    qfd_coefficients,
    qfd_conjugate,
    transversal_t_conjugate,
)

W = ZOmega.omega(1)
R2 = ZOmega.sqrt2_power(1)
T_GATE = QfdGate(3, [[1]])


def random_gate(rng, n, ell):
    R = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            R[i, j] = R[j, i] = rng.randrange(1 << ell)
    return QfdGate(ell, R)


def matches(lhs, rhs):
    if isinstance(lhs, ZOmegaArray) and isinstance(rhs, ZOmegaArray):
        return lhs == rhs
    lc = lhs.to_complex() if isinstance(lhs, ZOmegaArray) else lhs
    rc = rhs.to_complex() if isinstance(rhs, ZOmegaArray) else rhs
    return np.allclose(lc, rc, atol=1e-10)


class TestGate:
    def test_t_gate(self):
        D = dense_qfd(T_GATE)
        assert D[0, 0] == ZOmega.integer(1) and D[1, 1] == W

    def test_zero_is_identity(self):
        assert dense_qfd(QfdGate(3, np.zeros((3, 3), int))) == dense_qfd(QfdGate(2, np.zeros((3, 3), int)))
        assert np.allclose(dense_qfd(QfdGate(3, np.zeros((2, 2), int))).to_complex(), np.eye(4))

    def test_cz(self):
        assert np.allclose(dense_qfd(QfdGate(2, [[0, 1], [1, 0]])).to_complex(), np.diag([1, 1, 1, -1]))

    def test_level_four_is_float(self):
        D = dense_qfd(QfdGate(4, [[1]]))
        assert np.allclose(np.diag(D), [1, np.exp(2j * np.pi / 16)])

    def test_validation(self):
        with pytest.raises(ValueError):
            QfdGate(3, [[1, 1], [0, 1]])
        with pytest.raises(ValueError):
            QfdGate(0, [[1]])
        with pytest.raises(ValueError):
            qfd_conjugate(QfdGate(1, [[1]]), parse_pauli_string("X"))

    def test_symmetry_is_modular(self):
        QfdGate(2, [[1, 1], [5, 0]])


class TestConjugate:
    def test_txt(self):
        c = qfd_conjugate(T_GATE, parse_pauli_string("X"))
        # T X T^dagger = e^(-i pi/4) Y P: phase xi^7, Pauli E(1,1) = Y, residual the P gate
        assert c.phase_exponent == 7
        assert (c.pauli().a.bits, c.pauli().b.bits, c.pauli().kappa) == (1, 1, 0)
        assert c.residual == QfdGate(2, [[1]])
        assert c.expand().to_dense() == dense_conjugate(T_GATE, parse_pauli_string("X"))

    def test_z_type_commutes(self):
        g = random_gate(random.Random(1), 3, 3)
        c = qfd_conjugate(g, parse_pauli_string("ZIZ"))
        assert c.phase_exponent == 0 and not c.residual.R.any()
        assert c.pauli() == parse_pauli_string("ZIZ")

    def test_phase_gate_level_two(self):
        g = QfdGate(2, [[1]])
        c = qfd_conjugate(g, parse_pauli_string("X"))
        assert c.expand().to_dense() == dense_conjugate(g, parse_pauli_string("X"))
        # P X P^dagger = Y, the residual Z on one qubit is folded into the expansion
        assert dense_conjugate(g, parse_pauli_string("X")) == dense_matrix(parse_pauli_string("Y"))

    def test_integer_vector_input(self):
        g = QfdGate(3, [[1, 2], [2, 3]])
        for a, b in [([1, 2], [0, 1]), ([3, 1], [2, 0]), ([2, 0], [1, 3])]:
            c = qfd_conjugate(g, (a, b))
            from csst.qfd import generalized_pauli
            assert matches(c.expand().to_dense(), dense_conjugate(g, generalized_pauli(a, b)))

    def test_random_pipeline(self):
        rng = random.Random(7)
        for _ in range(200):
            n, ell = rng.randint(1, 3), rng.choice([2, 3])
            g = random_gate(rng, n, ell)
            P = PauliOperator.from_bits(n, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4))
            c = qfd_conjugate(g, P)
            assert c.residual.ell == ell - 1
            assert c.expand().to_dense() == dense_conjugate(g, P)


class TestCoefficients:
    def test_t_gate(self):
        c = qfd_coefficients(T_GATE)
        half = ZOmega.sqrt2_power(-1)
        assert c[0] == (ZOmega.integer(1) + W) * half
        assert c[1] == (ZOmega.integer(1) - W) * half

    def test_identity(self):
        c = qfd_coefficients(QfdGate(3, np.zeros((3, 3), int)))
        assert list(c) == [0] and c[0] == ZOmega.sqrt2_power(3)

    def test_z_gate(self):
        c = qfd_coefficients(QfdGate(1, [[1]]))
        assert list(c) == [1] and c[1] == R2

    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_parseval(self, ell):
        rng = random.Random(ell)
        for n in range(1, 5):
            g = random_gate(rng, n, ell)
            total = ZOmega()
            for v in qfd_coefficients(g).values():
                total = total + v.abs2()
            assert total == ZOmega.integer(1 << n)

    def test_float_level(self):
        g = QfdGate(4, [[3, 1], [1, 5]])
        c = qfd_coefficients(g)
        assert abs(sum(abs(v) ** 2 for v in c.values()) - 4) < 1e-10

    def test_reconstruction(self):
        rng = random.Random(2)
        for _ in range(10):
            g = random_gate(rng, 3, 3)
            total = ZOmegaArray.zeros((8, 8))
            for x, c in qfd_coefficients(g).items():
                total = total + dense_matrix(PauliOperator.from_bits(3, 0, x)).scale(c * ZOmega.sqrt2_power(-3))
            assert total == dense_qfd(g)


class TestTransversalT:
    def test_diagonal_input(self):
        S = transversal_t_conjugate(BitVector(3, 0), BitVector.from_str("101"))
        assert len(S.terms) == 1 and S.terms[0][0] == ZOmega.integer(1)

    def test_single_x(self):
        S = transversal_t_conjugate(BitVector(1, 1), BitVector(1, 0))
        assert format_pauli_sum(S) == "2^-1/2 * [ +X +Y ]"
        assert S.to_dense() == dense_conjugate(T_GATE, parse_pauli_string("X"))

    def test_all_x_six_qubits(self):
        S = transversal_t_conjugate(BitVector.from_str("111111"), BitVector(6, 0))
        assert len(S.terms) == 64
        assert all(c == ZOmega.sqrt2_power(-6) for c, _ in S.terms)
        assert format_pauli_sum(S).startswith("2^-3 * [ +XXXXXX +XXXXXY ")
        assert S.to_dense() == dense_conjugate(QfdGate.transversal_t(6), parse_pauli_string("XXXXXX"))

    @given(st.integers(0, 63), st.integers(0, 63))
    def test_term_structure(self, a, b):
        S = transversal_t_conjugate(BitVector(6, a), BitVector(6, b))
        w = a.bit_count()
        assert len(S.terms) == 1 << w
        assert all(P.a.bits == a for _, P in S.terms)
        assert {c for c, _ in S.terms} <= {ZOmega.sqrt2_power(-w), -ZOmega.sqrt2_power(-w)}
        assert S.squared_norm() == ZOmega.integer(1)

    def test_agrees_with_qfd_pipeline(self):
        g = QfdGate.transversal_t(4)
        for a, b in itertools.product(range(16), repeat=2):
            direct = transversal_t_conjugate(BitVector(4, a), BitVector(4, b))
            piped = qfd_conjugate(g, PauliOperator.from_bits(4, a, b)).expand()
            assert direct.to_dense() == piped.to_dense()

    def test_hermiticity_preserved(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(1, 4)
            P = PauliOperator.from_bits(n, rng.getrandbits(n), rng.getrandbits(n), rng.choice([0, 2]))
            if P.hermitian() if hasattr(P, "hermitian") else True:
                S = transversal_t_conjugate(P.a, P.b)
                M = S.to_dense()
                assert M == M.dagger()
                assert all(c.conj() == c for c in S.collected().values())

    def test_dense_t_is_unitary(self):
        T = dense_transversal_t(3)
        assert T @ T.dagger() == dense_qfd(QfdGate(3, np.zeros((3, 3), int)))
