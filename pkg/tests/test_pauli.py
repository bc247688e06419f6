import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from csst.codes import LinearCode, reed_muller
from csst.exact import ZOmegaArray
from csst.fixtures import six_qubit_code
from csst.gf2 import BitMatrix, BitVector
from csst.pauli import (
    PauliOperator,
    SignRule,
    StabilizerCode,
    commutes,
    css_stabilizer,
    dense_matrix,
    dense_projector,
    dense_projector_product,
    enumerate_elements,
    format_pauli,
    format_stabilizer,
    is_nondegenerate,
    multiply,
    parse_pauli_string,
    parse_stabilizer,
    stabilizer_distance,
)

X = np.array([[0, 1], [1, 0]])
Z = np.array([[1, 0], [0, -1]])
Y = np.array([[0, -1j], [1j, 0]])


def all_paulis(n):
    for a, b, k in itertools.product(range(1 << n), range(1 << n), range(4)):
        yield PauliOperator.from_bits(n, a, b, k)


@st.composite
def paulis(draw, n):
    return PauliOperator.from_bits(n, draw(st.integers(0, (1 << n) - 1)),
                                   draw(st.integers(0, (1 << n) - 1)), draw(st.integers(0, 3)))


class TestOperators:
    def test_single_qubit_matrices(self):
        assert np.allclose(dense_matrix(parse_pauli_string("Y")).to_complex(), Y)
        assert np.allclose(dense_matrix(parse_pauli_string("I")).to_complex(), np.eye(2))

    def test_tensor_order(self):
        assert np.allclose(dense_matrix(parse_pauli_string("XZ")).to_complex(), np.kron(X, Z))

    def test_squares_to_identity(self):
        for P in all_paulis(2):
            if P.kappa == 0:
                assert multiply(P, P) == PauliOperator.identity(2)

    def test_x_times_z(self):
        R = multiply(parse_pauli_string("X"), parse_pauli_string("Z"))
        assert (R.a.bits, R.b.bits, R.kappa) == (1, 1, 3)

    def test_commuting_example_generators(self):
        A, B = parse_pauli_string("-ZZIIII"), parse_pauli_string("XXXXXX")
        assert multiply(A, B) == multiply(B, A)

    @pytest.mark.parametrize("n", [1, 2])
    def test_multiply_matches_dense_exhaustive(self, n):
        for P in all_paulis(n):
            for Q in all_paulis(n):
                if P.kappa or Q.kappa > 1:
                    continue
                assert dense_matrix(P) @ dense_matrix(Q) == dense_matrix(multiply(P, Q))

    def test_multiply_matches_dense_n3(self):
        ops = [P for P in all_paulis(3) if P.kappa == 0]
        rng = random.Random(0)
        for P, Q in [(rng.choice(ops), rng.choice(ops)) for _ in range(400)]:
            assert dense_matrix(P) @ dense_matrix(Q) == dense_matrix(multiply(P, Q))
            dp, dq = dense_matrix(P), dense_matrix(Q)
            assert commutes(P, Q) == (dp @ dq == dq @ dp)

    @given(paulis(8), paulis(8))
    def test_multiply_random_n8(self, P, Q):
        assert dense_matrix(P) @ dense_matrix(Q) == dense_matrix(multiply(P, Q))

    def test_commutes_examples(self):
        assert commutes(parse_pauli_string("X"), parse_pauli_string("X"))
        assert not commutes(parse_pauli_string("X"), parse_pauli_string("Z"))
        assert commutes(parse_pauli_string("XXII"), parse_pauli_string("ZZZZ"))


class TestStrings:
    def test_parse_examples(self):
        P = parse_pauli_string("-ZZIIII")
        assert (str(P.a), str(P.b), P.kappa) == ("000000", "110000", 2)
        P = parse_pauli_string("XXXXXX")
        assert (str(P.a), str(P.b), P.kappa) == ("111111", "000000", 0)
        P = parse_pauli_string("+iY")
        assert (P.a.bits, P.b.bits, P.kappa) == (1, 1, 1)

    @given(paulis(5))
    def test_round_trip(self, P):
        assert parse_pauli_string(format_pauli(P)) == P

    @pytest.mark.parametrize("bad", ["", "XQ", "i", "--X", "+"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_pauli_string(bad)


class TestStabilizers:
    def test_css_example(self):
        pairs = LinearCode.from_rows(["110000", "001100", "000011"])
        S = css_stabilizer(LinearCode.from_rows(["111111"]), pairs, SignRule.I_TO_WEIGHT)
        assert S.strings() == ["+XXXXXX", "-ZZIIII", "-IIZZII", "-IIIIZZ"]

    def test_cube_code(self):
        S = css_stabilizer(reed_muller(0, 3), reed_muller(1, 3), SignRule.ALL_PLUS)
        assert (S.n, S.k, S.r) == (8, 3, 5)
        table = enumerate_elements(S)
        assert len(table) == 32
        assert all(P.kappa == 0 for P, _ in table if not P.b.bits)
        assert is_nondegenerate(S, 2)

    def test_empty_c2(self):
        full = LinearCode(BitMatrix.identity(4))
        S = css_stabilizer(LinearCode(BitMatrix.empty(4)), full)
        assert S.r == 0 and S.k == 4

    def test_i_to_weight_needs_even_weights(self):
        with pytest.raises(ValueError):
            css_stabilizer(LinearCode(BitMatrix.empty(3)), LinearCode.from_rows(["110", "011"]),
                           SignRule.I_TO_WEIGHT)

    def test_containment_checked(self):
        with pytest.raises(ValueError):
            css_stabilizer(reed_muller(1, 3), reed_muller(0, 3))

    def test_rejects_invalid_generators(self):
        with pytest.raises(ValueError):
            StabilizerCode.from_strings(["X", "Z"])
        with pytest.raises(ValueError):
            StabilizerCode.from_strings(["XX", "XX"])
        with pytest.raises(ValueError):
            StabilizerCode.from_strings(["iXX"])

    def test_example_table(self):
        S = six_qubit_code()
        table = enumerate_elements(S)
        assert len(table) == 16
        elems = {format_pauli(P) for P, _ in table}
        assert "+YYYYYY" in elems
        assert enumerate_elements(StabilizerCode(3, ())).element(0) == PauliOperator.identity(3)

    def test_nondegenerate(self):
        S = six_qubit_code()
        assert is_nondegenerate(S, 2) and is_nondegenerate(S, 0)
        assert not is_nondegenerate(S, 3)
        assert stabilizer_distance(S) == 2

    def test_file_round_trip(self):
        S = six_qubit_code()
        assert parse_stabilizer(format_stabilizer(S, "example")) == S
        with pytest.raises(ValueError):
            parse_stabilizer("+XX\n")


class TestProjector:
    def test_example_projector(self):
        S = six_qubit_code()
        P = dense_projector(S)
        assert P.trace() == P.trace().integer(4)
        assert P @ P == P
        assert P.dagger() == P

    def test_identity_projector(self):
        P = dense_projector(StabilizerCode(2, ()))
        assert np.allclose(P.to_complex(), np.eye(4))

    def test_table_matches_product(self, rng):
        from conftest import random_stabilizer
        for _ in range(25):
            S = random_stabilizer(rng.randint(2, 6), rng)
            P = dense_projector(S)
            assert P == dense_projector_product(S)
            assert P @ P == P
            assert abs(complex(P.trace()) - 2 ** S.k) < 1e-9
