"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its runtime, visible
even under pytest's output capture.
"""

import itertools
import json
import os
import random
import tempfile
import time
from contextlib import contextmanager

import numpy as np
import pytest

from csst.checker import canonical_generators, check_css_t_pair, check_theorem1, cssify, signed_css_stabilizer
from csst.cli import main
from csst.codes import LinearCode, star_containment
from csst.exact import ZOmegaArray
from csst.fixtures import (
    ALL_CSS,
    cube_code,
    fifteen_qubit_code,
    qrm_data,
    six_qubit_code,
    sixteen_qubit_dmc,
)
from csst.gf2 import BitMatrix, BitVector
from csst.logical import (
    anf_from_phases,
    check_theorem2,
    dense_preservation_and_action,
    logical_phases,
)
from csst.pauli import (
    PauliOperator,
    StabilizerCode,
    dense_matrix,
    dense_projector,
    is_nondegenerate,
    stabilizer_distance,
)
from csst.qfd import QfdGate, dense_conjugate, qfd_conjugate, transversal_t_conjugate
from csst.search import SearchSpec, cmd_search


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            ok = ok and elapsed < limit
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} "
                      f"({elapsed:.2f} s, limit {limit} s)")
        assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
    return run


def code_from(rows, n):
    return LinearCode(BitMatrix(n, tuple(BitVector.from_str(r).bits for r in rows)))


def passing_bases():
    bases = [six_qubit_code()]
    for r in cmd_search(SearchSpec(n=8)).records:
        C1, C2 = code_from(r["C1"], 8), code_from(r["C2"], 8)
        bases.append(signed_css_stabilizer(C1, C2, BitVector.from_str(r["z_sign_offset"]).bits))
    return bases


def dense_distance(S):
    """Smallest weight of a Pauli that acts nontrivially on the code space, from the projector."""
    P = dense_projector(S).to_complex()
    n = S.n
    for w in range(1, n + 1):
        for supp in itertools.combinations(range(n), w):
            for letters in itertools.product((1, 2, 3), repeat=w):
                a = sum(1 << q for q, l in zip(supp, letters) if l & 1)
                b = sum(1 << q for q, l in zip(supp, letters) if l & 2)
                E = dense_matrix(PauliOperator.from_bits(n, a, b)).to_complex()
                M = P @ E @ P
                c = np.trace(M) / np.trace(P)
                if np.max(np.abs(M - c * P)) > 1e-9:
                    return w
    return n


def test_01_six_qubit_example(criterion):
    with criterion(1, "[[6,2,2]] passes both modes, dense preserved, logical identity", 1):
        S = six_qubit_code()
        assert check_theorem1(S, "necessary").passed
        assert check_theorem1(S, "sufficient").passed
        res = dense_preservation_and_action(S)
        assert res.preserved and res.exact
        U = res.unitary
        assert U == ZOmegaArray.from_scalar(U[0, 0], (1,)).kron(
            dense_matrix(PauliOperator.identity(2)))
        assert res.diagonal_exponents() == [0, 0, 0, 0]


def test_02_transversal_t_conjugation(criterion):
    with criterion(2, "T^4 E(a,b) T^4^dag Pauli sum equals dense conjugation for all 256 (a,b)", 10):
        g = QfdGate.transversal_t(4)
        for a, b in itertools.product(range(16), repeat=2):
            S = transversal_t_conjugate(BitVector(4, a), BitVector(4, b))
            assert S.to_dense() == dense_conjugate(g, PauliOperator.from_bits(4, a, b))


def test_03_qfd_pipeline(criterion):
    with criterion(3, "QFD conjugation plus residual expansion matches dense, 500 cases", 30):
        rng = random.Random(1)
        for _ in range(500):
            n, ell = rng.randint(1, 3), rng.choice([2, 3])
            R = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                for j in range(i, n):
                    R[i, j] = R[j, i] = rng.randrange(1 << ell)
            g = QfdGate(ell, R)
            P = PauliOperator.from_bits(n, rng.getrandbits(n), rng.getrandbits(n))
            got = qfd_conjugate(g, P).expand().to_dense().to_complex()
            want = dense_conjugate(g, P).to_complex()
            assert np.max(np.abs(got - want)) <= 1e-10


def test_04_campbell_ccz(criterion):
    with criterion(4, "[[8,3,2]] induces CCZ, coset phases and dense unitary", 5):
        d = cube_code()
        rep = logical_phases(d.C1, d.C2, d.G_coset, offset=d.basis_offset)
        assert anf_from_phases(rep).term_set() == {frozenset({1, 2, 3})}
        S = signed_css_stabilizer(d.C1, d.C2, d.offset)
        U = dense_preservation_and_action(S, d.G_coset, d.frame).unitary_complex()
        ccz = np.diag([1] * 7 + [-1]).astype(complex)
        phase = U[0, 0]
        assert abs(abs(phase) - 1) < 1e-12 and np.allclose(U, phase * ccz, atol=1e-12)


def test_05_sixteen_qubit(criterion):
    with criterion(5, "[[16,3,2]] from monomials is a CSS-T pair inducing CCZ", 5):
        d = sixteen_qubit_dmc()
        assert check_css_t_pair(d.C1, d.C2).passed
        rep = logical_phases(d.C1, d.C2, d.G_coset, offset=d.basis_offset)
        assert rep.anf.term_set() == {frozenset({1, 2, 3})}


CUBIC_TERMS = [
    ("x1x2", "x3x4", "x5x6"), ("x1x2", "x3x5", "x4x6"), ("x1x2", "x3x6", "x4x5"),
    ("x1x3", "x2x4", "x5x6"), ("x1x3", "x2x5", "x4x6"), ("x1x3", "x2x6", "x4x5"),
    ("x1x4", "x2x3", "x5x6"), ("x1x4", "x2x5", "x3x6"), ("x1x4", "x2x6", "x3x5"),
    ("x1x5", "x2x3", "x4x6"), ("x1x5", "x2x4", "x3x6"), ("x1x5", "x2x6", "x3x4"),
    ("x1x6", "x2x3", "x4x5"), ("x1x6", "x2x4", "x3x5"), ("x1x6", "x2x5", "x3x4"),
]


def test_06_qrm_26(criterion):
    with criterion(6, "[[64,15,4]] logical phases give the 15-term cubic", 60):
        d = qrm_data(2, 6)
        labels = list(d.labels)
        assert labels[:3] == ["x1x2", "x1x3", "x1x4"] and labels[-1] == "x5x6"
        rep = logical_phases(d.C1, d.C2, d.G_coset, labels=labels)
        assert rep.uniform_within_coset and rep.phases.size == 1 << 15
        assert d.C2.k == 7 and set(np.unique(rep.phases)) <= {0, 4}
        assert rep.anf.term_set(labels) == {frozenset(t) for t in CUBIC_TERMS}
        idx = {lab: i for i, lab in enumerate(labels)}

        def q(*monos):
            return rep.anf.evaluate(sum(1 << idx[m] for m in monos))
        assert q("x1x2", "x3x4", "x5x6") == 1
        assert q("x1x2", "x3x4", "x5x6", "x3x5", "x4x6") == 0


def test_07_fifteen_qubit(criterion):
    with criterion(7, "[[15,1,3]] passes the logical-T test; a broken row fails it", 5):
        d = fifteen_qubit_code()
        rep = check_theorem2(d.C1, d.C2, d.G_coset)
        assert rep.passed
        phases = logical_phases(d.C1, d.C2, d.G_coset).phases
        assert int(phases[1]) in (1, 7)
        rows = list(d.C2.gen.rows)
        rows[1] ^= 1 << 0
        C2 = LinearCode(BitMatrix(15, tuple(rows)))
        C1 = LinearCode(d.G_coset.stack(C2.gen))
        broken = check_theorem2(C1, C2, d.G_coset)
        assert not broken.triorthogonal and not broken.passed


def test_08_star_containment(criterion):
    with criterion(8, "star containment on every passing fixture and search pair (>= 50 codes)", 120):
        count = 0
        for make in ALL_CSS.values():
            data = make()
            if data.C2.k <= 20 and check_css_t_pair(data.C1, data.C2).passed:
                assert star_containment(data.C1, data.C2)
                count += 1
        for n in (8, 16):
            for r in cmd_search(SearchSpec(n=n)).records:
                assert star_containment(code_from(r["C1"], n), code_from(r["C2"], n))
                count += 1
        assert count >= 50


def _mutate(S, rng):
    n = S.n
    gens = list(S.generators)
    i = rng.randrange(len(gens))
    if rng.random() < 0.5:
        g = gens[i]
        gens[i] = PauliOperator(g.a, g.b, (g.kappa + 2) % 4)
        return StabilizerCode(n, tuple(gens))
    for _ in range(1000):
        a, b = rng.getrandbits(n), rng.getrandbits(n)
        gens[i] = PauliOperator.from_bits(n, a, b, (a & b).bit_count() % 2 + 2 * rng.getrandbits(1))
        try:
            return StabilizerCode(n, tuple(gens))
        except ValueError:
            continue
    raise RuntimeError("no valid replacement generator")


def test_09_falsification(criterion):
    with criterion(9, "200 mutations: checker and dense oracle agree", 300):
        rng = random.Random(9)
        bases = passing_bases()
        stats = {"preserved": 0, "broken": 0}
        for _ in range(200):
            S = _mutate(rng.choice(bases), rng)
            dense = dense_preservation_and_action(S).preserved
            assert check_theorem1(S, "sufficient").passed == dense
            # the necessary-condition mode never rejects a preserved code
            assert check_theorem1(S, "necessary").passed or not dense
            stats["preserved" if dense else "broken"] += 1
        assert stats["preserved"] and stats["broken"]


def test_10_cssify(criterion):
    with criterion(10, ">= 20 non-degenerate non-CSS codes keep T symmetry after CSS-ification", 300):
        rng = random.Random(10)
        bases = passing_bases()
        done = 0
        for _ in range(20000):
            if done >= 20:
                break
            B = rng.choice(bases)
            n = B.n
            gens = list(B.generators)
            xi = [i for i, g in enumerate(gens) if g.a.bits]
            for i in rng.sample(xi, rng.randint(1, len(xi))):
                a, b = gens[i].a.bits, rng.getrandbits(n)
                gens[i] = PauliOperator.from_bits(n, a, b, (a & b).bit_count() % 2 + 2 * rng.getrandbits(1))
            try:
                S = StabilizerCode(n, tuple(gens))
            except ValueError:
                continue
            if not any(P.b.bits for P in canonical_generators(S)[1]):
                continue
            if not check_theorem1(S, "sufficient").passed:
                continue
            d = dense_distance(S)
            assert d == stabilizer_distance(S)
            if not is_nondegenerate(S, d):
                continue
            out = cssify(S)
            assert out.is_css and (out.n, out.k) == (S.n, S.k)
            assert check_theorem1(out, "sufficient").passed
            assert dense_preservation_and_action(out).preserved
            assert dense_distance(out) >= d
            done += 1
        assert done >= 20


@pytest.mark.parametrize("n,target", [(8, (8, 3, 2)), (16, (16, 3, 2))])
def test_11_search(criterion, n, target):
    with criterion(11, f"monomial search at n={n} finds [[{target[0]},{target[1]},{target[2]}]]", 120):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.json")
            assert main(["search", "--n", str(n), "--mode", "monomial", "-o", path]) == 0
            with open(path) as fh:
                records = json.load(fh)["records"]
        assert target in {(r["n"], r["k"], r["d"]) for r in records}
