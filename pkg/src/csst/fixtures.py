"""Named codes used throughout the tests, demos and CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .codes import LinearCode, MonomialSet, monomial_code, monomial_matrix, reed_muller
from .gf2 import BitMatrix, BitVector, puncture
from .pauli import SignRule, StabilizerCode, css_stabilizer


@dataclass(frozen=True)
class CssData:
    """CSS code data: ``C2`` inside ``C1``, coset rows, labels, Z-sign offset and logical frame.

    ``offset`` is fixed by the Z-stabilizer signs.  ``frame`` is a word of
    ``C1`` choosing which coset plays ``|0...0>_L``; it relabels the logical
    basis by a logical Pauli X and leaves the stabilizer untouched.
    """

    name: str
    C1: LinearCode
    C2: LinearCode
    G_coset: BitMatrix
    labels: tuple[str, ...] | None = None
    offset: int = 0
    frame: int = 0

    @property
    def basis_offset(self) -> int:
        return self.offset ^ self.frame

    @property
    def n(self) -> int:
        return self.C1.n

    @property
    def k(self) -> int:
        return self.C1.k - self.C2.k

    def stabilizer(self, rule: SignRule | str = SignRule.I_TO_WEIGHT) -> StabilizerCode:
        return css_stabilizer(self.C2, self.C1, rule)


def six_qubit_code(plus_signs: bool = False) -> StabilizerCode:
    """The [[6,2,2]] code ``X^6, -Z1Z2, -Z3Z4, -Z5Z6`` (``+`` signs on request)."""
    s = "+" if plus_signs else "-"
    return StabilizerCode.from_strings(["+XXXXXX", f"{s}ZZIIII", f"{s}IIZZII", f"{s}IIIIZZ"])


def six_qubit_data() -> CssData:
    pairs = BitMatrix.from_strings(["110000", "001100", "000011"])
    return CssData("[[6,2,2]]", LinearCode(pairs), LinearCode.from_rows(["111111"]),
                   BitMatrix.from_strings(["110000", "001100"]),
                   offset=BitVector.from_str("101010").bits)


def qrm_data(r: int, m: int) -> CssData:
    """Quantum Reed-Muller: ``C1 = RM(r,m)``, ``C2 = RM(r-1,m)``, coset rows the degree-r monomials."""
    top = MonomialSet.all_up_to_degree(r, m)
    deg_r = MonomialSet(m, tuple(s for s in top.monomials if len(s) == r))
    return CssData(f"QRM({r},{m})", reed_muller(r, m), reed_muller(r - 1, m),
                   monomial_matrix(deg_r), tuple(deg_r.labels()))


def cube_code() -> CssData:
    """The [[8,3,2]] code, QRM(1,3).

    In the plain coset frame transversal T puts -1 on every nonzero logical
    state; with ``|000>_L`` on the coset of ``x1 + x2 + x3`` it is exactly CCZ.
    """
    d = qrm_data(1, 3)
    return CssData("[[8,3,2]]", d.C1, d.C2, d.G_coset, d.labels,
                   frame=d.G_coset.combination(0b111))


def sixteen_qubit_dmc() -> CssData:
    """[[16,3,2]] from decreasing monomial codes: ``C2 = <1,x1,x2>``, coset rows ``x3, x4, x1x2``."""
    g2 = MonomialSet.parse("1,x1,x2", 4)
    gx = MonomialSet.parse("x3,x4,x1x2", 4)
    g1 = MonomialSet(4, g2.monomials + gx.monomials)
    G = monomial_matrix(gx)
    # frame x3 + x4 turns v[x1x2](1 + v[x3])(1 + v[x4]) into the bare CCZ term
    return CssData("[[16,3,2]]", monomial_code(g1), monomial_code(g2),
                   G, tuple(gx.labels()), frame=G.combination(0b011))


def fifteen_qubit_code() -> CssData:
    """[[15,1,3]]: ``C1`` is RM(1,4) punctured at the point 0000, ``C2`` its even subcode.

    The coset row is the all-ones word; ``[1; G2]`` is triorthogonal.
    """
    keep = BitVector.from_support(16, range(1, 16))
    rm = monomial_matrix(MonomialSet.all_up_to_degree(1, 4))
    C1 = LinearCode(puncture(rm, keep))
    C2 = LinearCode(puncture(BitMatrix(16, rm.rows[1:]), keep))
    return CssData("[[15,1,3]]", C1, C2, BitMatrix.from_strings(["1" * 15]))


ALL_CSS = {
    "622": six_qubit_data,
    "832": cube_code,
    "16_3_2": sixteen_qubit_dmc,
    "15_1_3": fifteen_qubit_code,
    "qrm26": lambda: qrm_data(2, 6),
}
