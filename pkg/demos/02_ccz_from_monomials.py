"""
CCZ from decreasing monomial codes
==================================

The pair C1 = <1, x1, x2, x3, x4, x1x2>, C2 = <1, x1, x2> on 16 qubits is a
CSS-T pair, and transversal T induces CCZ on its three logical qubits.
"""

from csst import check_css_t_pair, logical_phases
from csst.codes import min_distance, dual, star_containment
from csst.fixtures import cube_code, sixteen_qubit_dmc

d = sixteen_qubit_dmc()
print("pair check:", check_css_t_pair(d.C1, d.C2).passed)
print("star containment:", star_containment(d.C1, d.C2))
print("parameters: [[%d,%d,%d]]" % (d.n, d.k, min(min_distance(d.C1), min_distance(dual(d.C2)))))

# phases of T on |v>_L, as powers of exp(i pi/4)
rep = logical_phases(d.C1, d.C2, d.G_coset, offset=d.basis_offset, labels=list(d.labels))
print("phases:", [int(p) for p in rep.phases])
print("q(v) =", rep.anf.format(rep.labels))

# in the plain coset frame the same gate reads as CCZ dressed by logical X
plain = logical_phases(d.C1, d.C2, d.G_coset, labels=list(d.labels))
print("plain frame q(v) =", plain.anf.format(plain.labels))

# the 8-qubit cube code behaves the same way
c = cube_code()
print("[[8,3,2]] q(v) =", logical_phases(c.C1, c.C2, c.G_coset, offset=c.basis_offset).anf)
