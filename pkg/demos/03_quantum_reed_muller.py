"""
Logical action on QRM(2,6)
==========================

On the [[64,15,4]] quantum Reed-Muller code transversal T applies a product of
15 CCZ gates, one per perfect matching of the six variables.
"""

import time

from csst import logical_phases, qrm_admissible
from csst.fixtures import qrm_data

print("admissible (2,6):", qrm_admissible(2, 6), " (1,6):", qrm_admissible(1, 6))

d = qrm_data(2, 6)
t = time.perf_counter()
rep = logical_phases(d.C1, d.C2, d.G_coset, labels=list(d.labels))
print("%d logical states in %.2f s" % (rep.phases.size, time.perf_counter() - t))

for term in rep.anf.format(rep.labels).split(" + "):
    print("  ", term)

# f = x1x2 + x3x4 + x5x6 sets three logical qubits; one CCZ fires
idx = {lab: i for i, lab in enumerate(d.labels)}
v = sum(1 << idx[m] for m in ("x1x2", "x3x4", "x5x6"))
print("q(x1x2 + x3x4 + x5x6) =", rep.anf.evaluate(v))
v |= (1 << idx["x3x5"]) | (1 << idx["x4x6"])
print("q(... + x3x5 + x4x6) =", rep.anf.evaluate(v))
