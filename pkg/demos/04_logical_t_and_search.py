"""
Logical T and a small search
============================

The 15-qubit punctured Reed-Muller code turns transversal T into a logical
T-dagger.  A search over decreasing monomial pairs at n = 16 recovers
the CCZ code from the previous demo.
"""

from csst import check_theorem2, logical_phases
from csst.fixtures import fifteen_qubit_code
from csst.search import SearchSpec, cmd_search

d = fifteen_qubit_code()
rep = check_theorem2(d.C1, d.C2, d.G_coset)
print("triorthogonal:", rep.triorthogonal, " direction:", rep.direction)
print("phase on |1>_L:", logical_phases(d.C1, d.C2, d.G_coset).phase(1), "(7 means exp(-i pi/4))")

res = cmd_search(SearchSpec(n=16))
print("examined", res.candidates_examined, "candidates,", len(res.records), "CSS-T pairs")
for r in res.records[:8]:
    # logical actions of rate-heavy pairs are long polynomials; show the degree only
    print("  [[%d,%d,%d]]  C1={%s}  C2={%s}  %s"
          % (r["n"], r["k"], r["d"], r["C1_monomials"], r["C2_monomials"], r["logical"].split(":")[0]))

hit = [r for r in res.records if r["C1_monomials"] == "1,x1,x2,x3,x4,x1x2" and r["C2_monomials"] == "1,x1,x2"]
print("CCZ pair:", hit[0]["logical"])
