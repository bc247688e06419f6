"""
Transversal T on a six-qubit code
=================================

A [[6,2,2]] code whose Z stabilizers carry minus signs is fixed by T on every
qubit, and T acts as the logical identity.  Flipping the signs breaks it.
"""

from csst import check_theorem1, dense_preservation_and_action
from csst.fixtures import six_qubit_code
from csst.pauli import enumerate_elements, format_pauli

S = six_qubit_code()
print("generators:", S.strings())

# the group has 16 elements; a single X part (all ones) carries the whole test
for P, _ in enumerate_elements(S):
    print(" ", format_pauli(P))

report = check_theorem1(S, "sufficient")
rec = report.per_element[0]
print("passed:", report.passed)
print("dual of Z on supp(a):", rec.dual_basis)
print("self-dual witness:  ", rec.A_basis)

# the dense projector check agrees, and the induced gate is trivial
res = dense_preservation_and_action(S)
print("dense preserved:", res.preserved, " logical phases:", res.diagonal_exponents())

# with +ZZ signs the sign condition fails
bad = check_theorem1(six_qubit_code(plus_signs=True), "sufficient")
print("plus signs:", bad.passed, "-", bad.failures()[0].failure)
print("dense:", dense_preservation_and_action(six_qubit_code(plus_signs=True)).preserved)
