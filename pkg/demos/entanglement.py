"""Count EPR pairs across cuts of a random state and show its two-party normal form."""

from stabkit import QubitPartition, cnfp, format_array, full_normal_form, random_array
from stabkit.oracle import dense_logneg, dense_state

a = random_array(6, 6, seed=11)
print("random pure state on six qubits:")
print(format_array(a))

rho = dense_state(a)
for party_a in ([0], [0, 1], [0, 2, 4], [0, 1, 2]):
    cut = QubitPartition.from_party_A(party_a, 6)
    p = cnfp(a, cut).p
    check = dense_logneg(rho, sorted(cut.party_B))
    label = ",".join(str(q + 1) for q in party_a)
    print(f"party A = {{{label}}}: p = {p}  (dense log-negativity {check:.6f})")

cut = QubitPartition.from_party_A([0, 1, 2], 6)
rep = full_normal_form(a, cut)
print(f"\nnormal form across {{1,2,3}} | {{4,5,6}} with {rep.p} EPR pairs:")
print(format_array(rep.normal_form))
