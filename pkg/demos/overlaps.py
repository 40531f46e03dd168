"""Exact overlaps and fidelities for a handful of one- and two-qubit states."""

from stabkit import StabiliserArray, overlap

STATES = {
    "|0>": ["+Z"],
    "|1>": ["-Z"],
    "|+>": ["+X"],
    "I/2": [],
}

for a_name, a_rows in STATES.items():
    for b_name, b_rows in STATES.items():
        a = StabiliserArray.from_strings(a_rows, n_qubits=1)
        b = StabiliserArray.from_strings(b_rows, n_qubits=1)
        res = overlap(a, b)
        print(f"{a_name:>4} vs {b_name:<4}  F = {str(res.F):<7} F_u = {str(res.F_u):<8}"
              f" D = {res.D_bures:.4f}")

bell = StabiliserArray.from_strings(["+XX", "+ZZ"])
res = overlap(bell, bell)
print(f"\nBell with itself: F = {res.F}, F_u = {res.F_u}, D = {res.D_bures}")
