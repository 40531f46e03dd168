"""Walk a GHZ state through rank, partial trace and the single-party normal form."""

from stabkit import StabiliserArray, cnf1, format_array, ptrace, rank, rref

ghz = StabiliserArray.from_strings(["+XXX", "+ZZI", "+IZZ"])
print("GHZ on three qubits")
print(format_array(ghz))

print(f"rank = {rank(ghz)}, so the state is pure")
print("row-reduced form:")
print(format_array(rref(ghz).array))

# Dropping the last qubit leaves a classically correlated mixture.
print("after tracing out qubit 3:")
print(format_array(ptrace(ghz, [2])))

res = cnf1(ghz)
print(f"normal form (r = {res.r}):")
print(format_array(res.array))
print("circuit:", ", ".join(str(g) for g in res.circuit if not g.is_row_op))
