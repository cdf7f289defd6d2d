"""
Checking arrays and locating a fault
====================================

Three small arrays ship with the package. Two of them can pin down any single
faulty pairwise interaction, one cannot.
"""

from locarray import (
    fixture,
    indistinguishable_pairs,
    is_covering,
    is_locating_1t,
    is_locating_bar1t,
    locate_fault,
    rho,
    simulate_outcomes,
)

# Five rows, four binary factors: every pair of levels shows up, so it is covering
weak = fixture("covering5")
print(weak.to_text())
print("covering:", is_covering(weak), " locating:", is_locating_1t(weak))

# but some interactions only ever appear together, in the same rows
T1, T2 = indistinguishable_pairs(weak)[0]
print(f"{T1} and {T2} both appear in rows {sorted(rho(weak, T1))}")

# A seven row array fixes that
strong = fixture("locating7")
print("locating7 (1-bar, 2)-locating:", is_locating_bar1t(strong))

# Rows 4 and 5 fail, everything else passes
print(locate_fault(strong, "PPPFFPP"))

# Round trip: plant a fault, run the suite, ask which interaction is to blame
for T in [T1, T2]:
    outcomes = simulate_outcomes(strong, [T])
    print("".join(outcomes), "->", locate_fault(strong, outcomes))

# Two planted faults break the single-fault assumption, and the answer says so
print(locate_fault(strong, simulate_outcomes(strong, [T1, T2])))

# The larger ten-factor array from the same family
big = fixture("locating11")
print(f"{big.n_rows} rows x {big.model.k} factors, locating: {is_locating_bar1t(big)}")
