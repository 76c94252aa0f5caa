# n-torsion of the polygon fibres, the maps h_a, and the Frey-Kani kernel.

from pchcert.polygon import (IsogenyDescriptor, TorsionPoint, antiisometry_check,
                             dual_composite_check, frey_kani_kernel_check, isogeny_apply)

# a = 2 gives n = 5.  The map acts by a on the multiplicative part and through the component action.

h = IsogenyDescriptor(2, 5, 5)
print(isogeny_apply(h, TorsionPoint(5, 1, 3)))

# Anti-isometry, checked over all 5^4 pairs.

report = antiisometry_check(2, 5, 5)
print("anti-isometry:", report.holds, report.pairs_checked, "pairs")

# The identity is not an anti-isometry; the check returns a witness.

print(antiisometry_check(2, 5, 5, phi=lambda p: p).witnesses)

# hdual . h is multiplication by n - 1 when k1 = k2, but not for (5, 10).

for ks in ((10, 10), (5, 10)):
    r = dual_composite_check(2, *ks)
    print(ks, "multipliers", r.multipliers, "is n-1:", r.is_mult_by_n_minus_1)

# Kernel of p(X, Y) = (X + hdual Y, h_{-a} X + Y) is the graph of h_a.

for a in (2, 4):
    print(frey_kani_kernel_check(a).to_json())
