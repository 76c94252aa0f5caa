# Divisor of f_PQ on the genus-2 model: the vertical part solved from the intersection matrix.

from pchcert.surface import build_parshin_vi, closed_form_check, solve_function_divisor

g = build_parshin_vi(3, 2, 3)
print(g.names)
for name, row in zip(g.names, g.intersection_matrix()):
    print(f"{name:>3}", row)

# Horizontal part 2P - 2Q with P on B1 and Q on B2; B2 normalized to 0.

sol = solve_function_divisor(g, {"B1": 2, "B2": -2}, "B2")
print({k: str(v) for k, v in sol.coefficients.items()})

# The closed form a1 = b_i = 2(s+1), c_j = 2(s+1-j), d_k = 0 across a range of shapes.

for r, s, t in ((1, 0, 1), (3, 2, 3), (9, 6, 7)):
    res = closed_form_check(r, s, t)
    print((r, s, t), "matches:", res["matches"], "a1 =", res["a1"])
