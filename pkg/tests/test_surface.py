from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pchcert.surface import (FibreGraph, InconsistentSystem, NonUnique, SurfaceError,
                             build_parshin_vi, closed_form_check, solve_function_divisor)

odd = st.sampled_from([1, 3, 5, 7, 9])


def test_b1_row():
    g = build_parshin_vi(3, 2, 3)
    assert len(g.vertices) == 10
    row = dict(zip(g.names, g.intersection_matrix()[g.index("B1")]))
    assert row["B1"] == -3 and row["X1"] == row["X3"] == row["L1"] == 1
    assert sum(row.values()) == 0


def test_single_curve_loop_has_double_edge():
    g = build_parshin_vi(1, 0, 1)
    assert g.neighbours("X1") == {"B1": 2}
    assert g.neighbours("B1") == {"X1": 2, "B2": 1}
    assert not any(g.row_sums())


@pytest.mark.parametrize("r,s,t", [(2, 1, 3), (3, 1, 4), (0, 1, 3), (3, -1, 3)])
def test_builder_rejects(r, s, t):
    with pytest.raises(SurfaceError):
        build_parshin_vi(r, s, t)


def test_parity_can_be_relaxed():
    g = build_parshin_vi(4, 1, 4, require_odd=False)
    assert not any(g.row_sums())
    assert closed_form_check(4, 1, 4, require_odd=False)["matches"]


def test_solution_323():
    sol = solve_function_divisor(build_parshin_vi(3, 2, 3), {"B1": 2, "B2": -2}, "B2")
    assert sol.coefficients["B1"] == 6
    assert sol.get("X") == [6, 6, 6]
    assert sol.get("L") == [4, 2]
    assert sol.get("Z") == [0, 0, 0]
    assert not any(sol.residual)


def test_zero_horizontal_gives_zero():
    sol = solve_function_divisor(build_parshin_vi(3, 2, 3), {})
    assert not any(sol.coefficients.values())


def test_101():
    res = closed_form_check(1, 0, 1)
    assert res["matches"] and res["a1"] == 2 and res["solution"].get("L") == []


def test_967():
    res = closed_form_check(9, 6, 7)
    assert res["matches"] and res["a1"] == 14


def test_inconsistent_and_non_unique():
    g = build_parshin_vi(3, 1, 3)
    with pytest.raises(InconsistentSystem):
        solve_function_divisor(g, {"B1": 1})
    # two disjoint (-2)-cycles: kernel of dimension 2
    two = FibreGraph([("P", -2), ("Q", -2), ("R", -2), ("S", -2)])
    two.add_edge("P", "Q", 2)
    two.add_edge("R", "S", 2)
    with pytest.raises(NonUnique):
        solve_function_divisor(two, {}, "P")


def test_weierstrass_data_recorded():
    g = build_parshin_vi(3, 2, 3)
    assert any("(s+1)/2" in n for n in g.notes)


@settings(max_examples=60, deadline=None)
@given(odd, st.integers(0, 6), odd)
def test_matrix_symmetric_and_numerically_trivial(r, s, t):
    m = build_parshin_vi(r, s, t).intersection_matrix()
    n = len(m)
    assert all(m[i][j] == m[j][i] for i in range(n) for j in range(n))
    assert all(sum(row) == 0 for row in m)


@settings(max_examples=60, deadline=None)
@given(odd, st.integers(0, 6), odd, st.integers(-5, 5))
def test_solution_linear_in_horizontal_data(r, s, t, c):
    g = build_parshin_vi(r, s, t)
    sol = solve_function_divisor(g, {"B1": 2 * c, "B2": -2 * c})
    base = closed_form_check(r, s, t)["solution"]
    assert all(sol.coefficients[v] == c * base.coefficients[v] for v in g.names)
    assert sol.coefficients["B2"] == 0
