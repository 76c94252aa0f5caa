from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pchcert.fibre import (ROLES, BasisMismatch, CycleVector, DegeneratePolygon, NotIncident,
                           ProductFibre, build_product_fibre, cycle_sum, double_curve_class,
                           intersection_number, lattice_for)

sizes = st.tuples(st.integers(3, 7), st.integers(3, 7))


@pytest.mark.parametrize("k1,k2", [(3, 3), (3, 4), (5, 7)])
def test_counts(k1, k2):
    f = build_product_fibre(k1, k2)
    s = f.summary()
    assert s["components"] == 2 * k1 * k2
    assert s["double_curves"] == 6 * k1 * k2
    assert s["triple_points"] == 4 * k1 * k2
    assert s["ch1_rank"] == 8 * k1 * k2


def test_degenerate():
    with pytest.raises(DegeneratePolygon):
        ProductFibre(2, 5)


def test_double_curve_classes():
    f = ProductFibre(3, 3)
    assert double_curve_class(f, ("h", 0, 0), f.S(0, 0)) == {"H": 1, "E_nw": -1, "E_ne": -1}
    assert double_curve_class(f, ("h", 0, 0), f.S(0, 1)) == {"H": 1, "E_sw": -1, "E_se": -1}
    assert double_curve_class(f, ("x", 0, 0, 1), f.F(0, 0)) == {"A": 1}
    with pytest.raises(NotIncident):
        double_curve_class(f, ("h", 0, 0), f.S(2, 2))


def test_lattices():
    s = lattice_for(("S", 0, 0))
    assert s.gram() == [[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, -1, 0, 0, 0],
                        [0, 0, 0, -1, 0, 0], [0, 0, 0, 0, -1, 0], [0, 0, 0, 0, 0, -1]]
    assert lattice_for(("F", 0, 0)).gram() == [[0, 1], [1, 0]]
    with pytest.raises(BasisMismatch):
        intersection_number(s, {"A": 1}, {"H": 1})


@settings(max_examples=15, deadline=None)
@given(sizes)
def test_every_strict_component_plays_each_role_once(ks):
    f = ProductFibre(*ks)
    seen = {}
    for corner in f.exceptional:
        for role in ROLES:
            seen.setdefault(f.corner_component(corner, role), []).append(role)
    assert all(sorted(r) == [1, 2, 3, 4] for r in seen.values())
    assert len(seen) == len(f.strict)
    for c in f.strict:
        for _, lab in ROLES.values():
            corner = f.corner_of(c, lab)
            role = next(r for r, (_, l) in ROLES.items() if l == lab)
            assert f.corner_component(corner, role) == c


@settings(max_examples=15, deadline=None)
@given(sizes)
def test_triple_points_are_transversal(ks):
    """On each component of a triple point its two double curves meet once."""
    f = ProductFibre(*ks)
    for t in f.triple_points:
        curves = [f.double_curve(n) for n in t.curves]
        for c in t.components:
            on_c = [d for d in curves if c in d.classes]
            assert len(on_c) == 2
            assert intersection_number(f.lattice(c), on_c[0].classes[c], on_c[1].classes[c]) == 1


@settings(max_examples=15, deadline=None)
@given(sizes)
def test_weighted_triple_point_formula(ks):
    """m_b (D^2 in Y_a) + m_a (D^2 in Y_b) + sum of m over the third components = 0."""
    f = ProductFibre(*ks)
    third: dict = {}
    for t in f.triple_points:
        for name in t.curves:
            d = f.double_curve(name)
            (c,) = set(t.components) - set(d.components)
            third.setdefault(name, []).append(c)
    for d in f.double_curves:
        ya, yb = d.components
        total = (f.multiplicity(yb) * intersection_number(f.lattice(ya), d.classes[ya], d.classes[ya])
                 + f.multiplicity(ya) * intersection_number(f.lattice(yb), d.classes[yb], d.classes[yb])
                 + sum(f.multiplicity(c) for c in third[d.name]))
        assert total == 0, d.name


def test_triple_point_formula_fails_all_ones():
    f = ProductFibre(3, 3, "all-ones")
    d = f.double_curve(("x", 0, 0, 1))
    s, e = d.components
    val = (intersection_number(f.lattice(s), d.classes[s], d.classes[s])
           + intersection_number(f.lattice(e), d.classes[e], d.classes[e]) + 2)
    assert val != 0


def test_cycle_vector_arithmetic():
    f = ProductFibre(3, 3)
    a = cycle_sum(f, [(f.S(0, 0), {"H": 1}), (f.F(0, 0), {"A": 2})])
    b = CycleVector(f, {(f.S(0, 0), "H"): Fraction(1, 2)})
    assert (a - b).on(f.S(0, 0)) == {"H": Fraction(1, 2)}
    assert not (a - a)
    assert 2 * b == b + b
    assert CycleVector.from_vector(f, a.to_vector()) == a
    with pytest.raises(BasisMismatch):
        CycleVector(f, {(f.F(0, 0), "H"): 1})
