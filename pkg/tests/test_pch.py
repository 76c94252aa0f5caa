import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pchcert.fibre import CycleVector, ProductFibre
from pchcert.pch import (GENERATOR_NAMES, NotInKernel, equivalence_report, generator_cycles,
                         pch_coords, pch_space)


@pytest.fixture(scope="module")
def space55():
    return pch_space(ProductFibre(5, 5))


@pytest.mark.parametrize("k1,k2", [(3, 3), (3, 5), (4, 6), (6, 4)])
def test_literal_and_certified_agree(k1, k2):
    f = ProductFibre(k1, k2)
    a = pch_space(f, "certified")
    b = pch_space(f, "literal")
    assert a.method == "certified" and b.method == "literal"
    assert a.quotient_dim == b.quotient_dim == 3
    assert a.kernel_dim == b.kernel_dim
    for name in GENERATOR_NAMES:
        v = a.generators[name]
        assert pch_coords(a, v) == pch_coords(b, v)


def test_generators_are_unit_vectors(space55):
    for i, name in enumerate(GENERATOR_NAMES):
        coords = pch_coords(space55, space55.generators[name])
        assert coords == tuple(Fraction(int(i == j)) for j in range(3))
    assert space55.generator_rank() == 3


def test_summary(space55):
    s = space55.summary()
    assert s["dim"] == 3 and s["ch1_rank"] == 200
    assert s["kernel_dim"] == s["gamma_rank"] + 3


def test_unknown_method():
    with pytest.raises(ValueError):
        pch_space(ProductFibre(3, 3), method="nope")


def test_not_in_kernel(space55):
    f = space55.fibre
    with pytest.raises(NotInKernel):
        pch_coords(space55, CycleVector(f, {(f.S(0, 0), "H"): 1}))


def test_equivalence_report(space55):
    rep = {e["name"]: e for e in equivalence_report(space55)}
    assert not rep["single corner Y15+Y45-Y25-Y35"]["in_kernel"]
    assert rep["E1 at row 0 minus E1 at row 1"]["coords"] == (0, 0, 0)
    assert rep["E2 at column 0 minus E2 at column 1"]["coords"] == (0, 0, 0)


def test_generator_positions_irrelevant(space55):
    f = space55.fibre
    for r in range(f.k2):
        g = generator_cycles(f, row=r, column=(2 * r) % f.k1)
        assert pch_coords(space55, g["E1"]) == (1, 0, 0)
        assert pch_coords(space55, g["E2"]) == (0, 1, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(st.fractions(-4, 4, max_denominator=3), min_size=3, max_size=3))
def test_coords_linear_and_kill_image(space55, seed, coeffs):
    rng = random.Random(seed)
    f = space55.fibre
    gamma = space55.maps.gamma
    v = CycleVector(f)
    for c, name in zip(coeffs, GENERATOR_NAMES):
        v = v + c * space55.generators[name]
    for _ in range(5):
        col = gamma.column(rng.randrange(gamma.cols))
        v = v + Fraction(rng.randint(-3, 3)) * CycleVector.from_vector(f, col)
    assert pch_coords(space55, v) == tuple(coeffs)
