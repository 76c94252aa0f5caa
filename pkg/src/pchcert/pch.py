"""PCH^1(Y) = Ker(i^* i_*) / Im(gamma), tensored with Q.

Two construction routes are available.  ``literal`` takes the null space
basis of ``istar_istar`` straight from elimination; it is exact but the basis
vectors are dense, so it is only practical for small polygons.  ``certified``
(the default) proposes the independent gamma columns together with the
three generators as a kernel basis and accepts it only after checking that
every vector is annihilated exactly and that the count equals
``ch1_rank - rank(istar_istar)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chowcx import ComplexMaps, complex_maps
from .fibre import CycleVector, ProductFibre, cycle_sum
from .linalg import (Echelon, LinalgError, QuotientSpace, kernel_basis_sparse, quotient_space,
                     rank)

GENERATOR_NAMES = ("E1", "E2", "F")


class PchError(LinalgError):
    pass


class NotInKernel(PchError):
    pass


class GeneratorsDependent(PchError):
    pass


def generator_cycles(fibre: ProductFibre, row: int = 0, column: int = 0) -> dict[str, CycleVector]:
    """The classes of E1 x Q, P x E2 and the exceptional sum F.

    ``row`` and ``column`` pick the components containing the generic points
    Q and P.
    """
    e1 = cycle_sum(fibre, ((fibre.S(i, row), {"H": 1}) for i in range(fibre.k1)))
    e2 = cycle_sum(fibre, ((fibre.S(column, j), {"V": 1}) for j in range(fibre.k2)))
    f = cycle_sum(fibre, ((c, {"A": 2, "B": -2}) for c in fibre.exceptional))
    return {"E1": e1, "E2": e2, "F": f}


@dataclass
class PchSpace:
    fibre: ProductFibre
    maps: ComplexMaps
    quotient: QuotientSpace
    generators: dict[str, CycleVector]
    generator_images: dict[str, tuple[Fraction, ...]]
    kernel_dim: int
    image_rank: int
    istar_rank: int
    method: str
    _inverse: list[list[Fraction]] | None = field(default=None, repr=False)

    @property
    def quotient_dim(self) -> int:
        return self.quotient.quotient_dim

    def generator_rank(self) -> int:
        ech = Echelon()
        for name in GENERATOR_NAMES:
            ech.add(dict(enumerate(self.generator_images[name])))
        return len(ech)

    def in_kernel(self, v: CycleVector) -> bool:
        return not self.maps.istar_istar.apply(v.to_vector())

    def summary(self) -> dict:
        return {
            "k1": self.fibre.k1,
            "k2": self.fibre.k2,
            "multiplicity_profile": self.fibre.profile,
            "ch1_rank": self.fibre.ch1_rank,
            "istar_istar_rank": self.istar_rank,
            "kernel_dim": self.kernel_dim,
            "gamma_rank": self.image_rank,
            "dim": self.quotient_dim,
            "generator_rank": self.generator_rank(),
            "method": self.method,
        }


def pch_space(fibre: ProductFibre, method: str = "certified", maps: ComplexMaps | None = None) -> PchSpace:
    maps = maps or complex_maps(fibre)
    istar = maps.istar_istar
    r_istar = rank(istar)
    kernel_dim = fibre.ch1_rank - r_istar
    gens = generator_cycles(fibre)
    gamma_cols = [c for c in maps.gamma.column_dicts() if c]

    if method == "certified":
        ech = Echelon()
        independent = [c for c in gamma_cols if ech.add(c) is not None]
        gen_vecs = [gens[name].to_vector() for name in GENERATOR_NAMES]
        annihilated = all(not istar.apply(v) for v in gen_vecs)
        if annihilated and len(independent) + len(gen_vecs) == kernel_dim:
            kernel = independent + gen_vecs
        else:
            # the proposed basis failed; fall back to the literal null space
            method = "literal"
    if method == "literal":
        kernel = kernel_basis_sparse(istar)
    elif method != "certified":
        raise ValueError(f"unknown method {method!r}")

    quotient = quotient_space(kernel, gamma_cols, ambient_dim=fibre.ch1_rank)
    images = {}
    for name in GENERATOR_NAMES:
        v = gens[name].to_vector()
        if istar.apply(v):
            raise NotInKernel(f"generator {name} is not in Ker(i*i_*)")
        images[name] = quotient.coords(v)
    image_rank = len(quotient.image_basis)
    return PchSpace(fibre, maps, quotient, gens, images, kernel_dim, image_rank, r_istar, method)


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise GeneratorsDependent("generator images are linearly dependent")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def pch_coords(space: PchSpace, v: CycleVector) -> tuple[Fraction, Fraction, Fraction]:
    """Coordinates of ``v`` in the (E1, E2, F) basis of PCH^1."""
    vec = v.to_vector()
    if space.maps.istar_istar.apply(vec):
        raise NotInKernel("cycle is not in Ker(i*i_*)")
    if space.quotient_dim != len(GENERATOR_NAMES):
        raise GeneratorsDependent(f"quotient has dimension {space.quotient_dim}, expected 3")
    if space._inverse is None:
        # rows of g are the generator images; coords q = c . g  =>  c = q . g^-1
        g = [list(space.generator_images[name]) for name in GENERATOR_NAMES]
        space._inverse = _invert(g)
    q = space.quotient.coords(vec)
    inv = space._inverse
    return tuple(sum((q[i] * inv[i][j] for i in range(3)), Fraction(0)) for j in range(3))


def equivalence_report(space: PchSpace) -> list[dict]:
    """Quotient-level checks of the equivalences used to single out the generators.

    Cycles that are not themselves in the kernel are reported as such instead
    of being given coordinates.
    """
    fibre = space.fibre
    out = []

    def record(name, cycle):
        entry = {"name": name, "in_kernel": space.in_kernel(cycle)}
        if entry["in_kernel"]:
            entry["coords"] = pch_coords(space, cycle)
        out.append(entry)

    block = cycle_sum(fibre, [(fibre.F(0, 0), {"A": 2, "B": -2})])
    record("single corner Y15+Y45-Y25-Y35", block)
    other = cycle_sum(fibre, [(fibre.F(1, 1), {"A": 2, "B": -2})])
    record("difference of two corner blocks", block - other)
    record("F - k1*k2*(single corner block)", space.generators["F"] - fibre.k1 * fibre.k2 * block)
    shifted = generator_cycles(fibre, row=1, column=1)
    record("E1 at row 0 minus E1 at row 1", space.generators["E1"] - shifted["E1"])
    record("E2 at column 0 minus E2 at column 1", space.generators["E2"] - shifted["E2"])
    return out
