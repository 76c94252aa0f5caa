"""Special fibre of the blown-up product of two Neron polygons.

Strict components are indexed by ``(i, j)`` in Z/k1 x Z/k2 (``i`` is the
column, the E1 direction; ``j`` the row, the E2 direction).  The corner
``(i + 1/2, j + 1/2)`` is blown up to an exceptional quadric, stored under
the key ``("F", i, j)``.  Around that corner the four strict components play
the roles

    Y1 = (i, j)      corner is its ne corner
    Y2 = (i, j+1)    corner is its se corner
    Y3 = (i+1, j)    corner is its nw corner
    Y4 = (i+1, j+1)  corner is its sw corner

so every strict component is Y1, Y2, Y3, Y4 exactly once over its four
corners.  On a strict component (P1 x P1 blown up at four points) the
divisor basis is H (E1 x pt), V (pt x E2) and the four corner curves; on an
exceptional component the basis is the pair of rulings A (the class of
Y1 n F and Y4 n F) and B (Y2 n F and Y3 n F).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

STRICT_LABELS = ("H", "V", "E_sw", "E_se", "E_nw", "E_ne")
EXCEPTIONAL_LABELS = ("A", "B")

STRICT_FORM = {
    ("H", "V"): 1,
    ("E_sw", "E_sw"): -1,
    ("E_se", "E_se"): -1,
    ("E_nw", "E_nw"): -1,
    ("E_ne", "E_ne"): -1,
}
EXCEPTIONAL_FORM = {("A", "B"): 1}

# role of a strict component at a corner -> (offset from the corner's Y1, corner label on it)
ROLES = {
    1: ((0, 0), "E_ne"),
    2: ((0, 1), "E_se"),
    3: ((1, 0), "E_nw"),
    4: ((1, 1), "E_sw"),
}
ROLE_RULING = {1: "A", 4: "A", 2: "B", 3: "B"}

MULTIPLICITY_PROFILES = {
    "default": {"S": 1, "F": 2},
    "all-ones": {"S": 1, "F": 1},
}


class FibreError(ValueError):
    pass


class DegeneratePolygon(FibreError):
    pass


class BasisMismatch(FibreError):
    pass


class NotIncident(FibreError):
    pass


Component = tuple  # ("S", i, j) or ("F", i, j)
Class = Mapping[str, Fraction]


@dataclass(frozen=True)
class SurfaceLattice:
    component: Component
    labels: tuple[str, ...]
    form: Mapping[tuple[str, str], int]

    def pairing(self, x: str, y: str) -> int:
        return self.form.get((x, y), self.form.get((y, x), 0))

    def gram(self) -> list[list[int]]:
        return [[self.pairing(x, y) for y in self.labels] for x in self.labels]


def lattice_for(component: Component) -> SurfaceLattice:
    if component[0] == "S":
        return SurfaceLattice(component, STRICT_LABELS, STRICT_FORM)
    return SurfaceLattice(component, EXCEPTIONAL_LABELS, EXCEPTIONAL_FORM)


def intersection_number(lattice: SurfaceLattice, z1: Class, z2: Class) -> Fraction:
    for z in (z1, z2):
        bad = set(z) - set(lattice.labels)
        if bad:
            raise BasisMismatch(f"labels {sorted(bad)} not in the basis of {lattice.component}")
    total = Fraction(0)
    for x, a in z1.items():
        if not a:
            continue
        for y, b in z2.items():
            if b:
                total += a * b * lattice.pairing(x, y)
    return total


@dataclass(frozen=True)
class DoubleCurve:
    name: tuple
    kind: str  # "h", "v" or "x"
    components: tuple[Component, Component]  # ordered by the global component order
    classes: Mapping[Component, Mapping[str, int]]


@dataclass(frozen=True)
class TriplePoint:
    name: tuple
    components: tuple[Component, Component, Component]
    curves: tuple[tuple, tuple, tuple]


@dataclass(frozen=True, eq=False)
class ProductFibre:
    k1: int
    k2: int
    profile: str = "default"
    multiplicity_override: Mapping[str, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k1 < 3 or self.k2 < 3:
            raise DegeneratePolygon(f"polygons need at least 3 components, got ({self.k1}, {self.k2})")
        if self.multiplicity_override is None and self.profile not in MULTIPLICITY_PROFILES:
            raise FibreError(f"unknown multiplicity profile {self.profile!r}")

    # -- components ---------------------------------------------------------

    @cached_property
    def strict(self) -> list[Component]:
        return [("S", i, j) for i in range(self.k1) for j in range(self.k2)]

    @cached_property
    def exceptional(self) -> list[Component]:
        return [("F", i, j) for i in range(self.k1) for j in range(self.k2)]

    @cached_property
    def components(self) -> list[Component]:
        return self.strict + self.exceptional

    @cached_property
    def component_index(self) -> dict[Component, int]:
        return {c: n for n, c in enumerate(self.components)}

    def multiplicity(self, c: Component) -> int:
        table = self.multiplicity_override or MULTIPLICITY_PROFILES[self.profile]
        return table[c[0]]

    def lattice(self, c: Component) -> SurfaceLattice:
        return lattice_for(c)

    def S(self, i: int, j: int) -> Component:
        return ("S", i % self.k1, j % self.k2)

    def F(self, i: int, j: int) -> Component:
        return ("F", i % self.k1, j % self.k2)

    def corner_component(self, corner: Component, role: int) -> Component:
        (di, dj), _ = ROLES[role]
        return self.S(corner[1] + di, corner[2] + dj)

    def corner_of(self, c: Component, label: str) -> Component:
        """Exceptional component over the corner named ``label`` of strict ``c``."""
        _, i, j = c
        di, dj = {"E_ne": (0, 0), "E_se": (0, -1), "E_nw": (-1, 0), "E_sw": (-1, -1)}[label]
        return self.F(i + di, j + dj)

    # -- coordinates of CH_1(Y^(1)) --------------------------------------------

    @cached_property
    def coordinates(self) -> list[tuple[Component, str]]:
        out = []
        for c in self.components:
            out.extend((c, lab) for lab in lattice_for(c).labels)
        return out

    @cached_property
    def coordinate_index(self) -> dict[tuple[Component, str], int]:
        return {key: n for n, key in enumerate(self.coordinates)}

    @property
    def ch1_rank(self) -> int:
        return len(self.coordinates)

    # -- strata ----------------------------------------------------------------

    def _ordered(self, a: Component, b: Component) -> tuple[Component, Component]:
        idx = self.component_index
        return (a, b) if idx[a] < idx[b] else (b, a)

    @cached_property
    def double_curves(self) -> list[DoubleCurve]:
        out = []
        for i in range(self.k1):
            for j in range(self.k2):
                lo, hi = self.S(i, j), self.S(i, j + 1)
                out.append(DoubleCurve(("h", i, j), "h", self._ordered(lo, hi), {
                    lo: {"H": 1, "E_nw": -1, "E_ne": -1},
                    hi: {"H": 1, "E_sw": -1, "E_se": -1},
                }))
        for i in range(self.k1):
            for j in range(self.k2):
                west, east = self.S(i, j), self.S(i + 1, j)
                out.append(DoubleCurve(("v", i, j), "v", self._ordered(west, east), {
                    west: {"V": 1, "E_ne": -1, "E_se": -1},
                    east: {"V": 1, "E_nw": -1, "E_sw": -1},
                }))
        for i in range(self.k1):
            for j in range(self.k2):
                f = self.F(i, j)
                for role in (1, 2, 3, 4):
                    c = self.corner_component(f, role)
                    label = ROLES[role][1]
                    out.append(DoubleCurve(("x", i, j, role), "x", self._ordered(c, f), {
                        c: {label: 1},
                        f: {ROLE_RULING[role]: 1},
                    }))
        return out

    @cached_property
    def double_curve_index(self) -> dict[tuple, int]:
        return {d.name: n for n, d in enumerate(self.double_curves)}

    def double_curve(self, name: tuple) -> DoubleCurve:
        return self.double_curves[self.double_curve_index[name]]

    @cached_property
    def triple_points(self) -> list[TriplePoint]:
        out = []
        for i in range(self.k1):
            for j in range(self.k2):
                f = self.F(i, j)
                y = {r: self.corner_component(f, r) for r in (1, 2, 3, 4)}
                x = {r: ("x", i, j, r) for r in (1, 2, 3, 4)}
                out.append(TriplePoint(("t", i, j, 12), (y[1], y[2], f), (("h", i, j), x[1], x[2])))
                out.append(TriplePoint(("t", i, j, 13), (y[1], y[3], f), (("v", i, j), x[1], x[3])))
                out.append(TriplePoint(("t", i, j, 24), (y[2], y[4], f), (("v", i, (j + 1) % self.k2), x[2], x[4])))
                out.append(TriplePoint(("t", i, j, 34), (y[3], y[4], f), (("h", (i + 1) % self.k1, j), x[3], x[4])))
        return out

    def curves_on(self, c: Component) -> list[DoubleCurve]:
        return [self.double_curves[n] for n in self._curves_by_component.get(c, [])]

    @cached_property
    def _curves_by_component(self) -> dict[Component, list[int]]:
        out: dict[Component, list[int]] = {}
        for n, d in enumerate(self.double_curves):
            for c in d.components:
                out.setdefault(c, []).append(n)
        return out

    def summary(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "components": len(self.components),
            "strict": len(self.strict),
            "exceptional": len(self.exceptional),
            "double_curves": len(self.double_curves),
            "triple_points": len(self.triple_points),
            "ch1_rank": self.ch1_rank,
            "multiplicity_profile": self.profile,
            "multiplicities": {"strict": self.multiplicity(self.strict[0]),
                               "exceptional": self.multiplicity(self.exceptional[0])},
            "adjacency_sample": [
                {"curve": list(d.name), "components": [list(c) for c in d.components]}
                for d in (self.double_curves[0], self.double_curves[self.k1 * self.k2],
                          self.double_curves[2 * self.k1 * self.k2])
            ],
        }


def build_product_fibre(k1: int, k2: int, profile: str = "default") -> ProductFibre:
    return ProductFibre(k1, k2, profile)


def double_curve_class(fibre: ProductFibre, d: DoubleCurve | tuple, side: Component) -> dict[str, int]:
    if not isinstance(d, DoubleCurve):
        d = fibre.double_curve(d)
    if side not in d.classes:
        raise NotIncident(f"{side} does not contain double curve {d.name}")
    return dict(d.classes[side])


class CycleVector:
    """A class in CH_1(Y^(1)) = sum over components of their divisor groups."""

    __slots__ = ("fibre", "coefficients")

    def __init__(self, fibre: ProductFibre, coefficients: Mapping[tuple[Component, str], object] | None = None):
        self.fibre = fibre
        coeffs = {}
        for key, x in (coefficients or {}).items():
            if key not in fibre.coordinate_index:
                raise BasisMismatch(f"{key} is not a coordinate of the fibre")
            x = Fraction(x)
            if x:
                coeffs[key] = x
        self.coefficients = coeffs

    @classmethod
    def from_vector(cls, fibre: ProductFibre, v: Mapping[int, object]) -> "CycleVector":
        coords = fibre.coordinates
        return cls(fibre, {coords[i]: x for i, x in v.items()})

    def to_vector(self) -> dict[int, Fraction]:
        idx = self.fibre.coordinate_index
        return {idx[key]: x for key, x in self.coefficients.items()}

    def add_class(self, c: Component, cls_: Mapping[str, object], scale=1) -> "CycleVector":
        out = dict(self.coefficients)
        for lab, x in cls_.items():
            key = (c, lab)
            out[key] = out.get(key, 0) + Fraction(x) * scale
        return CycleVector(self.fibre, out)

    def on(self, c: Component) -> dict[str, Fraction]:
        return {lab: x for (comp, lab), x in self.coefficients.items() if comp == c}

    def support(self) -> set[Component]:
        return {c for c, _ in self.coefficients}

    def __add__(self, other: "CycleVector") -> "CycleVector":
        out = dict(self.coefficients)
        for key, x in other.coefficients.items():
            out[key] = out.get(key, 0) + x
        return CycleVector(self.fibre, out)

    def __neg__(self) -> "CycleVector":
        return CycleVector(self.fibre, {k: -x for k, x in self.coefficients.items()})

    def __sub__(self, other: "CycleVector") -> "CycleVector":
        return self + (-other)

    def __mul__(self, scalar) -> "CycleVector":
        s = Fraction(scalar)
        return CycleVector(self.fibre, {k: x * s for k, x in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleVector) and self.coefficients == other.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __repr__(self) -> str:
        return f"CycleVector({len(self.coefficients)} terms on ({self.fibre.k1},{self.fibre.k2}))"


def cycle_sum(fibre: ProductFibre, terms: Iterable[tuple[Component, Mapping[str, object]]]) -> CycleVector:
    out: dict = {}
    for c, cls_ in terms:
        for lab, x in cls_.items():
            out[(c, lab)] = out.get((c, lab), 0) + Fraction(x)
    return CycleVector(fibre, out)
