"""Higher Chow elements on E1 x E2 and their boundaries in PCH^1 of the special fibre.

Elements are formal sums of (curve, function) terms.  The boundary of a
term is the vertical part of the divisor of its function on the closure of
its curve, written as a :class:`CycleVector`.  For the graph curves the
closure passes through blown-up corners with multiplicities that are not
written down anywhere, so the boundary is built as a template with unknown
corner and ruling coefficients and then completed by requiring exact
membership in Ker(i^* i_*).

Graph of h_a on the fibre
-------------------------
With ``L = a k2 / (k1, k2)``, column ``i`` of E1 maps to row
``sigma(i) = L i mod k2``.  On the strict component ``(i, sigma(i))`` the
graph is ``y = c x^a``, of class ``H + a V``, through the sw and ne corners.
Points of E1 between columns ``i`` and ``i + 1`` map across rows
``sigma(i) + 1 .. sigma(i) + L - 1``, so the closure also contains the
vertical double curves ``v(i, sigma(i) + l)``, each with multiplicity ``a``.
The transposed graph of the dual map with multiplier ``-a`` is the mirror
image: blocks ``(tau(j), j)`` of class ``a H + V`` through the nw and se
corners, ``tau(j) = -a k1/(k1, k2) j mod k1``, joined by horizontal double
curves.  ``connect=False`` drops the joining curves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .chowcx import ComplexMaps
from .fibre import Component, CycleVector, ProductFibre, cycle_sum
from .linalg import Echelon, NoSolution, SparseRatMatrix, format_rational, solve_exact
from .pch import PchSpace, pch_coords, pch_space
from .polygon import TorsionError, dual_composite_check
from .surface import DivisorSolution, closed_form_check


class BoundaryError(ValueError):
    pass


class NonGenericPoint(BoundaryError):
    pass


class PreconditionError(BoundaryError):
    pass


class CompletionFailed(BoundaryError):
    pass


class AmbiguityNotNull(BoundaryError):
    pass


class NotInKernel(BoundaryError):
    pass


# -- descriptors ----------------------------------------------------------------


@dataclass(frozen=True)
class HorizontalCurve:
    """E1 x {point}; ``row`` is the component of E2 the point lies on."""

    row: Fraction | int

    def __post_init__(self):
        if Fraction(self.row).denominator != 1:
            raise NonGenericPoint(f"row {self.row} is a node of the polygon")


@dataclass(frozen=True)
class VerticalCurve:
    column: Fraction | int

    def __post_init__(self):
        if Fraction(self.column).denominator != 1:
            raise NonGenericPoint(f"column {self.column} is a node of the polygon")


@dataclass(frozen=True)
class Genus2Curve:
    a: int
    k1: int
    k2: int
    solution: DivisorSolution | None = field(default=None, compare=False)


@dataclass(frozen=True)
class GraphCurve:
    a: int
    transpose: bool = False


Curve = Union[HorizontalCurve, VerticalCurve, Genus2Curve, GraphCurve]


@dataclass(frozen=True)
class Uniformizer:
    exponent: int = 1


@dataclass(frozen=True)
class LedgeredFunction:
    """A function known through its divisor: points with multiplicities plus vertical coefficients."""

    points: tuple[tuple[str, int], ...]
    vertical: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        if sum(m for _, m in self.points) != 0:
            raise BoundaryError("a principal divisor has degree 0")

    @classmethod
    def of(cls, points: dict[str, int], vertical: dict[str, Fraction] | None = None) -> "LedgeredFunction":
        return cls(tuple(points.items()), tuple((vertical or {}).items()))


Function = Union[Uniformizer, LedgeredFunction]


@dataclass
class HigherChowElement:
    terms: list[tuple[Curve, Function]] = field(default_factory=list)

    def ledger(self) -> dict[str, int]:
        total: dict[str, int] = {}
        for _, f in self.terms:
            if isinstance(f, LedgeredFunction):
                for p, m in f.points:
                    total[p] = total.get(p, 0) + m
        return {p: m for p, m in total.items() if m}


def cocycle_check(e: HigherChowElement) -> bool:
    return not e.ledger()


def xi_element(solution: DivisorSolution | None = None, a: int = 2, k1: int = 5, k2: int = 5) -> HigherChowElement:
    """(C, f_PQ) - (E1 x P2, f1) - (Q1 x E2, f2) with div f_PQ = 2(P1,P2) - 2(Q1,Q2)."""
    vertical = {} if solution is None else dict(solution.coefficients)
    return HigherChowElement([
        (Genus2Curve(a, k1, k2, solution), LedgeredFunction.of({"(P1,P2)": 2, "(Q1,Q2)": -2}, vertical)),
        (HorizontalCurve(0), LedgeredFunction.of({"(P1,P2)": -2, "(Q1,P2)": 2})),
        (VerticalCurve(0), LedgeredFunction.of({"(Q1,P2)": -2, "(Q1,Q2)": 2})),
    ])


def boundary_decomposable(fibre: ProductFibre, curve: Curve, exponent: int = 1) -> CycleVector:
    """Boundary of (curve, pi^exponent) for a horizontal or vertical curve."""
    if isinstance(curve, HorizontalCurve):
        j = int(curve.row)
        return cycle_sum(fibre, ((fibre.S(i, j), {"H": exponent}) for i in range(fibre.k1)))
    if isinstance(curve, VerticalCurve):
        i = int(curve.column)
        return cycle_sum(fibre, ((fibre.S(i, j), {"V": exponent}) for j in range(fibre.k2)))
    raise BoundaryError(f"{type(curve).__name__} is not a product curve")


# -- graph templates ------------------------------------------------------------


Slot = tuple[Component, str]


@dataclass
class CycleTemplate:
    fibre: ProductFibre
    known: CycleVector
    unknowns: list[Slot]
    name: str = ""
    blocks: list[Component] = field(default_factory=list)
    chain: list[tuple] = field(default_factory=list)
    corners: list[Component] = field(default_factory=list)

    def with_known(self, known: CycleVector) -> "CycleTemplate":
        return CycleTemplate(self.fibre, known, list(self.unknowns), self.name, list(self.blocks),
                             list(self.chain), list(self.corners))


def _check_graph_params(fibre: ProductFibre, a: int, require_level: bool) -> None:
    if a < 1:
        raise PreconditionError("a must be a positive integer; the transposed graph carries the sign")
    if require_level:
        n = a * a + 1
        g = gcd(fibre.k1, fibre.k2)
        if g % n:
            raise PreconditionError(f"n = {n} does not divide gcd(k1, k2) = {g}")


def graph_cycle_template(fibre: ProductFibre, a: int, transpose: bool = False, connect: bool = True,
                         broad: bool = False, require_level: bool = True) -> CycleTemplate:
    """Closure of the graph of h_a (or the transposed graph of the dual of h_{-a}) with unknowns.

    Unknowns are the corner classes of each piece at the corners it passes
    through, on the component hosting the piece, and both rulings of every
    exceptional component over those corners.  ``broad=True`` also frees the
    corner classes of the other three strict components at those corners.
    """
    _check_graph_params(fibre, a, require_level)
    k1, k2 = fibre.k1, fibre.k2
    g = gcd(k1, k2)
    known: dict[Slot, Fraction] = {}
    slots: list[Slot] = []
    corners: list[Component] = []
    blocks: list[Component] = []
    chain: list[tuple] = []

    def add(c, cls_):
        for lab, x in cls_.items():
            known[(c, lab)] = known.get((c, lab), 0) + Fraction(x)

    def free(c, labels, at):
        for lab in labels:
            if (c, lab) not in slots:
                slots.append((c, lab))
        for f in at:
            if f not in corners:
                corners.append(f)

    if not transpose:
        step = a * k2 // g
        for i in range(k1):
            sigma = step * i
            c = fibre.S(i, sigma)
            blocks.append(c)
            add(c, {"H": 1, "V": a})
            free(c, ("E_sw", "E_ne"), (fibre.F(i - 1, sigma - 1), fibre.F(i, sigma)))
            if connect:
                for l in range(1, step):
                    row = sigma + l
                    host = fibre.S(i, row)
                    chain.append(("v", i, row % k2))
                    add(host, {"V": a})
                    free(host, ("E_ne", "E_se"), (fibre.F(i, row - 1), fibre.F(i, row)))
    else:
        step = a * k1 // g
        for j in range(k2):
            tau = -step * j
            c = fibre.S(tau, j)
            blocks.append(c)
            add(c, {"H": a, "V": 1})
            free(c, ("E_nw", "E_se"), (fibre.F(tau - 1, j), fibre.F(tau, j - 1)))
            if connect:
                for l in range(1, step):
                    col = tau - l
                    host = fibre.S(col, j)
                    chain.append(("h", col % k1, j))
                    add(host, {"H": a})
                    free(host, ("E_nw", "E_ne"), (fibre.F(col - 1, j), fibre.F(col, j)))

    for f in corners:
        free(f, ("A", "B"), ())
        if broad:
            for role, lab in ((1, "E_ne"), (2, "E_se"), (3, "E_nw"), (4, "E_sw")):
                free(fibre.corner_component(f, role), (lab,), ())
    name = ("transposed graph" if transpose else "graph") + f" a={a}"
    return CycleTemplate(fibre, CycleVector(fibre, known), slots, name, blocks, chain, corners)


# -- completion -----------------------------------------------------------------


@dataclass
class Completion:
    cycle: CycleVector
    particular: CycleVector
    homogeneous: list[CycleVector]
    ambiguity: int
    ambiguity_pch_zero: bool | None
    slot_values: dict[Slot, Fraction]


def _space_for(obj) -> tuple[ProductFibre, PchSpace | None, ComplexMaps | None]:
    if isinstance(obj, PchSpace):
        return obj.fibre, obj, obj.maps
    return obj, None, None


def complete_to_kernel(target: ProductFibre | PchSpace, template: CycleTemplate | CycleVector,
                       seed: int | None = None, rng: random.Random | None = None,
                       check_ambiguity: bool = True) -> Completion:
    """Fill the unknown slots so that the cycle lies in Ker(i^* i_*).

    Without ``seed``/``rng`` the particular solution (free slots set to 0)
    is returned.  With one, a random rational combination of the homogeneous
    solutions is added.  When a :class:`PchSpace` is given, every homogeneous
    solution is checked to have zero PCH coordinates.
    """
    fibre, space, maps = _space_for(target)
    if isinstance(template, CycleVector):
        template = CycleTemplate(fibre, template, [])
    if maps is None:
        from .chowcx import istar_istar_matrix
        istar = istar_istar_matrix(fibre)
    else:
        istar = maps.istar_istar
    idx = fibre.coordinate_index
    slots = template.unknowns
    rhs = {r: -x for r, x in istar.apply(template.known.to_vector()).items()}

    if not slots:
        if rhs:
            raise CompletionFailed(f"{template.name or 'cycle'} is not in the kernel and has no unknowns")
        return Completion(template.known, template.known, [], 0, True if space else None, {})

    cols = [istar.column(idx[s]) for s in slots]
    sub = SparseRatMatrix.from_columns(istar.rows, cols)
    try:
        sol = solve_exact(sub, rhs)
    except NoSolution as exc:
        raise CompletionFailed(f"{template.name or 'template'}: no completion lies in Ker(i*i_*)") from exc

    def to_cycle(values: Sequence[Fraction]) -> CycleVector:
        return CycleVector(fibre, {s: x for s, x in zip(slots, values) if x})

    particular = template.known + to_cycle(sol.particular)
    homogeneous = [to_cycle(h) for h in sol.homogeneous]
    values = list(sol.particular)
    if rng is None and seed is not None:
        rng = random.Random(seed)
    if rng is not None:
        for h in sol.homogeneous:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            values = [x + c * y for x, y in zip(values, h)]
    cycle = template.known + to_cycle(values)
    if istar.apply(cycle.to_vector()):
        raise CompletionFailed("completed cycle is not in the kernel")

    zero = None
    if space is not None and check_ambiguity:
        zero = all(not any(pch_coords(space, h)) for h in homogeneous)
        if not zero:
            raise AmbiguityNotNull("two completions differ by a class that is nonzero in PCH^1")
    return Completion(cycle, particular, homogeneous, len(homogeneous), zero,
                      dict(zip(slots, values)))


# -- Xi and the certificate -------------------------------------------------------


def boundary_xi(space: PchSpace, a: int, solution: DivisorSolution,
                completion: Completion | None = None) -> CycleVector:
    """a1 times the completed graph cycle; the L-chain contracts to a point and contributes nothing."""
    a1 = solution.coefficients["B1"]
    if completion is None:
        completion = complete_to_kernel(space, graph_cycle_template(space.fibre, a))
    out = completion.cycle * a1
    if not space.in_kernel(out):
        raise NotInKernel("boundary of Xi is not in Ker(i*i_*)")
    return out


@dataclass
class SurjectivityCertificate:
    k1: int
    k2: int
    a: int
    s: int
    matrix: list[tuple[Fraction, Fraction, Fraction]]
    rank: int
    det: Fraction
    checks: list[dict]
    paper_comparisons: dict
    ambiguity: dict

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "params": {"k1": self.k1, "k2": self.k2, "a": self.a, "s": self.s},
            "matrix": [[format_rational(x) for x in row] for row in self.matrix],
            "rank": self.rank,
            "det": format_rational(self.det),
            "checks": self.checks,
            "paper_comparisons": _jsonable(self.paper_comparisons),
            "ambiguity": self.ambiguity,
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def check_certificate_preconditions(k1: int, k2: int, a: int) -> int:
    if a < 1:
        raise PreconditionError("a must be a positive integer")
    n = a * a + 1
    if n % 2 == 0:
        raise PreconditionError(f"n = {n} is even")
    g = gcd(k1, k2)
    if g % n:
        raise PreconditionError(f"n = {n} does not divide gcd(k1, k2) = {g}")
    try:
        dual = dual_composite_check(a, k1, k2, n)
    except TorsionError as exc:
        raise PreconditionError(str(exc)) from exc
    if not dual.is_mult_by_n_minus_1:
        raise PreconditionError(f"dual of h_a composed with h_a acts as {dual.multipliers}, not n-1 = {n - 1}")
    return n


def exceptional_content(cycle: CycleVector) -> dict:
    a_sum = sum((x for (c, lab), x in cycle.coefficients.items() if lab == "A"), Fraction(0))
    b_sum = sum((x for (c, lab), x in cycle.coefficients.items() if lab == "B"), Fraction(0))
    touched = len({c for (c, lab) in cycle.coefficients if c[0] == "F"})
    return {"sum_A": a_sum, "sum_B": b_sum, "exceptional_components": touched}


def surjectivity_certificate(k1: int, k2: int, a: int, s: int, space: PchSpace | None = None,
                             seed: int | None = None, verify_seed: int | None = 1) -> SurjectivityCertificate:
    """Boundary coordinates of (E1 x 0, pi), (0 x E2, pi) and the combined Xi element.

    ``verify_seed`` recomputes the certificate with a second random
    completion and records whether the matrix is unchanged.
    """
    check_certificate_preconditions(k1, k2, a)
    if s < 0:
        raise PreconditionError("s must be >= 0")
    fibre = space.fibre if space is not None else ProductFibre(k1, k2)
    if (fibre.k1, fibre.k2) != (k1, k2):
        raise PreconditionError("space does not match (k1, k2)")
    if space is None:
        space = pch_space(fibre)
    checks: list[dict] = []

    def check(name, ok, detail=""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    # parity is not imposed on r = k1 - 1, t = k2 - 1; the solve is valid for any cycle length
    cf = closed_form_check(k1 - 1, s, k2 - 1, require_odd=False)
    check("divisor of f_PQ matches the closed form", cf["matches"], f"a1 = {cf['a1']}")
    solution = cf["solution"]

    e1 = boundary_decomposable(fibre, HorizontalCurve(0))
    e2 = boundary_decomposable(fibre, VerticalCurve(0))

    def assemble(rng_seed):
        g_c = complete_to_kernel(space, graph_cycle_template(fibre, a), seed=rng_seed)
        gt_c = complete_to_kernel(space, graph_cycle_template(fibre, a, transpose=True), seed=rng_seed)
        xi = boundary_xi(space, a, solution, g_c)
        c_pi = g_c.cycle + gt_c.cycle
        combined = xi - (s + 1) * c_pi - (s + 1) * (a - 1) * (e1 - e2)
        return g_c, gt_c, combined

    g_c, gt_c, combined = assemble(seed)
    rows = []
    for name, v in (("E1 x 0", e1), ("0 x E2", e2), ("combined Xi", combined)):
        inside = space.in_kernel(v)
        check(f"boundary of {name} lies in Ker(i*i_*)", inside)
        if not inside:
            raise NotInKernel(f"boundary of {name} is not in the kernel")
        rows.append(pch_coords(space, v))
    m = [tuple(r) for r in rows]
    det = _det3(m)
    ech = Echelon()
    rk = sum(ech.add(dict(enumerate(r))) is not None for r in m)
    check("first row is (1,0,0)", m[0] == (1, 0, 0), str([format_rational(x) for x in m[0]]))
    check("second row is (0,1,0)", m[1] == (0, 1, 0), str([format_rational(x) for x in m[1]]))
    check("rank 3", rk == 3, f"rank {rk}")
    check("determinant nonzero", det != 0, format_rational(det))
    check("rank = 3 iff det != 0", (rk == 3) == (det != 0))
    amb = {"graph": g_c.ambiguity, "transposed_graph": gt_c.ambiguity,
           "pch_zero": bool(g_c.ambiguity_pch_zero and gt_c.ambiguity_pch_zero)}
    check("completion ambiguity vanishes in PCH^1", amb["pch_zero"],
          f"dimensions {g_c.ambiguity}, {gt_c.ambiguity}")
    if verify_seed is not None:
        _, _, combined2 = assemble(verify_seed + (seed or 0) + 1)
        again = pch_coords(space, combined2)
        check("third row independent of the completion chosen", tuple(again) == m[2])

    g = gcd(k1, k2)
    gamma_coords = pch_coords(space, g_c.cycle)
    gammat_coords = pch_coords(space, gt_c.cycle)
    comparisons = {
        "graph_coords": {"claimed": [1, a, "?"], "computed": list(gamma_coords)},
        "transposed_graph_coords": {"claimed": [a, 1, "?"], "computed": list(gammat_coords)},
        "graph_exceptional_content": {"predicted_multiplier": g, **exceptional_content(g_c.cycle)},
        "third_row": {
            "predicted_F_up_to_normalization": Fraction((s + 1) * g, k1 * k2),
            "computed_F": m[2][2],
            "computed_over_predicted": m[2][2] / Fraction((s + 1) * g, k1 * k2),
            "F_over_(s+1)gcd": m[2][2] / ((s + 1) * g),
            "E1_E2_residual": [m[2][0], m[2][1]],
            "E1_E2_residual_with_correction_sign_flipped": [m[2][0] + 2 * (s + 1) * (a - 1),
                                                   m[2][1] - 2 * (s + 1) * (a - 1)],
        },
        "parshin_parity": {"r": k1 - 1, "t": k2 - 1,
                           "both_odd": (k1 - 1) % 2 == 1 and (k2 - 1) % 2 == 1},
    }
    return SurjectivityCertificate(k1, k2, a, s, m, rk, det, checks, comparisons, amb)
