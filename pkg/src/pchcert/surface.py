"""Intersection theory on the special fibre of a minimal regular genus-2 model.

The fibre is Parshin's configuration VI: two rational (-3)-curves B1, B2,
a cycle of (-2)-curves X_1..X_r through B1, a cycle Z_1..Z_t through B2,
and a chain L_1..L_s joining B1 to B2.  A function whose horizontal divisor
is ``2P - 2Q`` with P on B1 and Q on B2 has a vertical part determined by
``M x + h = 0`` up to adding the whole fibre.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import NoSolution, SparseRatMatrix, rank, solve_exact


class SurfaceError(ValueError):
    pass


class InconsistentSystem(SurfaceError):
    pass


class NonUnique(SurfaceError):
    pass


# Weierstrass points per component for this degeneration.  Only the B1 and B2
# entries enter the solve.  The X/Z index is stored but not interpreted.
WEIERSTRASS_PLACEMENT = {"B1": 1, "B2": 1, "X_{(s+1)/2}": 2, "Z_{(s+1)/2}": 2}
WEIERSTRASS_FLAG = "X/Z index (s+1)/2 depends on s, not on the cycle lengths r, t; recorded, not interpreted"


@dataclass
class FibreGraph:
    vertices: list[tuple[str, int]]
    edges: dict[frozenset, int] = field(default_factory=dict)
    horizontal: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def names(self) -> list[str]:
        return [v for v, _ in self.vertices]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def add_edge(self, u: str, v: str, mult: int = 1) -> None:
        if u == v:
            raise SurfaceError(f"self-loop at {u}")
        key = frozenset((u, v))
        self.edges[key] = self.edges.get(key, 0) + mult

    def neighbours(self, name: str) -> dict[str, int]:
        out = {}
        for key, m in self.edges.items():
            if name in key:
                (other,) = key - {name}
                out[other] = m
        return out

    def intersection_matrix(self) -> list[list[int]]:
        idx = {v: i for i, v in enumerate(self.names)}
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for i, (_, self_int) in enumerate(self.vertices):
            m[i][i] = self_int
        for key, mult in self.edges.items():
            u, v = sorted(key, key=idx.__getitem__)
            m[idx[u]][idx[v]] += mult
            m[idx[v]][idx[u]] += mult
        return m

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.intersection_matrix()]


def build_parshin_vi(r: int, s: int, t: int, require_odd: bool = True) -> FibreGraph:
    """Type VI configuration.

    With ``r == 1`` (or ``t == 1``) the single X (or Z) curve meets its B twice,
    recorded as one edge of multiplicity 2.  ``require_odd=False`` lifts the
    parity restriction on the cycle lengths; the graph is still numerically trivial.
    """
    for name, val in (("r", r), ("t", t)):
        if val < 1:
            raise SurfaceError(f"{name} must be >= 1, got {val}")
        if require_odd and val % 2 == 0:
            raise SurfaceError(f"{name} must be odd, got {val}")
    if s < 0:
        raise SurfaceError(f"s must be >= 0, got {s}")

    xs = [f"X{i}" for i in range(1, r + 1)]
    ls = [f"L{j}" for j in range(1, s + 1)]
    zs = [f"Z{k}" for k in range(1, t + 1)]
    verts = [("B1", -3)] + [(x, -2) for x in xs] + [(l, -2) for l in ls] + [(z, -2) for z in zs] + [("B2", -3)]
    g = FibreGraph(verts, notes=[f"Weierstrass placement {WEIERSTRASS_PLACEMENT}", WEIERSTRASS_FLAG])

    for hub, cyc in (("B1", xs), ("B2", zs)):
        if len(cyc) == 1:
            g.add_edge(hub, cyc[0], 2)
        else:
            g.add_edge(hub, cyc[0])
            g.add_edge(hub, cyc[-1])
            for u, v in zip(cyc, cyc[1:]):
                g.add_edge(u, v)
    chain = ["B1"] + ls + ["B2"]
    for u, v in zip(chain, chain[1:]):
        g.add_edge(u, v)
    g.horizontal = {"B1": 2, "B2": -2}
    return g


@dataclass
class DivisorSolution:
    coefficients: dict[str, Fraction]
    normalization: str
    residual: list[Fraction]

    def get(self, prefix: str) -> list[Fraction]:
        """Coefficients of X1, X2, ... (or L, Z) in order."""
        out = []
        i = 1
        while f"{prefix}{i}" in self.coefficients:
            out.append(self.coefficients[f"{prefix}{i}"])
            i += 1
        return out


def solve_function_divisor(g: FibreGraph, horizontal: dict[str, int] | None = None,
                           normalize: str = "B2") -> DivisorSolution:
    horizontal = g.horizontal if horizontal is None else horizontal
    names = g.names
    unknown = set(horizontal) - set(names)
    if unknown:
        raise SurfaceError(f"horizontal data on unknown vertices {sorted(unknown)}")
    m = g.intersection_matrix()
    n = len(names)
    nullity = n - rank(SparseRatMatrix.from_dense(m))
    if nullity != 1:
        raise NonUnique(f"intersection matrix has {nullity}-dimensional kernel")

    # append the normalization row x_normalize = 0
    norm_row = [0] * n
    norm_row[names.index(normalize)] = 1
    A = SparseRatMatrix.from_dense(m + [norm_row])
    rhs = [-Fraction(horizontal.get(v, 0)) for v in names] + [Fraction(0)]
    try:
        sol = solve_exact(A, rhs)
    except NoSolution as exc:
        raise InconsistentSystem("horizontal data is not orthogonal to the fibre") from exc
    if sol.homogeneous:
        raise NonUnique("solution is not unique after normalization")
    x = sol.particular
    residual = [sum((Fraction(m[i][j]) * x[j] for j in range(n)), Fraction(0)) + horizontal.get(names[i], 0)
                for i in range(n)]
    return DivisorSolution(dict(zip(names, x)), normalize, residual)


def closed_form(r: int, s: int, t: int) -> dict[str, Fraction]:
    a1 = Fraction(2 * (s + 1))
    out = {"B1": a1, "B2": Fraction(0)}
    out.update({f"X{i}": a1 for i in range(1, r + 1)})
    out.update({f"L{j}": Fraction(2 * (s + 1 - j)) for j in range(1, s + 1)})
    out.update({f"Z{k}": Fraction(0) for k in range(1, t + 1)})
    return out


def closed_form_check(r: int, s: int, t: int, require_odd: bool = True) -> dict:
    g = build_parshin_vi(r, s, t, require_odd=require_odd)
    sol = solve_function_divisor(g)
    expected = closed_form(r, s, t)
    mismatches = {v: (str(sol.coefficients[v]), str(x)) for v, x in expected.items()
                  if sol.coefficients[v] != x}
    a1 = sol.coefficients["B1"]
    return {
        "r": r, "s": s, "t": t,
        "matches": not mismatches,
        "mismatches": mismatches,
        "a1": a1,
        "a1_positive": a1 > 0,
        "row_sums_zero": not any(g.row_sums()),
        "residual_zero": not any(sol.residual),
        "graph": g,
        "solution": sol,
    }

