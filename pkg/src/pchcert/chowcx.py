"""Maps of the Chow double complex in the degrees PCH^1 needs.

* ``gamma``: CH_1(Y^(2)) -> CH_1(Y^(1)), one column per double curve
  ``d = Y_{c1} n Y_{c2}`` (``c1 < c2``): ``[d in c2] - [d in c1]``.
* ``rho``: CH^1(Y^(1)) -> CH^1(Y^(2)), restriction degrees with the same sign rule.
* ``istar_istar``: CH_1(Y^(1)) -> Z^{components}, the degree of ``i^* i_* z``
  on each component.  Off-diagonal entries are intersection numbers with the
  double curves; the self-restriction uses ``div(pi) = sum mult(m) Y_m ~ 0``.

All components are rational surfaces, so CH_0 and CH^2 are identified with Z
by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fibre import ProductFibre, intersection_number
from .linalg import SparseRatMatrix


@dataclass(frozen=True)
class ComplexMaps:
    gamma: SparseRatMatrix
    rho: SparseRatMatrix
    istar_istar: SparseRatMatrix


def gamma_matrix(fibre: ProductFibre) -> SparseRatMatrix:
    idx = fibre.coordinate_index
    entries: dict[tuple[int, int], Fraction] = {}
    for col, d in enumerate(fibre.double_curves):
        c1, c2 = d.components
        for comp, sign in ((c2, 1), (c1, -1)):
            for lab, x in d.classes[comp].items():
                key = (idx[(comp, lab)], col)
                entries[key] = entries.get(key, 0) + sign * x
    return SparseRatMatrix(fibre.ch1_rank, len(fibre.double_curves), entries)


def rho_matrix(fibre: ProductFibre) -> SparseRatMatrix:
    idx = fibre.coordinate_index
    entries: dict[tuple[int, int], Fraction] = {}
    for row, d in enumerate(fibre.double_curves):
        c1, c2 = d.components
        for comp, sign in ((c2, 1), (c1, -1)):
            lat = fibre.lattice(comp)
            for lab in lat.labels:
                deg = intersection_number(lat, {lab: 1}, d.classes[comp])
                if deg:
                    key = (row, idx[(comp, lab)])
                    entries[key] = entries.get(key, 0) + sign * deg
    return SparseRatMatrix(len(fibre.double_curves), fibre.ch1_rank, entries)


def istar_istar_column(fibre: ProductFibre, comp, label: str) -> dict[int, Fraction]:
    """Degrees of ``i^* i_*`` of one basis class, keyed by component index."""
    lat = fibre.lattice(comp)
    cidx = fibre.component_index
    out: dict[int, Fraction] = {}
    for d in fibre.curves_on(comp):
        other = d.components[0] if d.components[1] == comp else d.components[1]
        deg = intersection_number(lat, {label: 1}, d.classes[comp])
        if deg:
            out[cidx[other]] = out.get(cidx[other], 0) + deg
    weighted = sum(fibre.multiplicity(fibre.components[m]) * x for m, x in out.items())
    diag = -Fraction(weighted, fibre.multiplicity(comp))
    if diag:
        out[cidx[comp]] = diag
    return {m: x for m, x in out.items() if x}


def istar_istar_matrix(fibre: ProductFibre) -> SparseRatMatrix:
    entries: dict[tuple[int, int], Fraction] = {}
    for col, (comp, label) in enumerate(fibre.coordinates):
        for m, x in istar_istar_column(fibre, comp, label).items():
            entries[(m, col)] = x
    return SparseRatMatrix(len(fibre.components), fibre.ch1_rank, entries)


def complex_maps(fibre: ProductFibre) -> ComplexMaps:
    return ComplexMaps(gamma_matrix(fibre), rho_matrix(fibre), istar_istar_matrix(fibre))


def weighted_column_sums(fibre: ProductFibre, M: SparseRatMatrix) -> dict[int, Fraction]:
    """Column sums of ``istar_istar`` weighted by component multiplicity (nonzero ones only)."""
    sums: dict[int, Fraction] = {}
    for (r, c), x in M.entries.items():
        sums[c] = sums.get(c, 0) + fibre.multiplicity(fibre.components[r]) * x
    return {c: s for c, s in sums.items() if s}


def verify_complex(fibre: ProductFibre, maps: ComplexMaps | None = None) -> dict:
    """Check the identities available in the instantiated degrees."""
    maps = maps or complex_maps(fibre)
    composite = maps.istar_istar @ maps.gamma
    bad_sums = weighted_column_sums(fibre, maps.istar_istar)
    checks = [
        {
            "name": "istar_istar * gamma = 0",
            "pass": composite.is_zero(),
            "detail": f"{composite.nnz()} nonzero entries",
        },
        {
            "name": "multiplicity-weighted column sums vanish",
            "pass": not bad_sums,
            "detail": f"{len(bad_sums)} nonzero sums",
        },
        {
            # gamma and rho out of / into CH of triple points vanish: points carry no 1-cycles or divisors
            "name": "gamma^2 = 0 and rho^2 = 0 (vacuous: triple-point groups are zero)",
            "pass": True,
            "detail": f"{len(fibre.triple_points)} triple points",
        },
    ]
    return {
        "k1": fibre.k1,
        "k2": fibre.k2,
        "multiplicity_profile": fibre.profile,
        "shapes": {
            "gamma": [maps.gamma.rows, maps.gamma.cols],
            "rho": [maps.rho.rows, maps.rho.cols],
            "istar_istar": [maps.istar_istar.rows, maps.istar_istar.cols],
        },
        "checks": checks,
        "unchecked": ["gamma*rho + rho*gamma = 0: the two composites do not share source and target here"],
        "pass": all(c["pass"] for c in checks),
    }
