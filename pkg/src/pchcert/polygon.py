"""n-torsion of a Neron polygon fibre G_m x Z/k, and the maps h_a between two of them.

A torsion point is stored as ``(u, mu)`` in (Z/n)^2: ``u`` is the exponent of
a fixed primitive n-th root of unity in G_m and ``mu`` is the component index
in units of ``k/n``.  The Weil pairing exponent is ``u_p mu_q - u_q mu_p``.

On components, ``h_a`` acts through Z/(k1,k2) = Hom(Z/k1, Z/k2),
``m -> a m k2/(k1,k2) mod k2``, which in ``mu`` units is multiplication by
``a k1/(k1,k2)`` modulo n.  All checks below are exhaustive enumerations.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Callable


class TorsionError(ValueError):
    pass


class TorsionNotRational(TorsionError):
    pass


class LevelMismatch(TorsionError):
    pass


@dataclass(frozen=True)
class PolygonFibre:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("a Neron polygon has at least one component")

    def torsion_points(self, n: int) -> list["TorsionPoint"]:
        if self.k % n:
            raise TorsionNotRational(f"{n} does not divide k={self.k}")
        return all_points(n)


@dataclass(frozen=True)
class TorsionPoint:
    n: int
    u: int
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "u", self.u % self.n)
        object.__setattr__(self, "mu", self.mu % self.n)

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        if other.n != self.n:
            raise LevelMismatch(f"levels {self.n} and {other.n}")
        return TorsionPoint(self.n, self.u + other.u, self.mu + other.mu)

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(self.n, -self.u, -self.mu)

    def __rmul__(self, c: int) -> "TorsionPoint":
        return TorsionPoint(self.n, c * self.u, c * self.mu)

    def is_zero(self) -> bool:
        return self.u == 0 and self.mu == 0


def all_points(n: int) -> list[TorsionPoint]:
    return [TorsionPoint(n, u, mu) for u in range(n) for mu in range(n)]


@dataclass(frozen=True)
class IsogenyDescriptor:
    a: int
    k1: int
    k2: int
    direction: str = "forward"  # "forward" is h_a: E1 -> E2, "dual" is its dual E2 -> E1

    def __post_init__(self):
        if self.direction not in ("forward", "dual"):
            raise ValueError(f"direction must be 'forward' or 'dual', not {self.direction!r}")

    def multipliers(self) -> tuple[int, int]:
        g = gcd(self.k1, self.k2)
        source = self.k1 if self.direction == "forward" else self.k2
        return self.a, self.a * (source // g)

    def component_map(self, m: int) -> int:
        """Action on component indices, m in Z/k_source -> Z/k_target."""
        g = gcd(self.k1, self.k2)
        target = self.k2 if self.direction == "forward" else self.k1
        return self.a * m * target // g % target


def isogeny_apply(d: IsogenyDescriptor, p: TorsionPoint) -> TorsionPoint:
    g = gcd(d.k1, d.k2)
    if g % p.n:
        raise TorsionNotRational(f"n={p.n} does not divide gcd(k1, k2)={g}")
    mu_mult, comp_mult = d.multipliers()
    return TorsionPoint(p.n, mu_mult * p.u, comp_mult * p.mu)


def weil_pairing(n: int, p: TorsionPoint, q: TorsionPoint) -> int:
    if p.n != n or q.n != n:
        raise LevelMismatch(f"pairing at level {n} on points of level {p.n}, {q.n}")
    return (p.u * q.mu - q.u * p.mu) % n


def _check_level(a: int, k1: int, k2: int, n: int | None, require_odd: bool = True) -> int:
    if n is None:
        n = a * a + 1
    if require_odd and n % 2 == 0:
        raise TorsionError(f"n={n} is even")
    if gcd(k1, k2) % n:
        raise TorsionNotRational(f"n={n} does not divide gcd(k1, k2)={gcd(k1, k2)}")
    return n


@dataclass
class AntiIsometryReport:
    a: int
    k1: int
    k2: int
    n: int
    holds: bool
    pairs_checked: int
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"parameters": {"a": self.a, "k1": self.k1, "k2": self.k2, "n": self.n},
                "holds": self.holds, "sizes": {"pairs_checked": self.pairs_checked},
                "witnesses": self.witnesses}


def antiisometry_check(a: int, k1: int, k2: int, n: int | None = None,
                       phi: Callable[[TorsionPoint], TorsionPoint] | None = None,
                       max_witnesses: int = 1) -> AntiIsometryReport:
    """Brute force ``e(phi x, phi y) = e(x, y)^-1`` over all pairs of n-torsion points."""
    n = _check_level(a, k1, k2, n)
    if phi is None:
        d = IsogenyDescriptor(a, k1, k2)
        phi = lambda p: isogeny_apply(d, p)  # noqa: E731
    pts = all_points(n)
    images = [phi(p) for p in pts]
    witnesses = []
    checked = 0
    for x, fx in zip(pts, images):
        for y, fy in zip(pts, images):
            checked += 1
            if (fx.u * fy.mu - fy.u * fx.mu + x.u * y.mu - y.u * x.mu) % n:
                if len(witnesses) < max_witnesses:
                    witnesses.append({"x": [x.u, x.mu], "y": [y.u, y.mu],
                                      "e(x,y)": weil_pairing(n, x, y),
                                      "e(phi x,phi y)": weil_pairing(n, fx, fy)})
    return AntiIsometryReport(a, k1, k2, n, not witnesses, checked, witnesses)


@dataclass
class DualCompositeReport:
    a: int
    k1: int
    k2: int
    n: int
    multipliers: tuple[int, int]
    is_mult_by_n_minus_1: bool
    diagonal: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["multipliers"] = list(self.multipliers)
        return out


def dual_composite_check(a: int, k1: int, k2: int, n: int | None = None) -> DualCompositeReport:
    """Compute the dual of h_a composed with h_a on the torsion model and compare with n-1."""
    n = _check_level(a, k1, k2, n, require_odd=False)
    fwd = IsogenyDescriptor(a, k1, k2, "forward")
    dual = IsogenyDescriptor(a, k1, k2, "dual")
    comp = lambda p: isogeny_apply(dual, isogeny_apply(fwd, p))  # noqa: E731
    eu = comp(TorsionPoint(n, 1, 0))
    emu = comp(TorsionPoint(n, 0, 1))
    mult_u, mult_mu = eu.u, emu.mu
    diagonal = eu.mu == 0 and emu.u == 0 and all(
        comp(p) == TorsionPoint(n, mult_u * p.u, mult_mu * p.mu) for p in all_points(n))
    target = (n - 1) % n
    return DualCompositeReport(a, k1, k2, n, (mult_u, mult_mu),
                               diagonal and mult_u == target and mult_mu == target, diagonal)


@dataclass
class FreyKaniReport:
    a: int
    n: int
    kernel_size: int
    equals_graph: bool
    kernel_size_squared_is_n4: bool

    def to_json(self) -> dict:
        return {"parameters": {"a": self.a, "n": self.n}, "sizes": {"kernel": self.kernel_size},
                "equals_graph": self.equals_graph, "kernel_size_squared_is_n4": self.kernel_size_squared_is_n4,
                "holds": self.equals_graph and self.kernel_size_squared_is_n4}


def frey_kani_kernel_check(a: int, n: int | None = None) -> FreyKaniReport:
    """Enumerate the kernel of p(X, Y) = (X + hdual_a Y, h_{-a} X + Y) on ((Z/n)^2)^2.

    Uses k1 = k2 = n so every component multiplier is a unit.
    """
    if n is None:
        n = a * a + 1
    if n != a * a + 1:
        raise TorsionError(f"n must equal a^2 + 1 = {a * a + 1}")
    k = n
    h = IsogenyDescriptor(a, k, k, "forward")
    hdual = IsogenyDescriptor(a, k, k, "dual")
    hminus = IsogenyDescriptor(-a, k, k, "forward")
    pts = all_points(n)
    dual_img = {p: isogeny_apply(hdual, p) for p in pts}
    minus_img = {p: isogeny_apply(hminus, p) for p in pts}
    kernel = set()
    for x, y in itertools.product(pts, pts):
        if (x + dual_img[y]).is_zero() and (minus_img[x] + y).is_zero():
            kernel.add((x, y))
    graph = {(x, isogeny_apply(h, x)) for x in pts}
    size = len(kernel)
    return FreyKaniReport(a, n, size, kernel == graph, size * size == n ** 4)
