"""Exact sparse linear algebra over the rationals.

Everything here works with Python integers and :class:`fractions.Fraction`;
there is no floating point anywhere.  Vectors are passed either as dense
sequences or as sparse ``{index: value}`` mappings.  Elimination is
fraction-free (rows are kept as primitive integer vectors) and pivots are
chosen deterministically: lowest column index first, then lowest row index.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]
Vector = Union[Sequence[Number], Mapping[int, Number]]


class LinalgError(ValueError):
    pass


class NoSolution(LinalgError):
    """Right-hand side is not in the column span."""


class ImageNotInKernel(LinalgError):
    """An image vector does not lie in the span of the kernel basis."""


class NotInKernel(LinalgError):
    """A vector handed to ``coords`` is outside the span of the kernel."""


class DependentBasis(LinalgError):
    pass


def parse_rational(raw: str | int | Fraction) -> Fraction:
    if isinstance(raw, (int, Fraction)):
        return Fraction(raw)
    return Fraction(raw.strip())


def format_rational(q: Number) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sparse(v: Vector) -> dict[int, Fraction]:
    if isinstance(v, Mapping):
        return {int(i): Fraction(x) for i, x in v.items() if x != 0}
    return {i: Fraction(x) for i, x in enumerate(v) if x != 0}


def dense(v: Mapping[int, Number], n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = Fraction(x)
    return tuple(out)


@dataclass(frozen=True)
class SparseRatMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            x = Fraction(x)
            if x != 0:
                clean[(r, c)] = x
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SparseRatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for c, x in enumerate(row):
                if x != 0:
                    entries[(r, c)] = Fraction(x)
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Vector]) -> "SparseRatMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, x in sparse(col).items():
                entries[(r, c)] = x
        return cls(nrows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseRatMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def column_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for (r, c), x in self.entries.items():
            out[c][r] = x
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {r: x for (r, c), x in self.entries.items() if c == j}

    def transpose(self) -> "SparseRatMatrix":
        return SparseRatMatrix(self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def apply(self, v: Vector) -> dict[int, Fraction]:
        """Sparse matrix-vector product ``M v``."""
        v = sparse(v)
        out: dict[int, Fraction] = {}
        for c, col in enumerate(self._columns_cache()):
            x = v.get(c)
            if not x:
                continue
            for r, m in col.items():
                out[r] = out.get(r, 0) + m * x
        return {r: x for r, x in out.items() if x != 0}

    def _columns_cache(self) -> list[dict[int, Fraction]]:
        cache = self.__dict__.get("_cols")
        if cache is None:
            cache = self.column_dicts()
            object.__setattr__(self, "_cols", cache)
        return cache

    def __matmul__(self, other: "SparseRatMatrix") -> "SparseRatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        entries: dict[tuple[int, int], Fraction] = {}
        for c, col in enumerate(other.column_dicts()):
            for r, x in self.apply(col).items():
                entries[(r, c)] = x
        return SparseRatMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, format_rational(x)] for (r, c), x in items],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "SparseRatMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        entries = {(int(r), int(c)): parse_rational(x) for r, c, x in data["entries"]}
        return cls(int(data["rows"]), int(data["cols"]), entries)


class Echelon:
    """Incremental row echelon form with coordinate tags.

    Each stored row is a primitive integer vector whose lowest index is its
    pivot; pivots are distinct.  A row may carry a *tag*, a sparse rational
    vector of coordinates; reducing a vector accumulates the tags of the rows
    subtracted from it.  Rows are never back-reduced, which keeps fill-in low
    on the very sparse matrices this package builds.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}
        self.tags: dict[int, dict[int, Fraction]] = {}
        self.order: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vector) -> tuple[dict[int, int], int, dict[int, Fraction]]:
        """Reduce ``v`` against the stored rows.

        Returns ``(residual, denominator, coords)`` where the true residual is
        ``residual / denominator`` and ``coords`` is the accumulated tag
        combination of the subtracted rows.
        """
        v = sparse(v)
        den = 1
        for x in v.values():
            den = den * x.denominator // gcd(den, x.denominator)
        work = {i: int(x * den) for i, x in v.items()}
        coords: dict[int, Fraction] = {}
        heap = list(work)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            x = work.get(c)
            if not x:
                continue
            row = self.rows.get(c)
            if row is None:
                continue
            p = row[c]
            tag = self.tags.get(c)
            if tag:
                lam = Fraction(x, p * den)
                for q, t in tag.items():
                    coords[q] = coords.get(q, 0) + lam * t
            # work <- p*work - x*row, den <- p*den
            if p != 1:
                for i in work:
                    work[i] *= p
                den *= p
            for i, r in row.items():
                y = work.get(i, 0) - x * r
                if y:
                    if i not in work:
                        heapq.heappush(heap, i)
                    work[i] = y
                else:
                    work.pop(i, None)
            if abs(p) != 1:
                g = den
                for y in work.values():
                    g = gcd(g, y)
                    if g == 1:
                        break
                if g > 1:
                    work = {i: y // g for i, y in work.items()}
                    den //= g
        coords = {q: t for q, t in coords.items() if t != 0}
        return work, den, coords

    def add(self, v: Vector, tag: Mapping[int, Number] | None = None) -> int | None:
        """Reduce ``v`` and store the residual as a new row.

        Returns the new pivot, or ``None`` if ``v`` was already in the span.
        The stored tag is ``tag`` minus the coordinates consumed during
        reduction, so that reducing the original ``v`` later yields ``tag``.
        """
        work, den, coords = self.reduce(v)
        if not work:
            return None
        pivot = min(work)
        g = 0
        for x in work.values():
            g = gcd(g, x)
        if work[pivot] < 0:
            g = -g
        row = {i: x // g for i, x in work.items()}
        # residual = row * g / den
        if tag is not None or coords:
            combined = {q: Fraction(t) for q, t in (tag or {}).items()}
            for q, t in coords.items():
                combined[q] = combined.get(q, 0) - t
            factor = Fraction(den, g)
            self.tags[pivot] = {q: t * factor for q, t in combined.items() if t != 0}
        self.rows[pivot] = row
        self.order.append(pivot)
        return pivot

    def contains(self, v: Vector) -> bool:
        work, _, _ = self.reduce(v)
        return not work


def rank(M: SparseRatMatrix, verify: bool = False) -> int:
    """Exact rank over Q.  With ``verify`` the result is cross-checked mod a random large prime."""
    ech = Echelon()
    for row in M.row_dicts():
        if row:
            ech.add(row)
    r = len(ech)
    if verify:
        rp = rank_mod_p(M)
        # rank mod p never exceeds the rational rank
        if rp != r:
            raise LinalgError(f"rank cross-check failed: exact {r}, modular {rp}")
    return r


_MOD_PRIMES = (2305843009213693951, 1152921504606846883, 4611686018427387847)


def rank_mod_p(M: SparseRatMatrix, p: int | None = None, seed: int | None = None) -> int:
    """Rank of ``M`` reduced modulo a large prime (independent elimination path)."""
    if p is None:
        p = random.Random(seed).choice(_MOD_PRIMES)
    pivots: dict[int, dict[int, int]] = {}
    for row in M.row_dicts():
        w = {}
        for c, x in row.items():
            if x.denominator % p == 0:
                raise LinalgError("denominator divisible by modulus")
            y = x.numerator * pow(x.denominator, -1, p) % p
            if y:
                w[c] = y
        while w:
            c = min(w)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(w[c], -1, p)
                pivots[c] = {i: y * inv % p for i, y in w.items()}
                break
            f = w[c]
            for i, y in prow.items():
                z = (w.get(i, 0) - f * y) % p
                if z:
                    w[i] = z
                else:
                    w.pop(i, None)
    return len(pivots)


def _rref(rows: Iterable[Mapping[int, Number]]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form as ``{pivot: row}`` with unit pivots."""
    ech = Echelon()
    for row in rows:
        if row:
            ech.add(row)
    out: dict[int, dict[int, Fraction]] = {}
    for piv in sorted(ech.rows, reverse=True):
        row = ech.rows[piv]
        p = row[piv]
        r = {i: Fraction(x, p) for i, x in row.items()}
        for i in sorted(k for k in r if k != piv and k in out):
            x = r.pop(i, 0)
            if x:
                for j, y in out[i].items():
                    if j == i:
                        continue
                    z = r.get(j, 0) - x * y
                    if z:
                        r[j] = z
                    else:
                        r.pop(j, None)
        out[piv] = r
    return dict(sorted(out.items()))


def kernel_basis(M: SparseRatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column (ascending)."""
    return [dense(v, M.cols) for v in kernel_basis_sparse(M)]


def kernel_basis_sparse(M: SparseRatMatrix) -> list[dict[int, Fraction]]:
    rref = _rref(M.row_dicts())
    free = [c for c in range(M.cols) if c not in rref]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for piv, row in rref.items():
            x = row.get(f)
            if x:
                v[piv] = -x
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Solution:
    particular: tuple[Fraction, ...]
    homogeneous: list[tuple[Fraction, ...]]


def solve_exact(M: SparseRatMatrix, b: Vector) -> Solution:
    """Solve ``M x = b`` exactly; raise :class:`NoSolution` if inconsistent."""
    if not isinstance(b, Mapping) and len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.rows}")
    b = sparse(b)
    if b and max(b) >= M.rows:
        raise ValueError("right-hand side index outside the row range")
    aug = M.row_dicts()
    rhs_col = M.cols
    for r, x in b.items():
        aug[r][rhs_col] = x
    rref = _rref(aug)
    if rhs_col in rref:
        raise NoSolution("right-hand side is not in the column span")
    part = {piv: row.get(rhs_col, Fraction(0)) for piv, row in rref.items()}
    homogeneous = kernel_basis(M)
    return Solution(dense(part, M.cols), homogeneous)


@dataclass
class QuotientSpace:
    """The quotient span(kernel_basis) / span(image_basis) with a coordinate map."""

    ambient_dim: int
    kernel_basis: list[dict[int, Fraction]]
    image_basis: list[dict[int, Fraction]]
    quotient_dim: int
    basis_indices: list[int]
    _echelon: Echelon = field(repr=False, default=None)

    def coords(self, v: Vector) -> tuple[Fraction, ...]:
        work, _, c = self._echelon.reduce(v)
        if work:
            raise NotInKernel("vector is not in the span of the kernel basis")
        return tuple(Fraction(c.get(q, 0)) for q in range(self.quotient_dim))

    def quotient_basis(self) -> list[dict[int, Fraction]]:
        return [self.kernel_basis[i] for i in self.basis_indices]


def quotient_space(kernel: Sequence[Vector], image: Sequence[Vector], ambient_dim: int | None = None,
                   check_kernel_independent: bool = True) -> QuotientSpace:
    """Build ``span(kernel)/span(image)``.

    The quotient basis is the sub-list of ``kernel`` that stays independent
    after the image has been eliminated; ``coords`` returns unit vectors on
    it and vanishes on the image.
    """
    ker = [sparse(v) for v in kernel]
    img = [sparse(v) for v in image]
    if ambient_dim is None:
        ambient_dim = 1 + max((i for v in ker + img for i in v), default=-1)

    if check_kernel_independent:
        kech = Echelon()
        for v in ker:
            if kech.add(v) is None:
                raise DependentBasis("kernel basis vectors are linearly dependent")
        kernel_rank = len(kech)
    else:
        kernel_rank = len(ker)

    ech = Echelon()
    image_basis = []
    for v in img:
        if ech.add(v) is not None:
            image_basis.append(v)
    image_rank = len(ech)
    basis_indices = []
    for idx, v in enumerate(ker):
        q = len(basis_indices)
        if ech.add(v, tag={q: 1}) is not None:
            basis_indices.append(idx)
    if image_rank + len(basis_indices) != kernel_rank:
        raise ImageNotInKernel(
            f"image is not contained in span(kernel): rank(image+kernel)="
            f"{image_rank + len(basis_indices)} > rank(kernel)={kernel_rank}")
    return QuotientSpace(ambient_dim, ker, image_basis, len(basis_indices), basis_indices, ech)
