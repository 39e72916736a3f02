"""Finite crystallographic root systems over exact rational arithmetic.

Vectors are coordinate tuples in the simple-root basis; roots always have
integer coordinates.  The bilinear form is normalized so that long roots
have squared length 2.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Coords = tuple[int, ...]


class CartanError(ValueError):
    """Cartan data that does not define a finite irreducible type."""


_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}
_FAMILY_MAX_RANK = {"A": 8, "B": 8, "C": 8, "D": 8, "E": 8, "F": 4, "G": 2}


def _canonical_matrix(family: str, rank: int) -> tuple[Coords, ...]:
    # Convention: entry a[i][j] acts in s_i(alpha_j) = alpha_j - a[i][j] alpha_i,
    # i.e. a[i][j] = 2(alpha_j, alpha_i)/(alpha_i, alpha_i).
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(rank - 1):
            join(i, i + 1)
    elif family == "B":  # last simple root short
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 2, rank - 1, -1, -2)
    elif family == "C":  # last simple root long
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 2, rank - 1, -2, -1)
    elif family == "D":
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    elif family == "E":  # chain 1-3-4-...-n, node 2 attached to node 4
        chain = [0] + list(range(2, rank))
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)
    elif family == "F":  # roots 1,2 long; roots 3,4 short
        join(0, 1)
        join(1, 2, -1, -2)
        join(2, 3)
    elif family == "G":  # root 1 short
        join(0, 1, -3, -1)
    else:
        raise CartanError(f"unknown family {family!r}")
    return tuple(tuple(row) for row in a)


def _symmetrizer(matrix: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Positive rationals d_i with (d_i a_ij) symmetric, normalized to max 1."""
    n = len(matrix)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(n):
            if j != i and matrix[i][j] != 0:
                dj = d[i] * Fraction(matrix[i][j], matrix[j][i])
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
    if any(di is None for di in d):
        raise CartanError("Cartan matrix is reducible (disconnected diagram)")
    top = max(d)  # type: ignore[type-var]
    return tuple(di / top for di in d)  # type: ignore[operator]


def _validate_matrix(matrix: Sequence[Sequence[int]]) -> tuple[Coords, ...]:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise CartanError("Cartan matrix must be square and nonempty")
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    for i in range(n):
        if rows[i][i] != 2:
            raise CartanError(f"diagonal entry a[{i}][{i}] = {rows[i][i]} != 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise CartanError(f"off-diagonal entry a[{i}][{j}] > 0")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise CartanError(f"zero pattern asymmetric at ({i},{j})")
    return rows


def _check_positive_definite(gram: Sequence[Sequence[Fraction]]) -> None:
    """All leading principal minors > 0, via exact elimination pivots."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    for k in range(n):
        pivot = m[k][k]
        if pivot <= 0:
            raise CartanError(
                f"symmetrized matrix is not positive definite "
                f"(leading {k + 1}x{k + 1} minor is not positive); not finite type"
            )
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix with its label and symmetrizer."""

    label: str | None
    matrix: tuple[Coords, ...]
    symmetrizer: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)


def cartan_from_matrix(matrix: Sequence[Sequence[int]], label: str | None = None) -> CartanDatum:
    """Validate an integer Cartan matrix and package it as a CartanDatum.

    Rejects anything that is not finite irreducible type.
    """
    rows = _validate_matrix(matrix)
    sym = _symmetrizer(rows)
    gram = [[sym[i] * rows[i][j] for j in range(len(rows))] for i in range(len(rows))]
    _check_positive_definite(gram)
    return CartanDatum(label=label, matrix=rows, symmetrizer=sym)


def cartan_from_label(label: str) -> CartanDatum:
    """Build the canonical Cartan datum for a label like "A2", "C2", "G2"."""
    label = label.strip().upper()
    if len(label) < 2 or label[0] not in _FAMILY_MIN_RANK:
        raise CartanError(f"unrecognized type label {label!r}")
    family = label[0]
    try:
        rank = int(label[1:])
    except ValueError:
        raise CartanError(f"unrecognized type label {label!r}") from None
    lo, hi = _FAMILY_MIN_RANK[family], _FAMILY_MAX_RANK[family]
    if family == "E" and rank not in (6, 7, 8):
        raise CartanError("E family supports E6, E7, E8 only")
    if not lo <= rank <= hi:
        raise CartanError(
            f"{family} family supports ranks {lo}..{hi}; pass a custom Cartan matrix for others"
        )
    return cartan_from_matrix(_canonical_matrix(family, rank), label=label)


def _mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class RootSystem:
    """A finite irreducible crystallographic root system and its constants.

    Immutable after construction; safe to share across threads.  Equality and
    hashing are by identity, so derived caches key on the instance.
    """

    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        self.rank = cartan.rank
        n = self.rank
        a = cartan.matrix
        d = cartan.symmetrizer
        self.gram: tuple[Vector, ...] = tuple(
            tuple(d[i] * a[i][j] for j in range(n)) for i in range(n)
        )

        self.positive_roots: tuple[Coords, ...] = self._close_positive_roots()
        negatives = tuple(tuple(-x for x in c) for c in self.positive_roots)
        self.roots: tuple[Coords, ...] = self.positive_roots + negatives
        self._root_index: dict[Coords, int] = {c: i for i, c in enumerate(self.roots)}
        self.num_positive = len(self.positive_roots)

        # <beta, alpha_i^vee> for every root, as integer rows used by all pairings
        self._cpair: dict[Coords, Coords] = {
            c: tuple(sum(a[i][j] * c[j] for j in range(n)) for i in range(n)) for c in self.roots
        }

        self.highest_root: Coords = max(self.positive_roots, key=lambda c: (sum(c), c))
        heights = [sum(c) for c in self.positive_roots]
        if heights.count(sum(self.highest_root)) != 1:
            raise CartanError("no unique highest root; system is not irreducible")
        self.marks: Coords = self.highest_root
        if any(m < 1 for m in self.marks):
            raise CartanError("highest root has a nonpositive coordinate")

        ginv = _mat_inverse(self.gram)
        self.fundamental_coweights: tuple[Vector, ...] = tuple(
            tuple(ginv[i][j] for i in range(n)) for j in range(n)
        )
        self.fundamental_weights: tuple[Vector, ...] = tuple(
            tuple(d[j] * x for x in self.fundamental_coweights[j]) for j in range(n)
        )
        self.rho: Vector = tuple(
            sum((ginv[i][j] * d[j] for j in range(n)), Fraction(0)) for i in range(n)
        )
        self.alcove_vertices: tuple[Vector, ...] = tuple(
            tuple(x / self.marks[j] for x in self.fundamental_coweights[j]) for j in range(n)
        )

        self._norm: dict[Coords, Fraction] = {c: self.form(c, c) for c in self.roots}
        self.coroots: dict[Coords, Vector] = {
            c: tuple(2 * x / self._norm[c] for x in c) for c in self.roots
        }

        self._check_construction()

    # -- construction ------------------------------------------------------

    def _close_positive_roots(self) -> tuple[Coords, ...]:
        """Positive roots by height-ascending string closure."""
        n = self.rank
        a = self.cartan.matrix
        simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        known: set[Coords] = set(simples)
        by_height: dict[int, list[Coords]] = {1: sorted(simples)}
        h = 1
        while h in by_height:
            nxt: set[Coords] = set()
            for c in by_height[h]:
                for i in range(n):
                    pairing = sum(a[i][j] * c[j] for j in range(n))
                    down = list(c)
                    p = 0
                    while True:
                        down[i] -= 1
                        if tuple(down) in known or tuple(-x for x in down) in known:
                            p += 1
                        else:
                            break
                    if p - pairing >= 1:
                        up = list(c)
                        up[i] += 1
                        cand = tuple(up)
                        if cand not in known:
                            nxt.add(cand)
            if nxt:
                known |= nxt
                by_height[h + 1] = sorted(nxt)
            h += 1
        out: list[Coords] = []
        for hh in sorted(by_height):
            out.extend(by_height[hh])
        return tuple(out)

    def _check_construction(self) -> None:
        n = self.rank
        for i in range(n):
            if self.form(self.rho, self.coroot(self.simple_root(i))) != 1:
                raise AssertionError("rho pairing broken")
        if self.form(self.highest_root, self.highest_root) != 2:
            raise AssertionError("normalization broken: highest root norm != 2")
        for j in range(n):
            theta = self.alcove_vertices[j]
            if self.form(theta, self.highest_root) != 1:
                raise AssertionError("alcove vertex pairing with highest root != 1")
            if not self.is_dominant(theta):
                raise AssertionError("alcove vertex outside the closed chamber")
        for c in self.roots:
            if self.form(self.coroots[c], c) != 2:
                raise AssertionError("coroot duality broken")
        total = [0] * n
        for c in self.positive_roots:
            total = [t + x for t, x in zip(total, c)]
        if tuple(total) != tuple(2 * r for r in self.rho):
            raise AssertionError("sum of positive roots != 2*rho")

    # -- geometry ----------------------------------------------------------

    def form(self, v: Sequence, w: Sequence) -> Fraction:
        """The invariant bilinear form, long roots having squared length 2."""
        total = Fraction(0)
        for i, vi in enumerate(v):
            if vi:
                row = self.gram[i]
                total += vi * sum(row[j] * w[j] for j in range(self.rank) if w[j])
        return total

    def is_dominant(self, v: Sequence) -> bool:
        """Whether v lies in the closed fundamental chamber."""
        return all(
            sum(self.gram[i][j] * v[j] for j in range(self.rank)) >= 0 for i in range(self.rank)
        )

    def simple_root(self, i: int) -> Coords:
        """The i-th simple root, 0-based."""
        return tuple(int(i == j) for j in range(self.rank))

    def is_root(self, coords: Sequence[int]) -> bool:
        return tuple(coords) in self._root_index

    def is_positive_root(self, coords: Sequence[int]) -> bool:
        idx = self._root_index.get(tuple(coords))
        return idx is not None and idx < self.num_positive

    def root_index(self, coords: Sequence[int]) -> int:
        return self._root_index[tuple(coords)]

    def norm(self, root: Coords) -> Fraction:
        return self._norm[root]

    def coroot(self, root: Coords) -> Vector:
        """2*root/(root,root) in the simple-root basis."""
        return self.coroots[root]

    def cpair(self, root: Coords) -> Coords:
        """Integer pairings <root, alpha_i^vee> for i = 0..n-1."""
        return self._cpair[root]

    def coroot_coords(self, root: Coords) -> Coords:
        """Integer coordinates of the coroot of `root` in the simple-coroot basis."""
        d = self.cartan.symmetrizer
        nm = self._norm[root]
        out = []
        for i, c in enumerate(root):
            e = Fraction(2 * c) * d[i] / nm
            if e.denominator != 1:
                raise AssertionError("coroot has non-integer coroot coordinates")
            out.append(int(e))
        return tuple(out)

    def from_coroot_coords(self, e: Sequence[int]) -> Coords:
        """Simple-root coordinates of a coroot-lattice element given in the simple-coroot basis."""
        d = self.cartan.symmetrizer
        out = []
        for i, ei in enumerate(e):
            c = ei / d[i]
            if c.denominator != 1:
                raise AssertionError("coroot lattice element has non-integer root coordinates")
            out.append(int(c))
        return tuple(out)

    def translation_pairing(self, e: Sequence[int], root: Coords) -> int:
        """(alpha, root) for alpha in the coroot lattice with coroot coordinates e."""
        row = self._cpair[root]
        return sum(ei * ri for ei, ri in zip(e, row))

    def __repr__(self) -> str:
        label = self.cartan.label or f"custom rank {self.rank}"
        return f"RootSystem({label}, {self.num_positive} positive roots)"


def build_root_system(cartan: CartanDatum) -> RootSystem:
    """Construct the root system for validated Cartan data."""
    return RootSystem(cartan)


def root_system(spec: str | Sequence[Sequence[int]]) -> RootSystem:
    """Build a root system from a type label or a raw Cartan matrix."""
    if isinstance(spec, str):
        return build_root_system(cartan_from_label(spec))
    return build_root_system(cartan_from_matrix(spec))
