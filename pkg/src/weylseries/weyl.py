"""The finite Weyl group: matrix elements, exact length, full enumeration."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .rootsys import Coords, RootSystem

Matrix = tuple[Coords, ...]


class WeylElement:
    """A Weyl group element as the integer matrix of its action on simple roots.

    Column j of `rows` holds the simple-root coordinates of the image of the
    j-th simple root.  The matrix is the canonical (hashable) form; length,
    inverse and the induced root permutation are cached lazily.
    """

    __slots__ = ("rs", "rows", "_length", "_inv", "_perm", "_cmat", "_hash")

    def __init__(self, rs: RootSystem, rows: Matrix, length: int | None = None):
        self.rs = rs
        self.rows = rows
        self._length = length
        self._inv: WeylElement | None = None
        self._perm: tuple[int, ...] | None = None
        self._cmat: Matrix | None = None
        self._hash = hash(rows)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.rows == other.rows and self.rs is other.rs

    def __lt__(self, other: "WeylElement") -> bool:
        return self.rows < other.rows

    def __repr__(self) -> str:
        return f"WeylElement({self.rows})"

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.rows, other.rows
        n = self.rs.rank
        rows = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
        )
        return WeylElement(self.rs, rows)

    def act(self, v: Sequence) -> tuple:
        """Image of a vector in simple-root coordinates."""
        n = self.rs.rank
        return tuple(sum(self.rows[i][j] * v[j] for j in range(n)) for i in range(n))

    def act_root(self, root: Coords) -> Coords:
        return self.rs.roots[self.root_permutation[self.rs.root_index(root)]]

    @property
    def root_permutation(self) -> tuple[int, ...]:
        """Index permutation of the full root list under this element."""
        if self._perm is None:
            rs = self.rs
            try:
                self._perm = tuple(rs.root_index(self.act(c)) for c in rs.roots)
            except KeyError as exc:
                raise ValueError(f"matrix {self.rows} does not permute the roots") from exc
        return self._perm

    @property
    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        if self._length is None:
            p = self.rs.num_positive
            perm = self.root_permutation
            self._length = sum(1 for i in range(p) if perm[i] >= p)
        return self._length

    def inverse(self) -> "WeylElement":
        if self._inv is None:
            rs = self.rs
            perm = self.root_permutation
            # column j of the inverse = the root mapping onto the j-th simple root
            pre = [None] * rs.rank
            for src, dst in enumerate(perm):
                root = rs.roots[dst]
                for j in range(rs.rank):
                    if root == rs.simple_root(j):
                        pre[j] = rs.roots[src]
            rows = tuple(tuple(pre[j][i] for j in range(rs.rank)) for i in range(rs.rank))
            inv = WeylElement(rs, rows)
            inv._inv = self
            self._inv = inv
        return self._inv

    @property
    def coroot_matrix(self) -> Matrix:
        """Matrix of the action in the simple-coroot basis (integer)."""
        if self._cmat is None:
            d = self.rs.cartan.symmetrizer
            n = self.rs.rank
            rows = []
            for i in range(n):
                row = []
                for j in range(n):
                    x = d[i] * self.rows[i][j] / d[j]
                    if x.denominator != 1:
                        raise AssertionError("coroot lattice not preserved")
                    row.append(int(x))
                rows.append(tuple(row))
            self._cmat = tuple(rows)
        return self._cmat

    def act_coroot_coords(self, e: Sequence[int]) -> Coords:
        """Image of a coroot-lattice element given in simple-coroot coordinates."""
        m = self.coroot_matrix
        n = self.rs.rank
        return tuple(sum(m[i][j] * e[j] for j in range(n)) for i in range(n))

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.rs.rank)
            for j in range(self.rs.rank)
        )


def identity_element(rs: RootSystem) -> WeylElement:
    n = rs.rank
    rows = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return WeylElement(rs, rows, length=0)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The reflection s_i in the i-th simple root, i in 1..rank."""
    n = rs.rank
    if not 1 <= i <= n:
        raise IndexError(f"simple reflection index {i} out of range 1..{n}")
    a = rs.cartan.matrix
    k = i - 1
    rows = tuple(
        tuple((int(r == j) if r != k else int(r == j) - a[k][j]) for j in range(n))
        for r in range(n)
    )
    return WeylElement(rs, rows, length=1)


def reflection_in_root(rs: RootSystem, root: Coords) -> WeylElement:
    """The reflection v -> v - <v, root^vee> root as a group element."""
    if not rs.is_root(root):
        raise ValueError(f"{root} is not a root")
    n = rs.rank
    cols = []
    for j in range(n):
        # <alpha_j, root^vee> = 2(alpha_j, root)/(root, root)
        coeff = 2 * rs.form(rs.simple_root(j), root) / rs.norm(root)
        if coeff.denominator != 1:
            raise AssertionError("non-integer Cartan pairing")
        col = tuple(int(j == i) - int(coeff) * root[i] for i in range(n))
        cols.append(col)
    rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return WeylElement(rs, rows)


@lru_cache(maxsize=None)
def enumerate_group(rs: RootSystem) -> tuple[WeylElement, ...]:
    """All elements of W, breadth-first by length, deterministic order.

    Children come from right multiplication by s_1..s_n; each element's BFS
    depth is checked against its inversion-count length.
    """
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    start = identity_element(rs)
    seen: dict[Matrix, int] = {start.rows: 0}
    out: list[WeylElement] = [start]
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt: list[WeylElement] = []
        for w in frontier:
            for s in gens:
                child = w * s
                if child.rows not in seen:
                    seen[child.rows] = depth
                    if child.length != depth:
                        raise AssertionError("BFS depth disagrees with inversion count")
                    child._length = depth
                    nxt.append(child)
        frontier = nxt
        out.extend(nxt)
    return tuple(out)


def longest_element(rs: RootSystem) -> WeylElement:
    """The unique element of maximal length |Phi+|."""
    top = [w for w in enumerate_group(rs) if w.length == rs.num_positive]
    if len(top) != 1:
        raise AssertionError("longest element is not unique")
    return top[0]
