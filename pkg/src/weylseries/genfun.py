"""Exact rational series: univariate rational functions, a lattice-point
counting engine for linear Diophantine systems, and the assembled Poincare
series (whole subsets, translations, descent refinements).

The counting engine realizes the partial-fraction elimination of auxiliary
markers (one marker per coupled constraint): every constraint a.e >= c is
tagged with a marker whose exponent tracks the slack a.e - c, mixed-sign
denominator factors are split with the reduction
1/((1-A)(1-B)) = (1/(1-AB)) (1/(1-A) + 1/(1-B) - 1), and once each term is
sign-pure the nonnegative part of the marker expansion is extracted exactly.
All arithmetic is over Fraction; an internal brute-force enumerator backs an
optional self-check.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .minreps import ReflectionSet, normalize
from .rootsys import Coords, RootSystem
from .weyl import WeylElement, enumerate_group, identity_element

# ---------------------------------------------------------------------------
# dense polynomials over Fraction, ascending coefficients, trailing zeros cut


def _trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    last = 0
    for i, c in enumerate(p):
        if c:
            last = i
    return tuple(p[: last + 1]) if p else (Fraction(0),)


def _pzero(p: Sequence[Fraction]) -> bool:
    return len(p) == 1 and not p[0]


def _padd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = max(len(a), len(b))
    return _trim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ])


def _pneg(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(-c for c in a)


def _pmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if _pzero(a) or _pzero(b):
        return (Fraction(0),)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _pscale(a: Sequence[Fraction], s: Fraction) -> tuple[Fraction, ...]:
    return _trim([c * s for c in a])


def _pdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if _pzero(b):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        coeff = rem[shift + len(b) - 1] / lead
        if coeff:
            quot[shift] = coeff
            for i, cb in enumerate(b):
                rem[shift + i] -= coeff * cb
    return _trim(quot), _trim(rem)


def _pgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    x, y = _trim(a), _trim(b)
    while not _pzero(y):
        x, y = y, _pdivmod(x, y)[1]
        if not _pzero(y):
            y = _pscale(y, 1 / y[-1])  # keep remainders monic to bound growth
    if _pzero(x):
        return (Fraction(1),)
    return _pscale(x, 1 / x[-1])


def _peval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _as_poly(coeffs: Iterable) -> tuple[Fraction, ...]:
    return _trim([Fraction(c) for c in coeffs])


# ---------------------------------------------------------------------------


class RationalFunction:
    """A reduced univariate rational function with exact coefficients.

    The gcd of numerator and denominator is 1; the denominator has constant
    term 1 when that is nonzero and is monic otherwise.  Equality always goes
    through cross-multiplication, never through truncated series.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable, den: Iterable = (1,)):
        n = _as_poly(num)
        d = _as_poly(den)
        if _pzero(d):
            raise ZeroDivisionError("rational function with zero denominator")
        if _pzero(n):
            self.num, self.den = (Fraction(0),), (Fraction(1),)
            return
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
        scale = d[0] if d[0] else d[-1]
        self.num = _pscale(n, 1 / scale)
        self.den = _pscale(d, 1 / scale)

    # -- constructors --------------------------------------------------------

    @classmethod
    def _from_coprime(cls, num: Sequence[Fraction], den: Sequence[Fraction]) -> "RationalFunction":
        """Skip the gcd for inputs already known to be coprime; normalize only."""
        n, d = _trim(num), _trim(den)
        if _pzero(n):
            return cls((0,))
        out = cls.__new__(cls)
        scale = d[0] if d[0] else d[-1]
        out.num = _pscale(n, 1 / scale)
        out.den = _pscale(d, 1 / scale)
        return out

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction((0,))

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction((1,))

    @staticmethod
    def monomial(exponent: int, coeff: Fraction = Fraction(1)) -> "RationalFunction":
        """coeff * q**exponent; negative exponents divide by a power of q."""
        if exponent >= 0:
            return RationalFunction([0] * exponent + [coeff])
        return RationalFunction((coeff,), [0] * (-exponent) + [1])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.num = _pneg(self.num)
        out.den = self.den
        return out

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(_pmul(self.num, other.num), _pmul(self.den, other.den))
        return RationalFunction(_pscale(self.num, Fraction(other)), self.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return _pzero(self.num)

    # -- queries -------------------------------------------------------------

    def series(self, n: int) -> list[Fraction]:
        """Maclaurin coefficients c_0..c_n; requires denominator(0) != 0."""
        if not self.den[0]:
            raise ZeroDivisionError("series undefined: denominator vanishes at 0")
        d0 = self.den[0]
        out: list[Fraction] = []
        for k in range(n + 1):
            acc = self.num[k] if k < len(self.num) else Fraction(0)
            for i in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[i] * out[k - i]
            out.append(acc / d0)
        return out

    def evaluate(self, x: Fraction) -> Fraction:
        bottom = _peval(self.den, x)
        if not bottom:
            raise ZeroDivisionError(f"pole at {x}")
        return _peval(self.num, x) / bottom

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @staticmethod
    def from_json(data: dict) -> "RationalFunction":
        return RationalFunction(
            [Fraction(c) for c in data["num"]], [Fraction(c) for c in data["den"]]
        )

    def __repr__(self) -> str:
        def fmt(p: tuple[Fraction, ...]) -> str:
            parts = []
            for i, c in enumerate(p):
                if not c:
                    continue
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append(f"{c}*q" if c != 1 else "q")
                else:
                    parts.append(f"{c}*q^{i}" if c != 1 else f"q^{i}")
            return " + ".join(parts) if parts else "0"

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)}) / ({fmt(self.den)})"


class LaurentPolynomial:
    """Sparse Laurent polynomial; the home of q**(l(x u^-1) - l(u)) prefactors."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c}

    @staticmethod
    def monomial(exponent: int, coeff: Fraction = Fraction(1)) -> "LaurentPolynomial":
        return LaurentPolynomial({exponent: coeff})

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(out)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def min_exponent(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def to_rational_function(self) -> RationalFunction:
        total = RationalFunction.zero()
        for e, c in sorted(self.coeffs.items()):
            total = total + RationalFunction.monomial(e, c)
        return total

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(sorted(self.coeffs.items()))})"


# ---------------------------------------------------------------------------
# lattice-point generating functions


class CountingEngineError(RuntimeError):
    """The counting engine disagreed with its brute-force self-check."""


@dataclass(frozen=True)
class DiophantineSystem:
    """Nonnegative integer vectors e with M e >= m and N e <= b, graded by h.e.

    The weight h is strictly positive in every coordinate, so each degree has
    finitely many solutions and brute-force enumeration per degree is total.
    """

    num_vars: int
    lower_matrix: tuple[Coords, ...]
    lower_rhs: Coords
    upper_matrix: tuple[Coords, ...]
    upper_rhs: Coords
    weight: Coords

    def __post_init__(self):
        n = self.num_vars
        if n < 1:
            raise ValueError("need at least one variable")
        if len(self.weight) != n or any(h <= 0 for h in self.weight):
            raise ValueError("weight must be strictly positive in every coordinate")
        if len(self.lower_matrix) != len(self.lower_rhs):
            raise ValueError("lower matrix/rhs size mismatch")
        if len(self.upper_matrix) != len(self.upper_rhs):
            raise ValueError("upper matrix/rhs size mismatch")
        for row in self.lower_matrix + self.upper_matrix:
            if len(row) != n:
                raise ValueError("constraint row has wrong arity")

    def satisfied_by(self, e: Sequence[int]) -> bool:
        for row, c in zip(self.lower_matrix, self.lower_rhs):
            if sum(r * x for r, x in zip(row, e)) < c:
                return False
        for row, c in zip(self.upper_matrix, self.upper_rhs):
            if sum(r * x for r, x in zip(row, e)) > c:
                return False
        return True


def count_solutions_by_degree(sys: DiophantineSystem, max_degree: int) -> list[int]:
    """Per-degree solution counts by direct enumeration (h.e <= max_degree)."""
    counts = [0] * (max_degree + 1)
    n = sys.num_vars
    e = [0] * n

    def rec(j: int, degree: int) -> None:
        if j == n:
            if sys.satisfied_by(e):
                counts[degree] += 1
            return
        step = sys.weight[j]
        v = 0
        while degree + v * step <= max_degree:
            e[j] = v
            rec(j + 1, degree + v * step)
            v += 1
        e[j] = 0

    rec(0, 0)
    return counts


# marker-elimination internals: a term is coeff * num / prod(1 - d) where
# num and every d are monomials (q_exponent, lambda_exponent_vector)

_Mono = tuple[int, Coords]
_Term = tuple[Fraction, _Mono, tuple[_Mono, ...]]


def _mono_mul(a: _Mono, b: _Mono) -> _Mono:
    return (a[0] + b[0], tuple(x + y for x, y in zip(a[1], b[1])))


def _mono_pow(a: _Mono, k: int) -> _Mono:
    return (a[0] * k, tuple(x * k for x in a[1]))


def _mono_drop(a: _Mono, i: int) -> _Mono:
    lam = list(a[1])
    lam[i] = 0
    return (a[0], tuple(lam))


def _combine(terms: Iterable[_Term]) -> list[_Term]:
    acc: dict[tuple[_Mono, tuple[_Mono, ...]], Fraction] = {}
    for coeff, num, dens in terms:
        key = (num, dens)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return [(c, num, dens) for (num, dens), c in sorted(acc.items(), key=lambda kv: kv[0]) if c]


def _bounded_exponents(weights: Sequence[int], budget: int) -> Iterator[tuple[int, ...]]:
    """All k >= 0 with sum(weights[j] * k[j]) <= budget; weights are positive."""
    if budget < 0:
        return
    if not weights:
        yield ()
        return
    w0 = weights[0]
    k0 = 0
    while w0 * k0 <= budget:
        for rest in _bounded_exponents(weights[1:], budget - w0 * k0):
            yield (k0,) + rest
        k0 += 1


def _eliminate_marker(terms: list[_Term], i: int) -> list[_Term]:
    # Reduction waves with merging in between: distinct reduction orders yield
    # identical factor multisets, so combining after every wave collapses the
    # 3-way branching tree into a DAG and tames the classical term blowup.
    pending = list(terms)
    ready: list[_Term] = []
    while pending:
        produced: list[_Term] = []
        for coeff, num, dens in pending:
            pos = [(t, d) for t, d in enumerate(dens) if d[1][i] > 0]
            neg = [(t, d) for t, d in enumerate(dens) if d[1][i] < 0]
            if not pos or not neg:
                ready.append((coeff, num, dens))
                continue
            # pivot pair with the smallest combined exponent, deterministically
            best = None
            for ta, da in pos:
                for tb, db in neg:
                    key = (abs(da[1][i] + db[1][i]), ta, tb)
                    if best is None or key < best[0]:
                        best = (key, ta, tb, da, db)
            _, ta, tb, da, db = best
            ab = _mono_mul(da, db)
            rest = tuple(d for t, d in enumerate(dens) if t not in (ta, tb))
            produced.append((coeff, num, tuple(sorted(rest + (da, ab)))))
            produced.append((coeff, num, tuple(sorted(rest + (db, ab)))))
            produced.append((-coeff, num, tuple(sorted(rest + (ab,)))))
        pending = _combine(produced)

    out: list[_Term] = []
    for coeff, num, dens in _combine(ready):
        # sign-pure in marker i: extract the part with nonnegative exponent
        exp = num[1][i]
        has_pos = any(d[1][i] > 0 for d in dens)
        if has_pos:
            plain = tuple(sorted(_mono_drop(d, i) for d in dens))
            out.append((coeff, _mono_drop(num, i), plain))
            if exp < 0:
                pos_factors = [d for d in dens if d[1][i] > 0]
                others = tuple(
                    sorted(_mono_drop(d, i) for d in dens if d[1][i] == 0)
                )
                steps = [d[1][i] for d in pos_factors]
                for ks in _bounded_exponents(steps, -exp - 1):
                    extra = num
                    for d, k in zip(pos_factors, ks):
                        extra = _mono_mul(extra, _mono_pow(d, k))
                    out.append((-coeff, _mono_drop(extra, i), others))
        else:
            if exp < 0:
                continue  # every monomial keeps a negative marker exponent
            neg_factors = [d for d in dens if d[1][i] < 0]
            others = tuple(sorted(_mono_drop(d, i) for d in dens if d[1][i] == 0))
            steps = [-d[1][i] for d in neg_factors]
            for ks in _bounded_exponents(steps, exp):
                extra = num
                for d, k in zip(neg_factors, ks):
                    extra = _mono_mul(extra, _mono_pow(d, k))
                out.append((coeff, _mono_drop(extra, i), others))
    return _combine(out)


_ZERO = RationalFunction.zero()


def _cross(a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _solve_3x3(rows: Sequence[Coords], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    m = [[Fraction(x) for x in row] + [Fraction(c)] for row, c in zip(rows, rhs)]
    n = 3
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def _bounded_variable_split(
    lo: Sequence[int],
    box_hi: Sequence[int | None],
    coupled: Sequence[tuple[Coords, int]],
) -> tuple[int, int] | None:
    """For a 3-variable system, find (j, upper) with e_j bounded over the
    relaxation, preferring the tightest bound.  Returns None if every
    box-unbounded variable admits a recession ray, or if infeasibility or
    emptiness is better handled elsewhere.

    The recession cone is pointed (it sits inside the nonnegative orthant),
    so its extreme rays lie on two facets and cross products of facet-normal
    pairs enumerate them exactly.
    """
    n = 3
    rows: list[tuple[Coords, int]] = [(tuple(a), c) for a, c in coupled]
    for j in range(n):
        unit = tuple(int(i == j) for i in range(n))
        rows.append((unit, lo[j]))
        if box_hi[j] is not None:
            rows.append((tuple(-u for u in unit), -box_hi[j]))
    normals = [a for a, _ in rows]
    rays: list[tuple[int, ...]] = []
    for i in range(len(normals)):
        for k in range(i + 1, len(normals)):
            g = _cross(normals[i], normals[k])
            for cand in (g, tuple(-x for x in g)):
                if any(cand) and all(
                    sum(a[t] * cand[t] for t in range(n)) >= 0 for a in normals
                ):
                    rays.append(cand)
    candidates = [
        j for j in range(n) if box_hi[j] is None and all(g[j] <= 0 for g in rays)
    ]
    if not candidates:
        return None
    vertices: list[tuple[Fraction, ...]] = []  # a pointed nonempty region has one
    for i in range(len(rows)):
        for k in range(i + 1, len(rows)):
            for l in range(k + 1, len(rows)):
                pt = _solve_3x3(
                    (rows[i][0], rows[k][0], rows[l][0]),
                    (rows[i][1], rows[k][1], rows[l][1]),
                )
                if pt is not None and all(
                    sum(a[t] * pt[t] for t in range(n)) >= c for a, c in rows
                ):
                    vertices.append(pt)
    if not vertices:
        return (-1, -1)  # pointed and vertex-free: the relaxation is empty
    best = None
    for j in candidates:
        upper = math.floor(max(v[j] for v in vertices))
        if best is None or upper - lo[j] < best[1] - lo[best[0]]:
            best = (j, upper)
    return best


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple[int, ...]:
    """The d-th cyclotomic polynomial, by exact division of q**d - 1."""
    poly = [-1] + [0] * (d - 1) + [1]
    for div in range(1, d):
        if d % div == 0:
            poly = _int_exact_div(poly, _cyclotomic(div))
    return tuple(poly)


def _int_exact_div(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """a // b for integer polynomials with b monic up to sign; None if inexact."""
    rem = list(a)
    while rem and rem[-1] == 0:
        rem.pop()
    if len(rem) < len(b):
        return None if rem else [0]
    lead = b[-1]  # +-1 for cyclotomics and their products
    quot = [0] * (len(rem) - len(b) + 1)
    for shift in range(len(rem) - len(b), -1, -1):
        coeff = rem[shift + len(b) - 1]
        if coeff % lead:
            return None
        coeff //= lead
        if coeff:
            quot[shift] = coeff
            for i, cb in enumerate(b):
                rem[shift + i] -= coeff * cb
    return quot if not any(rem) else None


def _mul_binomial_int(p: list[int], v: int) -> list[int]:
    """Multiply an integer polynomial by (1 - q**v)."""
    out = p + [0] * v
    for i, c in enumerate(p):
        out[i + v] -= c
    return out


def _fold_binomial_terms(groups: dict[tuple[int, ...], list[int]]) -> RationalFunction:
    """Sum of num_g / prod_v (1 - q**v) over groups keyed by the multiset of v.

    The common denominator stays factored; after summing the numerators, the
    fraction is reduced by stripping cyclotomic factors (the only irreducible
    factors a product of binomials 1 - q**v can have).  Everything runs over
    plain integers; a generic gcd on high-degree polynomials never happens.
    """
    common: dict[int, int] = {}
    per_group: dict[tuple[int, ...], dict[int, int]] = {}
    for dens in groups:
        counts: dict[int, int] = {}
        for v in dens:
            counts[v] = counts.get(v, 0) + 1
        per_group[dens] = counts
        for v, k in counts.items():
            common[v] = max(common.get(v, 0), k)
    width = 1 + max(
        (len(num) - 1) + sum(v * k for v, k in common.items()) for num in groups.values()
    )
    total = [0] * width
    for dens in sorted(groups):
        counts = per_group[dens]
        p = list(groups[dens])
        for v, k in common.items():
            for _ in range(k - counts.get(v, 0)):
                p = _mul_binomial_int(p, v)
        for i, c in enumerate(p):
            total[i] += c
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    if total == [0]:
        return _ZERO

    # 1 - q**v = -prod_{d | v} Phi_d, so the denominator is
    # (-1)**M prod_d Phi_d**e_d with e_d = sum of multiplicities of v's d divides
    factor_count = sum(common.values())
    exps: dict[int, int] = {}
    for v, k in common.items():
        for d in range(1, v + 1):
            if v % d == 0:
                exps[d] = exps.get(d, 0) + k
    for d in sorted(exps):
        phi = _cyclotomic(d)
        while exps[d] > 0:
            quot = _int_exact_div(total, phi)
            if quot is None:
                break
            total = quot
            exps[d] -= 1
    den = [-1 if factor_count % 2 else 1]
    for d in sorted(exps):
        phi = _cyclotomic(d)
        for _ in range(exps[d]):
            out = [0] * (len(den) + len(phi) - 1)
            for i, ca in enumerate(den):
                if ca:
                    for j, cb in enumerate(phi):
                        if cb:
                            out[i + j] += ca * cb
            den = out
    return RationalFunction._from_coprime(
        tuple(Fraction(c) for c in total), tuple(Fraction(c) for c in den)
    )


@lru_cache(maxsize=None)
def _solve(sys: DiophantineSystem) -> RationalFunction:
    n = sys.num_vars
    rows: list[tuple[Coords, int]] = []
    for row, c in zip(sys.lower_matrix, sys.lower_rhs):
        rows.append((tuple(row), int(c)))
    for row, c in zip(sys.upper_matrix, sys.upper_rhs):
        rows.append((tuple(-x for x in row), -int(c)))

    lo = [0] * n
    hi: list[int | None] = [None] * n
    coupled: list[tuple[Coords, int]] = []
    for a, c in rows:
        nz = [j for j in range(n) if a[j]]
        if not nz:
            if c > 0:
                return _ZERO
            continue
        if len(nz) == 1:
            j = nz[0]
            if a[j] > 0:
                lo[j] = max(lo[j], math.ceil(Fraction(c, a[j])))
            else:
                bound = math.floor(Fraction(c, a[j]))
                hi[j] = bound if hi[j] is None else min(hi[j], bound)
        else:
            coupled.append((a, c))
    for j in range(n):
        if hi[j] is not None and hi[j] < lo[j]:
            return _ZERO

    # Three-variable systems with several coupled rows can blow up the marker
    # elimination; when some variable is bounded over the relaxation, summing
    # over its finitely many values recurses into tame two-variable systems.
    if n == 3 and len(coupled) >= 2:
        split = _bounded_variable_split(lo, hi, coupled)
        if split is not None:
            j, upper = split
            if j < 0:
                return _ZERO  # pointed and vertex-free: the relaxation is empty
            rest = [t for t in range(n) if t != j]
            total = RationalFunction.zero()
            for val in range(lo[j], upper + 1):
                sub_lower = [
                    (tuple(a[t] for t in rest), c - a[j] * val) for a, c in coupled
                ]
                for t in rest:
                    if lo[t] > 0:
                        sub_lower.append(
                            (tuple(int(s == t) for s in rest), lo[t])
                        )
                sub_upper = [
                    (tuple(int(s == t) for s in rest), hi[t])
                    for t in rest
                    if hi[t] is not None
                ]
                sub = DiophantineSystem(
                    n - 1,
                    tuple(r for r, _ in sub_lower),
                    tuple(c for _, c in sub_lower),
                    tuple(r for r, _ in sub_upper),
                    tuple(c for _, c in sub_upper),
                    tuple(sys.weight[t] for t in rest),
                )
                piece = _solve(sub)
                if not piece.is_zero():
                    total = total + RationalFunction.monomial(sys.weight[j] * val) * piece
            return total

    # substitute e_j = lo_j + f_j and drop rows that the box already decides
    base_degree = sum(h * l for h, l in zip(sys.weight, lo))
    box_hi = [None if hi[j] is None else hi[j] - lo[j] for j in range(n)]
    markers: list[tuple[Coords, int]] = []
    for a, c in coupled:
        c2 = c - sum(a[j] * lo[j] for j in range(n))
        least: int | None = 0
        greatest: int | None = 0
        for j in range(n):
            aj = a[j]
            if not aj:
                continue
            top = box_hi[j]
            if aj > 0:
                if greatest is not None:
                    greatest = None if top is None else greatest + aj * top
            else:
                if least is not None:
                    least = None if top is None else least + aj * top
        if least is not None and least >= c2:
            continue  # row holds everywhere on the box
        if greatest is not None and greatest < c2:
            return _ZERO  # row fails everywhere on the box
        markers.append((a, c2))

    m = len(markers)
    zero_lam = (0,) * m
    num0: _Mono = (base_degree, tuple(-c for _, c in markers))
    terms: list[_Term] = [(Fraction(1), num0, ())]
    for j in range(n):
        mono: _Mono = (sys.weight[j], tuple(a[j] for a, _ in markers))
        grown: list[_Term] = []
        for coeff, num, dens in terms:
            if box_hi[j] is None:
                grown.append((coeff, num, tuple(sorted(dens + (mono,)))))
            else:
                capped = _mono_pow(mono, box_hi[j] + 1)
                grown.append((coeff, num, tuple(sorted(dens + (mono,)))))
                grown.append((-coeff, _mono_mul(num, capped), tuple(sorted(dens + (mono,)))))
        terms = grown

    for i in range(m):
        terms = _eliminate_marker(terms, i)
        if not terms:
            return _ZERO

    # all markers gone; fold q-only terms, grouping by denominator multiset
    grouped: dict[tuple[int, ...], list[int]] = {}
    for coeff, num, dens in terms:
        if num[1] != zero_lam or any(d[1] != zero_lam for d in dens):
            raise AssertionError("marker exponents survived elimination")
        if coeff.denominator != 1:
            raise AssertionError("elimination produced a non-integer coefficient")
        key = tuple(sorted(d[0] for d in dens))
        poly = grouped.setdefault(key, [])
        while len(poly) <= num[0]:
            poly.append(0)
        poly[num[0]] += int(coeff)
    return _fold_binomial_terms(grouped)


def solve_genfun(sys: DiophantineSystem, self_check_degree: int | None = None) -> RationalFunction:
    """Exact generating function sum(q**(h.e)) over the solution set.

    Infeasible systems yield 0.  With `self_check_degree` set, the series is
    compared coefficient-by-coefficient against brute-force enumeration and a
    mismatch is a hard failure.
    """
    result = _solve(sys)
    if self_check_degree is not None:
        expected = count_solutions_by_degree(sys, self_check_degree)
        got = result.series(self_check_degree)
        if [Fraction(c) for c in expected] != got:
            raise CountingEngineError(
                f"series mismatch against enumeration up to degree {self_check_degree}"
            )
    return result


# ---------------------------------------------------------------------------
# the assembled series


@lru_cache(maxsize=None)
def m_vector(u: WeylElement) -> Coords:
    """Least integers m_i >= 0 with m_i >= -(u theta_j, alpha_i) for all vertices."""
    rs = u.rs
    out = []
    for i in range(rs.rank):
        alpha_i = rs.simple_root(i)
        worst = max(-rs.form(u.act(theta), alpha_i) for theta in rs.alcove_vertices)
        out.append(max(0, math.ceil(worst)))
    return tuple(out)


@lru_cache(maxsize=None)
def _weight_vector(rs: RootSystem) -> Coords:
    two_rho = tuple(2 * x for x in rs.rho)
    out = []
    for j in range(rs.rank):
        val = rs.form(rs.coroot(rs.simple_root(j)), two_rho)
        if val.denominator != 1 or val <= 0:
            raise AssertionError("degree weights must be positive integers")
        out.append(int(val))
    return tuple(out)


def build_system(x: WeylElement, u: WeylElement, refl: ReflectionSet) -> DiophantineSystem:
    """Constraints on the dominant translation delta = sum e_j coroot_j.

    Lower rows keep u t_alpha minimal in its right coset; upper rows, one per
    root gamma with u^-1 gamma in the support, keep x t_alpha ascending at the
    corresponding reflection.  The grading weight is (coroot_j, 2 rho).
    """
    rs = x.rs
    n = rs.rank
    lower_matrix = tuple(rs.cpair(rs.simple_root(i)) for i in range(n))
    lower_rhs = m_vector(u)
    upper_rows = []
    upper_rhs = []
    p = rs.num_positive
    xperm = x.root_permutation
    for g in refl.pruned:
        gamma = u.act_root(g.beta)
        upper_rows.append(rs.cpair(gamma))
        image_negative = xperm[rs.root_index(g.beta)] >= p
        upper_rhs.append(g.k - (1 if image_negative else 0))
    return DiophantineSystem(
        num_vars=n,
        lower_matrix=lower_matrix,
        lower_rhs=lower_rhs,
        upper_matrix=tuple(upper_rows),
        upper_rhs=tuple(upper_rhs),
        weight=_weight_vector(rs),
    )


_ASSEMBLE_CACHE: dict[ReflectionSet, RationalFunction] = {}


def assemble_WA(refl: ReflectionSet, threads: int = 1) -> RationalFunction:
    """The Poincare series of the descent-defined subset, as a reduced
    rational function: sum over pairs (x, u) of finite Weyl elements of
    q**(l(x u^-1) - l(u)) times the translation-block generating function.
    """
    cached = _ASSEMBLE_CACHE.get(refl)
    if cached is not None:
        return cached
    rs = refl.rs
    group = enumerate_group(rs)
    pairs = [(x, u) for x in group for u in group]
    systems = [build_system(x, u, refl) for x, u in pairs]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(_solve, systems))
    else:
        blocks = [_solve(s) for s in systems]
    total = RationalFunction.zero()
    for (x, u), block in zip(pairs, blocks):
        if block.is_zero():
            continue
        shift = (x * u.inverse()).length - u.length
        prefactor = LaurentPolynomial.monomial(shift)
        total = total + prefactor.to_rational_function() * block
    if not total.den[0]:
        raise AssertionError("assembled series has a pole at q = 0")
    _ASSEMBLE_CACHE[refl] = total
    return total


def translations_series(rs: RootSystem) -> RationalFunction:
    """Poincare series of the translation subgroup, one block per chamber."""
    empty = normalize(rs, ())
    e = identity_element(rs)
    total = RationalFunction.zero()
    for u in enumerate_group(rs):
        total = total + _solve(build_system(e, u, empty))
    return total


def descent_polynomial(refl: ReflectionSet, max_size: int = 6) -> list[RationalFunction]:
    """Coefficients (in the descent-marking variable t) of the refined series.

    Entry j is the rational function multiplying t**j; the subset sum runs
    over all 2**|A| subsets, so |A| is capped by `max_size`.
    """
    roots = refl.pruned
    k = len(roots)
    if k > max_size:
        raise ValueError(f"reflection set of size {k} exceeds the subset-sum bound {max_size}")
    coeffs = [RationalFunction.zero() for _ in range(k + 1)]
    for mask in range(1 << k):
        subset = tuple(roots[t] for t in range(k) if mask & (1 << t))
        wd = assemble_WA(refl.subset(subset))
        d = len(subset)
        for mm in range(d + 1):
            sign = Fraction(-1) ** mm
            coeffs[k - d + mm] = coeffs[k - d + mm] + wd * (math.comb(d, mm) * sign)
    return coeffs


def evaluate_descent_polynomial(coeffs: Sequence[RationalFunction], t: Fraction) -> RationalFunction:
    total = RationalFunction.zero()
    power = Fraction(1)
    for c in coeffs:
        total = total + c * power
        power *= t
    return total


def finite_poincare_polynomial(rs: RootSystem) -> RationalFunction:
    """The length generating polynomial of the finite Weyl group."""
    counts: dict[int, int] = {}
    for w in enumerate_group(rs):
        counts[w.length] = counts.get(w.length, 0) + 1
    top = max(counts)
    return RationalFunction([counts.get(i, 0) for i in range(top + 1)])
