"""Independent oracles for the test suite.

Everything here recomputes expected values from first principles (orbit
closures, graph walks, direct lattice enumeration) without touching the
closed-form code paths under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from weylseries import affine_generators, affine_identity, ball


def orbit_positive_roots(cartan_matrix) -> set[tuple[int, ...]]:
    """Saturate the simple roots under all simple reflections; keep positives.

    Uses only the Cartan action s_i(v) = v - <v, alpha_i^vee> alpha_i on
    integer coordinate vectors.
    """
    n = len(cartan_matrix)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def reflect(i, v):
        pairing = sum(cartan_matrix[i][j] * v[j] for j in range(n))
        out = list(v)
        out[i] -= pairing
        return tuple(out)

    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return {v for v in seen if all(c >= 0 for c in v)}


def bfs_affine_depths(rs, n: int) -> dict[tuple, int]:
    """Cayley-graph distance from the identity, by plain BFS over products.

    Only the group law is exercised; no length formula is consulted.
    """
    gens = affine_generators(rs)
    start = affine_identity(rs)
    depths = {start.key: 0}
    frontier = [start]
    for depth in range(1, n + 1):
        nxt = []
        for sigma in frontier:
            for s in gens:
                child = sigma * s
                if child.key not in depths:
                    depths[child.key] = depth
                    nxt.append(child)
        frontier = nxt
    return depths


def count_lattice_points(system, max_degree: int) -> list[int]:
    """Per-degree solution counts via itertools ranges (no recursion shared
    with the engine's internal enumerator)."""
    n = system.num_vars
    ranges = [range(max_degree // system.weight[j] + 1) for j in range(n)]
    counts = [0] * (max_degree + 1)
    for e in itertools.product(*ranges):
        degree = sum(h * x for h, x in zip(system.weight, e))
        if degree > max_degree:
            continue
        ok = all(
            sum(r * x for r, x in zip(row, e)) >= c
            for row, c in zip(system.lower_matrix, system.lower_rhs)
        ) and all(
            sum(r * x for r, x in zip(row, e)) <= c
            for row, c in zip(system.upper_matrix, system.upper_rhs)
        )
        if ok:
            counts[degree] += 1
    return counts


def descent_statistic(rs, roots, n: int) -> dict[tuple[int, int], int]:
    """Counts of (length, number of descents in `roots`) over the radius-n ball.

    A descent at gamma is detected by the sign of the image root, the direct
    reading of the definition.
    """
    from weylseries import act_affine, is_positive_affine_root

    stat: dict[tuple[int, int], int] = {}
    for sigma, ell in ball(rs, n):
        des = sum(1 for g in roots if not is_positive_affine_root(rs, act_affine(sigma, g)))
        stat[(ell, des)] = stat.get((ell, des), 0) + 1
    return stat


def series_equals_ints(coeffs: list[Fraction], expected: list[int]) -> bool:
    return len(coeffs) == len(expected) and all(
        c == e for c, e in zip(coeffs, expected)
    )
