"""Brute-force oracles shared by the CLI verify modes and the test suite.

These routines avoid the closed-form machinery they are used to check: they
walk Cayley graphs and filter cosets directly.
"""

from __future__ import annotations

from typing import Sequence

from .affine import AffineElement, AffineRoot, affine_identity, ball, reflection_element
from .rootsys import RootSystem


def subgroup_ball(
    rs: RootSystem, gen_roots: Sequence[AffineRoot], max_len: int
) -> list[AffineElement]:
    """Elements of the reflection subgroup with ambient length <= max_len.

    BFS over the generating reflections, following only length-increasing
    edges.  For a simple system (pairwise non-positive roots) ambient descents
    at the generators coincide with subgroup descents, so ambient length grows
    monotonically along subgroup-reduced words and the pruning is exhaustive.
    """
    gens = [reflection_element(rs, g) for g in gen_roots]
    start = affine_identity(rs)
    seen: dict[tuple, AffineElement] = {start.key: start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                child = w * s
                if child.length > w.length and child.length <= max_len and child.key not in seen:
                    seen[child.key] = child
                    nxt.append(child)
        frontier = nxt
    return sorted(seen.values(), key=lambda el: (el.length, el.key))


def minimal_coset_counts(rs: RootSystem, gen_roots: Sequence[AffineRoot], n: int) -> list[int]:
    """Per-length counts of elements no subgroup member can shorten.

    A shortening witness w' for sigma with l(sigma) <= n satisfies
    l(w') <= l(sigma) + l(sigma w') < 2n, so the subgroup ball of radius
    2n - 1 decides minimality for the whole ambient ball of radius n.
    """
    witnesses = [w for w in subgroup_ball(rs, gen_roots, max(0, 2 * n - 1)) if not w.is_identity()]
    counts = [0] * (n + 1)
    for sigma, ell in ball(rs, n):
        if all((sigma * w).length > ell for w in witnesses):
            counts[ell] += 1
    return counts


def subgroup_words(
    rs: RootSystem, gen_roots: Sequence[AffineRoot], max_word_len: int
) -> set[AffineElement]:
    """All products of at most max_word_len generating reflections."""
    gens = [reflection_element(rs, g) for g in gen_roots]
    start = affine_identity(rs)
    seen = {start}
    frontier = [start]
    for _ in range(max_word_len):
        nxt = []
        for w in frontier:
            for s in gens:
                child = w * s
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return seen


def translation_counts(rs: RootSystem, n: int) -> list[int]:
    """Lengths of the pure translations inside the radius-n ball."""
    counts = [0] * (n + 1)
    for sigma, ell in ball(rs, n):
        if sigma.is_translation():
            counts[ell] += 1
    return counts
