"""Descent-defined subsets and reflection subgroups.

A finite set A of reflections (given by positive affine roots) selects the
subset of the affine Weyl group whose elements ascend at every member of A.
This module normalizes such sets (per finite root, only the smallest level
matters), decides membership two independent ways, enumerates truncated
Poincare series against the Cayley ball, and reduces generating sets of
reflection subgroups to canonical form with pairwise non-positive roots.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .affine import (
    AffineElement,
    AffineRoot,
    act_affine,
    ball,
    descent_test,
    is_positive_affine_root,
    reflect_root,
    reflection_element,
    simple_affine_roots,
)
from .rootsys import Coords, RootSystem


class ReductionCapError(RuntimeError):
    """Canonical-generator reduction exceeded its iteration cap."""

    def __init__(self, working_set: tuple[AffineRoot, ...], max_iter: int):
        self.working_set = working_set
        self.max_iter = max_iter
        super().__init__(
            f"pair reduction did not terminate within {max_iter} steps; "
            f"working set: {[ (g.beta, g.k) for g in working_set ]}"
        )


class ReflectionSet:
    """A finite reflection set together with its pruned per-root form.

    `raw` keeps the normalized input roots; `pruned` maps each finite root
    beta in the support to the minimal level k_beta.  Roots outside the
    support behave as k_beta = infinity.
    """

    def __init__(self, rs: RootSystem, raw: tuple[AffineRoot, ...]):
        self.rs = rs
        self.raw = raw
        for g in raw:
            if not rs.is_root(g.beta):
                raise ValueError(f"reflection entry {g.to_json()} has beta outside the root system")
            if not is_positive_affine_root(rs, g):
                raise ValueError(f"reflection entry {g.to_json()} is not a positive affine root")
        levels: dict[Coords, int] = {}
        for g in raw:
            if g.beta in levels:
                levels[g.beta] = min(levels[g.beta], g.k)
            else:
                levels[g.beta] = g.k
        order = {c: i for i, c in enumerate(rs.roots)}
        self.pruned: tuple[AffineRoot, ...] = tuple(
            AffineRoot(b, k) for b, k in sorted(levels.items(), key=lambda it: order[it[0]])
        )
        self.levels: dict[Coords, int] = {g.beta: g.k for g in self.pruned}
        self.support: tuple[Coords, ...] = tuple(g.beta for g in self.pruned)
        self._key = (id(rs), tuple((g.beta, g.k) for g in self.pruned))

    def __len__(self) -> int:
        return len(self.pruned)

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ReflectionSet) and self._key == other._key

    def __repr__(self) -> str:
        return f"ReflectionSet({[(g.beta, g.k) for g in self.pruned]})"

    def subset(self, roots: Iterable[AffineRoot]) -> "ReflectionSet":
        return ReflectionSet(self.rs, tuple(roots))

    def to_json(self) -> dict:
        return {"reflections": [g.to_json() for g in self.pruned]}


def _positive_rep(rs: RootSystem, gamma: AffineRoot) -> AffineRoot:
    """The positive root among gamma and -gamma (the reflections coincide)."""
    if not rs.is_root(gamma.beta):
        raise ValueError(f"reflection entry {gamma.to_json()} has beta outside the root system")
    return gamma if is_positive_affine_root(rs, gamma) else -gamma


def normalize(rs: RootSystem, entries: Iterable[AffineRoot]) -> ReflectionSet:
    """Flip entries positive, drop duplicates, keep the minimal level per root."""
    seen: list[AffineRoot] = []
    for g in entries:
        pos = _positive_rep(rs, g)
        if pos not in seen:
            seen.append(pos)
    return ReflectionSet(rs, tuple(seen))


def reflection_set_from_json(rs: RootSystem, data) -> ReflectionSet:
    """Accept {"reflections": [...]} or a bare list of {"beta": [...], "k": int}."""
    if isinstance(data, dict):
        data = data.get("reflections", [])
    return normalize(rs, (AffineRoot.from_json(item) for item in data))


def parse_simple_shorthand(rs: RootSystem, text: str) -> ReflectionSet:
    """Shorthand "s0,s1" for simple affine generators."""
    simples = simple_affine_roots(rs)
    roots = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if not token.startswith("s") or not token[1:].isdigit():
            raise ValueError(f"bad generator shorthand {token!r}")
        idx = int(token[1:])
        if idx > rs.rank:
            raise ValueError(f"generator index {idx} out of range 0..{rs.rank}")
        roots.append(simples[idx])
    return normalize(rs, roots)


def full_affine_generating_set(rs: RootSystem) -> ReflectionSet:
    return normalize(rs, simple_affine_roots(rs))


def is_member(sigma: AffineElement, refl: ReflectionSet) -> bool:
    """Membership by descents: sigma must keep every pruned root positive."""
    return all(descent_test(sigma, g) for g in refl.pruned)


def is_member_inequality(sigma: AffineElement, refl: ReflectionSet) -> bool:
    """Membership by the integer inequalities (alpha, beta) <= k_beta - [x(beta) < 0]."""
    rs = sigma.rs
    perm = sigma.x.root_permutation
    p = rs.num_positive
    for g in refl.pruned:
        bound = g.k - (0 if perm[rs.root_index(g.beta)] < p else 1)
        if rs.translation_pairing(sigma.alpha, g.beta) > bound:
            return False
    return True


def truncated_series(refl: ReflectionSet, n: int) -> list[int]:
    """Coefficients c_0..c_n counting members of each length, off the Cayley ball."""
    counts = [0] * (n + 1)
    for sigma, ell in ball(refl.rs, n):
        if is_member(sigma, refl):
            counts[ell] += 1
    return counts


def _root_pairing(rs: RootSystem, a: AffineRoot, b: AffineRoot) -> int:
    """<a, b^vee>; the imaginary parts are isotropic so only finite parts count."""
    val = 2 * rs.form(a.beta, b.beta) / rs.norm(b.beta)
    if val.denominator != 1:
        raise AssertionError("non-integer root pairing")
    return int(val)


def canonical_generators(
    rs: RootSystem, entries: Sequence[AffineRoot], max_iter: int = 10_000
) -> tuple[AffineRoot, ...]:
    """Reduce a generating reflection set to pairwise non-positive roots.

    While some pair pairs positively, the member whose reflection is longer
    is conjugated by the other one's reflection and replaced by the positive
    representative of the image (ties rewrite the first member).  Conjugation
    preserves the generated subgroup; termination is not proven in general,
    so an iteration cap guards the loop and downstream series oracles arbitrate
    correctness of the output.
    """
    if not entries:
        raise ValueError("canonical_generators requires a nonempty generating set")
    working: list[AffineRoot] = []
    for g in entries:
        pos = _positive_rep(rs, g)
        if pos not in working:
            working.append(pos)
    refl_len: dict[AffineRoot, int] = {}

    def rlen(g: AffineRoot) -> int:
        if g not in refl_len:
            refl_len[g] = reflection_element(rs, g).length
        return refl_len[g]

    steps = 0
    while True:
        violation = None
        for i in range(len(working)):
            for j in range(i + 1, len(working)):
                if _root_pairing(rs, working[i], working[j]) > 0:
                    violation = (i, j)
                    break
            if violation:
                break
        if violation is None:
            return tuple(working)
        steps += 1
        if steps > max_iter:
            raise ReductionCapError(tuple(working), max_iter)
        i, j = violation
        if rlen(working[j]) > rlen(working[i]):
            target, mirror = j, i
        else:
            target, mirror = i, j
        image = reflect_root(rs, working[mirror], working[target])
        working[target] = _positive_rep(rs, image)
        deduped: list[AffineRoot] = []
        for g in working:
            if g not in deduped:
                deduped.append(g)
        working = deduped


def seeded_reflection_sets(
    rs: RootSystem,
    seed: int,
    count: int = 5,
    max_size: int = 3,
    max_level: int = 2,
) -> list[ReflectionSet]:
    """Deterministic random reflection sets for scripted batteries.

    Roots are drawn with distinct finite parts so the set equals its pruned
    form and the descent statistic is unambiguous.
    """
    rng = random.Random(seed)
    pool: list[AffineRoot] = []
    for c in rs.roots:
        lo = 0 if rs.is_positive_root(c) else 1
        for k in range(lo, max_level + 1):
            pool.append(AffineRoot(c, k))
    out = []
    for _ in range(count):
        size = rng.randint(1, max_size)
        chosen: list[AffineRoot] = []
        betas: set[Coords] = set()
        candidates = pool[:]
        rng.shuffle(candidates)
        for g in candidates:
            if g.beta not in betas:
                chosen.append(g)
                betas.add(g.beta)
            if len(chosen) == size:
                break
        out.append(normalize(rs, chosen))
    return out
