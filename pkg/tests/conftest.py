import pytest

from weylseries import (
    AffineRoot,
    ReflectionSet,
    full_affine_generating_set,
    normalize,
    root_system,
    seeded_reflection_sets,
    simple_affine_roots,
)

BATTERY_LABELS = ["A1", "A2", "C2", "G2"]
BATTERY_SEED = 1729


@pytest.fixture(scope="session")
def systems():
    """The battery root systems, shared so caches persist across tests."""
    return {label: root_system(label) for label in BATTERY_LABELS}


def battery_reflection_sets(rs) -> list[ReflectionSet]:
    """The fixed acceptance battery for one type.

    Empty set, the full affine generating set, each single simple generator,
    each single non-simple reflection with level <= 2, and five seeded random
    sets of size <= 3.
    """
    sets = [normalize(rs, ()), full_affine_generating_set(rs)]
    simples = simple_affine_roots(rs)
    for g in simples:
        sets.append(normalize(rs, [g]))
    simple_set = set(simples)
    for beta in rs.roots:
        lo = 0 if rs.is_positive_root(beta) else 1
        for k in range(lo, 3):
            g = AffineRoot(beta, k)
            if g not in simple_set:
                sets.append(normalize(rs, [g]))
    sets.extend(seeded_reflection_sets(rs, BATTERY_SEED, count=5, max_size=3, max_level=2))
    return sets


@pytest.fixture(scope="session")
def battery(systems):
    return {label: battery_reflection_sets(systems[label]) for label in BATTERY_LABELS}
