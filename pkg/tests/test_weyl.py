import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylseries import (
    enumerate_group,
    identity_element,
    longest_element,
    root_system,
    simple_reflection,
)


def test_simple_reflection_a1():
    rs = root_system("A1")
    s = simple_reflection(rs, 1)
    assert s.rows == ((-1,),)
    assert s.length == 1


def test_simple_reflection_cartan_action():
    rs = root_system("A2")
    s1 = simple_reflection(rs, 1)
    assert s1.act((1, 0)) == (-1, 0)
    assert s1.act((0, 1)) == (1, 1)


def test_simple_reflections_are_involutions():
    rs = root_system("G2")
    for i in (1, 2):
        s = simple_reflection(rs, i)
        assert (s * s).is_identity()


def test_reflection_index_range():
    rs = root_system("A2")
    with pytest.raises(IndexError):
        simple_reflection(rs, 0)
    with pytest.raises(IndexError):
        simple_reflection(rs, 3)


@pytest.mark.parametrize(
    "label,order,max_len",
    [("A1", 2, 1), ("A2", 6, 3), ("C2", 8, 4), ("G2", 12, 6), ("A3", 24, 6), ("B3", 48, 9)],
)
def test_enumerate_group(label, order, max_len):
    rs = root_system(label)
    group = enumerate_group(rs)
    assert len(group) == order
    assert len({w.rows for w in group}) == order
    assert max(w.length for w in group) == max_len == rs.num_positive
    # exactly one longest element
    assert sum(1 for w in group if w.length == max_len) == 1


def test_a2_length_multiset():
    rs = root_system("A2")
    assert sorted(w.length for w in enumerate_group(rs)) == [0, 1, 1, 2, 2, 3]


def test_enumeration_breadth_first_and_deterministic():
    rs = root_system("C2")
    group = enumerate_group(rs)
    lengths = [w.length for w in group]
    assert lengths == sorted(lengths)
    assert group == enumerate_group(rs)


def test_length_by_inversion_count():
    rs = root_system("G2")
    for w in enumerate_group(rs):
        inversions = sum(
            1 for alpha in rs.positive_roots if not rs.is_positive_root(w.act(alpha))
        )
        assert w.length == inversions


def test_length_changes_by_one_under_right_multiplication():
    rs = root_system("C2")
    gens = [simple_reflection(rs, i) for i in (1, 2)]
    for w in enumerate_group(rs):
        for s in gens:
            assert abs((w * s).length - w.length) == 1


def test_length_of_inverse():
    rs = root_system("G2")
    for w in enumerate_group(rs):
        assert w.inverse().length == w.length
        assert (w * w.inverse()).is_identity()


def test_act_examples():
    a1 = root_system("A1")
    s1 = simple_reflection(a1, 1)
    assert identity_element(a1).act(a1.rho) == a1.rho
    assert s1.act(a1.rho) == tuple(r - c for r, c in zip(a1.rho, (1,)))
    a2 = root_system("A2")
    w0 = longest_element(a2)
    assert w0.act(a2.highest_root) == tuple(-x for x in a2.highest_root)


def test_longest_element_of_a2():
    rs = root_system("A2")
    assert longest_element(rs).length == 3


def test_s1s2_length_two():
    rs = root_system("A2")
    w = simple_reflection(rs, 1) * simple_reflection(rs, 2)
    assert w.length == 2


def test_coroot_matrix_is_integral_and_compatible():
    rs = root_system("C2")
    for w in enumerate_group(rs):
        for beta in rs.roots:
            image = w.act_coroot_coords(rs.coroot_coords(beta))
            assert image == rs.coroot_coords(w.act_root(beta))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=2), max_size=8))
def test_word_length_properties(word):
    rs = _C2
    w = identity_element(rs)
    for i in word:
        w = w * simple_reflection(rs, i)
    assert w.inverse().length == w.length
    assert w.length <= len(word)
    assert (w.length - len(word)) % 2 == 0


_C2 = root_system("C2")
