import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from independent import count_lattice_points, descent_statistic
from weylseries import (
    AffineRoot,
    CountingEngineError,
    DiophantineSystem,
    LaurentPolynomial,
    RationalFunction,
    assemble_WA,
    ball,
    build_system,
    count_solutions_by_degree,
    descent_polynomial,
    enumerate_group,
    evaluate_descent_polynomial,
    finite_poincare_polynomial,
    full_affine_generating_set,
    identity_element,
    m_vector,
    min_right_rep_part,
    normalize,
    root_system,
    simple_reflection,
    solve_genfun,
    translation,
    translations_series,
    truncated_series,
)
from weylseries.oracles import translation_counts

A1 = root_system("A1")
A2 = root_system("A2")


# -- rational functions -------------------------------------------------------


def test_reduction_and_normalization():
    f = RationalFunction((1, 2, 1), (1, 1))  # (1+q)^2 / (1+q)
    assert f.num == (Fraction(1), Fraction(1))
    assert f.den == (Fraction(1),)
    g = RationalFunction((2, 2), (2, 0, -2))  # 2(1+q) / 2(1-q)(1+q)
    assert g == RationalFunction((1,), (1, -1))
    assert g.den[0] == 1


def test_zero_and_monic_denominator():
    z = RationalFunction((0,), (3, 1))
    assert z.is_zero()
    assert z.num == (Fraction(0),) and z.den == (Fraction(1),)
    # q in the denominator: no constant term, so it is normalized monic
    f = RationalFunction.monomial(-2)
    assert f.den == (Fraction(0), Fraction(0), Fraction(1))


def test_equality_by_cross_multiplication():
    f = RationalFunction((1, 1), (1, -1))
    g = RationalFunction((1, 2, 1), (1, 0, -1))
    assert f == g
    assert f != RationalFunction((1,), (1, -1))


def test_series_expansion():
    f = RationalFunction((1,), (1, -1))
    assert f.series(4) == [1, 1, 1, 1, 1]
    g = RationalFunction((1, 1), (1, -1))
    assert g.series(4) == [1, 2, 2, 2, 2]
    with pytest.raises(ZeroDivisionError):
        RationalFunction.monomial(-1).series(3)


def test_monomial_and_evaluate():
    assert RationalFunction.monomial(3) == RationalFunction((0, 0, 0, 1))
    m = RationalFunction.monomial(-1)
    assert m * RationalFunction.monomial(1) == RationalFunction.one()
    f = RationalFunction((1, 1), (1, -1))
    assert f.evaluate(Fraction(1, 2)) == 3


def test_json_roundtrip():
    f = RationalFunction((1, Fraction(1, 2)), (1, 0, -1))
    assert RationalFunction.from_json(f.to_json()) == f
    assert f.to_json()["num"] == ["1", "1/2"]


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=4),
    st.lists(st.integers(-4, 4), min_size=1, max_size=4),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3),
)
def test_field_axioms_on_random_inputs(a, b, c):
    f = RationalFunction(a, (1, 2))
    g = RationalFunction(b, (1, 0, 1))
    h = RationalFunction(c, (1, -1, 0, 2))
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert f - f == RationalFunction.zero()
    if not g.is_zero():
        assert (f / g) * g == f


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_series_of_product_is_convolution(a, b):
    f = RationalFunction(a, (1, -1))
    g = RationalFunction(b, (1, 1))
    n = 8
    sf, sg = f.series(n), g.series(n)
    conv = [sum(sf[i] * sg[k - i] for i in range(k + 1)) for k in range(n + 1)]
    assert (f * g).series(n) == conv


def test_laurent_polynomial():
    lp = LaurentPolynomial.monomial(-2) + LaurentPolynomial.monomial(1, Fraction(3))
    assert lp.min_exponent() == -2
    assert lp.to_rational_function() == RationalFunction((1, 0, 0, 3), (0, 0, 1))
    prod = LaurentPolynomial.monomial(-1) * LaurentPolynomial.monomial(1)
    assert prod == LaurentPolynomial.monomial(0)


# -- counting engine ----------------------------------------------------------


def test_engine_examples():
    free = DiophantineSystem(1, (), (), (), (), (2,))
    assert solve_genfun(free) == RationalFunction((1,), (1, 0, -1))
    box = DiophantineSystem(1, ((1,),), (2,), ((2,),), (7,), (2,))
    assert solve_genfun(box) == RationalFunction((0, 0, 0, 0, 1, 0, 1))
    simplex = DiophantineSystem(2, (), (), ((1, 1),), (2,), (2, 2))
    assert solve_genfun(simplex) == RationalFunction((1, 0, 2, 0, 3))


def test_infeasible_returns_zero():
    sys = DiophantineSystem(1, ((1,),), (5,), ((1,),), (2,), (1,))
    assert solve_genfun(sys).is_zero()
    sys = DiophantineSystem(2, ((1, 1),), (1,), ((2, 2),), (0,), (1, 1))
    assert solve_genfun(sys).is_zero()


def test_self_check_mode():
    sys = DiophantineSystem(2, ((2, -1),), (0,), ((1, 1),), (5,), (1, 2))
    f = solve_genfun(sys, self_check_degree=25)
    assert f.series(25) == [Fraction(c) for c in count_lattice_points(sys, 25)]


def test_invalid_systems_rejected():
    with pytest.raises(ValueError):
        DiophantineSystem(1, (), (), (), (), (0,))  # weight not positive
    with pytest.raises(ValueError):
        DiophantineSystem(2, ((1,),), (0,), (), (), (1, 1))  # row arity
    with pytest.raises(ValueError):
        DiophantineSystem(0, (), (), (), (), ())


def _random_system(rng: random.Random) -> DiophantineSystem:
    n = rng.randint(1, 3)
    weight = tuple(rng.randint(1, 4) for _ in range(n))
    lower = []
    upper = []
    for _ in range(rng.randint(0, 2)):
        lower.append(tuple(rng.randint(-4, 4) for _ in range(n)))
    for _ in range(rng.randint(0, 2)):
        upper.append(tuple(rng.randint(-4, 4) for _ in range(n)))
    return DiophantineSystem(
        n,
        tuple(lower),
        tuple(rng.randint(-4, 4) for _ in lower),
        tuple(upper),
        tuple(rng.randint(-4, 4) for _ in upper),
        weight,
    )


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_engine_matches_enumeration_on_random_systems(seed):
    sys = _random_system(random.Random(seed))
    f = solve_genfun(sys)
    assert f.series(20) == [Fraction(c) for c in count_lattice_points(sys, 20)]


def test_internal_enumerator_matches_independent_one():
    rng = random.Random(99)
    for _ in range(20):
        sys = _random_system(rng)
        assert count_solutions_by_degree(sys, 15) == count_lattice_points(sys, 15)


# -- constraint building ------------------------------------------------------


def test_m_vector_examples():
    e = identity_element(A1)
    assert m_vector(e) == (0,)
    assert m_vector(simple_reflection(A1, 1)) == (1,)
    for w in enumerate_group(A2):
        assert all(m >= 0 for m in m_vector(w))


def test_m_vector_defines_coset_blocks():
    # m(u) is the least integer vector valid for the whole vertex test
    for rs in (A1, A2):
        for u in enumerate_group(rs):
            m = m_vector(u)
            from itertools import product

            for e in product(range(0, 4), repeat=rs.rank):
                delta = rs.from_coroot_coords(e)
                satisfies = all(
                    rs.form(delta, rs.simple_root(i)) >= m[i] for i in range(rs.rank)
                )
                alpha = u.inverse().act_coroot_coords(e)
                in_block = min_right_rep_part(translation(rs, alpha)) == u
                assert satisfies == in_block


def test_build_system_empty_set_shape():
    x = u = identity_element(A1)
    sys = build_system(x, u, normalize(A1, ()))
    assert sys.upper_matrix == ()
    assert sys.lower_matrix == ((2,),)
    assert sys.lower_rhs == (0,)
    assert sys.weight == (2,)


def test_build_system_single_reflection():
    refl = normalize(A1, [AffineRoot((1,), 0)])
    e = identity_element(A1)
    sys = build_system(e, e, refl)
    assert sys.upper_matrix == ((2,),)
    assert sys.upper_rhs == (0,)
    assert solve_genfun(sys) == RationalFunction.one()
    s1 = simple_reflection(A1, 1)
    sys = build_system(s1, e, refl)
    assert sys.upper_rhs == (-1,)
    assert solve_genfun(sys).is_zero()


def test_weight_vector_is_two_everywhere():
    for label in ("A1", "A2", "C2", "G2", "B3"):
        rs = root_system(label)
        e = identity_element(rs)
        sys = build_system(e, e, normalize(rs, ()))
        assert sys.weight == (2,) * rs.rank


def test_weight_agrees_with_direct_degree():
    # h.e equals the pairing of delta with twice the Weyl vector
    rs = A2
    sys = build_system(identity_element(rs), identity_element(rs), normalize(rs, ()))
    two_rho = tuple(2 * r for r in rs.rho)
    from itertools import product

    for e in product(range(0, 4), repeat=rs.rank):
        delta = rs.from_coroot_coords(e)
        assert sum(h * x for h, x in zip(sys.weight, e)) == rs.form(delta, two_rho)


def test_block_solutions_biject_with_coset_translations():
    # solutions of the unconstrained-block system at (x, u) are exactly the
    # translations whose minimal factor is u, matched through alpha = u^-1 delta
    for rs in (A1, A2):
        empty = normalize(rs, ())
        e = identity_element(rs)
        for u in enumerate_group(rs):
            sys = build_system(e, u, empty)
            from itertools import product

            expected = set()
            bound = 3
            for coords in product(range(-bound, bound + 1), repeat=rs.rank):
                t = translation(rs, coords)
                if min_right_rep_part(t) == u:
                    image = u.act_coroot_coords(coords)
                    expected.add(image)
            for ecoords in product(range(0, 2 * bound + 1), repeat=rs.rank):
                if sys.satisfied_by(ecoords):
                    alpha = u.inverse().act_coroot_coords(ecoords)
                    if all(abs(c) <= bound for c in alpha):
                        assert ecoords in expected
                        expected.discard(ecoords)
            assert not expected


# -- assembled series ---------------------------------------------------------


def test_assemble_examples():
    assert assemble_WA(full_affine_generating_set(A1)) == RationalFunction.one()
    assert assemble_WA(normalize(A1, ())) == RationalFunction((1, 1), (1, -1))
    assert assemble_WA(normalize(A1, [AffineRoot((1,), 0)])) == RationalFunction((1,), (1, -1))


def test_assemble_matches_enumeration(battery):
    for label in ("A1", "A2"):
        for refl in battery[label][:8]:
            closed = assemble_WA(refl).series(15)
            assert closed == [Fraction(c) for c in truncated_series(refl, 15)]


def test_assemble_threads_agree():
    refl = normalize(A2, [AffineRoot((1, 1), 1)])
    assert assemble_WA(refl) == assemble_WA(refl, threads=4)


def test_translations_series_examples():
    f = translations_series(A1)
    assert f == RationalFunction((1, 0, 1), (1, 0, -1))
    for label in ("A2", "C2"):
        rs = root_system(label)
        g = translations_series(rs)
        s = g.series(12)
        assert s[0] == 1  # the zero translation
        assert s[1] == 0  # length-1 elements are reflections, never translations
        assert s == [Fraction(c) for c in translation_counts(rs, 12)]


def test_descent_polynomial_t_constant_for_empty_set():
    coeffs = descent_polynomial(normalize(A1, ()))
    assert len(coeffs) == 1
    assert coeffs[0] == assemble_WA(normalize(A1, ()))


def test_descent_polynomial_full_set_example():
    coeffs = descent_polynomial(full_affine_generating_set(A1))
    one = RationalFunction.one()
    inv = RationalFunction((1,), (1, -1))
    whole = RationalFunction((1, 1), (1, -1))
    # (1-t)^2 + 2 t (1-t)/(1-q) + t^2 (1+q)/(1-q), collected in powers of t
    assert coeffs[0] == one
    assert coeffs[1] == 2 * inv - 2 * one
    assert coeffs[2] == one - 2 * inv + whole
    # ... which collapses to 1 + 2 t q/(1-q)
    twoq = RationalFunction((0, 2), (1, -1))
    assert coeffs[1] + coeffs[2] == twoq
    assert coeffs[0] + coeffs[1] + coeffs[2] == whole


def test_descent_polynomial_specializations(battery):
    for refl in battery["A1"]:
        coeffs = descent_polynomial(refl)
        assert evaluate_descent_polynomial(coeffs, Fraction(0)) == assemble_WA(refl)
        assert evaluate_descent_polynomial(coeffs, Fraction(1)) == assemble_WA(
            normalize(refl.rs, ())
        )


def test_descent_polynomial_matches_brute_statistic():
    refl = full_affine_generating_set(A1)
    coeffs = descent_polynomial(refl)
    stat = descent_statistic(A1, refl.pruned, 12)
    table = [c.series(12) for c in coeffs]
    for ell in range(13):
        for des in range(len(coeffs)):
            assert table[des][ell] == stat.get((ell, des), 0)


def test_descent_polynomial_size_guard():
    with pytest.raises(ValueError):
        descent_polynomial(full_affine_generating_set(A2), max_size=2)
    g2 = root_system("G2")
    seven = normalize(g2, [AffineRoot(beta, 0 if g2.is_positive_root(beta) else 1)
                           for beta in g2.roots[:7]])
    with pytest.raises(ValueError):
        descent_polynomial(seven)  # default subset-sum bound is 6


def test_finite_poincare_polynomial():
    f = finite_poincare_polynomial(A2)
    assert f == RationalFunction((1, 2, 2, 1))
    g = finite_poincare_polynomial(A1)
    assert g == RationalFunction((1, 1))


def test_parabolic_factorization():
    # the descent-defined subset at the finite simple generators multiplies
    # back to the whole-group series through the finite Poincare polynomial
    finite_simples = normalize(A1, [AffineRoot((1,), 0)])
    lhs = assemble_WA(finite_simples) * finite_poincare_polynomial(A1)
    assert lhs == assemble_WA(normalize(A1, ()))
