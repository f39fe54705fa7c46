"""Classical (set-based) transversal theory."""

import itertools

import pytest

from qtransversal import (
    ClassicalMatroid,
    GroundMismatch,
    SetFamily,
    avoid_rado_check,
    avoiding_transversal_by_injections,
    avoiding_transversal_check,
    co_nullity,
    field_make,
    find_transversal,
    hall_check,
    is_partial_transversal,
    rado_check,
)


def fam(ground, *members):
    return SetFamily(tuple(ground), tuple(frozenset(m) for m in members))


def all_families(ground, max_n):
    subsets = [
        frozenset(c)
        for k in range(len(ground) + 1)
        for c in itertools.combinations(ground, k)
    ]
    for n in range(max_n + 1):
        for members in itertools.product(subsets, repeat=n):
            yield SetFamily(tuple(ground), members)


def brute_force_transversal(family):
    """Oracle: try every injection from member indices to ground elements."""
    n = len(family.members)
    for elems in itertools.permutations(family.ground, n):
        if all(x in m for x, m in zip(elems, family.members)):
            return dict(zip(range(1, n + 1), elems))
    return None


def brute_force_independent_transversal(matroid, family):
    """Oracle: some transversal whose element set is independent."""
    n = len(family.members)
    for elems in itertools.permutations(family.ground, n):
        if all(x in m for x, m in zip(elems, family.members)):
            if matroid.rank(frozenset(elems)) == n:
                return elems
    return None


def test_hall_examples():
    bad = fam("a", {"a"}, {"a"})
    verdict = hall_check(bad)
    assert not verdict.ok and verdict.witness_J == (1, 2)
    assert hall_check(fam("ab", {"a", "b"}, {"b"})).ok
    assert hall_check(fam("ab")).ok  # empty family is vacuously fine


def test_find_transversal_examples():
    t = find_transversal(fam("ab", {"a", "b"}, {"b"}))
    assert t == {1: "a", 2: "b"}
    assert find_transversal(fam("a", {"a"}, {"a"})) is None
    assert find_transversal(fam("ab", {"a", "b"}, {"a", "b"}, {"a", "b"})) is None


def test_hall_iff_matching_exhaustive_small():
    for family in all_families("abc", 3):
        verdict = hall_check(family)
        found = find_transversal(family)
        assert verdict.ok == (found is not None)
        if found is not None:
            values = [found[i + 1] for i in range(len(family.members))]
            assert len(set(values)) == len(values)
            assert all(x in m for x, m in zip(values, family.members))
        else:
            assert brute_force_transversal(family) is None


def test_rado_with_free_matroid_is_hall():
    free = ClassicalMatroid.free(tuple("abc"))
    for family in all_families("abc", 3):
        assert rado_check(free, family).ok == hall_check(family).ok


def test_rado_examples():
    rank_zero = ClassicalMatroid(tuple("ab"), lambda s: 0, "rank-0")
    verdict = rado_check(rank_zero, fam("ab", {"a"}))
    assert not verdict.ok and verdict.witness_J == (1,)

    gf2 = field_make(2, 1)
    ground = ("s1", "s2", "s3")
    m = ClassicalMatroid.linear(ground, gf2, [(1, 0), (0, 1), (1, 1)])
    family = fam(ground, {"s1", "s2"}, {"s3"})
    assert rado_check(m, family).ok
    witness = brute_force_independent_transversal(m, family)
    assert witness is not None and set(witness) == {"s1", "s3"}


def test_rado_matches_brute_force_on_linear_matroid():
    gf2 = field_make(2, 1)
    ground = ("s1", "s2", "s3")
    m = ClassicalMatroid.linear(ground, gf2, [(1, 0), (0, 1), (1, 1)])
    for family in all_families(ground, 3):
        expected = brute_force_independent_transversal(m, family) is not None
        assert rado_check(m, family).ok == expected


def test_rado_ground_mismatch():
    m = ClassicalMatroid.free(("a", "b"))
    with pytest.raises(GroundMismatch):
        rado_check(m, fam("ba", {"a"}))


def test_avoiding_examples():
    family = fam("abc", {"a"}, {"a", "b"})
    assert avoiding_transversal_check({"b", "c"}, family)
    assert avoiding_transversal_check(set(), family)
    # |T| > n fails through J = empty.
    assert not avoiding_transversal_check({"a", "b", "c"}, family)


def test_avoiding_fast_equals_injections_exhaustive():
    ground = "abc"
    subsets = [
        frozenset(c)
        for k in range(4)
        for c in itertools.combinations(ground, k)
    ]
    for family in all_families(ground, 3):
        for t in subsets:
            assert avoiding_transversal_check(t, family) == \
                avoiding_transversal_by_injections(t, family)


def test_avoiding_fast_equals_injections_sampled_larger():
    import random

    rng = random.Random(20260810)
    for ground in ("abcd", "abcde"):
        elements = list(ground)
        for _ in range(400):
            n = rng.randint(0, 4)
            members = tuple(
                frozenset(x for x in elements if rng.random() < 0.5)
                for _ in range(n)
            )
            family = SetFamily(tuple(ground), members)
            t = frozenset(x for x in elements if rng.random() < 0.4)
            assert avoiding_transversal_check(t, family) == \
                avoiding_transversal_by_injections(t, family)


def test_co_nullity_examples():
    free = ClassicalMatroid.free(tuple("abc"))
    for k in range(4):
        for x in itertools.combinations("abc", k):
            assert co_nullity(free, frozenset(x)) == len(x)
    assert co_nullity(free, frozenset()) == 0
    gf2 = field_make(2, 1)
    m = ClassicalMatroid.linear(("s1", "s2", "s3"), gf2, [(1, 0), (0, 1), (1, 1)])
    assert len(m.bases) == 3  # any two of the three distinct lines
    assert co_nullity(m, {"s1"}) == 0


def test_co_nullity_dual_identity():
    # rho(S \ X) = nu*(S) - nu*(X) for free and small linear matroids.
    gf2 = field_make(2, 1)
    matroids = [
        ClassicalMatroid.free(tuple("abc")),
        ClassicalMatroid.linear(("a", "b", "c"), gf2, [(1, 0), (0, 1), (1, 1)]),
        ClassicalMatroid.linear(("a", "b", "c"), gf2, [(1, 0), (1, 0), (0, 1)]),
    ]
    for m in matroids:
        s = frozenset(m.ground)
        nu_s = co_nullity(m, s)
        for k in range(len(m.ground) + 1):
            for x in itertools.combinations(m.ground, k):
                x = frozenset(x)
                assert m.rank(s - x) == nu_s - co_nullity(m, x)


def test_avoid_rado_reduces_to_avoid_hall_for_free():
    free = ClassicalMatroid.free(tuple("abc"))
    full = frozenset("abc")
    for family in all_families("abc", 2):
        # Avoidance Hall: some avoiding transversal exists iff the
        # complemented family passes ordinary Hall.
        complemented = SetFamily(
            family.ground, tuple(full - m for m in family.members)
        )
        assert avoid_rado_check(free, family).ok == hall_check(complemented).ok


def test_avoid_rado_empty_family():
    free = ClassicalMatroid.free(tuple("ab"))
    assert avoid_rado_check(free, fam("ab")).ok


def test_avoid_rado_matches_rado_on_complements():
    gf2 = field_make(2, 1)
    ground = ("s1", "s2", "s3")
    m = ClassicalMatroid.linear(ground, gf2, [(1, 0), (0, 1), (1, 1)])
    full = frozenset(ground)
    for family in all_families(ground, 2):
        complemented = SetFamily(family.ground, tuple(full - x for x in family.members))
        assert avoid_rado_check(m, family).ok == rado_check(m, complemented).ok


def test_partial_transversals_satisfy_augmentation():
    # Edmonds-Fulkerson, observed not proved: the partial transversals of
    # a family form the independent sets of a matroid.
    ground = "abcd"
    families = [
        fam(ground, {"a", "b"}, {"b", "c"}, {"d"}),
        fam(ground, {"a"}, {"a", "b"}, {"a", "b", "c"}),
        fam(ground, {"a", "b", "c", "d"}, {"b"}),
    ]
    subsets = [
        frozenset(c)
        for k in range(5)
        for c in itertools.combinations(ground, k)
    ]
    for family in families:
        partials = {s for s in subsets if is_partial_transversal(s, family)}
        for i1, i2 in itertools.product(partials, repeat=2):
            if len(i1) < len(i2):
                assert any(i1 | {x} in partials for x in i2 - i1)


def test_set_family_validation():
    with pytest.raises(GroundMismatch):
        fam("ab", {"c"})
    with pytest.raises(GroundMismatch):
        SetFamily(("a", "a"), ())
    with pytest.raises(GroundMismatch):
        avoiding_transversal_check({"z"}, fam("ab", {"a"}))


def test_linear_matroid_axiom_spot_check_rejects_bad_columns():
    # Construction itself verifies the axioms on small grounds; a healthy
    # matrix passes.
    gf4 = field_make(2, 2)
    m = ClassicalMatroid.linear(("x", "y"), gf4, [(1, 0), (2, 0)])
    assert m.rank(frozenset({"x", "y"})) == 1
