import pytest
from hypothesis import given, settings, strategies as st

from qnichols import quandle as Q
from qnichols.errors import InputError


CATALOG = [Q.catalog(name) for name in Q.catalog_names() if name != "trivial(n)"]


def test_apply_left_trivial():
    q = Q.catalog("trivial(4)")
    for i in q.elements():
        for j in q.elements():
            assert q.op(i, j) == j


def test_apply_left_s3():
    q = Q.catalog("(12)^S3")
    assert q.op(1, 2) == 3


def test_apply_right_z222():
    q = Q.catalog("Z_2^{2,2}")
    assert q.op(2, 1) == 3
    assert q.op_right(3, 2) == 1


def test_out_of_range_raises():
    q = Q.catalog("(12)^S3")
    with pytest.raises(InputError):
        q.op(0, 1)
    with pytest.raises(InputError):
        q.op(1, 4)


def test_is_quandle_and_crossed():
    assert Q.is_quandle(Q.catalog("trivial(3)").table)
    assert Q.is_crossed_set(Q.catalog("trivial(3)"))
    a4 = Q.catalog("(123)^A4")
    assert Q.is_quandle(a4.table)
    assert Q.is_crossed_set(a4)
    # non-bijective row
    assert not Q.is_quandle(((1, 1), (2, 2)))
    # bijective rows, idempotent, but not self-distributive
    assert not Q.is_quandle(((1, 3, 2, 4), (3, 2, 4, 1), (2, 4, 3, 1), (2, 3, 1, 4)))


def test_catalog_axioms_all():
    for q in CATALOG:
        assert Q.is_quandle(q.table)
        assert Q.is_crossed_set(q)


def test_catalog_aff54_rows():
    q = Q.catalog("Aff(5,4)")
    assert q.table == (
        (1, 5, 4, 3, 2),
        (3, 2, 1, 5, 4),
        (5, 4, 3, 2, 1),
        (2, 1, 5, 4, 3),
        (4, 3, 2, 1, 5),
    )


def test_catalog_z442_rows():
    q = Q.catalog("Z_4^{4,2}")
    assert q.row(1) == (1, 4, 3, 2, 6, 5)
    assert q.row(5) == (2, 3, 4, 1, 5, 6)
    assert q.row(6) == (4, 1, 2, 3, 5, 6)


def test_catalog_trivial_and_unknown():
    assert Q.catalog("trivial(1)").table == ((1,),)
    with pytest.raises(InputError):
        Q.catalog("nonsense")


def test_catalog_name_normalization():
    assert Q.catalog("Z_2^{2,2}") == Q.catalog("Z_2^2,2")


def test_orbits():
    assert Q.inner_orbits(Q.catalog("(12)^S3")) == [(1, 2, 3)]
    assert Q.inner_orbits(Q.catalog("Z_3^{3,1}")) == [(1, 2, 3), (4,)]
    assert Q.inner_orbits(Q.catalog("trivial(2)")) == [(1,), (2,)]
    assert Q.is_indecomposable(Q.catalog("(123)^A4"))
    assert not Q.is_indecomposable(Q.catalog("Z_4^{4,2}"))


def test_round_trip_left_right():
    for q in CATALOG:
        for i in q.elements():
            for j in q.elements():
                assert q.op_right(q.op(i, j), i) == j
                assert q.op(i, q.op_right(j, i)) == j


def test_triangle_identities():
    # k>(i<j) == (k>i)<(k>j)  and  (i<j)<k == (i<k)<(j<k)
    for q in CATALOG:
        for i in q.elements():
            for j in q.elements():
                for k in q.elements():
                    assert q.op(k, q.op_right(i, j)) == q.op_right(q.op(k, i), q.op(k, j))
                    assert q.op_right(q.op_right(i, j), k) == q.op_right(
                        q.op_right(i, k), q.op_right(j, k)
                    )


def test_isomorphic_identity():
    q = Q.catalog("(123)^A4")
    iso = Q.isomorphic(q, q)
    assert iso is not None and iso.map == (1, 2, 3, 4)


def test_isomorphic_z222_normal_form():
    z = Q.catalog("Z_2^{2,2}")
    target = Q.eq_permutations_quandle(2)
    assert target.table == ((1, 2, 4, 3), (1, 2, 4, 3), (2, 1, 3, 4), (2, 1, 3, 4))
    # oracle: exhaustive search over all 4! relabelings
    from itertools import permutations

    found = [
        perm
        for perm in permutations(range(1, 5))
        if all(
            perm[z.op(i, j) - 1] == target.op(perm[i - 1], perm[j - 1])
            for i in z.elements()
            for j in z.elements()
        )
    ]
    assert found
    iso = Q.isomorphic(z, target)
    assert iso is not None and iso.map in found


def test_isomorphic_none():
    assert Q.isomorphic(Q.catalog("(12)^S3"), Q.catalog("trivial(3)")) is None
    assert Q.isomorphic(Q.catalog("Aff(5,2)"), Q.catalog("Aff(5,3)")) is None


def test_invariant_closure():
    t = Q.catalog("trivial(3)")
    assert Q.invariant_closure_check(t, {1, 2}) is True
    z = Q.catalog("Z_3^{3,1}")
    assert Q.invariant_closure_check(z, {1, 2, 3}) is True
    s4 = Q.catalog("(12)^S4")
    assert Q.invariant_closure_check(s4, {1}) is None


def test_two_orbit_normal_form():
    z = Q.catalog("Z_2^{2,2}")
    res = Q.two_orbit_normal_form(z)
    assert res is not None
    target, iso = res
    assert target == Q.eq_permutations_quandle(2)
    assert iso.source == z and iso.target == target

    assert Q.two_orbit_normal_form(Q.catalog("Z_4^{4,2}")) is None  # unequal orbit sizes

    res = Q.two_orbit_normal_form(Q.catalog("trivial(2)"))
    assert res is not None and res[0] == Q.eq_permutations_quandle(1)


def test_text_and_json_round_trip():
    for q in (Q.catalog("Z_3^{3,2}"), Q.catalog("trivial(1)")):
        assert Q.Quandle.from_text(q.to_text()) == q
        assert Q.Quandle.from_json_dict(q.to_json_dict()) == q


def test_malformed_text():
    with pytest.raises(InputError):
        Q.Quandle.from_text("2\n1 2\n")
    with pytest.raises(InputError):
        Q.Quandle.from_text("")


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.data())
def test_subquandle_orbits_closed(n, data):
    qs = [Q.catalog(nm) for nm in Q.Z_QUANDLE_NAMES]
    q = data.draw(st.sampled_from(qs))
    for orb in Q.inner_orbits(q):
        sub, labels = Q.subquandle(q, orb)
        assert Q.is_quandle(sub.table)
        assert sorted(labels) == sorted(orb)


def test_census_small_counts():
    # labeled counts for n <= 4, then iso classes against the known census
    assert sum(1 for _ in Q.enumerate_quandles(1)) == 1
    assert sum(1 for _ in Q.enumerate_quandles(2)) == 1
    assert sum(1 for _ in Q.enumerate_quandles(3)) == 5
    counts = [len(Q.iso_class_representatives(Q.enumerate_quandles(n))) for n in (3, 4, 5)]
    assert counts == [3, 7, 22]


def test_census_indecomposable_matches_catalog_upto5():
    for n, expected in ((3, {"(12)^S3"}), (4, {"(123)^A4"}), (5, {"Aff(5,2)", "Aff(5,3)", "Aff(5,4)"})):
        reps = Q.iso_class_representatives(Q.enumerate_quandles(n))
        ind = {Q.match_catalog(q) for q in reps if Q.is_indecomposable(q)}
        assert ind == expected


@pytest.mark.slow
def test_census_indecomposable_matches_catalog_n6():
    reps = Q.iso_class_representatives(Q.enumerate_quandles(6))
    assert len(reps) == 73
    ind = {Q.match_catalog(q) for q in reps if Q.is_indecomposable(q)}
    assert ind == {"(12)^S4", "(1234)^S4"}


def test_size3_crossed_sets_are_trivial_or_s3():
    for q in Q.iso_class_representatives(Q.enumerate_quandles(3)):
        if not Q.is_crossed_set(q):
            continue
        if Q.is_commutative_subset(q, q.elements()):
            continue
        assert Q.isomorphic(q, Q.catalog("(12)^S3")) is not None
