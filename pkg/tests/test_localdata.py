"""Local reduction data: Kodaira typing, place sets, g_v, delta_v.

tate_reduction is validated three ways: hand-worked small-characteristic
cases, agreement between the full step loop and the large-residue shortcut
on random (sometimes deliberately non-minimal) models, and invariance under
unimodular coordinate changes.  The splitting law over the degree-(p-1)
cyclotomic layer is pinned by finite_level_place_count, a direct orbit
count at each finite level.
"""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from fineselmer.elliptic import WeierstrassModel
from fineselmer.localdata import (
    _tate_shortcut,
    compute_place_sets,
    delta_v,
    finite_level_place_count,
    g_v,
    reduction_over_K,
    tate_reduction,
    tate_reduction_full,
)

E11A1 = WeierstrassModel(0, -1, 1, -10, -20)
E11A2 = WeierstrassModel(0, -1, 1, -7820, -263580)
E49A1 = WeierstrassModel(1, -1, 0, -2, -1)
E121B1 = WeierstrassModel(0, -1, 1, -7, 10)


# --- Kodaira types ---


def test_hand_worked_types_at_two():
    r = tate_reduction(WeierstrassModel(0, 0, 0, 0, 2), 2)
    assert (r.kodaira, r.category) == ("II", "additive")
    r = tate_reduction(WeierstrassModel(0, 0, 0, 2, 0), 2)
    assert (r.kodaira, r.category) == ("III", "additive")
    r = tate_reduction(WeierstrassModel(0, 0, 0, 0, 4), 2)
    assert (r.kodaira, r.category) == ("IV*", "additive")


def test_non_minimal_model_restarts():
    # y^2 = x^3 + 16 is y^2 + y = x^3 rescaled by u = 2: good at 2 after
    # the minimality restart, with minimal discriminant -27
    r = tate_reduction(WeierstrassModel(0, 0, 0, 0, 16), 2)
    assert (r.kodaira, r.category, r.v_disc) == ("I0", "good", 0)
    assert r.minimal_model.discriminant == -27


def test_additive_at_seven_both_routes():
    r = tate_reduction(E49A1, 7)
    assert (r.kodaira, r.category, r.v_disc, r.v_c4) == ("III", "additive", 3, 1)
    rf = tate_reduction_full(E49A1, 7)
    assert (rf.kodaira, rf.category, rf.v_disc) == ("III", "additive", 3)


def test_multiplicative_at_eleven():
    r = tate_reduction(E11A1, 11)
    assert (r.kodaira, r.category, r.v_disc, r.split) == ("I5", "multiplicative", 5, True)
    r = tate_reduction(E11A2, 11)
    assert (r.kodaira, r.category, r.v_disc, r.split) == ("I1", "multiplicative", 1, True)
    assert tate_reduction(E121B1, 11).category == "additive"


def test_good_reduction_elsewhere():
    for ell in (2, 3, 5, 7, 13):
        assert tate_reduction(E11A1, ell).category == "good"


def test_full_loop_agrees_with_shortcut():
    rng = random.Random(7)
    checked = 0
    for _ in range(250):
        a = [rng.randint(-6, 6) for _ in range(5)]
        try:
            E = WeierstrassModel(*a)
        except ValueError:
            continue
        ell = rng.choice([5, 7, 13])
        if rng.random() < 0.3:
            E = E.change_model(Fraction(1, ell), 0, 0, 0)  # engineered non-minimal
        s = _tate_shortcut(E, ell)
        f = tate_reduction_full(E, ell)
        assert (s.kodaira, s.category, s.v_disc, s.split) == (
            f.kodaira, f.category, f.v_disc, f.split,
        ), (a, ell)
        checked += 1
    assert checked > 150


@settings(max_examples=40, deadline=None)
@given(
    st.tuples(*(st.integers(-5, 5) for _ in range(5))),
    st.sampled_from([2, 3]),
    st.integers(-4, 4),
    st.integers(-4, 4),
    st.integers(-4, 4),
)
def test_unimodular_invariance(a, ell, r0, s0, t0):
    try:
        E = WeierstrassModel(*a)
    except ValueError:
        return
    base = tate_reduction(E, ell)
    moved = tate_reduction(E.change_model(1, r0, s0, t0), ell)
    assert (base.kodaira, base.category, base.v_disc, base.split) == (
        moved.kodaira, moved.category, moved.v_disc, moved.split,
    )


# --- reduction over the cyclotomic field ---


def test_splitting_of_eleven_over_Qmu5():
    k = reduction_over_K(E11A2, 11, 5)
    assert (k.e, k.f, k.g) == (1, 1, 4)
    assert k.category == "multiplicative" and k.split is True


def find_nonsplit_at_two():
    for a in product(range(2), range(-3, 4), range(2), range(-3, 4), range(-3, 4)):
        try:
            E = WeierstrassModel(*a)
        except ValueError:
            continue
        r = tate_reduction(E, 2)
        if r.category == "multiplicative" and r.split is False:
            return E
    raise AssertionError("search window contains nonsplit tori; widen it")


def test_nonsplit_torus_splits_iff_residue_degree_even():
    # the quadratic twist trivializes over the even-degree residue extension
    E = find_nonsplit_at_two()
    k5 = reduction_over_K(E, 2, 5)  # ord(2 mod 5) = 4
    assert k5.f == 4 and k5.split is True
    k7 = reduction_over_K(E, 2, 7)  # ord(2 mod 7) = 3
    assert k7.f == 3 and k7.split is False


# --- place sets ---


def test_place_sets_over_Q():
    ps = compute_place_sets(E11A2, 5, "Q")
    assert ps.good_above_p
    assert [r.place.residue_char for r in ps.bad_places] == [11]
    assert ps.bad_places[0].in_S0
    assert ps.bad_places[0].category == "multiplicative"
    assert ps.residue_chars == (5, 11)


def test_place_sets_over_Qmup():
    ps = compute_place_sets(E11A2, 5, "Q(mu_p)")
    assert len(ps.bad_places) == 4
    assert all(r.in_S0 for r in ps.bad_places)
    assert [r.place.label for r in ps.bad_places] == ["11.1", "11.2", "11.3", "11.4"]
    assert ps.above_p[0].ramification_index == 4


def test_S0_empty_cases():
    # additive at the single bad prime, with mu_p inside the local field:
    # the split-multiplicative membership test excludes the place
    ps49 = compute_place_sets(E49A1, 3, "Q")
    assert ps49.good_above_p and ps49.S0 == ()
    ps121 = compute_place_sets(E121B1, 5, "Q")
    assert ps121.good_above_p and ps121.S0 == ()


def test_S0_membership_depends_on_mu_p():
    # 11a1 at p = 7: 11 is not 1 mod 7, so mu_7 is not in Q_11 and the
    # multiplicative place lands in S0 regardless of splitting
    ps = compute_place_sets(E11A1, 7, "Q")
    assert [r.place.residue_char for r in ps.bad_places] == [11]
    assert ps.bad_places[0].in_S0


def test_bad_reduction_above_p_flagged():
    ps = compute_place_sets(E11A2, 11, "Q")
    assert not ps.good_above_p


# --- g_v ---


def test_g_closed_form_worked_values():
    assert g_v(11, 5, "Q") == 1          # v_5(11^4 - 1) = 1
    assert g_v(5, 5, "Q") == 1           # the place above p never splits
    assert g_v(11, 5, "Q(mu_p)", residue_degree=1) == 1
    assert g_v(101, 5, "Q") == 5         # v_5(101^4 - 1) = 2


def test_g_table_mode_is_exclusive():
    assert g_v(3, 7, "Q", table=[{"residue_char": 3, "g": 49}]) == 49
    with pytest.raises(KeyError):
        g_v(5, 7, "Q", table=[{"residue_char": 3, "g": 49}])


def test_finite_level_place_counts_stabilize():
    for n in range(5):
        assert finite_level_place_count(101, 5, n) == 5 ** min(n, 1)
        assert finite_level_place_count(11, 5, n) == 1


def test_g_law_matches_orbit_count_sample():
    # closed form vs the finite-level oracle on a slice of primes; the
    # full ell < 500 sweep lives in the acceptance suite
    for p in (3, 5, 7):
        for ell in (2, 3, 5, 7, 11, 13, 17, 101, 151, 211, 307, 401, 499):
            if ell == p:
                continue
            expected = g_v(ell, p, "Q")
            counts = [finite_level_place_count(ell, p, n) for n in range(7)]
            assert counts == sorted(counts)
            assert expected == counts[-1]
            assert counts[-1] == counts[-2]  # stabilized by level 6


# --- delta_v ---


def test_delta_good_ordinary_congruence():
    d = delta_v(E49A1, 3)
    assert (d.value, d.provenance, d.method) == (0, "computed-exact", "reduction-congruence")
    d = delta_v(E121B1, 5)
    assert (d.value, d.provenance) == (0, "computed-exact")


def test_delta_rational_torsion():
    d = delta_v(WeierstrassModel(1, 0, 2, 0, 0), 3)  # (0, 0) is 3-torsion
    assert (d.value, d.method) == (2, "division-poly-root")
    d = delta_v(E11A1, 5)  # rational 5-torsion at x = 5, 16
    assert (d.value, d.method) == (2, "division-poly-root")


def test_delta_congruent_trace_without_torsion():
    # a_5 = 1 mod 5 forces the root search, which certifies emptiness
    d = delta_v(E11A2, 5)
    assert (d.value, d.provenance, d.method) == (0, "computed-exact", "division-poly-exhausted")


def test_delta_at_ramified_place():
    d = delta_v(E11A2, 5, "Q(mu_p)")
    assert (d.value, d.provenance, d.method) == (2, "computed-exact", "ramified-congruence")
    d = delta_v(E49A1, 3, "Q(mu_p)")
    assert (d.value, d.provenance) == (0, "computed-exact")


def test_delta_values_are_zero_or_two():
    rng = random.Random(23)
    seen = set()
    for _ in range(40):
        try:
            E = WeierstrassModel(*(rng.randint(-4, 4) for _ in range(5)))
        except ValueError:
            continue
        for p in (3, 5):
            try:
                d = delta_v(E, p)
            except ValueError:
                continue  # bad reduction at p
            assert d.value in (0, 2)
            seen.add(d.value)
    assert seen == {0, 2}
