from fractions import Fraction
from functools import lru_cache

import pytest

from autbounds.bounds import (
    BoundResult,
    SurfaceInvariants,
    ThreefoldInvariants,
    admissible_chi_range,
    canonical_pencil_cases,
    confirm_universal_n,
    decomposability_margin,
    plurigenus,
    singular_fiber_floor,
    surface_bound,
    threefold_constant,
    universal_n,
)
from autbounds.errors import InvariantViolation


@lru_cache(maxsize=None)
def _universal():
    return universal_n()


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_threefold_invariants_validation():
    ThreefoldInvariants(2, 0)
    ThreefoldInvariants(2, -6)
    with pytest.raises(InvariantViolation):
        ThreefoldInvariants(3, 0)  # odd
    with pytest.raises(InvariantViolation):
        ThreefoldInvariants(-2, -1)
    with pytest.raises(InvariantViolation):
        ThreefoldInvariants(2, 1)  # chi > k3/6
    with pytest.raises(InvariantViolation):
        ThreefoldInvariants(2, -7)  # -chi > (5/2)k3+1


def test_admissible_chi_range():
    assert admissible_chi_range(2) == (-6, 0)
    assert admissible_chi_range(12) == (-31, 2)


def test_surface_invariants_validation():
    SurfaceInvariants(10, 2)
    with pytest.raises(InvariantViolation):
        SurfaceInvariants(10, 1)  # BMY
    with pytest.raises(InvariantViolation):
        SurfaceInvariants(10, 0)
    with pytest.raises(InvariantViolation):
        SurfaceInvariants(0, 1)
    with pytest.raises(InvariantViolation):
        SurfaceInvariants(10, 2, known_pencils=frozenset({3}), no_pencils=frozenset({3}))


def test_chi_floor_derivation():
    assert SurfaceInvariants(64).chi_floor == 8
    assert SurfaceInvariants(63).chi_floor == 7
    assert SurfaceInvariants(5).chi_floor == 1
    assert SurfaceInvariants(10, 4).chi_floor == 4


# ---------------------------------------------------------------------------
# plurigenus
# ---------------------------------------------------------------------------

def test_plurigenus_values():
    assert plurigenus(ThreefoldInvariants(2, 0), 3) == 5
    assert plurigenus(ThreefoldInvariants(12, 1), 2) == 3
    assert plurigenus(ThreefoldInvariants(2, 0), 2) == 1


def test_plurigenus_needs_n_at_least_2():
    with pytest.raises(InvariantViolation):
        plurigenus(ThreefoldInvariants(2, 0), 1)


def test_plurigenus_floor_holds_on_admissible_grid():
    for k3 in range(2, 40, 2):
        lo, hi = admissible_chi_range(k3)
        for chi in (lo, 0 if lo <= 0 <= hi else hi, hi):
            inv = ThreefoldInvariants(k3, chi)
            for n in (3, 4, 5):
                assert plurigenus(inv, n) >= 5


# ---------------------------------------------------------------------------
# margins
# ---------------------------------------------------------------------------

def test_margin_lemma74_boundary():
    margin, rep = decomposability_margin("lemma7.4", SurfaceInvariants(72, 8))
    assert margin == 1
    assert rep.check("a3_at_most_2a2").passed
    margin, _ = decomposability_margin("lemma7.4", SurfaceInvariants(63, 7))
    assert margin == -3


def test_margin_lemma74_positive_for_chi_ge_8():
    for chi in range(8, 30):
        for k2 in range(1, 9 * chi + 1, 7):
            margin, _ = decomposability_margin("lemma7.4", SurfaceInvariants(k2, chi))
            assert margin > 0, (k2, chi)


def test_margin_prop63_threshold():
    margin, _ = decomposability_margin("prop6.3", SurfaceInvariants(126, 14))
    assert margin == Fraction(4, 5)
    margin, _ = decomposability_margin("prop6.3", SurfaceInvariants(117, 13))
    assert margin == Fraction(-7, 5)
    for chi in range(14, 40):
        for k2 in range(1, 9 * chi + 1, 11):
            margin, _ = decomposability_margin("prop6.3", SurfaceInvariants(k2, chi))
            assert margin > 0


def test_margin_lemma72_threshold():
    assert decomposability_margin("lemma7.2", SurfaceInvariants(9, 1))[0] == -6
    assert decomposability_margin("lemma7.2", SurfaceInvariants(18, 2))[0] == -2
    assert decomposability_margin("lemma7.2", SurfaceInvariants(27, 3))[0] == 2
    # K^2-independence of this margin
    assert decomposability_margin("lemma7.2", SurfaceInvariants(1, 3))[0] == 2


def test_margin_lemma76_values():
    assert decomposability_margin("lemma7.6-12", SurfaceInvariants(4, 1))[0] == 8
    assert decomposability_margin("lemma7.6-16", SurfaceInvariants(2, 1))[0] == 13


def test_margin_variant_mismatch_rejected():
    with pytest.raises(InvariantViolation):
        decomposability_margin("prop3.3", SurfaceInvariants(10, 2), n=20)
    with pytest.raises(InvariantViolation):
        decomposability_margin("lemma7.4", ThreefoldInvariants(2, 0))
    with pytest.raises(InvariantViolation):
        decomposability_margin("nope", SurfaceInvariants(10, 2))


def test_margin_chi_shape_supports_endpoint_reduction():
    # single-form margins are exactly linear in chi; the six-case min is
    # concave (nonincreasing slope), so endpoint positivity still implies
    # positivity across a chi interval -- which the endpoint reductions use
    vals = [decomposability_margin("prop6.3", SurfaceInvariants(9, chi))[0]
            for chi in range(1, 9)]
    diffs = {b - a for a, b in zip(vals, vals[1:])}
    assert len(diffs) == 1
    vals = [decomposability_margin("lemma7.4", SurfaceInvariants(50, chi))[0]
            for chi in range(6, 14)]
    slopes = [b - a for a, b in zip(vals, vals[1:])]
    assert all(s2 <= s1 for s1, s2 in zip(slopes, slopes[1:]))
    # dense scan agrees with endpoint positivity on a sample interval
    lo, hi = 8, 13
    if vals[lo - 6] > 0 and vals[hi - 6] > 0:
        assert all(v > 0 for v in vals[lo - 6:hi - 5])


def test_margin_prop33_requires_level():
    inv = ThreefoldInvariants(2, 0)
    with pytest.raises(InvariantViolation):
        decomposability_margin("prop3.3", inv)
    margin, rep = decomposability_margin("prop3.3", inv, n=20)
    assert rep.check("chain_ratio_implies_eps").passed
    assert isinstance(margin, Fraction)


# ---------------------------------------------------------------------------
# universal-n
# ---------------------------------------------------------------------------

def test_universal_n_certificate():
    n_star, cert = _universal()
    assert cert["leading_coefficient"] == Fraction(1, 9540)
    assert cert["chain_floor"]["n"] == 20
    assert cert["chain_floor"]["value_at_floor"] == 6902
    assert cert["chain_floor"]["value_below"] == 6215
    assert n_star >= 20
    final = cert["conditions_at_n_star"]
    assert final["margin_k3_2_chi_0"] > 0
    assert final["margin_k3_6_chi_1"] > 0
    assert final["B"] < 0


def test_universal_n_minimality_witness_is_real():
    n_star, cert = _universal()
    wit = cert["minimality_witness"]
    assert wit["n"] == n_star - 1
    assert "failed" in wit
    if "k3" in wit:
        inv = ThreefoldInvariants(wit["k3"], wit["chi"])
        margin, _ = decomposability_margin("prop3.3", inv, n=n_star - 1)
        assert margin <= 0
        assert margin == wit["value"]


def test_universal_n_sampled_confirmation():
    n_star, _ = _universal()
    assert confirm_universal_n(n_star, k3_limit=100)


def test_universal_n_epsilon_guard():
    with pytest.raises(InvariantViolation):
        universal_n(Fraction(1, 529))
    with pytest.raises(InvariantViolation):
        universal_n(Fraction(0))


def test_threefold_constant():
    n_star, _ = _universal()
    c, trail = threefold_constant(n_star=n_star)
    assert c >= 25
    assert trail["product_family_floor"]["satisfied"]
    assert trail["branch_small_pg"]["coefficient"] == Fraction(270 * 9 * 34 * 4 * n_star)
    assert trail["result"]["c"] == c


# ---------------------------------------------------------------------------
# surface bound table
# ---------------------------------------------------------------------------

def test_surface_bound_examples():
    assert surface_bound(SurfaceInvariants(1)).value == 270
    res = surface_bound(SurfaceInvariants(200, 30, no_pencils=frozenset({3, 4, 5})))
    assert res.value == 5056 and res.source == ("large_k2_small_pencils_controlled",)
    res = surface_bound(SurfaceInvariants(5, p3_degree=5))
    assert res.value == 234
    res = surface_bound(SurfaceInvariants(50, known_pencils=frozenset({2})))
    assert res.value == Fraction(725)


def test_surface_bound_chi8_via_bmy():
    # K^2 >= 64 forces chi >= 8 without chi being given
    res = surface_bound(SurfaceInvariants(64))
    assert res.value == 36 * 64 + 24
    assert res.source == ("global_chi8",)
    res = surface_bound(SurfaceInvariants(63))
    assert res.value == 114 * 63 + 24  # still in the mid range; chi8 not derivable


def test_surface_bound_unknown_flags_do_not_fire():
    res = surface_bound(SurfaceInvariants(200, 30))
    # no pencil information: the 24K^2+256 rule must not apply
    assert "large_k2_small_pencils_controlled" not in res.applicable
    assert res.value == 36 * 200 + 24


def test_surface_bound_trail_is_complete():
    res = surface_bound(SurfaceInvariants(100, 12))
    assert set(res.applicable) <= set(res.trail)
    assert all(not rep.admissible for tag, rep in res.trail.items()
               if tag not in res.applicable)


def test_surface_bound_monotone_within_rule():
    prev = None
    for k2 in range(4, 64):
        res = surface_bound(SurfaceInvariants(k2))
        value = res.applicable["mid_k2"]
        if prev is not None:
            assert value >= prev
        prev = value


def test_surface_bound_unconditional_coverage():
    # the piecewise small-K^2 rules cover K^2 <= 63 and K^2 >= 64 forces
    # chi >= 8, so a bare K^2 always gets some bound
    for k2 in list(range(1, 70)) + [100, 500, 1000]:
        res = surface_bound(SurfaceInvariants(k2))
        assert res.value is not None


def test_canonical_pencil_case_table():
    cases, findings = canonical_pencil_cases(100)
    assert cases[5] == 12 * 100 + 432
    assert cases[2] == Fraction(25, 2) * 100 + 100
    assert not findings
    _, findings_small = canonical_pencil_cases(40)
    assert any("K^2 >= 54" in f for f in findings_small)


def test_singular_fiber_floor():
    assert singular_fiber_floor(3, True) == 2
    assert singular_fiber_floor(3, False) == 5
    assert singular_fiber_floor(2) == 4
    with pytest.raises(InvariantViolation):
        singular_fiber_floor(4, True)
    with pytest.raises(InvariantViolation):
        singular_fiber_floor(1)
    for g in range(2, 12):
        assert singular_fiber_floor(g) >= 4
        if g % 2 == 1 and g > 3:
            assert singular_fiber_floor(g, True) >= 4


def test_bound_result_serialization():
    res = surface_bound(SurfaceInvariants(1))
    d = res.to_json_dict()
    assert d["value"] == 270
    assert "unit_k2" in d["trail"]
