import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autbounds.errors import InvariantViolation
from autbounds.lattice import (
    ConvexTriple,
    LatticeSet,
    arrange_all_axes,
    arrangement,
    dimension,
    in_convex_hull,
    is_integrally_convex,
    is_relatively_convex,
    is_staircase,
    lattice_points_in_hull,
    longest_chain,
    midpoint_count,
    midpoint_set,
    squash_projection,
    union_midpoint_count,
)

# ---------------------------------------------------------------------------
# naive oracles, kept deliberately independent of the implementation
# ---------------------------------------------------------------------------

def naive_midpoints(a, b):
    return {
        tuple(Fraction(x + y, 2) for x, y in zip(p, q))
        for p in a for q in b
    }


def naive_longest_chain(a):
    pts = set(a)
    if not pts:
        return 0
    best = 1
    for p in pts:
        for q in pts:
            if p == q:
                continue
            v = tuple(y - x for x, y in zip(p, q))
            n = 2
            cur = q
            while True:
                cur = tuple(x + d for x, d in zip(cur, v))
                if cur not in pts:
                    break
                n += 1
            best = max(best, n)
    return best


def naive_arrangement(a, axis):
    pts = set(a)
    lo = [min(p[c] for p in pts) for c in range(a.dim)]
    hi = [max(p[c] for p in pts) for c in range(a.dim)]
    lo[axis], hi[axis] = 0, len(pts)
    out = set()

    def keys():
        ranges = [range(lo[c], hi[c] + 1) for c in range(a.dim)]
        ranges[axis] = range(0, len(pts) + 1)
        def rec(i):
            if i == a.dim:
                yield ()
                return
            for c in ranges[i]:
                for rest in rec(i + 1):
                    yield (c,) + rest
        yield from rec(0)

    for cand in keys():
        if cand[axis] < 0:
            continue
        fiber = sum(
            1 for p in pts
            if all(p[j] == cand[j] for j in range(a.dim) if j != axis)
        )
        if fiber >= cand[axis] + 1:
            out.add(cand)
    return LatticeSet(out, a.dim)


def random_set(rng, dim, max_points=50, spread=6):
    n = rng.randint(1, max_points)
    pts = {tuple(rng.randint(-spread, spread) for _ in range(dim)) for _ in range(n)}
    return LatticeSet(pts, dim)


# ---------------------------------------------------------------------------
# LatticeSet basics
# ---------------------------------------------------------------------------

def test_lattice_set_dedup_and_dim():
    s = LatticeSet([(1, 2), (1, 2), (0, 0)])
    assert len(s) == 2 and s.dim == 2


def test_lattice_set_mixed_dims_rejected():
    with pytest.raises(InvariantViolation):
        LatticeSet([(1, 2), (1, 2, 3)])


def test_empty_set_needs_dim():
    with pytest.raises(InvariantViolation):
        LatticeSet([])
    assert len(LatticeSet([], dim=3)) == 0


def test_text_and_json_round_trip():
    s = LatticeSet([(3, -1, 4), (0, 5, -2), (0, 0, 0)])
    assert LatticeSet.from_text(s.to_text()) == s
    assert LatticeSet.from_json(s.to_json()) == s
    assert s.to_text().splitlines()[0] == "dim=3"


def test_round_trip_is_bit_exact():
    rng = random.Random(7)
    for _ in range(50):
        s = random_set(rng, rng.randint(1, 4))
        assert LatticeSet.from_text(s.to_text()).to_text() == s.to_text()
        assert LatticeSet.from_json(s.to_json()) == s


# ---------------------------------------------------------------------------
# mid-point sets
# ---------------------------------------------------------------------------

def test_midpoint_singleton():
    a = LatticeSet([(0, 0)])
    assert len(midpoint_set(a, a)) == 1


def test_midpoint_collinear_pair():
    a = LatticeSet([(0, 0), (2, 0)])
    ms = midpoint_set(a, a)
    assert len(ms) == 3
    assert ms.integral_midpoints() == LatticeSet([(0, 0), (1, 0), (2, 0)])


def test_midpoint_dimension_mismatch_rejected():
    with pytest.raises(InvariantViolation):
        midpoint_set(LatticeSet([(0, 0)]), LatticeSet([(0, 0, 0)]))


def test_midpoint_counts_match_bruteforce():
    rng = random.Random(101)
    for _ in range(120):
        dim = rng.randint(1, 4)
        a = random_set(rng, dim, max_points=40)
        b = random_set(rng, dim, max_points=40)
        expected = len(naive_midpoints(a, b))
        assert len(midpoint_set(a, b)) == expected
        assert midpoint_count(a, b) == expected


def test_sparse_counting_path_matches_dense():
    # huge coordinate spread forces the big-integer fallback; a shifted copy
    # of the same configuration goes through the dense bitmap
    rng = random.Random(17)
    base = [tuple(rng.randint(0, 5) for _ in range(4)) for _ in range(18)]
    near = LatticeSet(base)
    far = LatticeSet([tuple(c * 10_000 for c in p) for p in base])
    assert midpoint_count(far, far) == midpoint_count(near, near)
    sub = LatticeSet(base[:7])
    sub_far = LatticeSet([tuple(c * 10_000 for c in p) for p in base[:7]])
    assert union_midpoint_count(sub_far, far, sub_far) == \
        union_midpoint_count(sub, near, sub)


def test_union_count_matches_bruteforce():
    rng = random.Random(55)
    for _ in range(80):
        dim = rng.randint(2, 4)
        a3 = random_set(rng, dim, max_points=40)
        sub = rng.sample(a3.sorted_points(), rng.randint(1, len(a3)))
        a2 = LatticeSet(sub, dim)
        a1 = LatticeSet(rng.sample(sub, rng.randint(1, len(sub))), dim)
        expected = len(naive_midpoints(a1, a3) | naive_midpoints(a2, a2))
        assert union_midpoint_count(a1, a3, a2) == expected


def test_intersection_inside_midpoints():
    rng = random.Random(3)
    for _ in range(40):
        dim = rng.randint(1, 3)
        a = random_set(rng, dim, max_points=25)
        b = random_set(rng, dim, max_points=25)
        ms = midpoint_set(a, b)
        for p in a.points & b.points:
            assert ms.contains_midpoint_of(p, p)


@settings(deadline=None)
@given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                min_size=1, max_size=14),
       st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                min_size=1, max_size=14))
def test_midpoint_symmetric(pa, pb):
    a, b = LatticeSet(pa), LatticeSet(pb)
    assert midpoint_set(a, b).doubled == midpoint_set(b, a).doubled


@settings(deadline=None)
@given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                min_size=2, max_size=16))
def test_selfsum_floor(points):
    a = LatticeSet(points)
    if dimension(a) >= 1:
        assert midpoint_count(a, a) >= 2 * len(a) - 1


# ---------------------------------------------------------------------------
# dimension and chains
# ---------------------------------------------------------------------------

def test_dimension_examples():
    assert dimension(LatticeSet([(5, 7)])) == 0
    assert dimension(LatticeSet([(0, 0), (1, 0), (0, 1)])) == 2
    assert dimension(LatticeSet([(0, 0, 0), (1, 1, 1), (2, 2, 2)])) == 1


def test_dimension_empty_rejected():
    with pytest.raises(InvariantViolation):
        dimension(LatticeSet([], dim=2))


def test_chain_examples():
    assert longest_chain(LatticeSet([(0, 0)])) == 1
    assert longest_chain(LatticeSet([(0, 0), (1, 0), (2, 0), (0, 1)])) == 3
    assert longest_chain(LatticeSet([(0,), (2,), (4,)])) == 3  # gappy step


def test_chain_matches_bruteforce():
    rng = random.Random(2024)
    for _ in range(120):
        dim = rng.randint(1, 4)
        a = random_set(rng, dim, max_points=35, spread=5)
        assert longest_chain(a) == naive_longest_chain(a)


# ---------------------------------------------------------------------------
# arrangement
# ---------------------------------------------------------------------------

def test_arrangement_example():
    out = arrangement(LatticeSet([(0, 0), (2, 0), (2, 1)]), 0)
    assert out == LatticeSet([(0, 0), (1, 0), (0, 1)])


def test_arrangement_fixed_point():
    a = LatticeSet([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)])
    assert arrangement(a, 0) == a


def test_arrangement_axis_out_of_range():
    with pytest.raises(InvariantViolation):
        arrangement(LatticeSet([(0, 0)]), 2)


def test_arrangement_matches_definition_oracle():
    rng = random.Random(11)
    for _ in range(80):
        dim = rng.randint(2, 3)
        a = random_set(rng, dim, max_points=30, spread=4)
        axis = rng.randrange(dim)
        assert arrangement(a, axis) == naive_arrangement(a, axis)


def test_arrangement_preserves_cardinality_and_monotone():
    rng = random.Random(12)
    for _ in range(60):
        dim = rng.randint(2, 4)
        big = random_set(rng, dim, max_points=40)
        small = LatticeSet(rng.sample(big.sorted_points(), rng.randint(1, len(big))), dim)
        axis = rng.randrange(dim)
        arr_big, arr_small = arrangement(big, axis), arrangement(small, axis)
        assert len(arr_big) == len(big) and len(arr_small) == len(small)
        assert arr_small.issubset(arr_big)


def test_arrangement_dimension_can_drop():
    # Dimension preservation fails in general, even for integrally convex
    # sets: this 2-dimensional set has singleton fibers along axis 1, so its
    # arrangement flattens onto the axis. Cardinality is still preserved.
    a = LatticeSet([(0, 0), (1, 1), (2, 3)])
    assert is_integrally_convex(a)
    assert dimension(a) == 2
    arr = arrangement(a, 1)
    assert len(arr) == 3
    assert dimension(arr) == 1


def test_arrangement_usually_preserves_dimension_on_fat_sets():
    from autbounds.lemmas import generate_nested_triple
    for seed in range(8):
        t = generate_nested_triple(3, 40, seed=seed)
        for s in (t.a1, t.a2, t.a3):
            arr = arrange_all_axes(s)
            assert len(arr) == len(s)
            assert dimension(arr) == dimension(s)


def test_full_arrangement_gives_staircase():
    rng = random.Random(31)
    for _ in range(60):
        dim = rng.randint(2, 4)
        a = random_set(rng, dim, max_points=35)
        out = arrange_all_axes(a)
        assert len(out) == len(a)
        assert is_staircase(out)


# ---------------------------------------------------------------------------
# convexity predicates
# ---------------------------------------------------------------------------

def test_hull_membership_simple():
    tri = [(0, 0), (4, 0), (0, 4)]
    assert in_convex_hull((1, 1), tri)
    assert in_convex_hull((0, 4), tri)
    assert not in_convex_hull((3, 3), tri)
    assert not in_convex_hull((-1, 0), tri)


def test_hull_membership_matches_random_rational_combinations():
    rng = random.Random(5)
    for _ in range(30):
        pts = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(6)]
        weights = [rng.randint(0, 4) for _ in pts]
        if sum(weights) == 0:
            weights[0] = 1
        total = sum(weights)
        comb = tuple(sum(w * p[c] for w, p in zip(weights, pts)) for c in range(3))
        if all(x % total == 0 for x in comb):
            inner = tuple(x // total for x in comb)
            assert in_convex_hull(inner, pts)


def test_lattice_points_in_hull_triangle():
    tri = LatticeSet([(0, 0), (2, 0), (0, 2)])
    hull = lattice_points_in_hull(tri)
    assert hull == LatticeSet([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])


def test_relative_convexity():
    a = LatticeSet([(0, 0), (1, 0), (2, 0)])
    assert is_relatively_convex(a, a)
    b = LatticeSet([(0, 0), (2, 0)])
    assert not is_relatively_convex(b, a)
    with pytest.raises(InvariantViolation):
        is_relatively_convex(LatticeSet([(5, 5)]), a)


def test_generated_triples_pass_exact_convexity():
    from autbounds.lemmas import generate_nested_triple
    for seed in (0, 1, 2):
        t = generate_nested_triple(2, 25, seed=seed)
        t.validate_convexity()
        assert is_relatively_convex(t.a1, t.a2)
        assert is_relatively_convex(t.a2, t.a3)


# ---------------------------------------------------------------------------
# squash projections
# ---------------------------------------------------------------------------

def _triple(a1, a2, a3):
    return ConvexTriple(LatticeSet(a1), LatticeSet(a2), LatticeSet(a3))


def test_squash_reduce_a3_plane_plus_point():
    t = _triple(
        [(0, 0, 0)],
        [(0, 0, 0), (1, 0, 0), (0, 1, 0)],
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 1, 0), (0, 0, 1)],
    )
    out, smap = squash_projection(t, "reduce-a3")
    assert len(out.a3) == len(t.a3)  # injective on a3
    assert out.a1 == t.a1 and out.a2 == t.a2  # fixed pointwise
    assert all(p[2] == 0 for p in out.a3)
    assert union_midpoint_count(out.a1, out.a3, out.a2) <= union_midpoint_count(t.a1, t.a3, t.a2)
    # the recorded map replays to exactly the returned image
    assert {smap.apply(p) for p in t.a3} == set(out.a3.points)


def test_squash_reduce_a3_needs_unimodular_flattening():
    # a2 spans the off-axis line through (1,1,0); the map must still fix it.
    t = _triple(
        [(0, 0, 0)],
        [(0, 0, 0), (1, 1, 0), (2, 2, 0)],
        [(0, 0, 0), (1, 1, 0), (2, 2, 0), (0, 1, 2)],
    )
    out, smap = squash_projection(t, "reduce-a3")
    assert len(out.a3) == 4
    assert len(out.a2) == 3 and len(out.a1) == 1
    assert union_midpoint_count(out.a1, out.a3, out.a2) <= union_midpoint_count(t.a1, t.a3, t.a2)


def test_squash_multi_step_rank_gap():
    # a2 spans an off-axis line inside a 4-dim ambient; flattening needs a
    # genuine unimodular basis change followed by three squash steps
    a1 = LatticeSet([(0, 0, 0, 0)])
    a2 = LatticeSet([(0, 0, 0, 0), (1, 2, 0, 1), (2, 4, 0, 2)])
    a3 = LatticeSet(list(a2) + [(0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 3), (2, 1, 1, 1)])
    t = ConvexTriple(a1, a2, a3)
    out, smap = squash_projection(t, "reduce-a3")
    assert len(smap.steps) == 3
    assert len(out.a3) == len(a3)
    assert set(out.a2.points) == {smap.apply(p) for p in a2}
    assert dimension(out.a2) == dimension(a2) == 1
    assert union_midpoint_count(out.a1, out.a3, out.a2) <= \
        union_midpoint_count(a1, a3, a2)
    assert {smap.apply(p) for p in a3} == set(out.a3.points)


def test_squash_gap_zero_rejected():
    t = _triple(
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (1, 0), (0, 1), (1, 1)],
    )
    with pytest.raises(InvariantViolation):
        squash_projection(t, "reduce-a3")  # spans are equal (gap 0)


def test_squash_reduce_a2_and_all():
    t = _triple(
        [(0, 0), (1, 0)],
        [(0, 0), (1, 0), (0, 1), (1, 1)],
        [(0, 0), (1, 0), (0, 1), (1, 1)],
    )
    out, _ = squash_projection(t, "reduce-a2")
    assert len(out.a3) == 4
    assert out.a1 == t.a1
    full = _triple(
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (1, 0), (0, 1), (1, 1)],
    )
    out2, smap2 = squash_projection(full, "reduce-all")
    assert len(out2.a3) == 4
    assert dimension(out2.a3) < dimension(full.a3)
    before = union_midpoint_count(full.a1, full.a3, full.a2)
    after = union_midpoint_count(out2.a1, out2.a3, out2.a2)
    assert after <= before


def test_squash_counts_never_increase_random():
    rng = random.Random(77)
    from autbounds.lemmas import generate_nested_triple
    tested = 0
    for seed in range(40):
        t = generate_nested_triple(3, rng.randint(12, 40), seed=seed)
        flat_a2 = LatticeSet([p[:2] + (0,) for p in t.a2], 3)
        flat_a1 = LatticeSet([p[:2] + (0,) for p in t.a1], 3)
        try:
            cand = ConvexTriple(flat_a1, flat_a2, t.a3.union(flat_a2).union(flat_a1))
            out, _ = squash_projection(cand, "reduce-a3")
        except InvariantViolation:
            continue
        tested += 1
        assert union_midpoint_count(out.a1, out.a3, out.a2) <= \
            union_midpoint_count(cand.a1, cand.a3, cand.a2)
    assert tested >= 10


def test_convex_triple_requires_nesting():
    with pytest.raises(InvariantViolation):
        _triple([(0, 0), (5, 5)], [(0, 0)], [(0, 0), (1, 1)])


def test_convex_triple_json_round_trip():
    t = _triple([(0, 0)], [(0, 0), (1, 0)], [(0, 0), (1, 0), (0, 1)])
    back = ConvexTriple.from_json_dict(t.to_json_dict())
    assert back == t
