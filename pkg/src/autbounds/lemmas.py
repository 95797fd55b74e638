"""Instance generators and verifiers for the mid-point counting rules.

The lab checks four counting rules on nested triples A1 <= A2 <= A3 of
integer point sets, identified by the rule ids "2.4", "2.5", "2.6", "2.7":

  2.4  arranging all three sets along a coordinate axis never increases
       #(A1.A3 u A2.A2); no side hypotheses, any nested integral sets.
  2.5  dim A1 = 3, chain(A3) < #A3/6, chain(A2) < #A2/4, #A2 >= 21,
       #A3 <= 2#A2  =>  #(A1.A3 u A2.A2) >= min of six linear forms.
  2.6  dim A1 >= 4, chain(A3) < eps*#A3 with eps = 1/530, 4#A2 >= #A3
       =>  count >= (1-eps)#A3 + 14(1-4eps)/3 * #A2 - 57.
  2.7  dim A1 >= 2, dim A2 >= 3, chain(A3) < #A3/10, chain(A2) < #A2/5
       =>  count >= (9/10)#A3 + (16/5)#A2 - 30.

Violations are first-class findings: a failing trial serializes a replayable
witness triple instead of crashing the run. All comparisons are exact
(integer counts against Fraction bounds).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional

from .errors import InvariantViolation
from .lattice import (
    ConvexTriple,
    LatticeSet,
    arrangement,
    dimension,
    is_staircase,
    longest_chain,
    midpoint_count,
    union_midpoint_count,
)
from .reports import Check, HypothesisReport

CHAIN_RATIO_EPSILON = Fraction(1, 530)
LEMMA_IDS = ("2.4", "2.5", "2.6", "2.7")

# Below ~8 points a box of positive volume in dim 4 cannot exist, and the
# rejection loops in the drivers are bounded; both limits are plain caps.
_MAX_DRAWS = 80
_MAX_GENERATOR_ATTEMPTS = 50


def derive_seed(master_seed: int, index: int) -> int:
    """Deterministic per-trial seed; identical regardless of scheduling."""
    return (master_seed * 0x9E3779B1 + index * 0x85EBCA77) & 0x7FFFFFFFFFFFFFFF


# ---------------------------------------------------------------------------
# bound formulas
# ---------------------------------------------------------------------------

def bound_formula(lemma_id: str, n2: int, n3: int,
                  epsilon: Fraction = CHAIN_RATIO_EPSILON) -> Fraction:
    """Exact lower-bound value the rule promises for #(A1.A3 u A2.A2)."""
    if n2 < 0 or n3 < 0:
        raise InvariantViolation("set sizes must be nonnegative")
    n2, n3 = Fraction(n2), Fraction(n3)
    if lemma_id == "2.5":
        return min(
            n3 + 3 * n2 - 23,
            Fraction(5, 6) * n3 + Fraction(10, 3) * n2 - 10,
            Fraction(5, 6) * n3 + Fraction(13, 4) * n2 - 2,
            Fraction(7, 12) * n3 + Fraction(15, 4) * n2 - 6,
            Fraction(1, 2) * n3 + 4 * n2 - 4,
            5 * n2 - 31,
        )
    if lemma_id == "2.6":
        eps = Fraction(epsilon)
        return (1 - eps) * n3 + Fraction(14, 3) * (1 - 4 * eps) * n2 - 57
    if lemma_id == "2.7":
        return Fraction(9, 10) * n3 + Fraction(16, 5) * n2 - 30
    raise InvariantViolation(f"no closed-form bound for rule {lemma_id!r}")


def bound_cases_2_5(n2: int, n3: int) -> tuple[Fraction, ...]:
    """The six candidate forms of rule 2.5, in statement order."""
    n2, n3 = Fraction(n2), Fraction(n3)
    return (
        n3 + 3 * n2 - 23,
        Fraction(5, 6) * n3 + Fraction(10, 3) * n2 - 10,
        Fraction(5, 6) * n3 + Fraction(13, 4) * n2 - 2,
        Fraction(7, 12) * n3 + Fraction(15, 4) * n2 - 6,
        Fraction(1, 2) * n3 + 4 * n2 - 4,
        5 * n2 - 31,
    )


# ---------------------------------------------------------------------------
# hypothesis checks
# ---------------------------------------------------------------------------

def hypothesis_report(lemma_id: str, triple: ConvexTriple,
                      epsilon: Fraction = CHAIN_RATIO_EPSILON,
                      verify_convexity: bool = False) -> HypothesisReport:
    """Check the side hypotheses of one rule against a concrete triple."""
    if lemma_id not in LEMMA_IDS:
        raise InvariantViolation(f"unknown rule id {lemma_id!r}")
    n1, n2, n3 = triple.sizes()
    checks: list[Check] = [Check("nested", True, "enforced by ConvexTriple")]
    if verify_convexity:
        try:
            triple.validate_convexity()
            checks.append(Check("integrally_convex", True, "verified by hull scan"))
        except InvariantViolation as exc:
            checks.append(Check("integrally_convex", False, str(exc)))
    else:
        checks.append(Check("integrally_convex", True, "by construction (generator)"))

    if lemma_id == "2.4":
        return HypothesisReport("2.4", tuple(checks))

    if lemma_id == "2.5":
        d1 = dimension(triple.a1) if n1 else -1
        c3, c2 = longest_chain(triple.a3), longest_chain(triple.a2)
        checks += [
            Check("dim_a1_eq_3", d1 == 3, d1),
            Check("chain_a3_lt_sixth", Fraction(c3) < Fraction(n3, 6), f"{c3} vs {n3}/6"),
            Check("chain_a2_lt_quarter", Fraction(c2) < Fraction(n2, 4), f"{c2} vs {n2}/4"),
            Check("a2_at_least_21", n2 >= 21, n2),
            Check("a3_at_most_2a2", n3 <= 2 * n2, f"{n3} vs 2*{n2}"),
        ]
    elif lemma_id == "2.6":
        d1 = dimension(triple.a1) if n1 else -1
        c3 = longest_chain(triple.a3)
        checks += [
            Check("dim_a1_ge_4", d1 >= 4, d1),
            Check("chain_a3_lt_eps", Fraction(c3) < Fraction(epsilon) * n3,
                  f"{c3} vs {epsilon}*{n3}"),
            Check("4a2_ge_a3", 4 * n2 >= n3, f"4*{n2} vs {n3}"),
        ]
    elif lemma_id == "2.7":
        d1 = dimension(triple.a1) if n1 else -1
        d2 = dimension(triple.a2) if n2 else -1
        c3, c2 = longest_chain(triple.a3), longest_chain(triple.a2)
        checks += [
            Check("dim_a1_ge_2", d1 >= 2, d1),
            Check("dim_a2_ge_3", d2 >= 3, d2),
            Check("chain_a3_lt_tenth", Fraction(c3) < Fraction(n3, 10), f"{c3} vs {n3}/10"),
            Check("chain_a2_lt_fifth", Fraction(c2) < Fraction(n2, 5), f"{c2} vs {n2}/5"),
        ]
    return HypothesisReport(lemma_id, tuple(checks))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def union_count(triple: ConvexTriple) -> int:
    """#(a1.a3 u a2.a2); counts the doubled mid-point union exactly."""
    return union_midpoint_count(triple.a1, triple.a3, triple.a2)


@dataclass(frozen=True)
class VerificationOutcome:
    lhs_count: int
    rhs_bound: Fraction
    satisfied: bool
    witness: Optional[ConvexTriple]
    trial_seed: int

    def to_json_dict(self):
        rhs = self.rhs_bound
        rhs_str = str(rhs.numerator) if rhs.denominator == 1 else f"{rhs.numerator}/{rhs.denominator}"
        out = {
            "lhs": self.lhs_count,
            "rhs": rhs_str,
            "satisfied": self.satisfied,
            "trial_seed": self.trial_seed,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        return out


def verify_lemma(lemma_id: str, triple: ConvexTriple, trial_seed: int = 0,
                 epsilon: Fraction = CHAIN_RATIO_EPSILON,
                 verify_convexity: bool = False):
    """Run one rule on one triple: (hypothesis report, verification outcome).

    For "2.4" the outcome compares the mid-point union count before and after
    arranging along every axis in order; each single-axis step is checked.
    For the other rules the count is compared against the closed-form bound;
    an inadmissible triple still yields the comparison, but makes no claim.
    """
    report = hypothesis_report(lemma_id, triple, epsilon, verify_convexity)
    if lemma_id == "2.4":
        counts = [union_count(triple)]
        cur = triple
        step_checks = list(report.checks)
        ok = True
        for axis in range(triple.dim):
            cur = ConvexTriple(
                arrangement(cur.a1, axis),
                arrangement(cur.a2, axis),
                arrangement(cur.a3, axis),
            )
            counts.append(union_count(cur))
            passed = counts[-1] <= counts[-2]
            ok = ok and passed
            step_checks.append(
                Check(f"nonincreasing_axis_{axis}", passed, f"{counts[-2]} -> {counts[-1]}")
            )
        report = HypothesisReport("2.4", tuple(step_checks))
        outcome = VerificationOutcome(
            lhs_count=counts[0],
            rhs_bound=Fraction(counts[-1]),
            satisfied=ok,
            witness=None if ok else triple,
            trial_seed=trial_seed,
        )
        return report, outcome

    lhs = union_count(triple)
    rhs = bound_formula(lemma_id, len(triple.a2), len(triple.a3), epsilon)
    satisfied = Fraction(lhs) >= rhs
    outcome = VerificationOutcome(
        lhs_count=lhs,
        rhs_bound=rhs,
        satisfied=satisfied,
        witness=None if satisfied else triple,
        trial_seed=trial_seed,
    )
    return report, outcome


# ---------------------------------------------------------------------------
# intermediate staircase identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    """Measured #(A.A) against a closed-form expression, with direction flag.

    The expression is reported, never asserted as an equality: on general
    staircase sets only the direction `measured >= expression` is stable,
    and that is the direction the counting arguments consume.
    """

    identity: str
    expression: Fraction
    measured: int
    relation: str  # "=", ">", or "<"
    inputs: dict

    def to_json_dict(self):
        return {
            "identity": self.identity,
            "expression": str(self.expression),
            "measured": self.measured,
            "relation": self.relation,
            "inputs": dict(self.inputs),
        }


def check_intermediate_identities(a: LatticeSet) -> IdentityReport:
    """Report #(A.A) against the planar or reduced-3d staircase expression.

    dim 2: expression 4#A - 2(m_x + m_y) + 1 with m_x, m_y the axis counts.
    dim 3: requires the reduced configuration (z = 0, or z = 1 and y = 0);
           expression (t2-1)(m_y-3) + 5#A - 2(m_x + m_y) - 3 with t2 the
           number of z = 1 points.
    """
    if not len(a):
        raise InvariantViolation("identity check needs a nonempty set")
    if not is_staircase(a):
        raise InvariantViolation("identity check needs an arranged (staircase) set")
    measured = midpoint_count(a, a)
    n = len(a)
    if a.dim == 2:
        m_x = sum(1 for p in a if p[1] == 0)
        m_y = sum(1 for p in a if p[0] == 0)
        expr = Fraction(4 * n - 2 * (m_x + m_y) + 1)
        name = "planar_staircase"
        inputs = {"n": n, "m_x": m_x, "m_y": m_y}
    elif a.dim == 3:
        if any(p[2] not in (0, 1) for p in a) or any(p[1] != 0 for p in a if p[2] == 1):
            raise InvariantViolation(
                "3d identity needs the reduced configuration: z=0, or z=1 with y=0"
            )
        t2 = sum(1 for p in a if p[2] == 1)
        m_x = sum(1 for p in a if p[1] == 0 and p[2] == 0)
        m_y = sum(1 for p in a if p[0] == 0 and p[2] == 0)
        expr = Fraction((t2 - 1) * (m_y - 3) + 5 * n - 2 * (m_x + m_y) - 3)
        name = "reduced_3d_staircase"
        inputs = {"n": n, "m_x": m_x, "m_y": m_y, "t2": t2}
    else:
        raise InvariantViolation("identity check is defined for dim 2 and 3 only")
    relation = "=" if measured == expr else (">" if measured > expr else "<")
    return IdentityReport(name, expr, measured, relation, inputs)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

class _Degenerate(Exception):
    pass


def generate_nested_triple(dim: int, size_target: int, seed: int,
                           shape: str = "auto",
                           ratios: Optional[tuple[float, float]] = None,
                           inner_dim: Optional[int] = None) -> ConvexTriple:
    """Sample a nested triple of integrally convex sets, deterministically.

    The three sets are sublevel sets of one random convex gauge (an exact
    integer quadratic form or a weighted box gauge) at three thresholds, so
    nesting, integral convexity and relative convexity hold by construction.
    size_target steers #a3 (ties at the threshold may add a few points).
    Large targets (> 1500) switch to a product-box profile, which is the
    regime where the 1/530 chain-ratio hypothesis can hold at all.

    Deterministic under `seed`; degenerate draws (a1 of too-low dimension)
    are resampled internally, and exhaustion raises InvariantViolation.
    """
    if dim < 2:
        raise InvariantViolation("generator needs dim >= 2")
    if size_target < dim + 1:
        raise InvariantViolation(f"size_target must be at least dim+1 = {dim + 1}")
    rng = random.Random(seed)
    want_dim = dim if inner_dim is None else inner_dim
    for _ in range(_MAX_GENERATOR_ATTEMPTS):
        try:
            if shape == "box" or (shape == "auto" and size_target > 1500):
                triple = _box_triple(rng, dim, size_target)
            else:
                triple = _gauge_triple(rng, dim, size_target, shape, ratios)
        except _Degenerate:
            continue
        if dimension(triple.a1) >= want_dim:
            return triple
    raise InvariantViolation(
        f"could not sample a nondegenerate triple (dim={dim}, size={size_target}, seed={seed})"
    )


def _gauge_triple(rng: random.Random, dim: int, size_target: int,
                  shape: str, ratios) -> ConvexTriple:
    if shape == "auto":
        shape = rng.choice(("ellipsoid", "ellipsoid", "box"))
    center = tuple(rng.choice((-1, 0, 0, 1)) for _ in range(dim))  # doubled coords
    if shape == "ellipsoid":
        m = [[rng.choice((-1, 0, 0, 0, 1)) for _ in range(dim)] for _ in range(dim)]
        k = rng.randint(1, 3)
        quad = [
            [sum(m[r][i] * m[r][j] for r in range(dim)) + (k if i == j else 0)
             for j in range(dim)]
            for i in range(dim)
        ]

        def gauge(p):
            v = [2 * c - o for c, o in zip(p, center)]
            return sum(quad[i][j] * v[i] * v[j] for i in range(dim) for j in range(dim))

        desc = f"ellipsoid quad={quad} center/2={center}"
    else:
        weights = tuple(rng.randint(2, 4) for _ in range(dim))

        def gauge(p):
            return max(w * abs(2 * c - o) for w, c, o in zip(weights, p, center))

        desc = f"box weights={weights} center/2={center}"

    pts, vals = _scan_sublevel(gauge, dim, center, size_target)
    order = sorted(range(len(pts)), key=lambda i: (vals[i], pts[i]))
    f2 = rng.uniform(*(ratios[0:2] if ratios else (0.55, 0.92)))
    f1 = rng.uniform(0.12, 0.45) if not ratios or len(ratios) < 3 else ratios[2]
    size3 = min(size_target, len(pts))
    size2 = max(dim + 2, int(round(f2 * size3)))
    size1 = max(dim + 2, int(round(f1 * size3)))
    idx = {}
    for name, size in (("a3", size3), ("a2", min(size2, size3)), ("a1", min(size1, size3))):
        thr = vals[order[size - 1]]
        idx[name] = [pts[i] for i in order if vals[i] <= thr]
    a3 = LatticeSet(idx["a3"], dim)
    a2 = LatticeSet(idx["a2"], dim)
    a1 = LatticeSet(idx["a1"], dim)
    return ConvexTriple(a1, a2, a3, witness_regions=f"{desc} sizes={len(a1)},{len(a2)},{len(a3)}")


def _scan_sublevel(gauge, dim, center, size_target):
    """Enumerate a box guaranteed to contain the needed sublevel set."""
    for w in range(2, 24):
        lo = [center[c] // 2 - w for c in range(dim)]
        hi = [center[c] // 2 + w for c in range(dim)]
        if prod(h - l + 1 for l, h in zip(lo, hi)) > 400_000:
            raise _Degenerate
        pts, vals = [], []
        boundary_min = None
        for p in _grid(lo, hi):
            g = gauge(p)
            if any(p[c] in (lo[c], hi[c]) for c in range(dim)):
                boundary_min = g if boundary_min is None else min(boundary_min, g)
            else:
                pts.append(p)
                vals.append(g)
        if len(pts) < size_target:
            continue
        thr = sorted(vals)[size_target - 1]
        if boundary_min is not None and boundary_min <= thr:
            continue  # sublevel not closed inside the box; widen
        return pts, vals
    raise _Degenerate


def _grid(lo, hi):
    if not lo:
        yield ()
        return
    for c in range(lo[0], hi[0] + 1):
        for rest in _grid(lo[1:], hi[1:]):
            yield (c,) + rest


def _box_triple(rng: random.Random, dim: int, size_target: int) -> ConvexTriple:
    """Product boxes a1 < a2 < a3 with #a3 near size_target."""
    side = max(2, round(size_target ** (1.0 / dim)))
    for _ in range(30):
        sides = [max(2, side + rng.randint(-1, 1)) for _ in range(dim)]
        if abs(prod(sides) - size_target) <= max(4, size_target // 3):
            break
    else:
        sides = [side] * dim
    if any(s < 4 for s in sides):
        raise _Degenerate
    offs = [rng.randint(-3, 3) for _ in range(dim)]
    a3 = [tuple(range(offs[c], offs[c] + sides[c])) for c in range(dim)]
    caps = [(sides[c] - 2) // 2 for c in range(dim)]
    shrink2 = [min(rng.randint(1, 2), caps[c]) for c in range(dim)]
    shrink1 = [min(shrink2[c] + rng.randint(0, 2), caps[c]) for c in range(dim)]
    a2 = [tuple(range(offs[c] + shrink2[c], offs[c] + sides[c] - shrink2[c]))
          for c in range(dim)]
    a1 = [tuple(range(offs[c] + shrink1[c], offs[c] + sides[c] - shrink1[c]))
          for c in range(dim)]

    def box(ranges):
        pts = [()]
        for r in ranges:
            pts = [p + (c,) for p in pts for c in r]
        return LatticeSet(pts, dim)

    return ConvexTriple(
        box(a1), box(a2), box(a3),
        witness_regions=f"boxes sides={sides} shrink2={shrink2} shrink1={shrink1}",
    )


def generate_nested_sets(dim: int, size_target: int, seed: int) -> ConvexTriple:
    """Arbitrary nested integral sets (no convexity), for the 2.4 rule.

    Rule 2.4 holds for any nested finite integral sets, so its property
    suite deliberately samples beyond the convex generator's range.
    """
    rng = random.Random(seed)
    side = max(3, round((2.5 * size_target) ** (1.0 / dim)) + 1)
    box = [tuple(rng.randint(-2, side - 2) for _ in range(dim)) for _ in range(4 * size_target)]
    a3_pts = list({p for p in box})[: max(size_target, 3)]
    if len(a3_pts) < 3:
        a3_pts = [tuple(0 for _ in range(dim)), tuple(1 for _ in range(dim))]
    a3 = sorted(a3_pts)
    n3 = len(a3)
    k2 = max(2, int(round(rng.uniform(0.4, 0.9) * n3)))
    a2 = rng.sample(a3, k2)
    k1 = max(1, int(round(rng.uniform(0.3, 0.9) * k2)))
    a1 = rng.sample(a2, k1)
    return ConvexTriple(LatticeSet(a1, dim), LatticeSet(a2, dim), LatticeSet(a3, dim),
                        witness_regions="random nested subsets")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

_SUITE_DEFAULTS = {
    # lemma_id: (dim, size_lo, size_hi, ratios)
    "2.4": (3, 12, 44, None),
    "2.5": (3, 40, 170, (0.60, 0.92)),
    "2.6": (4, 4900, 9600, None),
    "2.7": (3, 50, 220, (0.50, 0.90)),
}

_INNER_DIM = {"2.5": 3, "2.6": 4, "2.7": 3}


def triple_for_rule(lemma_id: str, seed: int, dim: Optional[int] = None,
                    min_size: Optional[int] = None,
                    max_size: Optional[int] = None) -> ConvexTriple:
    """One deterministic draw from the rule's tuned instance distribution."""
    d_dim, lo, hi, ratios = _SUITE_DEFAULTS[lemma_id]
    dim = dim or d_dim
    lo = lo if min_size is None else min_size
    hi = hi if max_size is None else max_size
    if hi < lo:
        raise InvariantViolation("max_size < min_size")
    rng = random.Random(seed)
    size = rng.randint(lo, hi)
    if lemma_id == "2.4":
        return generate_nested_sets(dim, size, seed)
    return generate_nested_triple(dim, size, seed, ratios=ratios,
                                  inner_dim=_INNER_DIM.get(lemma_id))


def admissible_triple(lemma_id: str, master_seed: int, trial: int,
                      dim: Optional[int] = None,
                      min_size: Optional[int] = None,
                      max_size: Optional[int] = None,
                      max_draws: int = _MAX_DRAWS):
    """Rejection-sample until the rule's hypotheses hold.

    Returns (triple, report, draws). If no admissible triple appears within
    max_draws, returns the last draw with its failing report; callers decide
    whether inadmissibility is acceptable (it is, for vacuous size ranges).
    """
    base = derive_seed(master_seed, trial)
    triple = report = None
    for draw in range(max_draws):
        seed = derive_seed(base, draw)
        triple = triple_for_rule(lemma_id, seed, dim, min_size, max_size)
        report = hypothesis_report(lemma_id, triple)
        if report.admissible:
            return triple, report, draw + 1
    return triple, report, max_draws


@dataclass
class SuiteResult:
    lemma: str
    master_seed: int
    trials: int
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def admissible_count(self) -> int:
        return sum(1 for r in self.rows if r["admissible"])

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def to_json_body(self):
        return {
            "lemma": self.lemma,
            "master_seed": self.master_seed,
            "trials": self.trials,
            "admissible": self.admissible_count,
            "violations": self.violations,
            "rows": self.rows,
        }

    def csv_rows(self):
        header = ["lemma", "trial", "seed", "admissible", "lhs", "rhs", "satisfied", "n3", "draws"]
        yield header
        for r in self.rows:
            yield [r[k] for k in ("lemma", "trial", "seed", "admissible",
                                  "lhs", "rhs", "satisfied", "n3", "draws")]


def run_lemma_suite(lemma_id: str, trials: int, master_seed: int,
                    dim: Optional[int] = None,
                    min_size: Optional[int] = None,
                    max_size: Optional[int] = None,
                    max_draws: int = _MAX_DRAWS) -> SuiteResult:
    """Run `trials` deterministic instances of one rule.

    Rules 2.5/2.6/2.7 rejection-sample admissible instances; rule 2.4 uses
    every draw. A violated admissible instance is recorded as a finding with
    a replayable witness.
    """
    if lemma_id not in LEMMA_IDS:
        raise InvariantViolation(f"unknown rule id {lemma_id!r}")
    if trials < 1:
        raise InvariantViolation("trials must be >= 1")
    result = SuiteResult(lemma_id, master_seed, trials)
    for trial in range(trials):
        if lemma_id == "2.4":
            seed = derive_seed(derive_seed(master_seed, trial), 0)
            triple = triple_for_rule("2.4", seed, dim, min_size, max_size)
            report, draws = hypothesis_report("2.4", triple), 1
        else:
            triple, report, draws = admissible_triple(
                lemma_id, master_seed, trial, dim, min_size, max_size,
                max_draws=max_draws)
            seed = derive_seed(derive_seed(master_seed, trial), draws - 1)
        rep, outcome = verify_lemma(lemma_id, triple, trial_seed=seed)
        rhs = outcome.rhs_bound
        row = {
            "lemma": lemma_id,
            "trial": trial,
            "seed": seed,
            "admissible": report.admissible,
            "lhs": outcome.lhs_count,
            "rhs": str(rhs.numerator) if rhs.denominator == 1 else f"{rhs.numerator}/{rhs.denominator}",
            "satisfied": outcome.satisfied,
            "n3": len(triple.a3),
            "draws": draws,
        }
        result.rows.append(row)
        if report.admissible and not outcome.satisfied:
            result.violations.append({
                "lemma": lemma_id,
                "trial": trial,
                "seed": seed,
                "lhs": outcome.lhs_count,
                "rhs": row["rhs"],
                "triple": triple.to_json_dict(),
                "hypotheses": rep.to_json_dict(),
            })
    return result
