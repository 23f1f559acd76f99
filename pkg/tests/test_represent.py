import math
import random

import numpy as np
import pytest

from twinrep.represent import (
    Mode,
    Representation,
    ShardSummary,
    find_any_prime_representation,
    find_min_n_twin_representation,
    find_min_twin_representation,
    growth_series,
    merge_summaries,
    n_max,
    stats_lemma_checks,
    summary_stats,
    verify_range,
)
from twinrep.sieve import CoverageError


def exhaustive_min_twin(q, twins):
    """Oracle: scan every n ascending, collect all twin hits, take min p."""
    hits = []
    for n in range(1, n_max(q) + 1):
        p = q - n * (n + 1)
        if p >= 3 and twins.is_twin(p):
            hits.append((p, n))
    return min(hits) if hits else None


class TestNMax:
    def test_examples(self):
        assert n_max(5) == 1  # 1*2 = 2 <= 2
        assert n_max(13) == 2  # 2*3 = 6 <= 10 < 12

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            n_max(4)

    def test_definition_and_sqrt_bound(self):
        for q in range(5, 100_000, 97):
            n = n_max(q)
            assert n * (n + 1) <= q - 3 < (n + 1) * (n + 2)
            assert n <= math.isqrt(q)


class TestRepresentation:
    def test_round_trip_enforced(self):
        Representation(q=13, p=7, n=2, mode=Mode.TWIN_MIN)
        with pytest.raises(ValueError):
            Representation(q=14, p=7, n=2, mode=Mode.TWIN_MIN)
        with pytest.raises(ValueError):
            Representation(q=13, p=11, n=0, mode=Mode.TWIN_MIN)

    def test_p_determines_n(self):
        # injectivity of n(n+1): same q and p force the same n
        r = Representation(q=13, p=7, n=2, mode=Mode.TWIN_MIN)
        assert r.q - r.p == r.n * (r.n + 1)


class TestMinimalTwin:
    def test_known_values(self, twins_1e6):
        assert (find_min_twin_representation(5, twins_1e6).p,
                find_min_twin_representation(5, twins_1e6).n) == (3, 1)
        r13 = find_min_twin_representation(13, twins_1e6)
        assert (r13.p, r13.n) == (7, 2)  # candidates 11 and 7, minimal is 7
        r11 = find_min_twin_representation(11, twins_1e6)
        assert (r11.p, r11.n) == (5, 2)  # n=1 gives 9, composite

    def test_small_q(self, twins_1e6):
        assert find_min_twin_representation(3, twins_1e6) is None
        assert find_min_twin_representation(2, twins_1e6) is None

    def test_minimal_p_family(self, twins_1e6):
        # q = n^2 + n + 3 prime has p_q = 3, the smallest possible twin
        for n in (7, 10, 22):
            q = n * n + n + 3
            r = find_min_twin_representation(q, twins_1e6)
            assert (r.p, r.n) == (3, n), q

    def test_against_exhaustive_scan(self, table_1e6, twins_1e6):
        rng = random.Random(99)
        primes = table_1e6.primes()
        qs = [int(q) for q in rng.sample(list(primes[(primes >= 5) & (primes <= 10**6)]), 1000)]
        for q in qs:
            got = find_min_twin_representation(q, twins_1e6)
            expected = exhaustive_min_twin(q, twins_1e6)
            assert expected is not None
            assert (got.p, got.n) == expected, q

    def test_coverage_error(self, twins_1e6):
        with pytest.raises(CoverageError):
            find_min_twin_representation(twins_1e6.coverage + 10, twins_1e6)

    def test_min_n_variant(self, twins_1e6):
        # q = 997: minimal-p map gives (5, 31); smallest-n map gives (617, 19)
        r = find_min_twin_representation(997, twins_1e6)
        assert (r.p, r.n) == (5, 31)
        r = find_min_n_twin_representation(997, twins_1e6)
        assert (r.p, r.n) == (617, 19)
        assert r.mode == Mode.TWIN_MIN_N


class TestAnyPrime:
    def test_examples(self, table_1e6):
        assert find_any_prime_representation(5, table_1e6).p == 3
        assert find_any_prime_representation(3, table_1e6) is None
        # q = 9 (odd-integer mode): minimal prime is 3 via n = 2
        r9 = find_any_prime_representation(9, table_1e6)
        assert (r9.p, r9.n) == (3, 2)

    def test_minimality(self, table_1e6):
        rng = random.Random(5)
        for _ in range(200):
            q = rng.randrange(5, 10**5) | 1
            got = find_any_prime_representation(q, table_1e6)
            best = None
            for n in range(1, n_max(q) + 1):
                p = q - n * (n + 1)
                if table_1e6.is_prime(p):
                    best = min(best, (p, n)) if best else (p, n)
            assert (got is None) == (best is None)
            if got:
                assert (got.p, got.n) == best


class TestVerifyRange:
    def test_twin_mode_no_failures(self, table_1e6, twins_1e6):
        report = verify_range(5, 10**4, Mode.TWIN_MIN, twins_1e6, table_1e6)
        assert report.failures == []
        assert report.checked == 1227  # pi(1e4) - 2
        assert report.checked == len(report.qs)

    def test_matches_scalar_path(self, table_1e6, twins_1e6):
        report = verify_range(5, 3000, Mode.TWIN_MIN, twins_1e6, table_1e6)
        primes = [int(p) for p in table_1e6.primes() if 5 <= p <= 3000]
        assert list(report.qs) == primes
        for q, p, n in zip(report.qs, report.ps, report.ns):
            r = find_min_twin_representation(int(q), twins_1e6)
            assert (r.p, r.n) == (int(p), int(n))

    def test_prime_and_sun_modes(self, table_1e6, twins_1e6):
        assert verify_range(5, 10**4, Mode.ANY_PRIME, None, table_1e6).failures == []
        sun = verify_range(5, 10**4, Mode.SUN_ODD, None, table_1e6)
        assert sun.failures == []
        assert sun.checked == len(range(5, 10**4 + 1, 2))

    def test_small_q_handling(self, table_1e6, twins_1e6):
        skip = verify_range(2, 4, Mode.TWIN_MIN, twins_1e6, table_1e6)
        assert skip.checked == 0 and skip.failures == []
        counted = verify_range(2, 4, Mode.TWIN_MIN, twins_1e6, table_1e6, include_small=True)
        assert counted.checked == 2 and counted.failures == [2, 3]

    def test_block_size_invariance(self, table_1e6, twins_1e6):
        a = verify_range(5, 20_000, Mode.TWIN_MIN, twins_1e6, table_1e6)
        b = verify_range(5, 20_000, Mode.TWIN_MIN, twins_1e6, table_1e6, block_size=211)
        assert a.stats == b.stats
        assert np.array_equal(a.ps, b.ps) and np.array_equal(a.ns, b.ns)

    def test_sharding_determinism(self, table_1e6, twins_1e6):
        whole = verify_range(5, 50_000, Mode.TWIN_MIN, twins_1e6, table_1e6)
        rng = random.Random(3)
        cuts = sorted(rng.sample(range(6, 50_000), 5))
        bounds = list(zip([5] + cuts, [c - 1 for c in cuts] + [50_000]))
        parts = [
            verify_range(a, b, Mode.TWIN_MIN, twins_1e6, table_1e6).summary
            for a, b in bounds
        ]
        merged = merge_summaries(parts)
        assert summary_stats(merged) == whole.stats
        assert merged.checked == whole.checked
        assert merged.failures == whole.failures

    def test_coverage_errors(self, table_1e5, twins_1e6, table_1e6):
        with pytest.raises(CoverageError):
            verify_range(5, 10**6, Mode.TWIN_MIN, twins_1e6, table_1e5)
        from twinrep.sieve import build_prime_table, build_twin_index

        small_twins = build_twin_index(build_prime_table(50_000))
        with pytest.raises(CoverageError):
            verify_range(5, 10**5, Mode.TWIN_MIN, small_twins, table_1e5)

    def test_summary_json_round_trip(self, table_1e6, twins_1e6):
        report = verify_range(5, 30_000, Mode.TWIN_MIN, twins_1e6, table_1e6)
        clone = ShardSummary.from_json_dict(report.summary.to_json_dict())
        assert summary_stats(clone) == report.stats


class TestLemmaChecks:
    def test_counts_on_1e4(self, table_1e6, twins_1e6):
        # frozen from an exhaustive run: the two order lemmas never
        # fail (they are algebraic), while the claimed dichotomy
        # 2p >= q or 2n^2 >= q has eight small-q exceptions
        report = verify_range(5, 10**4, Mode.TWIN_MIN, twins_1e6, table_1e6)
        checks = stats_lemma_checks(report.representations())
        assert checks == {
            "same_n_order_violations": 0,
            "sqrt_bound_violations": 0,
            "dichotomy_violations": 8,
        }
        assert report.stats["dichotomy_examples"] == [11, 19, 293, 307, 587, 727, 2909, 3593]

    def test_scalar_equals_vectorized(self, table_1e6, twins_1e6):
        report = verify_range(5, 10**5, Mode.TWIN_MIN, twins_1e6, table_1e6)
        checks = stats_lemma_checks(report.representations())
        assert checks["same_n_order_violations"] == report.stats["same_n_order_violations"]
        assert checks["sqrt_bound_violations"] == report.stats["sqrt_bound_violations"]
        assert checks["dichotomy_violations"] == report.stats["dichotomy_violations"]

    def test_dichotomy_counterexample_q11(self, twins_1e6):
        # q = 11 -> (p, n) = (5, 2): 2*5 < 11 and 2*4 < 11, yet the
        # exact inequality 2n(n+1) = 12 > 11 does hold
        r = find_min_twin_representation(11, twins_1e6)
        assert 2 * r.p < r.q and 2 * r.n * r.n < r.q
        assert 2 * r.n * (r.n + 1) > r.q

    def test_exact_dichotomy_always_holds(self, table_1e6, twins_1e6):
        # the provable form: 2p > q or 2n(n+1) > q, for every representation
        report = verify_range(5, 10**5, Mode.TWIN_MIN, twins_1e6, table_1e6)
        ok = (2 * report.ps > report.qs) | (2 * report.ns * (report.ns + 1) > report.qs)
        assert bool(ok.all())

    def test_single_representation(self, twins_1e6):
        r = find_min_twin_representation(13, twins_1e6)
        checks = stats_lemma_checks([r])
        assert checks["same_n_order_violations"] == 0
        assert checks["sqrt_bound_violations"] == 0

    def test_input_validation(self, twins_1e6):
        r1 = find_min_twin_representation(13, twins_1e6)
        r2 = find_min_twin_representation(11, twins_1e6)
        with pytest.raises(ValueError):
            stats_lemma_checks([r1, r2])  # unsorted
        bad = Representation(q=9, p=3, n=2, mode=Mode.ANY_PRIME)
        with pytest.raises(ValueError):
            stats_lemma_checks([bad])


class TestGrowthSeries:
    def test_single_bucket_is_global(self, table_1e6, twins_1e6):
        report = verify_range(5, 10**4, Mode.TWIN_MIN, twins_1e6, table_1e6)
        reps = report.representations()
        rows = growth_series(reps, bucket=10**6)
        assert len(rows) == 1
        row = rows[0]
        assert row.count == len(reps)
        assert row.max_n == max(r.n for r in reps)
        assert row.min_p == min(r.p for r in reps)

    def test_frozen_extrema_to_1e6(self, table_1e6, twins_1e6):
        # measured, not assumed: the minimal-p map dips far below the
        # cube root (p = 3 whenever q - 3 = n(n+1)), so the global
        # minimum ratio over [5, 1e6] is 0.0300500767... at q = 995009
        report = verify_range(5, 10**6, Mode.TWIN_MIN, twins_1e6, table_1e6)
        rows = growth_series(report.representations(), bucket=10**7)
        assert rows[0].min_p == 3
        assert abs(rows[0].min_p_over_cbrt_q - 0.030050076714553987) < 1e-12
        assert report.stats["min_p_over_cbrt_q_at"] == 995009
        assert abs(rows[0].max_n_over_log_q - 72.3152315298092) < 1e-10

    def test_rejects_bad_bucket(self, twins_1e6):
        r = find_min_twin_representation(13, twins_1e6)
        with pytest.raises(ValueError):
            growth_series([r], bucket=0)
        with pytest.raises(ValueError):
            growth_series([], bucket=10)
