import math

import numpy as np
import pytest

from twinrep.arithmetic import euler_phi, is_squarefree, jacobi, mobius
from twinrep.sieve import CoverageError
from twinrep.singular import (
    dirichlet_series_partial,
    singular_series,
    singular_series_many,
    tail_partial,
)


class TestSingularSeries:
    def test_hand_example_kappa11_cutoff3(self, table_1e5):
        # single factor: 1 - (1/2) * jacobi(1, 3) = 1/2
        sv = singular_series(11, 3, table_1e5)
        assert sv.value == 0.5
        assert sv.cutoff == 3
        assert sv.last_factor_deviation == 0.5

    def test_factor_at_prime_dividing_kappa_is_one(self, table_1e5):
        # kappa = 11: including ell = 11 must not change the value
        upto_7 = singular_series(11, 10, table_1e5).value
        upto_11 = singular_series(11, 11, table_1e5).value
        assert upto_11 == upto_7

    def test_factor_bounds(self, table_1e5):
        # every partial product stays positive; factors in [1-1/(l-1), 1+1/(l-1)]
        primes = [int(p) for p in table_1e5.primes() if 3 <= p <= 1000]
        for kappa in (7, 11, 19, 43):
            value = 1.0
            for ell in primes:
                factor = 1.0 - jacobi((-kappa) % ell, ell) / (ell - 1.0)
                assert 1 - 1 / (ell - 1) <= factor <= 1 + 1 / (ell - 1)
                value *= factor
                assert value > 0

    def test_deterministic(self, table_1e5):
        a = singular_series(11, 10**4, table_1e5)
        b = singular_series(11, 10**4, table_1e5)
        assert a.value == b.value  # bit-identical

    def test_cutoff_delta_small(self, table_1e6):
        v5 = singular_series(11, 10**5, table_1e6).value
        v6 = singular_series(11, 10**6, table_1e6).value
        assert abs(v6 - v5) < 0.05
        # frozen regression for the default truncation
        assert abs(v5 - 0.5099941416381794) < 1e-12

    def test_validation(self, table_1e5):
        with pytest.raises(ValueError):
            singular_series(12, 100, table_1e5)  # not 4p - 1
        with pytest.raises(ValueError):
            singular_series(15, 100, table_1e5)  # p = 4 not prime
        with pytest.raises(ValueError):
            singular_series(11, 2, table_1e5)
        with pytest.raises(CoverageError):
            singular_series(11, 10**6, table_1e5)


class TestBatchEvaluation:
    def test_matches_scalar_bitwise(self, table_1e5):
        kappas = np.array([4 * p - 1 for p in (2, 3, 5, 7, 11, 13, 97, 997)], dtype=np.int64)
        batch = singular_series_many(kappas, 10**4, table_1e5)
        for kappa, value in zip(kappas, batch):
            assert singular_series(int(kappa), 10**4, table_1e5).value == value


class TestTailPartial:
    def test_empty_range(self, table_1e5):
        assert tail_partial(11, 5, 6, table_1e5) == 0.0  # no odd squarefree q in (5, 6]

    def test_hand_example(self, table_1e5):
        # single term q = 5: mu(5)/phi(5) * jacobi(4, 5) = -1/4
        assert tail_partial(11, 3, 5, table_1e5) == -0.25

    def test_matches_termwise_oracle(self, table_1e5):
        for kappa in (7, 11, 19):
            expected = math.fsum(
                mobius(q) / euler_phi(q) * jacobi((-kappa) % q, q)
                for q in range(4, 301)
                if q % 2 == 1 and is_squarefree(q)
            )
            assert abs(tail_partial(kappa, 3, 300, table_1e5) - expected) < 1e-12

    def test_validation(self, table_1e5):
        with pytest.raises(ValueError):
            tail_partial(11, 5, 5, table_1e5)
        with pytest.raises(ValueError):
            tail_partial(11, 2, 50, table_1e5)

    def test_tail_small_relative_to_value(self, table_1e6):
        # computed property: the (1e3, 1e5] tail is small next to S itself
        for p in (2, 3, 5, 7, 11, 13):
            kappa = 4 * p - 1
            tail = tail_partial(kappa, 10**3, 10**5, table_1e6)
            value = singular_series(kappa, 10**5, table_1e6).value
            assert abs(tail) < 0.1 * max(abs(value), 0.1), (kappa, tail, value)


class TestProductSeriesConsistency:
    def test_truncations_converge_toward_each_other(self, table_1e6):
        # 20 sample kappa: the gap between the Euler product and the
        # Dirichlet sum shrinks from cutoff 1e2 to cutoff 1e5
        primes = [int(p) for p in table_1e6.primes()[:20]]
        for p in primes:
            kappa = 4 * p - 1
            gap_coarse = abs(
                singular_series(kappa, 100, table_1e6).value
                - dirichlet_series_partial(kappa, 100, table_1e6)
            )
            gap_fine = abs(
                singular_series(kappa, 10**5, table_1e6).value
                - dirichlet_series_partial(kappa, 10**5, table_1e6)
            )
            assert gap_fine < gap_coarse, (kappa, gap_coarse, gap_fine)
