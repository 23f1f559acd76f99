import math
import random

import pytest

from twinrep.arithmetic import is_squarefree, jacobi, ramanujan_sum
from twinrep.expsum import (
    check_multiplicativity,
    evaluate_sigma,
    sigma_bruteforce,
    sigma_closed,
    sigma_complex_check,
)


def sigma_reference(q, p):
    """The defining sum, one Ramanujan term per residue class."""
    return 2 * sum(ramanujan_sum(q, p + n * n + n) for n in range(q))


PRIMES_100 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
              53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


class TestBruteForce:
    def test_sigma_one_is_two(self):
        for p in (2, 3, 5, 101):
            assert sigma_bruteforce(1, p) == 2

    def test_matches_reference_formula(self):
        for q in range(1, 80):
            for p in (2, 3, 5, 7, 13):
                assert sigma_bruteforce(q, p) == sigma_reference(q, p), (q, p)

    def test_sigma_two(self):
        # Direct evaluation: every term of the double sum at q = 2 is
        # e(-(kappa + r^2)/8) with kappa + r^2 == 4 mod 8, i.e. -1, and
        # there are four odd r <= 8, so Sigma(2) = -4 for odd p.  (The
        # often-quoted value 0 drops the -2q correction; the acceptance
        # suite records that discrepancy.)
        for p in (3, 5, 7, 11, 97):
            assert sigma_bruteforce(2, p) == -4
        assert sigma_bruteforce(2, 2) == 4  # kappa = 7: kappa + r^2 == 0 mod 8

    def test_even_doubling_identity(self):
        # Sigma(2m) = (Sigma(2)/2) * Sigma(m) for odd m: the factor is
        # -2 for odd p and +2 for p = 2
        for m in (1, 3, 5, 9, 15, 21, 35):
            for p in (2, 3, 5, 13):
                half_sigma2 = sigma_bruteforce(2, p) // 2
                assert sigma_bruteforce(2 * m, p) == half_sigma2 * sigma_bruteforce(m, p)

    def test_example_q3_p3(self):
        assert sigma_bruteforce(3, 3) == 2 * 3 * jacobi(-11, 3) == 6

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            sigma_bruteforce(0, 3)
        with pytest.raises(ValueError):
            sigma_bruteforce(3, 4)


class TestClosedForm:
    def test_base_cases(self):
        assert sigma_closed(2, 5) == 0
        assert sigma_closed(1, 5) == 2

    def test_vanishes_when_q_divides_kappa(self):
        # q | kappa makes the symbol 0
        assert sigma_closed(11, 3) == 0  # kappa = 11
        assert sigma_bruteforce(11, 3) == 0

    def test_identity_odd_squarefree(self):
        for q in range(1, 200, 2):
            if not is_squarefree(q):
                continue
            for p in PRIMES_100:
                assert sigma_bruteforce(q, p) == sigma_closed(q, p), (q, p)

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            sigma_closed(9, 5)

    def test_prime_q_case(self):
        # For odd prime q the symbol is the Legendre symbol
        for q in (3, 5, 7, 11, 13, 101):
            for p in (2, 3, 5, 19):
                assert sigma_closed(q, p) == 2 * q * jacobi((1 - 4 * p) % q, q)


class TestComplexCheck:
    def test_q1_and_q2(self):
        val, imag = sigma_complex_check(1, 5, return_imag=True)
        assert abs(val - 2.0) < 1e-6 and imag < 1e-6
        val2 = sigma_complex_check(2, 5)
        assert abs(val2 - (-4.0)) < 1e-6  # not 0: see TestBruteForce.test_sigma_two

    def test_example_q15_p5(self):
        assert abs(sigma_complex_check(15, 5) - sigma_bruteforce(15, 5)) < 1e-6

    def test_agreement_sweep(self):
        for q in list(range(1, 40)) + [64, 99, 128, 255]:
            for p in (2, 3, 31):
                val, imag = sigma_complex_check(q, p, return_imag=True)
                assert abs(val - sigma_bruteforce(q, p)) < 1e-6 * max(q, 1), (q, p)
                assert imag < 1e-6


class TestMultiplicativity:
    def test_examples(self):
        assert check_multiplicativity(3, 5, 3)
        assert check_multiplicativity(3, 7, 5)
        for q in (3, 9, 15, 77):
            assert check_multiplicativity(1, q, 7)  # Sigma(1) = 2 makes it 2S = 2S

    def test_random_coprime_odd_squarefree_pairs(self):
        rng = random.Random(20240817)
        done = 0
        while done < 60:
            q1 = rng.randrange(3, 100, 2)
            q2 = rng.randrange(3, 100, 2)
            if math.gcd(q1, q2) != 1 or not (is_squarefree(q1) and is_squarefree(q2)):
                continue
            assert check_multiplicativity(q1, q2, rng.choice(PRIMES_100))
            done += 1

    def test_rejects_even_or_common_factor(self):
        with pytest.raises(ValueError):
            check_multiplicativity(2, 3, 5)
        with pytest.raises(ValueError):
            check_multiplicativity(9, 15, 5)


class TestEvaluateSigma:
    def test_squarefree_cell(self):
        cell = evaluate_sigma(15, 5)
        assert cell.kappa == 19
        assert cell.brute_value == cell.closed_value == -30
        assert cell.match is True

    def test_non_squarefree_cell(self):
        cell = evaluate_sigma(4, 5)
        assert cell.closed_value is None and cell.match is None
        assert cell.brute_value == 0  # c_4 of an odd argument vanishes

    def test_even_squarefree_mismatch_is_visible(self):
        # the honest grid output: brute -12 vs claimed closed 0
        cell = evaluate_sigma(6, 3)
        assert cell.brute_value == -12 and cell.closed_value == 0
        assert cell.match is False
