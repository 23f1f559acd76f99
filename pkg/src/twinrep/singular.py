"""Truncated singular-series evaluation.

S(kappa) is the Euler product over odd primes ell of
1 - (symbol of -kappa over ell) / (ell - 1), the arithmetic constant
attached to the polynomial n^2 + n + p with kappa = 4p - 1.  The
product converges only conditionally, so the truncation point is a
mandatory, reported parameter and factors are always multiplied in
ascending ell.  The Dirichlet form of the same constant, the sum over
odd squarefree q of mu(q)/phi(q) * (symbol of (1-4p) over q), is
provided as a partial tail so the two truncations can be compared;
their gap at a finite cutoff is reported rather than asserted away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arithmetic import is_prime_64, jacobi
from .sieve import CoverageError, PrimeTable, mu_phi_tables

# the tables are read-only here; caching spares repeated rebuilds when a
# report sweeps many kappa at one truncation
_mu_phi_cached = lru_cache(maxsize=4)(mu_phi_tables)

__all__ = [
    "SingularValue",
    "singular_series",
    "singular_series_many",
    "tail_partial",
    "dirichlet_series_partial",
]


@dataclass(frozen=True)
class SingularValue:
    """Truncated Euler product for one kappa.

    cutoff holds the largest odd prime actually included, and
    last_factor_deviation = |last factor - 1| is the convergence
    diagnostic: it shrinks like 1/cutoff.
    """

    kappa: int
    cutoff: int
    value: float
    last_factor_deviation: float


def _require_kappa(kappa: int) -> None:
    if kappa % 4 != 3 or not is_prime_64((kappa + 1) // 4):
        raise ValueError(f"kappa must be 4p - 1 for a prime p, got {kappa}")


def singular_series(kappa: int, cutoff: int, table: PrimeTable) -> SingularValue:
    """Product over odd primes ell <= cutoff, left to right in ascending ell.

    Each factor lies in [1 - 1/(ell-1), 1 + 1/(ell-1)] and factors at
    ell dividing kappa are exactly 1, so the product never vanishes.
    Deterministic: identical inputs give bit-identical outputs.
    """
    _require_kappa(kappa)
    if cutoff < 3:
        raise ValueError(f"singular_series needs cutoff >= 3, got {cutoff}")
    if cutoff > table.limit:
        raise CoverageError(f"cutoff {cutoff} exceeds table limit {table.limit}")
    value = 1.0
    last_factor = 1.0
    last_prime = 3
    primes = table.primes()
    for ell in primes[(primes >= 3) & (primes <= cutoff)]:
        ell = int(ell)
        factor = 1.0 - jacobi((-kappa) % ell, ell) / (ell - 1.0)
        value *= factor
        last_factor = factor
        last_prime = ell
    return SingularValue(
        kappa=kappa,
        cutoff=last_prime,
        value=value,
        last_factor_deviation=abs(last_factor - 1.0),
    )


def singular_series_many(kappas: np.ndarray, cutoff: int, table: PrimeTable) -> np.ndarray:
    """Vectorized truncated product for many kappa at once.

    Streams one odd prime ell at a time: a quadratic-residue lookup
    table mod ell turns the symbol into a gather, and every kappa's
    running product sees the factors in the same ascending-ell order as
    the scalar path, so the two agree bit for bit.
    """
    kappas = np.asarray(kappas, dtype=np.int64)
    if cutoff < 3:
        raise ValueError(f"singular_series_many needs cutoff >= 3, got {cutoff}")
    if cutoff > table.limit:
        raise CoverageError(f"cutoff {cutoff} exceeds table limit {table.limit}")
    values = np.ones(len(kappas), dtype=np.float64)
    primes = table.primes()
    for ell in primes[(primes >= 3) & (primes <= cutoff)]:
        ell = int(ell)
        chi = _legendre_table(ell)
        values *= 1.0 - chi[(-kappas) % ell] / (ell - 1.0)
    return values


def _legendre_table(ell: int) -> np.ndarray:
    """chi[a] = Legendre symbol (a / ell) for an odd prime ell, as int8."""
    r = np.arange(ell, dtype=np.int64)
    chi = np.full(ell, -1, dtype=np.int8)
    chi[(r * r) % ell] = 1
    chi[0] = 0
    return chi


def _series_terms(kappa: int, lo: int, hi: int, mu: np.ndarray, phi: np.ndarray) -> list[float]:
    """Dirichlet terms mu(q)/phi(q) * symbol for odd squarefree q in (lo, hi]."""
    terms = []
    for q in range(lo + 1, hi + 1):
        if q % 2 == 0 or mu[q] == 0:
            continue
        terms.append(int(mu[q]) / int(phi[q]) * jacobi((-kappa) % q, q))
    return terms


def tail_partial(kappa: int, Q1: int, Q2: int, table: PrimeTable) -> float:
    """Partial Dirichlet tail: sum over odd squarefree q with Q1 < q <= Q2.

    Terms are mu(q)/phi(q) times the symbol of (1 - 4p) == -kappa mod q,
    generated in ascending q and combined with exactly-rounded
    compensated summation (math.fsum); conditional convergence makes
    the order part of the definition.
    """
    _require_kappa(kappa)
    if not 3 <= Q1 < Q2:
        raise ValueError(f"tail_partial needs 3 <= Q1 < Q2, got Q1={Q1}, Q2={Q2}")
    if Q2 > table.limit:
        raise CoverageError(f"Q2 {Q2} exceeds table limit {table.limit}")
    mu, phi = _mu_phi_cached(Q2)
    return math.fsum(_series_terms(kappa, Q1, Q2, mu, phi))


def dirichlet_series_partial(kappa: int, upto: int, table: PrimeTable) -> float:
    """The Dirichlet form truncated at q <= upto, starting from the q = 1 term."""
    _require_kappa(kappa)
    if upto < 1:
        raise ValueError(f"dirichlet_series_partial needs upto >= 1, got {upto}")
    if upto > table.limit:
        raise CoverageError(f"upto {upto} exceeds table limit {table.limit}")
    if upto == 1:
        return 1.0
    mu, phi = _mu_phi_cached(upto)
    return math.fsum([1.0] + _series_terms(kappa, 1, upto, mu, phi))
