"""Desk-scale numerics for the averaged prime-counting statements.

psi_p(x) is the von Mangoldt weighted count over the polynomial values
n^2 + n + p for n <= x.  variance_sum averages the squared residual
psi_p(x) - S(kappa) * x / 2 over primes p with squarefree kappa = 4p - 1
up to y; with y = x^2 this normalized average is expected to decay as
x grows.  The x/2 normalization of the main term is hard-coded; the
n^2 + k analogue's S * x normalization is available behind a flag for
comparison only.

All floating sums run in a fixed ascending order with compensated
accumulation (math.fsum for gathered blocks, a Kahan accumulator for
streamed squares), so every result is bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import von_mangoldt
from .represent import _scan_block
from .sieve import CoverageError, PrimeTable, TwinIndex, squarefree_mask
from .singular import singular_series_many

__all__ = [
    "KahanSum",
    "VarianceTerm",
    "VarianceReport",
    "DensityReport",
    "von_mangoldt_table",
    "psi",
    "variance_sum",
    "exception_count",
    "density_report",
]


class KahanSum:
    """Compensated streaming accumulator; deterministic for a fixed order."""

    __slots__ = ("value", "_c")

    def __init__(self) -> None:
        self.value = 0.0
        self._c = 0.0

    def add(self, v: float) -> None:
        y = v - self._c
        t = self.value + y
        self._c = (t - self.value) - y
        self.value = t


def von_mangoldt_table(limit: int) -> np.ndarray:
    """Array L with L[m] = von Mangoldt of m for 0 <= m <= limit.

    Prime logs are taken with math.log so table entries are identical
    to the scalar function's values.
    """
    if limit < 1:
        raise ValueError(f"von_mangoldt_table requires limit >= 1, got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    table = np.zeros(limit + 1, dtype=np.float64)
    for p in np.flatnonzero(flags):
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= limit:
            table[pk] = logp
            pk *= p
    return table


_INT63_MAX = (1 << 63) - 1


def psi(p: int, x: int, lam: np.ndarray | None = None) -> float:
    """Sum of von Mangoldt over n^2 + n + p for 1 <= n <= x.

    Terms are generated in ascending n and combined with math.fsum
    (exactly rounded).  Passing a precomputed von_mangoldt_table as
    ``lam`` avoids per-term prime-power detection; both paths produce
    identical floats.
    """
    if x < 0:
        raise ValueError(f"psi requires x >= 0, got {x}")
    if p < 2:
        raise ValueError(f"psi requires a prime p >= 2, got {p}")
    if x * x + x + p > _INT63_MAX:
        raise OverflowError(f"x^2 + x + p overflows 64-bit range for x={x}, p={p}")
    if x == 0:
        return 0.0
    if lam is not None:
        if x * x + x + p >= len(lam):
            raise CoverageError(f"von Mangoldt table too short for x={x}, p={p}")
        n = np.arange(1, x + 1, dtype=np.int64)
        return math.fsum((lam[n * n + n + p]).tolist())
    return math.fsum(von_mangoldt(n * n + n + p) for n in range(1, x + 1))


@dataclass(frozen=True)
class VarianceTerm:
    """One kappa's contribution to the averaged residual."""

    p: int
    kappa: int
    psi_value: float
    singular_value: float
    main_term: float
    residual: float

    @property
    def residual_sq(self) -> float:
        return self.residual * self.residual


@dataclass
class VarianceReport:
    """Left-hand side of the averaged bound at one (x, y), normalized.

    term_count is the number of primes p with 4p - 1 <= y squarefree;
    ratio = lhs / (y * x^2) is the quantity expected to decay in x.
    """

    x: int
    y: int
    cutoff: int
    term_count: int
    lhs: float
    ratio: float
    terms: list | None = None


def variance_sum(
    x: int,
    y: int,
    cutoff: int,
    table: PrimeTable,
    baier_zhao: bool = False,
    keep_terms: bool = False,
) -> VarianceReport:
    """Sum of (psi_p(x) - S(kappa) x/2)^2 over kappa = 4p - 1 <= y squarefree.

    The region requires y <= x^2.  Terms accumulate in ascending p with
    Kahan compensation.  With baier_zhao=True the main term is S * x
    instead of S * x / 2 (comparison normalization only).
    """
    if x < 1:
        raise ValueError(f"variance_sum requires x >= 1, got {x}")
    if y < 1:
        raise ValueError(f"variance_sum requires y >= 1, got {y}")
    if y > x * x:
        raise ValueError(f"region violation: y={y} exceeds x^2={x * x}; need y <= x^2")
    if cutoff < 3:
        raise ValueError(f"variance_sum requires cutoff >= 3, got {cutoff}")
    p_top = (y + 1) // 4
    needed = max(cutoff, p_top, math.isqrt(4 * p_top) if p_top else 0)
    if needed > table.limit:
        raise CoverageError(f"variance_sum needs table limit >= {needed}, have {table.limit}")

    primes = table.primes()
    ps = primes[4 * primes - 1 <= y]
    if len(ps):
        kappas = 4 * ps - 1
        ps = ps[squarefree_mask(kappas, table)]
    acc = KahanSum()
    terms: list[VarianceTerm] | None = [] if keep_terms else None
    if len(ps):
        kappas = 4 * ps - 1
        svals = singular_series_many(kappas, cutoff, table)
        lam = von_mangoldt_table(x * x + x + int(ps[-1]))
        n = np.arange(1, x + 1, dtype=np.int64)
        nsq = n * n + n
        scale = float(x) if baier_zhao else x / 2.0
        for p, kappa, s in zip(ps, kappas, svals):
            psi_p = math.fsum((lam[nsq + int(p)]).tolist())
            main = s * scale
            residual = psi_p - main
            acc.add(residual * residual)
            if terms is not None:
                terms.append(
                    VarianceTerm(
                        p=int(p), kappa=int(kappa), psi_value=psi_p,
                        singular_value=float(s), main_term=main, residual=residual,
                    )
                )
    lhs = acc.value
    return VarianceReport(
        x=x, y=y, cutoff=cutoff, term_count=int(len(ps)),
        lhs=lhs, ratio=lhs / (float(y) * x * x), terms=terms,
    )


def exception_count(y: int, x: int, table: PrimeTable, return_exceptions: bool = False):
    """N(y): primes p <= y/4 with squarefree 4p - 1 but no prime value.

    The n-range is {n >= 1 : 2n + 1 <= x}.  An empty range (x < 3)
    makes the nonexistence vacuous, so every censused p counts.
    """
    if y < 1:
        raise ValueError(f"exception_count requires y >= 1, got {y}")
    if x < 1:
        raise ValueError(f"exception_count requires x >= 1, got {x}")
    p_top = y // 4
    n_top = (x - 1) // 2
    needed = max(p_top, n_top * n_top + n_top + p_top)
    if needed > table.limit:
        raise CoverageError(f"exception_count needs table limit >= {needed}, have {table.limit}")
    primes = table.primes()
    ps = primes[primes <= p_top]
    if len(ps) == 0:
        return (0, []) if return_exceptions else 0
    ps = ps[squarefree_mask(4 * ps - 1, table)]
    exceptions = []
    for p in ps:
        p = int(p)
        for n in range(1, n_top + 1):
            if table.is_prime(n * n + n + p):
                break
        else:
            exceptions.append(p)
    if return_exceptions:
        return len(exceptions), exceptions
    return len(exceptions)


@dataclass
class DensityReport:
    """Exact representability census over the primes q <= x.

    Exceptions are listed explicitly per mode; q = 2 and q = 3 are
    always exceptions since they admit no n >= 1.
    """

    x: int
    total_primes: int
    representable_any_prime: int
    representable_twin: int
    exceptions_any_prime: list
    exceptions_twin: list


def density_report(x: int, table: PrimeTable, twins: TwinIndex) -> DensityReport:
    """Decide representability of every prime q <= x in both modes."""
    if x < 2:
        raise ValueError(f"density_report requires x >= 2, got {x}")
    if x > table.limit:
        raise CoverageError(f"density_report at {x} exceeds table limit {table.limit}")
    if x - 2 > twins.coverage:
        raise CoverageError(f"density_report at {x} needs twin coverage {x - 2}")
    primes = table.primes()
    small = [int(q) for q in primes[primes < 5]]
    qs = primes[(primes >= 5) & (primes <= x)]
    total = len(small) + len(qs)
    _, _, found_any = _scan_block(qs, table.odd_bits)
    _, _, found_twin = _scan_block(qs, twins.odd_mask)
    return DensityReport(
        x=x,
        total_primes=int(total),
        representable_any_prime=int(np.count_nonzero(found_any)),
        representable_twin=int(np.count_nonzero(found_twin)),
        exceptions_any_prime=small + [int(q) for q in qs[~found_any]],
        exceptions_twin=small + [int(q) for q in qs[~found_twin]],
    )
