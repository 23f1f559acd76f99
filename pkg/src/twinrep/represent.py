"""Representation search q = p + n^2 + n and range verification.

The central map sends a prime q >= 5 to its minimal twin-prime
representation: p = q - n*(n+1) strictly increases as n decreases, so
scanning n downward from n_max(q) and stopping at the first twin hit
yields the smallest twin prime p_q representing q (and p_q determines
n_q uniquely).  The same descending scan with a plain primality test
gives the any-prime and odd-integer (Sun) variants.

verify_range processes a block of q values with vectorized mask
lookups; its per-shard summaries merge associatively in range order,
so sharded runs reproduce single-pass output exactly.

A smallest-n variant of the twin scan is also provided: claimed
growth observations about p_q and n_q (p_q exceeding the cube root of
q, n_q growing roughly like log q) match that variant, not the
minimal-p map, for which the package's own runs produce explicit
counterexamples (q = 59 has p_q = 3).  See tests for the numbers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .sieve import CoverageError, PrimeTable, TwinIndex

__all__ = [
    "Mode",
    "Representation",
    "VerificationReport",
    "ShardSummary",
    "GrowthRow",
    "n_max",
    "find_min_twin_representation",
    "find_min_n_twin_representation",
    "find_any_prime_representation",
    "verify_range",
    "merge_summaries",
    "summary_stats",
    "stats_lemma_checks",
    "growth_series",
    "growth_rows_from_arrays",
]


class Mode(str, enum.Enum):
    """Which representation condition a scan enforces."""

    TWIN_MIN = "twin"  # minimal twin prime p, prime q
    ANY_PRIME = "prime"  # minimal prime p, prime q
    SUN_ODD = "sun"  # minimal prime p, odd q > 3
    TWIN_MIN_N = "twin-min-n"  # diagnostic: smallest n (largest twin p)


@dataclass(frozen=True)
class Representation:
    """A verified triple q = p + n^2 + n."""

    q: int
    p: int
    n: int
    mode: Mode

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"representation needs n >= 1, got n={self.n}")
        if self.p < 2:
            raise ValueError(f"representation needs p >= 2, got p={self.p}")
        if self.q != self.p + self.n * self.n + self.n:
            raise ValueError(f"{self.q} != {self.p} + {self.n}^2 + {self.n}")


def n_max(q: int) -> int:
    """Largest n with n*(n+1) <= q - 3 (3 being the smallest admissible p).

    Exact: n(n+1) <= m iff (2n+1)^2 <= 4m+1.
    """
    if q < 5:
        raise ValueError(f"n_max requires q >= 5, got {q}")
    return (math.isqrt(4 * (q - 3) + 1) - 1) // 2


def _n_max_vector(qs: np.ndarray) -> np.ndarray:
    v = 4 * (qs - 3) + 1
    r = np.sqrt(v.astype(np.float64)).astype(np.int64)
    r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    r = np.where(r * r > v, r - 1, r)
    return (r - 1) >> 1


def find_min_twin_representation(q: int, twins: TwinIndex) -> Representation | None:
    """Minimal twin-prime representation of q, or None when no n works.

    Scans n from n_max(q) down to 1; the first n whose p = q - n*(n+1)
    is a twin prime gives the minimal p.  Insufficient index coverage
    is a hard error, never a silent None.
    """
    if q < 5:
        return None
    if q - 2 > twins.coverage:
        raise CoverageError(
            f"q={q} needs twin membership up to {q - 2}, coverage is {twins.coverage}"
        )
    if q % 2 == 0:
        return None  # p = q - n(n+1) would be even, and no twin prime is even
    for n in range(n_max(q), 0, -1):
        p = q - n * (n + 1)
        if twins.odd_mask[p >> 1]:
            return Representation(q=q, p=p, n=n, mode=Mode.TWIN_MIN)
    return None


def find_min_n_twin_representation(q: int, twins: TwinIndex) -> Representation | None:
    """Smallest-n twin representation: scans n upward, so p is maximal.

    This is the convention under which the claimed growth bounds on
    p_q and n_q hold; it is a diagnostic companion to the minimal-p
    map, not one of the verification modes.
    """
    if q < 5:
        return None
    if q - 2 > twins.coverage:
        raise CoverageError(
            f"q={q} needs twin membership up to {q - 2}, coverage is {twins.coverage}"
        )
    if q % 2 == 0:
        return None
    for n in range(1, n_max(q) + 1):
        p = q - n * (n + 1)
        if twins.odd_mask[p >> 1]:
            return Representation(q=q, p=p, n=n, mode=Mode.TWIN_MIN_N)
    return None


def find_any_prime_representation(q: int, table: PrimeTable) -> Representation | None:
    """Minimal prime representation of q under the same descending scan."""
    if q < 5:
        return None
    if q > table.limit:
        raise CoverageError(f"q={q} exceeds table limit {table.limit}")
    for n in range(n_max(q), 0, -1):
        p = q - n * (n + 1)
        if table.is_prime(p):
            return Representation(q=q, p=p, n=n, mode=Mode.ANY_PRIME)
    return None


def _scan_block(qs: np.ndarray, odd_mask: np.ndarray, ascending: bool = False):
    """Vectorized representation scan over a block of odd q >= 5.

    odd_mask[m >> 1] must answer membership (twin or prime) for every
    odd m up to max(qs) - 2.  Returns (p, n, found) arrays; unfound
    entries are zero.
    """
    count = len(qs)
    p_out = np.zeros(count, dtype=np.int64)
    n_out = np.zeros(count, dtype=np.int64)
    found = np.zeros(count, dtype=bool)
    if count == 0:
        return p_out, n_out, found
    nmax = _n_max_vector(qs)
    idx = np.flatnonzero(nmax >= 1)
    cur = np.ones(len(idx), dtype=np.int64) if ascending else nmax[idx].copy()
    while idx.size:
        p = qs[idx] - cur * (cur + 1)
        hit = odd_mask[p >> 1]
        if hit.any():
            h = idx[hit]
            p_out[h] = p[hit]
            n_out[h] = cur[hit]
            found[h] = True
        keep = ~hit
        idx = idx[keep]
        cur = cur[keep] + (1 if ascending else -1)
        alive = cur <= nmax[idx] if ascending else cur >= 1
        if not alive.all():
            idx = idx[alive]
            cur = cur[alive]
    return p_out, n_out, found


@dataclass
class ShardSummary:
    """Order-dependent mergeable digest of one contiguous q-range.

    Merging left to right over adjacent shards reproduces the digest of
    the combined range exactly, which is what makes sharded and
    checkpoint-resumed runs equal a single pass.
    """

    lo: int
    hi: int
    checked: int = 0
    represented: int = 0
    failures: list = field(default_factory=list)
    min_ratio: float | None = None  # min p / cbrt(q)
    min_ratio_q: int | None = None
    max_nlog: float | None = None  # max n / log(q)
    max_nlog_q: int | None = None
    dichotomy_violations: int = 0
    dichotomy_examples: list = field(default_factory=list)
    sqrt_bound_violations: int = 0
    same_n_order_violations: int = 0
    same_n_first: dict = field(default_factory=dict)  # n -> first p in shard
    same_n_last: dict = field(default_factory=dict)  # n -> last p in shard

    _EXAMPLE_CAP = 32

    def absorb_block(self, qs, ps, ns, found) -> None:
        """Fold one scanned block (qs ascending, following prior blocks)."""
        self.checked += int(len(qs))
        if not found.all():
            self.failures.extend(int(q) for q in qs[~found])
        qf, pf, nf = qs[found], ps[found], ns[found]
        self.represented += int(len(qf))
        if len(qf) == 0:
            return
        ratio = pf / np.cbrt(qf.astype(np.float64))
        i = int(np.flatnonzero(ratio == ratio.min())[0])  # smallest q on ties
        if self.min_ratio is None or (float(ratio[i]), int(qf[i])) < (self.min_ratio, self.min_ratio_q):
            self.min_ratio, self.min_ratio_q = float(ratio[i]), int(qf[i])
        nlog = nf / np.log(qf.astype(np.float64))
        j = int(np.flatnonzero(nlog == nlog.max())[0])
        if self.max_nlog is None or (-float(nlog[j]), int(qf[j])) < (-self.max_nlog, self.max_nlog_q):
            self.max_nlog, self.max_nlog_q = float(nlog[j]), int(qf[j])
        dich = (2 * pf < qf) & (2 * nf * nf < qf)
        self.dichotomy_violations += int(np.count_nonzero(dich))
        for q in qf[dich][: self._EXAMPLE_CAP]:
            if len(self.dichotomy_examples) < self._EXAMPLE_CAP:
                self.dichotomy_examples.append(int(q))
        self.sqrt_bound_violations += int(np.count_nonzero(nf * nf > qf))
        # adjacent-pair monotonicity of p within each n class, q ascending
        order = np.argsort(nf, kind="stable")
        ns_s, ps_s = nf[order], pf[order]
        same = ns_s[1:] == ns_s[:-1]
        self.same_n_order_violations += int(np.count_nonzero(same & (ps_s[1:] <= ps_s[:-1])))
        starts = np.flatnonzero(np.concatenate(([True], ~same)))
        for k in starts:
            n_val, first_p = int(ns_s[k]), int(ps_s[k])
            prev = self.same_n_last.get(n_val)
            if prev is not None and prev >= first_p:
                self.same_n_order_violations += 1
            if n_val not in self.same_n_first:
                self.same_n_first[n_val] = first_p
        ends = np.concatenate((starts[1:] - 1, [len(ns_s) - 1]))
        for k in ends:
            self.same_n_last[int(ns_s[k])] = int(ps_s[k])

    def merge(self, nxt: "ShardSummary") -> None:
        """Append the digest of the range immediately after this one."""
        if nxt.lo < self.hi:
            raise ValueError(f"shard order violated: {self.lo}:{self.hi} then {nxt.lo}:{nxt.hi}")
        self.hi = nxt.hi
        self.checked += nxt.checked
        self.represented += nxt.represented
        self.failures.extend(nxt.failures)
        if nxt.min_ratio is not None:
            if self.min_ratio is None or (nxt.min_ratio, nxt.min_ratio_q) < (self.min_ratio, self.min_ratio_q):
                self.min_ratio, self.min_ratio_q = nxt.min_ratio, nxt.min_ratio_q
        if nxt.max_nlog is not None:
            if self.max_nlog is None or (-nxt.max_nlog, nxt.max_nlog_q) < (-self.max_nlog, self.max_nlog_q):
                self.max_nlog, self.max_nlog_q = nxt.max_nlog, nxt.max_nlog_q
        self.dichotomy_violations += nxt.dichotomy_violations
        for q in nxt.dichotomy_examples:
            if len(self.dichotomy_examples) < self._EXAMPLE_CAP:
                self.dichotomy_examples.append(q)
        self.sqrt_bound_violations += nxt.sqrt_bound_violations
        self.same_n_order_violations += nxt.same_n_order_violations
        for n_val, first_p in nxt.same_n_first.items():
            prev = self.same_n_last.get(n_val)
            if prev is not None and prev >= first_p:
                self.same_n_order_violations += 1
            if n_val not in self.same_n_first:
                self.same_n_first[n_val] = first_p
        self.same_n_last.update(nxt.same_n_last)

    def to_json_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "checked": self.checked,
            "represented": self.represented,
            "failures": self.failures,
            "min_ratio": self.min_ratio,
            "min_ratio_q": self.min_ratio_q,
            "max_nlog": self.max_nlog,
            "max_nlog_q": self.max_nlog_q,
            "dichotomy_violations": self.dichotomy_violations,
            "dichotomy_examples": self.dichotomy_examples,
            "sqrt_bound_violations": self.sqrt_bound_violations,
            "same_n_order_violations": self.same_n_order_violations,
            "same_n_first": {str(k): v for k, v in self.same_n_first.items()},
            "same_n_last": {str(k): v for k, v in self.same_n_last.items()},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ShardSummary":
        out = cls(lo=d["lo"], hi=d["hi"])
        out.checked = d["checked"]
        out.represented = d["represented"]
        out.failures = list(d["failures"])
        out.min_ratio = d["min_ratio"]
        out.min_ratio_q = d["min_ratio_q"]
        out.max_nlog = d["max_nlog"]
        out.max_nlog_q = d["max_nlog_q"]
        out.dichotomy_violations = d["dichotomy_violations"]
        out.dichotomy_examples = list(d["dichotomy_examples"])
        out.sqrt_bound_violations = d["sqrt_bound_violations"]
        out.same_n_order_violations = d["same_n_order_violations"]
        out.same_n_first = {int(k): v for k, v in d["same_n_first"].items()}
        out.same_n_last = {int(k): v for k, v in d["same_n_last"].items()}
        return out


def merge_summaries(parts: list[ShardSummary]) -> ShardSummary:
    """Fold shard digests in ascending range order."""
    if not parts:
        raise ValueError("merge_summaries needs at least one shard")
    total = parts[0]
    for part in parts[1:]:
        total.merge(part)
    return total


def summary_stats(summary: ShardSummary) -> dict:
    """The stats block reported for a verified range."""
    return {
        "min_p_over_cbrt_q": summary.min_ratio,
        "min_p_over_cbrt_q_at": summary.min_ratio_q,
        "max_n_over_log_q": summary.max_nlog,
        "max_n_over_log_q_at": summary.max_nlog_q,
        "dichotomy_violations": summary.dichotomy_violations,
        "dichotomy_examples": list(summary.dichotomy_examples),
        "same_n_order_violations": summary.same_n_order_violations,
        "sqrt_bound_violations": summary.sqrt_bound_violations,
    }


@dataclass
class VerificationReport:
    """Outcome of a range run: counts, explicit failures, and statistics.

    failures empty means the representation property held for every
    admissible q in [lo, hi]; checked == represented + len(failures).
    """

    lo: int
    hi: int
    mode: Mode
    checked: int
    failures: list
    stats: dict
    summary: ShardSummary
    qs: np.ndarray
    ps: np.ndarray
    ns: np.ndarray

    def representations(self) -> list[Representation]:
        mode = Mode.TWIN_MIN if self.mode == Mode.TWIN_MIN else self.mode
        return [
            Representation(q=int(q), p=int(p), n=int(n), mode=mode)
            for q, p, n in zip(self.qs, self.ps, self.ns)
        ]


def _domain(lo: int, hi: int, mode: Mode, table: PrimeTable) -> np.ndarray:
    """Admissible q values (>= 5) in [lo, hi] for the given mode."""
    if mode == Mode.SUN_ODD:
        start = max(lo, 5)
        if start % 2 == 0:
            start += 1
        return np.arange(start, hi + 1, 2, dtype=np.int64)
    primes = table.primes()
    return primes[(primes >= max(lo, 5)) & (primes <= hi)]


def verify_range(
    lo: int,
    hi: int,
    mode: Mode,
    twins: TwinIndex | None,
    table: PrimeTable,
    include_small: bool = False,
    block_size: int = 1 << 19,
) -> VerificationReport:
    """Verify representability for every admissible q in [lo, hi].

    Iterates primes (or odd integers in Sun mode) in ascending order,
    accumulating failures and statistics; the result is independent of
    block_size and of how a caller shards the range.  q in {2, 3} have
    no admissible n and are skipped unless include_small, in which case
    they count as failures.
    """
    mode = Mode(mode)
    if mode == Mode.TWIN_MIN_N:
        raise ValueError("verify_range modes are twin, prime, sun")
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi}]")
    if hi > table.limit:
        raise CoverageError(f"range end {hi} exceeds table limit {table.limit}")
    if mode == Mode.TWIN_MIN:
        if twins is None:
            raise ValueError("twin mode needs a TwinIndex")
        if hi - 2 > twins.coverage:
            raise CoverageError(f"range end {hi} needs twin coverage {hi - 2}, have {twins.coverage}")
        mask = twins.odd_mask
    else:
        mask = table.odd_bits

    summary = ShardSummary(lo=lo, hi=hi)
    if include_small:
        smalls = [q for q in (2, 3) if lo <= q <= hi and (mode != Mode.SUN_ODD or q % 2 == 1)]
        summary.checked += len(smalls)
        summary.failures.extend(smalls)

    qs_all = _domain(lo, hi, mode, table)
    found_chunks, q_chunks, p_chunks, n_chunks = [], [], [], []
    for start in range(0, len(qs_all), block_size):
        qs = qs_all[start : start + block_size]
        ps, ns, found = _scan_block(qs, mask)
        summary.absorb_block(qs, ps, ns, found)
        q_chunks.append(qs[found])
        p_chunks.append(ps[found])
        n_chunks.append(ns[found])
    empty = np.zeros(0, dtype=np.int64)
    return VerificationReport(
        lo=lo,
        hi=hi,
        mode=mode,
        checked=summary.checked,
        failures=list(summary.failures),
        stats=summary_stats(summary),
        summary=summary,
        qs=np.concatenate(q_chunks) if q_chunks else empty,
        ps=np.concatenate(p_chunks) if p_chunks else empty,
        ns=np.concatenate(n_chunks) if n_chunks else empty,
    )


def stats_lemma_checks(reps) -> dict:
    """Violation counts for the three structural properties of the map.

    (i) equal n with q' < q forces p' < p (checked through a per-n
    running maximum); (ii) n <= isqrt(q); (iii) either 2p >= q or
    2n^2 >= q.  Input must be minimal-twin representations sorted by q.
    """
    last_p_by_n: dict[int, int] = {}
    same_n_order = sqrt_bound = dichotomy = 0
    prev_q = None
    for rep in reps:
        if rep.mode != Mode.TWIN_MIN:
            raise ValueError(f"stats_lemma_checks expects TWIN_MIN reps, got {rep.mode}")
        if prev_q is not None and rep.q <= prev_q:
            raise ValueError("representations must be sorted by ascending q")
        prev_q = rep.q
        prev = last_p_by_n.get(rep.n)
        if prev is not None and prev >= rep.p:
            same_n_order += 1
        last_p_by_n[rep.n] = rep.p
        if rep.n * rep.n > rep.q:
            sqrt_bound += 1
        if 2 * rep.p < rep.q and 2 * rep.n * rep.n < rep.q:
            dichotomy += 1
    return {
        "same_n_order_violations": same_n_order,
        "sqrt_bound_violations": sqrt_bound,
        "dichotomy_violations": dichotomy,
    }


@dataclass(frozen=True)
class GrowthRow:
    """Aggregates over one q bucket; pure reporting, no claims."""

    q_bucket: int
    count: int
    max_n: int
    min_p: int
    min_p_over_cbrt_q: float
    max_n_over_log_q: float


def growth_series(reps, bucket: int) -> list[GrowthRow]:
    """Bucketed extrema of the map for plotting or CSV export."""
    if not reps:
        raise ValueError("growth_series needs at least one representation")
    qs = np.fromiter((r.q for r in reps), dtype=np.int64, count=len(reps))
    ps = np.fromiter((r.p for r in reps), dtype=np.int64, count=len(reps))
    ns = np.fromiter((r.n for r in reps), dtype=np.int64, count=len(reps))
    return growth_rows_from_arrays(qs, ps, ns, bucket)


def growth_rows_from_arrays(qs, ps, ns, bucket: int) -> list[GrowthRow]:
    """growth_series on raw arrays; shared by large verification runs."""
    if bucket < 1:
        raise ValueError(f"bucket must be positive, got {bucket}")
    if len(qs) == 0:
        raise ValueError("growth needs at least one representation")
    qs = np.asarray(qs, dtype=np.int64)
    ps = np.asarray(ps, dtype=np.int64)
    ns = np.asarray(ns, dtype=np.int64)
    keys = (qs // bucket) * bucket
    ratio = ps / np.cbrt(qs.astype(np.float64))
    nlog = ns / np.log(qs.astype(np.float64))
    rows = []
    for key in np.unique(keys):
        sel = keys == key
        rows.append(
            GrowthRow(
                q_bucket=int(key),
                count=int(np.count_nonzero(sel)),
                max_n=int(ns[sel].max()),
                min_p=int(ps[sel].min()),
                min_p_over_cbrt_q=float(ratio[sel].min()),
                max_n_over_log_q=float(nlog[sel].max()),
            )
        )
    return rows
