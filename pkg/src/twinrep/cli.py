"""Command-line front end.

Subcommands map one-to-one onto the library's bulk operations:

    verify       representability of a q-range (twin | prime | sun)
    sigma        exponential-sum grid: brute force next to closed form
    singular     truncated singular-series values with tail diagnostics
    variance     averaged squared residual at one or more x
    density      representability census over primes up to x
    stats        bucketed growth statistics of the minimal twin map
    mirsky       squarefree 4p-1 census (s(y), pi(y))
    sieve-cache  build a prime table and write its binary cache

Exit codes are a contract: 0 success, 1 a mathematical failure was
found, 2 invalid input or insufficient coverage, 3 resource
exhaustion.  Output is CSV (default) or JSONL with identical values;
floats carry six decimals.  verify runs are sharded over the range,
optionally across worker processes, and fold shard digests in range
order, so output is byte-identical for every worker count and across
checkpoint interruptions.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import multiprocessing
import os
import sys
from dataclasses import dataclass

import numpy as np

from .asymptotic import density_report, variance_sum
from .expsum import evaluate_sigma
from .represent import (
    Mode,
    ShardSummary,
    growth_rows_from_arrays,
    merge_summaries,
    summary_stats,
    verify_range,
)
from .sieve import (
    CoverageError,
    PrimeTable,
    ResourceLimitError,
    build_prime_table,
    build_twin_index,
    load_prime_table,
    prime_count,
    save_prime_table,
    squarefree_kappa_census,
)
from .singular import singular_series, tail_partial

__all__ = ["main", "RunConfig"]

DEFAULT_CUTOFF = 10**5
DEFAULT_SHARD_SIZE = 1 << 20

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    """Validated parameters of one invocation; built before any compute."""

    subcommand: str
    limit: int | None = None
    range: tuple[int, int] | None = None
    mode: Mode | None = None
    cutoff: int = DEFAULT_CUTOFF
    x: tuple[int, ...] | None = None
    y: int | None = None
    workers: int = 1
    output_format: str = "csv"
    checkpoint_path: str | None = None

    def validate(self) -> None:
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.output_format not in ("csv", "jsonl"):
            raise ValueError(f"format must be csv or jsonl, got {self.output_format}")
        if self.range is not None:
            lo, hi = self.range
            if lo < 1 or hi < lo:
                raise ValueError(f"bad range {lo}:{hi}")
        if self.cutoff < 3:
            raise ValueError(f"cutoff must be >= 3, got {self.cutoff}")
        if self.x is not None and any(x < 1 for x in self.x):
            raise ValueError(f"x values must be positive, got {self.x}")
        if self.limit is not None and self.limit < 2:
            raise ValueError(f"limit must be >= 2, got {self.limit}")


# ---------------------------------------------------------------------------
# report formatting


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def _json_cell(value):
    if isinstance(value, float):
        return float(f"{value:.6f}")
    if isinstance(value, tuple):
        return list(value)
    return value


class ReportWriter:
    """Streams rows as CSV or JSONL to a path or stdout, deterministically."""

    def __init__(self, header: list[str], fmt: str, path: str | None):
        self.header = header
        self.fmt = fmt
        self._own = path is not None and path != "-"
        self._fh = open(path, "w", encoding="utf-8") if self._own else sys.stdout
        if fmt == "csv":
            self._fh.write(",".join(header) + "\n")

    def row(self, values: dict) -> None:
        if self.fmt == "csv":
            self._fh.write(",".join(_fmt_cell(values[k]) for k in self.header) + "\n")
        else:
            self._fh.write(
                json.dumps({k: _json_cell(values[k]) for k in self.header}) + "\n"
            )

    def close(self) -> None:
        if self._own:
            self._fh.close()
        else:
            self._fh.flush()


# ---------------------------------------------------------------------------
# prime-table acquisition


def _acquire_table(args, needed_limit: int) -> PrimeTable:
    cache = getattr(args, "cache", None)
    if cache:
        table = load_prime_table(cache)
        if table.limit < needed_limit:
            raise ValueError(
                f"cache {cache} covers only {table.limit}, need {needed_limit}"
            )
        return table
    return build_prime_table(needed_limit)


# ---------------------------------------------------------------------------
# verify: sharded, checkpointable range verification

_WORKER_CTX: dict = {}


def _shard_bounds(lo: int, hi: int, shard_size: int) -> list[tuple[int, int]]:
    return [(a, min(a + shard_size - 1, hi)) for a in range(lo, hi + 1, shard_size)]


def _run_shard(bounds: tuple[int, int]):
    lo, hi = bounds
    report = verify_range(
        lo,
        hi,
        _WORKER_CTX["mode"],
        _WORKER_CTX["twins"],
        _WORKER_CTX["table"],
        include_small=_WORKER_CTX["include_small"],
    )
    return report.summary, report.qs, report.ps, report.ns


_RECORD_HEADER = ["q", "p", "n", "p_over_cbrt_q", "n_over_log_q"]


class _RecordSink:
    """Appends per-q record rows; tracks byte offsets for resume truncation."""

    def __init__(self, path: str, fmt: str, resume_bytes: int | None):
        self.fmt = fmt
        if resume_bytes is None:
            self._fh = open(path, "w", encoding="utf-8")
            if fmt == "csv":
                self._fh.write(",".join(_RECORD_HEADER) + "\n")
        else:
            fh = open(path, "r+", encoding="utf-8")
            fh.truncate(resume_bytes)
            fh.seek(0, os.SEEK_END)
            self._fh = fh

    def write_shard(self, qs, ps, ns) -> None:
        if len(qs) == 0:
            return
        ratio = ps / np.cbrt(qs.astype(np.float64))
        nlog = ns / np.log(qs.astype(np.float64))
        if self.fmt == "csv":
            lines = [
                f"{q},{p},{n},{r:.6f},{g:.6f}\n"
                for q, p, n, r, g in zip(qs, ps, ns, ratio, nlog)
            ]
            self._fh.writelines(lines)
        else:
            for q, p, n, r, g in zip(qs, ps, ns, ratio, nlog):
                self._fh.write(
                    json.dumps(
                        {
                            "q": int(q),
                            "p": int(p),
                            "n": int(n),
                            "p_over_cbrt_q": float(f"{r:.6f}"),
                            "n_over_log_q": float(f"{g:.6f}"),
                        }
                    )
                    + "\n"
                )

    def tell(self) -> int:
        self._fh.flush()
        return self._fh.tell()

    def close(self) -> None:
        self._fh.close()


class _Checkpoint:
    """Plain-text checkpoint: META line, one JSON line per completed shard,
    and a final DONE line carrying a digest of the merged summary."""

    def __init__(self, path: str):
        self.path = path
        self.meta: dict | None = None
        self.shards: list[dict] = []
        self.done_hash: str | None = None

    @classmethod
    def load(cls, path: str) -> "_Checkpoint":
        cp = cls(path)
        if not os.path.exists(path):
            return cp
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                kind, _, payload = line.partition(" ")
                if kind == "META":
                    cp.meta = json.loads(payload)
                elif kind == "SHARD":
                    cp.shards.append(json.loads(payload))
                elif kind == "DONE":
                    cp.done_hash = payload.strip()
                else:
                    raise ValueError(f"{path}: unrecognized checkpoint line {kind!r}")
        return cp

    def start(self, meta: dict) -> None:
        self.meta = meta
        with open(self.path, "w", encoding="utf-8") as fh:
            fh.write("META " + json.dumps(meta, sort_keys=True) + "\n")

    def append_shard(self, entry: dict) -> None:
        self.shards.append(entry)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write("SHARD " + json.dumps(entry, sort_keys=True) + "\n")

    def finish(self, digest: str) -> None:
        self.done_hash = digest
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write("DONE " + digest + "\n")


_VERIFY_HEADER = [
    "mode",
    "lo",
    "hi",
    "checked",
    "represented",
    "failures",
    "failure_list",
    "min_p_over_cbrt_q",
    "min_p_over_cbrt_q_at",
    "max_n_over_log_q",
    "max_n_over_log_q_at",
    "dichotomy_violations",
    "same_n_order_violations",
    "sqrt_bound_violations",
]


def _summary_row(mode: Mode, total: ShardSummary) -> dict:
    stats = summary_stats(total)
    return {
        "mode": mode.value,
        "lo": total.lo,
        "hi": total.hi,
        "checked": total.checked,
        "represented": total.represented,
        "failures": len(total.failures),
        "failure_list": total.failures[:32],
        "min_p_over_cbrt_q": stats["min_p_over_cbrt_q"],
        "min_p_over_cbrt_q_at": stats["min_p_over_cbrt_q_at"],
        "max_n_over_log_q": stats["max_n_over_log_q"],
        "max_n_over_log_q_at": stats["max_n_over_log_q_at"],
        "dichotomy_violations": stats["dichotomy_violations"],
        "same_n_order_violations": stats["same_n_order_violations"],
        "sqrt_bound_violations": stats["sqrt_bound_violations"],
    }


def _summary_digest(total: ShardSummary) -> str:
    blob = json.dumps(total.to_json_dict(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _run_sharded_verify(args, mode: Mode, lo: int, hi: int):
    """Shared engine for verify and stats: returns (total summary, rep arrays).

    Shards are processed in ascending range order; with workers > 1 the
    pool computes them concurrently but folding still happens in order,
    so the result is identical for every worker count.
    """
    table = _acquire_table(args, max(hi, 7))  # floor keeps the twin index buildable
    twins = build_twin_index(table) if mode == Mode.TWIN_MIN else None
    bounds = _shard_bounds(lo, hi, args.shard_size)

    checkpoint = _Checkpoint.load(args.checkpoint) if args.checkpoint else None
    meta = {
        "mode": mode.value,
        "lo": lo,
        "hi": hi,
        "shard_size": args.shard_size,
        "include_small": bool(args.include_small),
        "emit_records": bool(args.emit_records),
        "format": args.format,
    }
    completed: list[dict] = []
    if checkpoint is not None and checkpoint.meta is not None:
        if checkpoint.meta != meta:
            raise ValueError(
                f"checkpoint {args.checkpoint} was created with different parameters"
            )
        completed = checkpoint.shards
        for entry, expect in zip(completed, bounds):
            if (entry["summary"]["lo"], entry["summary"]["hi"]) != expect:
                raise ValueError(f"checkpoint shard {entry['summary']['lo']} misaligned")
    elif checkpoint is not None:
        checkpoint.start(meta)

    sink = None
    if args.emit_records:
        if args.emit_records == "-" and args.checkpoint:
            raise ValueError("cannot resume records emitted to stdout; use a file path")
        resume_bytes = completed[-1]["records_bytes"] if completed else None
        if args.emit_records == "-":
            sink = None  # handled separately below
        else:
            sink = _RecordSink(args.emit_records, args.format, resume_bytes)

    summaries = [ShardSummary.from_json_dict(e["summary"]) for e in completed]
    pending = bounds[len(completed) :]
    keep_arrays = getattr(args, "_keep_arrays", False)
    arrays: list[tuple] = []
    stop_after = getattr(args, "stop_after_shards", None)
    produced = 0

    def handle(result) -> bool:
        """Fold one freshly computed shard; returns False to stop early."""
        nonlocal produced
        summary, qs, ps, ns = result
        if sink is not None:
            sink.write_shard(qs, ps, ns)
        elif args.emit_records == "-":
            _stdout_records(args.format, qs, ps, ns, first=(produced == 0 and not completed))
        if keep_arrays:
            arrays.append((qs, ps, ns))
        summaries.append(summary)
        if checkpoint is not None:
            entry = {
                "summary": summary.to_json_dict(),
                "records_bytes": sink.tell() if sink is not None else 0,
            }
            checkpoint.append_shard(entry)
        produced += 1
        return not (stop_after is not None and produced >= stop_after)

    if pending:
        if args.workers > 1:
            ctx = multiprocessing.get_context("fork")
            _WORKER_CTX.update(
                {"mode": mode, "twins": twins, "table": table, "include_small": args.include_small}
            )
            with ctx.Pool(processes=args.workers) as pool:
                for result in pool.imap(_run_shard, pending):
                    if not handle(result):
                        pool.terminate()
                        break
            _WORKER_CTX.clear()
        else:
            _WORKER_CTX.update(
                {"mode": mode, "twins": twins, "table": table, "include_small": args.include_small}
            )
            try:
                for shard in pending:
                    if not handle(_run_shard(shard)):
                        break
            finally:
                _WORKER_CTX.clear()

    if sink is not None:
        sink.close()

    if len(summaries) < len(bounds):
        return None, None  # interrupted (stop_after): caller exits without summary

    total = merge_summaries(summaries)
    if checkpoint is not None and checkpoint.done_hash is None:
        checkpoint.finish(_summary_digest(total))
    return total, arrays


def _stdout_records(fmt: str, qs, ps, ns, first: bool) -> None:
    if first and fmt == "csv":
        sys.stdout.write(",".join(_RECORD_HEADER) + "\n")
    if len(qs) == 0:
        return
    ratio = ps / np.cbrt(qs.astype(np.float64))
    nlog = ns / np.log(qs.astype(np.float64))
    for q, p, n, r, g in zip(qs, ps, ns, ratio, nlog):
        if fmt == "csv":
            sys.stdout.write(f"{q},{p},{n},{r:.6f},{g:.6f}\n")
        else:
            sys.stdout.write(
                json.dumps(
                    {
                        "q": int(q),
                        "p": int(p),
                        "n": int(n),
                        "p_over_cbrt_q": float(f"{r:.6f}"),
                        "n_over_log_q": float(f"{g:.6f}"),
                    }
                )
                + "\n"
            )


def _cmd_verify(args) -> int:
    lo, hi = args.range
    mode = Mode(args.mode)
    if hi < 5 and not args.include_small:
        print(
            f"error: no admissible q in range {lo}:{hi} (q >= 5 needed; "
            "use --include-small to count small q as failures)",
            file=sys.stderr,
        )
        return EXIT_BAD_INPUT
    total, _ = _run_sharded_verify(args, mode, lo, hi)
    if total is None:
        return EXIT_OK  # interrupted by --stop-after-shards; checkpoint holds progress
    writer = ReportWriter(_VERIFY_HEADER, args.format, args.out)
    writer.row(_summary_row(mode, total))
    writer.close()
    return EXIT_MATH_FAILURE if total.failures else EXIT_OK


def _cmd_stats(args) -> int:
    lo, hi = args.range
    args._keep_arrays = True
    total, arrays = _run_sharded_verify(args, Mode.TWIN_MIN, lo, hi)
    if total is None:
        return EXIT_OK
    qs = np.concatenate([a[0] for a in arrays]) if arrays else np.zeros(0, np.int64)
    ps = np.concatenate([a[1] for a in arrays]) if arrays else np.zeros(0, np.int64)
    ns = np.concatenate([a[2] for a in arrays]) if arrays else np.zeros(0, np.int64)
    if len(qs) == 0:
        print("error: no representations found in range", file=sys.stderr)
        return EXIT_BAD_INPUT
    writer = ReportWriter(
        ["q_bucket", "count", "max_n", "min_p", "min_p_over_cbrt_q", "max_n_over_log_q"],
        args.format,
        args.out,
    )
    for row in growth_rows_from_arrays(qs, ps, ns, args.bucket):
        writer.row(
            {
                "q_bucket": row.q_bucket,
                "count": row.count,
                "max_n": row.max_n,
                "min_p": row.min_p,
                "min_p_over_cbrt_q": row.min_p_over_cbrt_q,
                "max_n_over_log_q": row.max_n_over_log_q,
            }
        )
    writer.close()
    return EXIT_MATH_FAILURE if total.failures else EXIT_OK


def _cmd_sigma(args) -> int:
    if args.qmax < 1 or args.pmax < 2:
        print(f"error: invalid grid qmax={args.qmax} pmax={args.pmax}", file=sys.stderr)
        return EXIT_BAD_INPUT
    table = build_prime_table(max(args.pmax, 2))
    primes = [int(p) for p in table.primes() if p <= args.pmax]
    writer = ReportWriter(["q", "p", "kappa", "brute", "closed", "match"], args.format, args.out)
    for q in range(1, args.qmax + 1):
        for p in primes:
            ev = evaluate_sigma(q, p)
            writer.row(
                {
                    "q": q,
                    "p": p,
                    "kappa": ev.kappa,
                    "brute": ev.brute_value,
                    "closed": ev.closed_value,
                    "match": ev.match,
                }
            )
    writer.close()
    return EXIT_OK


def _cmd_singular(args) -> int:
    table = _acquire_table(args, max(args.cutoff, 5))
    primes = [int(p) for p in table.primes() if p <= args.pmax]
    q1 = max(3, args.cutoff // 10)
    writer = ReportWriter(
        ["kappa", "p", "cutoff", "value", "last_factor_deviation", "tail_partial"],
        args.format,
        args.out,
    )
    for p in primes:
        kappa = 4 * p - 1
        sv = singular_series(kappa, args.cutoff, table)
        tail = tail_partial(kappa, q1, args.cutoff, table)
        writer.row(
            {
                "kappa": kappa,
                "p": p,
                "cutoff": sv.cutoff,
                "value": sv.value,
                "last_factor_deviation": sv.last_factor_deviation,
                "tail_partial": tail,
            }
        )
    writer.close()
    return EXIT_OK


def _cmd_variance(args) -> int:
    xs = args.x
    if args.emit_records and len(xs) != 1:
        print("error: --emit-records needs a single --x value", file=sys.stderr)
        return EXIT_BAD_INPUT
    runs = []
    for x in xs:
        y = args.y if args.y is not None else x * x
        if y > x * x:
            print(f"error: region violation: y={y} > x^2={x * x}", file=sys.stderr)
            return EXIT_BAD_INPUT
        runs.append((x, y))
    needed = max(
        max(args.cutoff, (y + 1) // 4, math.isqrt(y) + 1) for _, y in runs
    )
    table = _acquire_table(args, needed)
    writer = ReportWriter(
        ["x", "y", "cutoff", "term_count", "lhs", "ratio"], args.format, args.out
    )
    for x, y in runs:
        report = variance_sum(
            x, y, args.cutoff, table,
            baier_zhao=args.baier_zhao, keep_terms=bool(args.emit_records),
        )
        writer.row(
            {
                "x": report.x,
                "y": report.y,
                "cutoff": report.cutoff,
                "term_count": report.term_count,
                "lhs": report.lhs,
                "ratio": report.ratio,
            }
        )
        if args.emit_records:
            rec = ReportWriter(
                ["p", "kappa", "psi", "s_trunc", "main_term", "residual", "residual_sq"],
                args.format,
                args.emit_records,
            )
            for term in report.terms:
                rec.row(
                    {
                        "p": term.p,
                        "kappa": term.kappa,
                        "psi": term.psi_value,
                        "s_trunc": term.singular_value,
                        "main_term": term.main_term,
                        "residual": term.residual,
                        "residual_sq": term.residual_sq,
                    }
                )
            rec.close()
    writer.close()
    return EXIT_OK


def _cmd_density(args) -> int:
    table = _acquire_table(args, max(args.x, 7))
    twins = build_twin_index(table)
    report = density_report(args.x, table, twins)
    writer = ReportWriter(
        [
            "x",
            "total_primes",
            "representable_any_prime",
            "representable_twin",
            "density_any_prime",
            "exceptions_any_prime",
            "exceptions_twin",
        ],
        args.format,
        args.out,
    )
    writer.row(
        {
            "x": report.x,
            "total_primes": report.total_primes,
            "representable_any_prime": report.representable_any_prime,
            "representable_twin": report.representable_twin,
            "density_any_prime": report.representable_any_prime / report.total_primes,
            "exceptions_any_prime": report.exceptions_any_prime[:32],
            "exceptions_twin": report.exceptions_twin[:32],
        }
    )
    writer.close()
    return EXIT_OK


def _cmd_mirsky(args) -> int:
    needed = max(args.y, math.isqrt(4 * args.y) + 1)
    table = _acquire_table(args, needed)
    count, total = squarefree_kappa_census(table, args.y)
    writer = ReportWriter(["y", "s_y", "pi_y", "fraction"], args.format, args.out)
    writer.row(
        {
            "y": args.y,
            "s_y": count,
            "pi_y": total,
            "fraction": count / total if total else 0.0,
        }
    )
    writer.close()
    return EXIT_OK


def _cmd_sieve_cache(args) -> int:
    table = build_prime_table(args.limit, args.segment_size)
    save_prime_table(table, args.cache_out)
    writer = ReportWriter(["limit", "segment_size", "pi", "path"], args.format, args.out)
    writer.row(
        {
            "limit": table.limit,
            "segment_size": table.segment_size,
            "pi": prime_count(table, table.limit),
            "path": args.cache_out,
        }
    )
    writer.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be LO:HI, got {text!r}")


def _parse_xs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"x must be an integer or comma list, got {text!r}")


def _add_output_flags(sub) -> None:
    sub.add_argument("--out", default=None, help="report path ('-' or omitted: stdout)")
    sub.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sub.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sub.add_argument("--cache", default=None, help="binary prime-table cache to load")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinrep",
        description="Representations q = p + n^2 + n: verification and numerics",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", help="verify representability over a q-range")
    p.add_argument("--mode", choices=("twin", "prime", "sun"), required=True)
    p.add_argument("--range", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--include-small", action="store_true",
                   help="count q in {2,3} (no admissible n) as failures")
    p.add_argument("--shard-size", type=int, default=DEFAULT_SHARD_SIZE)
    p.add_argument("--checkpoint", default=None, help="checkpoint file for resumable runs")
    p.add_argument("--emit-records", default=None, metavar="PATH",
                   help="stream per-q records to PATH ('-': stdout)")
    p.add_argument("--stop-after-shards", type=int, default=None,
                   help="stop after N shards (testing aid for checkpoint resume)")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="bucketed growth statistics of the minimal twin map")
    p.add_argument("--range", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--bucket", type=int, required=True)
    p.add_argument("--include-small", action="store_true")
    p.add_argument("--shard-size", type=int, default=DEFAULT_SHARD_SIZE)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--emit-records", default=None, metavar="PATH")
    p.add_argument("--stop-after-shards", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("sigma", help="exponential-sum grid report")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("singular", help="truncated singular-series report")
    p.add_argument("--pmax", type=int, default=50)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_singular)

    p = sub.add_parser("variance", help="averaged squared-residual report")
    p.add_argument("--x", type=_parse_xs, required=True,
                   help="x value or comma list of x values")
    p.add_argument("--y", type=int, default=None, help="default: x^2 per x")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--baier-zhao", action="store_true",
                   help="use the S*x main-term normalization for comparison")
    p.add_argument("--emit-records", default=None, metavar="PATH",
                   help="per-kappa term rows (single --x only)")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_variance)

    p = sub.add_parser("density", help="representability census over primes <= x")
    p.add_argument("--x", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("mirsky", help="squarefree 4p-1 census (s(y), pi(y))")
    p.add_argument("--y", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_mirsky)

    p = sub.add_parser("sieve-cache", help="build and cache a prime table")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--segment-size", type=int, default=1 << 20)
    p.add_argument("--cache-out", required=True, metavar="PATH")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_sieve_cache)

    return parser


def _config_from_args(args) -> RunConfig:
    xs = getattr(args, "x", None)
    if isinstance(xs, int):
        xs = (xs,)
    return RunConfig(
        subcommand=args.subcommand,
        limit=getattr(args, "limit", None),
        range=getattr(args, "range", None),
        mode=Mode(args.mode) if getattr(args, "mode", None) else None,
        cutoff=getattr(args, "cutoff", DEFAULT_CUTOFF),
        x=xs,
        y=getattr(args, "y", None),
        workers=getattr(args, "workers", 1),
        output_format=getattr(args, "format", "csv"),
        checkpoint_path=getattr(args, "checkpoint", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        config.validate()
        if getattr(args, "shard_size", 1) < 1:
            raise ValueError("shard-size must be positive")
        return args.func(args)
    except (ValueError, CoverageError, OverflowError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ResourceLimitError, MemoryError) as exc:
        print(f"resource failure: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
