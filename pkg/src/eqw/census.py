"""Closed-form counts, log-space fractions, and exhaustive enumeration oracles.

All counts are exact Python integers. Where a closed form counts
(partition, factor) combinations rather than distinct functions, the report
records the upper-bound relation instead of asserting equality; the
enumeration oracles supply the distinct counts.
"""
from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Optional

from .errors import ResourceCapError
from .oracles import simon_canonical_state
from .separability import FACTOR_CAP, finest_factorization
from .states import StateVector

FRACTION_CAP = 20
DJ_FULL_CAP = 4
DJ_BALANCED_CAP = 5
GROVER_STATE_CAP = 10_000_000

RELATION_EQUAL = "equal"
RELATION_UPPER = "formula-upper-bound"
RELATION_ORACLE_ONLY = "oracle-only"
RELATION_FORMULA_ONLY = "formula-only"

_LOG2_SQRT_2PI = 0.5 * math.log2(2.0 * math.pi)


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient with the usual domain restrictions."""
    if a < 0 or b < 0 or b > a:
        raise ValueError(f"binomial requires 0 <= b <= a, got ({a}, {b})")
    return math.comb(a, b)


def count_balanced(n: int) -> int:
    """Functions on n bits taking each output value on exactly half the inputs."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return binom(1 << n, 1 << (n - 1))


def count_balanced_fully_separable(n: int) -> int:
    """Balanced functions whose sign vector is a full product: 2 (2^n - 1)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 2 * ((1 << n) - 1)


def count_pairblock_factorizations(n: int) -> int:
    """Closed form 2 (2^(n-2) - 1) * 8 * B(n, 2) for the one-entangled-pair class.

    Counts (partition, factor) combinations; the distinct-function oracle
    count is bounded above by it (exactly half of it at small n).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return 2 * ((1 << (n - 2)) - 1) * 8 * binom(n, 2)


def count_bisep_fixed_partition(n: int, k: int) -> int:
    """Sign vectors split as a k | n-k product with at least one balanced side."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    bal_k = binom(1 << k, 1 << (k - 1))
    bal_nk = binom(1 << (n - k), 1 << (n - k - 1))
    return bal_k * (1 << (1 << (n - k))) + bal_nk * (1 << (1 << k)) - bal_k * bal_nk


def count_dj_bisep_upper(n: int) -> tuple[int, int]:
    """Both closed forms of the biseparable-balanced bound, computed exactly.

    The half-weighted terms are accumulated in doubled units and asserted
    even before halving, so the arithmetic never leaves the integers.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    doubled_a = 0
    for k in range(1, (n - 1) // 2 + 1):
        doubled_a += 2 * binom(n, k) * count_bisep_fixed_partition(n, k)
    if n % 2 == 0:
        doubled_a += binom(n, n // 2) * count_bisep_fixed_partition(n, n // 2)
    assert doubled_a % 2 == 0
    doubled_b = 0
    for k in range(1, n):
        bal_k = binom(1 << k, 1 << (k - 1))
        bal_nk = binom(1 << (n - k), 1 << (n - k - 1))
        doubled_b += binom(n, k) * (2 * bal_k * (1 << (1 << (n - k))) - bal_k * bal_nk)
    assert doubled_b % 2 == 0
    return doubled_a // 2, doubled_b // 2


def log2_int(x: int) -> float:
    """log2 of a positive integer of any size."""
    if x <= 0:
        raise ValueError(f"need a positive integer, got {x}")
    shift = max(0, x.bit_length() - 64)
    return math.log2(x >> shift) + shift


def _log2_factorial(k: int) -> float:
    return math.lgamma(k + 1) / math.log(2.0)


@dataclass(frozen=True)
class LogFraction:
    """A ratio carried in log2 space: ratio = numerator / denominator."""

    log2_numerator: float
    log2_denominator: float
    log2_ratio: float

    @classmethod
    def of(cls, log2_numerator: float, log2_denominator: float) -> "LogFraction":
        return cls(log2_numerator, log2_denominator, log2_numerator - log2_denominator)


@dataclass(frozen=True)
class DjFractions:
    """Separable-fraction values for one n: exact, Stirling form, and the
    biseparable bound."""

    n: int
    sep_exact: LogFraction
    sep_asymptotic: LogFraction
    bisep_bound: LogFraction


def dj_fractions(n: int, cap: int = FRACTION_CAP) -> DjFractions:
    """Exact and asymptotic log2 fractions of separable balanced functions.

    sep_exact is log2 of 2 (2^n - 1) (2^(n-1)!)^2 / 2^n!; sep_asymptotic is
    its Stirling form sqrt(2 pi) (2^n - 1) 2^(n/2) / 2^(2^n); bisep_bound is
    sqrt(2 pi) n^2 2^(n/2) / 2^(2^(n-1)).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n > cap:
        raise ResourceCapError(f"fractions capped at n = {cap}, got {n}")
    half = 1 << (n - 1)
    exact = LogFraction.of(
        log2_int(2 * ((1 << n) - 1)) + 2.0 * _log2_factorial(half),
        _log2_factorial(1 << n),
    )
    asym = LogFraction.of(
        _LOG2_SQRT_2PI + log2_int((1 << n) - 1) + n / 2.0,
        float(1 << n),
    )
    bound = LogFraction.of(
        _LOG2_SQRT_2PI + 2.0 * math.log2(n) + n / 2.0,
        float(half),
    )
    return DjFractions(n, exact, asym, bound)


def grover_bisep_fraction_log2(n: int, m: int) -> float:
    """log2 of n B(2^(n-1), M/2) / B(2^n, M) for even M."""
    if m % 2 != 0:
        raise ValueError(f"defined for even M only, got {m}")
    if not 0 < m < (1 << n):
        raise ValueError(f"need 0 < M < 2^n, got M={m}, n={n}")
    return log2_int(n * binom(1 << (n - 1), m // 2)) - log2_int(binom(1 << n, m))


@dataclass(frozen=True)
class GroverCounts:
    """Closed-form counts for the M-solution sign placements of one (n, M)."""

    n: int
    m: int
    total: int
    bisep_formula: int
    jsep_form_count: Optional[int]
    fully_entangled_formula: Optional[int]
    outside_regime: bool


def count_grover(n: int, m: int) -> GroverCounts:
    """Total, biseparable, power-of-two form, and odd-M counts for (n, M).

    The outside_regime flag marks M^2 >= 2^n, where the biseparable closed
    form stops bounding the distinct count; odd M means no tensor split at
    all, so the fully-entangled count equals the total.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 < m < (1 << n):
        raise ValueError(f"need 0 < M < 2^n, got M={m}, n={n}")
    total = binom(1 << n, m)
    bisep = n * binom(1 << (n - 1), m // 2) if m % 2 == 0 else 0
    jsep = None
    if m & (m - 1) == 0:
        k = m.bit_length() - 1
        jsep = (1 << (n - k)) * binom(n, k)
    fully = total if m % 2 == 1 else None
    return GroverCounts(n, m, total, bisep, jsep, fully, m * m >= (1 << n))


@dataclass(frozen=True)
class SimonWeightClass:
    weight: int
    count: int
    q: int


@dataclass(frozen=True)
class SimonCensus:
    """Period-weight histogram of collapsed-state classes, plus the modal weight."""

    n: int
    rows: tuple[SimonWeightClass, ...]
    modal_weight: int


def count_simon(n: int) -> SimonCensus:
    """B(n, k) periods of weight k, each collapsing to a class with q = n-k+1."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rows = tuple(SimonWeightClass(k, binom(n, k), n - k + 1) for k in range(1, n + 1))
    return SimonCensus(n, rows, n // 2)


@dataclass(frozen=True)
class CensusRow:
    """One class of states: closed-form value, enumerated value, and how the
    two are asserted to relate."""

    class_name: str
    formula: Optional[int]
    oracle: Optional[int]
    relation: str
    note: Optional[str] = None

    def check(self) -> Optional[str]:
        """None when the asserted relation holds, else a failure description."""
        if self.formula is not None and self.oracle is not None:
            if self.relation == RELATION_EQUAL and self.formula != self.oracle:
                return (
                    f"{self.class_name}: formula {self.formula} != oracle {self.oracle}"
                )
            if self.relation == RELATION_UPPER and self.formula < self.oracle:
                return (
                    f"{self.class_name}: formula {self.formula} is below oracle "
                    f"{self.oracle}, bound violated"
                )
        return None


@dataclass(frozen=True)
class CensusReport:
    algorithm: str
    n: int
    rows: tuple[CensusRow, ...]
    m: Optional[int] = None

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            row = {
                "class": r.class_name,
                "formula": None if r.formula is None else str(r.formula),
                "oracle": None if r.oracle is None else str(r.oracle),
                "relation": r.relation,
            }
            if r.note is not None:
                row["note"] = r.note
            rows.append(row)
        out = {"schema": "census-v1", "algorithm": self.algorithm, "n": self.n}
        if self.m is not None:
            out["m"] = self.m
        out["rows"] = rows
        return out

    def to_csv(self) -> str:
        lines = ["class,formula,oracle,relation"]
        for r in self.rows:
            formula = "" if r.formula is None else str(r.formula)
            oracle = "" if r.oracle is None else str(r.oracle)
            lines.append(f"{r.class_name},{formula},{oracle},{r.relation}")
        return "\n".join(lines) + "\n"

    def failures(self) -> list[str]:
        return [msg for msg in (r.check() for r in self.rows) if msg]


def _shard_bounds(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, shards)
    step, extra = divmod(total, shards)
    bounds = []
    lo = 0
    for i in range(shards):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


@dataclass(frozen=True)
class _DjTally:
    balanced: int = 0
    fully_separable: int = 0
    pair_block: int = 0
    biseparable: int = 0
    entangled: int = 0

    def __add__(self, other: "_DjTally") -> "_DjTally":
        return _DjTally(
            self.balanced + other.balanced,
            self.fully_separable + other.fully_separable,
            self.pair_block + other.pair_block,
            self.biseparable + other.biseparable,
            self.entangled + other.entangled,
        )


def _tally_balanced_state(n: int, amps: tuple[int, ...], acc: list[int]) -> None:
    fac = finest_factorization(StateVector(n, amps))
    q = fac.q
    acc[0] += 1
    if q == n:
        acc[1] += 1
    if fac.block_sizes() == (1,) * (n - 2) + (2,):
        acc[2] += 1
    if q >= 2:
        acc[3] += 1
    else:
        acc[4] += 1


def _dj_scan_full(args: tuple[int, int, int]) -> _DjTally:
    """Classify the balanced functions with truth-table integers in [lo, hi)."""
    n, lo, hi = args
    size = 1 << n
    half = size >> 1
    acc = [0, 0, 0, 0, 0]
    for fi in range(lo, hi):
        if fi.bit_count() != half:
            continue
        amps = tuple(1 - 2 * ((fi >> x) & 1) for x in range(size))
        _tally_balanced_state(n, amps, acc)
    return _DjTally(*acc)


def _dj_scan_balanced(args: tuple[int, int, int]) -> _DjTally:
    """Classify the balanced functions with combination ranks in [lo, hi)."""
    n, lo, hi = args
    size = 1 << n
    half = size >> 1
    acc = [0, 0, 0, 0, 0]
    plus = (1,) * size
    for minus_positions in islice(combinations(range(size), half), lo, hi):
        amps = list(plus)
        for x in minus_positions:
            amps[x] = -1
        _tally_balanced_state(n, tuple(amps), acc)
    return _DjTally(*acc)


def _run_sharded(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(fn, jobs)


def enumerate_dj(
    n: int,
    balanced_only: bool = False,
    workers: int = 1,
    cap: Optional[int] = None,
) -> CensusReport:
    """Exhaustively classify the balanced functions on n bits.

    Scans the full function space up to n = 4, or the balanced functions
    only at n = 5 when balanced_only is set. Sharded by contiguous index
    ranges with an additive merge, so results do not depend on the worker
    count.
    """
    if cap is None:
        cap = DJ_BALANCED_CAP if balanced_only else DJ_FULL_CAP
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n > cap:
        kind = "balanced-only" if balanced_only else "full"
        raise ResourceCapError(f"{kind} enumeration capped at n = {cap}, got {n}")
    if balanced_only:
        total = count_balanced(n)
        scan = _dj_scan_balanced
    else:
        total = 1 << (1 << n)
        scan = _dj_scan_full
    jobs = [(n, lo, hi) for lo, hi in _shard_bounds(total, workers)]
    tally = _DjTally()
    for part in _run_sharded(scan, jobs, workers):
        tally = tally + part
    pair_formula = count_pairblock_factorizations(n) if n >= 3 else None
    rows = (
        CensusRow("balanced", count_balanced(n), tally.balanced, RELATION_EQUAL),
        CensusRow(
            "balanced-fully-separable",
            count_balanced_fully_separable(n),
            tally.fully_separable,
            RELATION_EQUAL,
        ),
        CensusRow(
            "balanced-pair-block",
            pair_formula,
            tally.pair_block,
            RELATION_UPPER if pair_formula is not None else RELATION_ORACLE_ONLY,
        ),
        CensusRow(
            "balanced-biseparable",
            count_dj_bisep_upper(n)[0],
            tally.biseparable,
            RELATION_UPPER,
        ),
        CensusRow(
            "balanced-genuinely-entangled", None, tally.entangled, RELATION_ORACLE_ONLY
        ),
    )
    return CensusReport("dj", n, rows)


def dj_formula_report(n: int) -> CensusReport:
    """Closed-form rows only, for runs without the exhaustive oracle."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    pair = count_pairblock_factorizations(n) if n >= 3 else None
    rows = [
        CensusRow("balanced", count_balanced(n), None, RELATION_FORMULA_ONLY),
        CensusRow(
            "balanced-fully-separable",
            count_balanced_fully_separable(n),
            None,
            RELATION_FORMULA_ONLY,
        ),
    ]
    if pair is not None:
        rows.append(CensusRow("balanced-pair-block", pair, None, RELATION_FORMULA_ONLY))
    rows.append(
        CensusRow(
            "balanced-biseparable",
            count_dj_bisep_upper(n)[0],
            None,
            RELATION_FORMULA_ONLY,
        )
    )
    return CensusReport("dj", n, tuple(rows))


def _grover_scan(args: tuple[int, int, int, int]) -> tuple[int, ...]:
    """Per-q histogram of the M-minus sign placements with ranks in [lo, hi)."""
    n, m, lo, hi = args
    size = 1 << n
    counts = [0] * (n + 1)
    for minus_positions in islice(combinations(range(size), m), lo, hi):
        amps = [1] * size
        for x in minus_positions:
            amps[x] = -1
        counts[finest_factorization(StateVector(n, tuple(amps))).q] += 1
    return tuple(counts)


def _grover_rows(
    gc: GroverCounts, qcounts: Optional[list[int]]
) -> tuple[CensusRow, ...]:
    n, m = gc.n, gc.m
    exhaustive = qcounts is not None
    rows: list[CensusRow] = []
    oracle_total = sum(qcounts) if exhaustive else None
    rows.append(
        CensusRow(
            "total",
            gc.total,
            oracle_total,
            RELATION_EQUAL if exhaustive else RELATION_FORMULA_ONLY,
        )
    )
    bisep_oracle = sum(qcounts[2:]) if exhaustive else None
    if m % 2 == 1:
        rows.append(
            CensusRow(
                "fully-entangled",
                gc.fully_entangled_formula,
                qcounts[1] if exhaustive else None,
                RELATION_EQUAL if exhaustive else RELATION_FORMULA_ONLY,
            )
        )
        rows.append(
            CensusRow(
                "biseparable",
                0,
                bisep_oracle,
                RELATION_EQUAL if exhaustive else RELATION_FORMULA_ONLY,
                note="odd solution count admits no tensor split",
            )
        )
    else:
        asserted_equal = m == 2 and not gc.outside_regime
        asserted_upper = m >= 4 and m <= (1 << (n - 2))
        if asserted_equal:
            relation = RELATION_EQUAL if exhaustive else RELATION_FORMULA_ONLY
            rows.append(CensusRow("biseparable", gc.bisep_formula, bisep_oracle, relation))
        elif asserted_upper:
            relation = RELATION_UPPER if exhaustive else RELATION_FORMULA_ONLY
            rows.append(
                CensusRow(
                    "biseparable",
                    gc.bisep_formula,
                    bisep_oracle,
                    relation,
                    note="closed form counts (partition, factor) pairs",
                )
            )
        else:
            rows.append(
                CensusRow(
                    "biseparable",
                    None if exhaustive else gc.bisep_formula,
                    bisep_oracle,
                    RELATION_ORACLE_ONLY if exhaustive else RELATION_FORMULA_ONLY,
                    note=(
                        f"outside the M^2 < 2^n regime; closed form "
                        f"{gc.bisep_formula} not asserted"
                    ),
                )
            )
        if exhaustive:
            rows.append(
                CensusRow("fully-entangled", None, qcounts[1], RELATION_ORACLE_ONLY)
            )
        if gc.jsep_form_count is not None and m >= 4:
            k = m.bit_length() - 1
            name = f"{k + 1}-separable-form"
            if m <= (1 << (n - 2)):
                rows.append(
                    CensusRow(
                        name,
                        gc.jsep_form_count,
                        qcounts[k + 1] if exhaustive else None,
                        RELATION_EQUAL if exhaustive else RELATION_FORMULA_ONLY,
                    )
                )
            else:
                rows.append(
                    CensusRow(
                        name,
                        None if exhaustive else gc.jsep_form_count,
                        qcounts[k + 1] if exhaustive else None,
                        RELATION_ORACLE_ONLY if exhaustive else RELATION_FORMULA_ONLY,
                        note=(
                            f"outside the M^2 < 2^n regime; form count "
                            f"{gc.jsep_form_count} not asserted"
                        ),
                    )
                )
    if exhaustive:
        for q in range(1, n + 1):
            if qcounts[q]:
                rows.append(CensusRow(f"q-{q}", None, qcounts[q], RELATION_ORACLE_ONLY))
    return tuple(rows)


def enumerate_grover(
    n: int, m: int, workers: int = 1, cap_states: int = GROVER_STATE_CAP
) -> CensusReport:
    """Classify every placement of M minus signs among the 2^n amplitudes."""
    gc = count_grover(n, m)
    if gc.total > cap_states:
        raise ResourceCapError(
            f"enumeration capped at {cap_states} states, B(2^{n}, {m}) = {gc.total}"
        )
    jobs = [(n, m, lo, hi) for lo, hi in _shard_bounds(gc.total, workers)]
    parts = _run_sharded(_grover_scan, jobs, workers)
    qcounts = [sum(col) for col in zip(*parts)]
    return CensusReport("grover", n, _grover_rows(gc, qcounts), m=m)


def grover_formula_report(n: int, m: int) -> CensusReport:
    """Closed-form rows only for one (n, M)."""
    gc = count_grover(n, m)
    return CensusReport("grover", n, _grover_rows(gc, None), m=m)


def enumerate_simon(n: int, cap: int = FACTOR_CAP) -> CensusReport:
    """Classify the collapsed state of every nonzero period on n qubits."""
    sc = count_simon(n)
    if n > cap:
        raise ResourceCapError(f"enumeration capped at n = {cap}, got {n}")
    per_weight = [0] * (n + 1)
    matched = [0] * (n + 1)
    for r in range(1, 1 << n):
        k = r.bit_count()
        per_weight[k] += 1
        fac = finest_factorization(simon_canonical_state(n, r), cap=cap)
        if fac.q == n - k + 1:
            matched[k] += 1
    rows = [
        CensusRow(
            f"weight-{row.weight}",
            row.count,
            matched[row.weight],
            RELATION_EQUAL,
            note=f"collapsed class q = {row.q}",
        )
        for row in sc.rows
    ]
    rows.append(
        CensusRow("total-nonzero-periods", (1 << n) - 1, sum(per_weight), RELATION_EQUAL)
    )
    rows.append(
        CensusRow("modal-weight", sc.modal_weight, None, RELATION_FORMULA_ONLY)
    )
    return CensusReport("simon", n, tuple(rows))


def simon_formula_report(n: int) -> CensusReport:
    sc = count_simon(n)
    rows = [
        CensusRow(
            f"weight-{row.weight}",
            row.count,
            None,
            RELATION_FORMULA_ONLY,
            note=f"collapsed class q = {row.q}",
        )
        for row in sc.rows
    ]
    rows.append(
        CensusRow("total-nonzero-periods", (1 << n) - 1, None, RELATION_FORMULA_ONLY)
    )
    rows.append(CensusRow("modal-weight", sc.modal_weight, None, RELATION_FORMULA_ONLY))
    return CensusReport("simon", n, tuple(rows))
