"""Search for orthogonal coefficient vectors.

Exhaustive mode enumerates, in lexicographic order, every c in [1, m)^n (or
[0, m)^n with allow_zero) whose circular autocorrelation is 1 at lag 0 and 0
at lags 1..n//2. Candidates are assigned depth-first with the lag sums
accumulated incrementally; the last two coefficients are never enumerated
blindly but recovered by constraint solving, so no condition is ever checked
post hoc on a full vector that algebra already rules out.

Randomized mode samples uniformly with a seeded PCG64 generator (numpy's
default bit generator); identical (seed, trials) reproduce the same stream.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Sequence

import numpy as np

from .core import (
    ConditionReport,
    NhtSpec,
    conditions,
    gram,
    identity_matrix,
    spec_to_document,
)
from .errors import BudgetExceeded
from .modular import check_modulus, solve_linear_congruence, unit_square_roots

DEFAULT_BUDGET = 10**10

EXHAUSTIVE = "exhaustive"
RANDOMIZED = "randomized"


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run; immutable so runs are reproducible."""

    n: int
    modulus: int
    mode: str = EXHAUSTIVE
    trials: int = 0
    seed: int = 0
    dedup: bool = False
    allow_zero: bool = False
    limit: int | None = None
    budget: int | None = DEFAULT_BUDGET
    workers: int = 1

    def __post_init__(self) -> None:
        check_modulus(self.modulus)
        if self.n < 1:
            raise ValueError("half-size n must be >= 1")
        if self.mode not in (EXHAUSTIVE, RANDOMIZED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class SearchSummary:
    count: int
    candidates_examined: int
    elapsed_seconds: float


@dataclass(frozen=True)
class SolutionStream:
    """Lexicographically ordered valid specs plus run diagnostics."""

    solutions: tuple[NhtSpec, ...]
    summary: SearchSummary

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def coefficient_vectors(self) -> list[tuple[int, ...]]:
        return [s.coeffs for s in self.solutions]

    def jsonl(self) -> list[str]:
        """One spec document per line, the machine output format."""
        return [json.dumps(spec_to_document(s)) for s in self.solutions]


def _rotations(c: tuple[int, ...]):
    for r in range(len(c)):
        yield c[r:] + c[:r]


def orbit(coeffs: Sequence[int], m: int, roots: tuple[int, ...] | None = None) -> set[tuple[int, ...]]:
    """Closure of a vector under rotations, reversal and unit-square scalings.

    Each generator preserves the autocorrelation residues, so every member is
    valid exactly when the input is.
    """
    check_modulus(m)
    c = tuple(int(v) % m for v in coeffs)
    if roots is None:
        roots = unit_square_roots(m)
    members: set[tuple[int, ...]] = set()
    for s in roots:
        scaled = tuple(s * v % m for v in c)
        members.update(_rotations(scaled))
        members.update(_rotations(tuple(reversed(scaled))))
    return members


def canonicalize(coeffs: Sequence[int], m: int, roots: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """Lexicographically smallest orbit member; idempotent."""
    return min(orbit(coeffs, m, roots))


def _search_block(
    n: int,
    m: int,
    allow_zero: bool,
    dedup: bool,
    roots: tuple[int, ...],
    limit: int | None,
    c0: int | None,
) -> tuple[list[tuple[int, ...]], int]:
    """All solutions with the given fixed first coefficient, lex order.

    c0 is None when the block covers the whole space (n <= 2). Returns the
    solution tuples and the number of full candidates whose conditions were
    evaluated.
    """
    lo = 0 if allow_zero else 1
    K = n // 2
    out: list[tuple[int, ...]] = []
    examined = 0

    def emit(cand: tuple[int, ...]) -> None:
        if dedup and cand != min(orbit(cand, m, roots)):
            return
        out.append(cand)

    def full() -> bool:
        return limit is not None and len(out) >= limit

    if n == 1:
        for x in range(lo, m):
            examined += 1
            if x * x % m == 1:
                emit((x,))
                if full():
                    break
        return out, examined

    c = [0] * n
    # index tables: which already-assigned coefficients multiply x = c[n-2]
    # and y = c[n-1] in each lag sum (indices > n-3 belong to x, y themselves)
    alpha_idx = [
        [i for i in ((n - 2 + k) % n, (n - 2 - k) % n) if i <= n - 3] for k in range(K + 1)
    ]
    beta_idx = [
        [i for i in ((n - 1 + k) % n, (n - 1 - k) % n) if i <= n - 3] for k in range(K + 1)
    ]
    gamma1 = 2 if n == 2 else 1  # multiplicity of the x*y term in the lag-1 sum
    # unit-inverse table, consulted only when two linear lags exist (n >= 6);
    # the budget guard keeps m small whenever that is the case
    inv = [0] * m
    if K >= 3:
        for v in range(1, m):
            if math.gcd(v, m) == 1:
                inv[v] = pow(v, -1, m)

    def tail(P: list[int]) -> None:
        """Solve the last two coefficients against the remaining conditions.

        Lags >= 2 are linear in (x, y); any two of them with a unit
        determinant pin the pair outright. Otherwise scan x and solve each
        lag as a linear congruence in y. Every candidate that survives is
        checked against the full condition set before emission.
        """
        nonlocal examined
        ab = [(0, 0)] * (K + 1)
        for k in range(1, K + 1):
            ab[k] = (
                sum(c[i] for i in alpha_idx[k]) % m,
                sum(c[i] for i in beta_idx[k]) % m,
            )

        def check(x: int, y: int) -> bool:
            nonlocal examined
            examined += 1
            if not allow_zero and (x == 0 or y == 0):
                return False
            if (P[0] + x * x + y * y) % m != 1:
                return False
            for k in range(1, K + 1):
                al, be = ab[k]
                g = gamma1 if k == 1 else 0
                if (P[k] + al * x + be * y + g * x * y) % m:
                    return False
            return True

        prefix = tuple(c[: n - 2])
        lin = [(ab[k][0], ab[k][1], -P[k] % m) for k in range(2, K + 1)]
        for (a1, b1, t1), (a2, b2, t2) in itertools.combinations(lin, 2):
            dinv = inv[(a1 * b2 - a2 * b1) % m]
            if not dinv:
                continue
            x = (b2 * t1 - b1 * t2) * dinv % m
            y = (a1 * t2 - a2 * t1) * dinv % m
            if check(x, y):
                emit(prefix + (x, y))
            return

        for x in range(lo, m):
            pinned: tuple[int, ...] | None = None
            for k in range(1, K + 1):
                al, be = ab[k]
                coef = (be + gamma1 * x) % m if k == 1 else be
                rhs = -(P[k] + al * x) % m
                if coef or rhs:
                    pinned = solve_linear_congruence(coef, rhs, m)
                    break
            ys = range(lo, m) if pinned is None else pinned
            for y in ys:
                if check(x, y):
                    emit(prefix + (x, y))
                    if full():
                        return
            if full():
                return

    def descend(d: int, P: list[int]) -> None:
        if d == n - 2:
            tail(P)
            return
        for v in range(lo, m):
            if full():
                return
            c[d] = v
            P2 = list(P)
            P2[0] += v * v
            for k in range(1, K + 1):
                if d >= k:
                    P2[k] += c[d - k] * v
                if d + k >= n:
                    P2[k] += v * c[d + k - n]
            descend(d + 1, P2)

    if c0 is None:
        descend(0, [0] * (K + 1))
    else:
        c[0] = c0
        P = [0] * (K + 1)
        P[0] = c0 * c0
        descend(1, P)
    return out, examined


def exhaustive_search(cfg: SearchConfig) -> SolutionStream:
    """Enumerate every valid coefficient vector, lexicographically.

    Raises BudgetExceeded up front when the raw candidate space is larger
    than cfg.budget (pass budget=None to lift the guard). The first
    coefficient partitions the space across workers; per-block results are
    merged in order, so output is identical for any worker count.
    """
    if cfg.mode != EXHAUSTIVE:
        raise ValueError("config mode is not exhaustive")
    n, m = cfg.n, cfg.modulus
    lo = 0 if cfg.allow_zero else 1
    raw = (m - lo) ** n
    if cfg.budget is not None and raw > cfg.budget:
        raise BudgetExceeded(f"{raw} raw candidates exceed budget {cfg.budget}")
    started = time.perf_counter()
    roots = unit_square_roots(m) if cfg.dedup else ()

    block = partial(_search_block, n, m, cfg.allow_zero, cfg.dedup, roots, cfg.limit)
    if n <= 2:
        results = [block(None)]
    else:
        firsts = list(range(lo, m))
        if cfg.workers > 1 and len(firsts) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(block, firsts))
        else:
            results = [block(first) for first in firsts]

    vectors: list[tuple[int, ...]] = []
    examined = 0
    for sols, count in results:
        examined += count
        vectors.extend(sols)
    if cfg.limit is not None:
        vectors = vectors[: cfg.limit]
    solutions = tuple(NhtSpec(m, v, allow_zero=cfg.allow_zero) for v in vectors)
    elapsed = time.perf_counter() - started
    return SolutionStream(solutions, SearchSummary(len(solutions), examined, elapsed))


_SAMPLE_CHUNK = 200_000


def random_search(cfg: SearchConfig) -> SolutionStream:
    """Sample trial vectors uniformly and keep the valid ones.

    Output is exact-deduplicated and sorted lexicographically, so a fixed
    (seed, trials) pair yields a byte-identical stream.
    """
    if cfg.mode != RANDOMIZED:
        raise ValueError("config mode is not randomized")
    n, m = cfg.n, cfg.modulus
    lo = 0 if cfg.allow_zero else 1
    started = time.perf_counter()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    K = n // 2
    found: set[tuple[int, ...]] = set()
    remaining = cfg.trials
    while remaining > 0:
        t = min(remaining, _SAMPLE_CHUNK)
        remaining -= t
        cand = rng.integers(lo, m, size=(t, n), dtype=np.int64)
        ok = np.ones(t, dtype=bool)
        for k in range(K + 1):
            rk = np.zeros(t, dtype=np.int64)
            for i in range(n):
                rk = (rk + cand[:, i] * cand[:, (i + k) % n] % m) % m
            ok &= rk == (1 if k == 0 else 0)
        for row in cand[ok]:
            found.add(tuple(int(v) for v in row))

    vectors = sorted(found)
    if cfg.dedup:
        roots = unit_square_roots(m)
        vectors = [v for v in vectors if v == min(orbit(v, m, roots))]
    if cfg.limit is not None:
        vectors = vectors[: cfg.limit]
    solutions = tuple(NhtSpec(m, v, allow_zero=cfg.allow_zero) for v in vectors)
    elapsed = time.perf_counter() - started
    return SolutionStream(solutions, SearchSummary(len(solutions), cfg.trials, elapsed))


@dataclass(frozen=True)
class VerificationReport:
    """Condition residues cross-checked against the full gram product."""

    spec: NhtSpec
    report: ConditionReport
    conditions_ok: bool
    gram_identity: bool

    @property
    def agreement(self) -> bool:
        return self.conditions_ok == self.gram_identity

    @property
    def valid(self) -> bool:
        return self.gram_identity


def verify_solution(spec: NhtSpec) -> VerificationReport:
    """Evaluate both validity routes; they must always agree."""
    report = conditions(spec)
    gram_ok = gram(spec) == identity_matrix(spec.size)
    return VerificationReport(spec, report, report.satisfied, gram_ok)
