"""Upper and lower estimates of maximum series, and a corpus checker.

Every bound is an exact rational.  The corpus checker visits every shift
vector of every moduli multiset in a pool and tests each filling against
its own densities for every admissible q at once: a bound of the form
``sr(q) < c (n + q) + 1`` fails for some q iff a circular window of gaps
has ``sum(gaps) - c * count`` above a fixed threshold, which is a maximum
subarray problem.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from sympy import primefactors

from .grid import Filling, PeriodProfile, profile
from .series import max_series_in_period

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundReport:
    system: tuple[int, ...]
    shifts: tuple[int, ...]
    n: int
    q: int
    msr: int
    bound_complete: Fraction
    bound_two_sided: Fraction
    effective_density: Fraction
    gamma: Fraction
    gamma_star: Fraction
    fillings: int = 1

    @property
    def violates_complete(self) -> bool:
        return self.msr >= self.bound_complete

    @property
    def violates_two_sided(self) -> bool:
        return self.msr >= self.bound_two_sided

    def row(self) -> list[str]:
        return [
            ",".join(map(str, self.system)),
            ",".join(map(str, self.shifts)),
            str(self.n),
            str(self.q),
            str(self.msr),
            str(self.bound_complete),
            str(self.bound_two_sided),
            str(self.effective_density),
            str(self.gamma),
            str(self.gamma_star),
            str(self.fillings),
            str(int(self.violates_complete)),
            str(int(self.violates_two_sided)),
        ]


CSV_HEADER = [
    "system", "shifts", "n", "q", "msr", "bound_complete", "bound_two_sided", "rho",
    "gamma", "gamma_star", "fillings", "violates_complete", "violates_two_sided",
]


def main_bound_complete(prof: PeriodProfile, n: int, q: int) -> Fraction:
    """(n + q) / (1 - gamma*) + 1."""
    if prof.units == 0:
        raise ValueError("singular filling")
    gs = prof.gamma_star
    assert gs < 1
    return Fraction(n + q) / (1 - gs) + 1


def main_bound_two_sided(prof: PeriodProfile, n: int, q: int, unit_coefficient: bool = False) -> Fraction:
    """2 (n + q) / (1 - gamma) + 1; coefficient 1 with ``unit_coefficient``."""
    if prof.units == 0:
        raise ValueError("singular filling")
    c = 1 if unit_coefficient else 2
    return c * Fraction(n + q) / (1 - prof.gamma) + 1


def lower_two_sided(prof: PeriodProfile, n: int, q: int, c: Fraction) -> Fraction:
    """C (n + q) / (1 - gamma) + 1, the lower side of the two-sided form."""
    return Fraction(c) * Fraction(n + q) / (1 - prof.gamma) + 1


def effective_density(msr: int, n: int, q: int) -> Fraction:
    """The density rho with msr = (n + q) / (1 - rho) + 1."""
    if msr <= 1:
        raise ValueError("effective density undefined")
    return 1 - Fraction(n + q, msr - 1)


def report(filling: Filling, q: int, msr: int | None = None) -> BoundReport:
    """Bounds for one filling; msr defaults to its own longest q-series."""
    prof = profile(filling)
    n = filling.n
    if msr is None:
        msr = max_series_in_period(filling, q).length
    return BoundReport(
        tuple(filling.moduli), tuple(filling.shifts), n, q, msr,
        main_bound_complete(prof, n, q), main_bound_two_sided(prof, n, q),
        effective_density(msr, n, q), prof.gamma, prof.gamma_star,
    )


# ------------------------------------------------------------ corpus check

def _max_linear(b: np.ndarray) -> tuple[int, int, int]:
    """(best sum, start, length) over nonempty subarrays of b."""
    P = np.concatenate(([0], np.cumsum(b)))
    runmin = np.minimum.accumulate(P[:-1])
    j = int(np.argmax(P[1:] - runmin)) + 1
    i = int(np.argmin(P[:j]))
    return int(P[j] - P[i]), i, j - i


def max_proper_window(a: np.ndarray) -> tuple[int, int, int]:
    """Largest sum of a circular window of a with 1 <= length <= len(a) - 1.

    Returns (sum, start, length).  A proper window or its complement is a
    linear subarray missing the first or the last element.
    """
    E = len(a)
    if E < 2:
        raise ValueError("need at least two gaps")
    total = int(a.sum())
    best = None
    for off, b in ((0, a[:-1]), (1, a[1:])):
        s, i, w = _max_linear(b)
        cand = (s, off + i, w)
        if best is None or cand[0] > best[0]:
            best = cand
        s, i, w = _max_linear(-b)
        # complement of the minimal linear piece
        cand = (total + s, (off + i + w) % E, E - w)
        if cand[0] > best[0]:
            best = cand
    return best


@dataclass
class _Worst:
    margin: Fraction
    shifts: tuple[int, ...]
    q: int
    length: int
    gamma: Fraction
    gamma_star: Fraction
    E: int
    PZ: int


def _shift_vectors(moduli: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Shift vectors up to translation: the first grid sits at 0 and equal
    moduli take nondecreasing residues."""
    groups = [(a, k) for a, k in Counter(moduli).items()]
    groups.sort()
    parts = []
    for g, (a, k) in enumerate(groups):
        if g == 0:
            parts.append([(0,) + c for c in itertools.combinations_with_replacement(range(a), k - 1)])
        else:
            parts.append(list(itertools.combinations_with_replacement(range(a), k)))
    order = [a for a, k in groups for _ in range(k)]
    for combo in itertools.product(*parts):
        yield tuple(order), tuple(x for part in combo for x in part)


def _minimal_period(bits: np.ndarray, L: int, primes: Sequence[int]) -> int:
    for p in primes:
        while L % p == 0:
            sub = L // p
            if np.array_equal(bits[:L].reshape(p, sub), np.broadcast_to(bits[:sub], (p, sub))):
                L = sub
            else:
                break
    return L


def check_multiset(moduli: Sequence[int]) -> tuple[BoundReport | None, int, int, int]:
    """Check every filling of one multiset.

    Returns (tightest report for the complete-imaging bound, fillings
    checked, violations of that bound, violations of the two-sided bound).
    """
    moduli = sorted(moduli)
    n = len(moduli)
    L = reduce(math.lcm, moduli, 1)
    primes = primefactors(L)
    inv_sum = sum((Fraction(1, a) for a in moduli), Fraction(0))
    idx = np.arange(L)
    rows = {a: [idx % a != r for r in range(a)] for a in set(moduli)}
    worst = None
    count = bad_complete = bad_two = 0
    for order, shifts in _shift_vectors(moduli):
        bits = np.ones(L, dtype=bool)
        for a, s in zip(order, shifts):
            bits &= rows[a][s]
        PZ = _minimal_period(bits, L, primes)
        units = np.flatnonzero(bits[:PZ])
        E = len(units)
        if E < 2:
            continue
        count += 1
        gaps = np.diff(np.append(units, units[0] + PZ)).astype(np.int64)
        h_star = PZ * inv_sum
        N, D = h_star.numerator, h_star.denominator
        DE = D * E
        # complete imaging: sr(q) < (n+q)(DE+N)/(DE) + 1
        s_c, st_c, w_c = max_proper_window(DE * gaps - (DE + N))
        if s_c >= (n - 1) * (DE + N) + DE:
            bad_complete += 1
        # two-sided: sr(q) < 2 (n+q) PZ / E + 1
        s_t, _, _ = max_proper_window(E * gaps - 2 * PZ)
        if s_t >= 2 * (n - 1) * PZ + E:
            bad_two += 1
        margin = Fraction((n - 1) * (DE + N) + DE - s_c, DE)
        if worst is None or margin < worst.margin:
            length = int(np.roll(gaps, -st_c)[:w_c].sum())
            gamma = Fraction(PZ - E, PZ)
            gstar = h_star / (E + h_star)
            worst = _Worst(margin, shifts, w_c - 1, length, gamma, gstar, E, PZ)
    if worst is None:
        return None, 0, 0, 0
    w = worst
    prof = PeriodProfile(w.PZ, w.E, w.PZ - w.E, w.PZ * inv_sum, w.gamma, w.gamma_star)
    rep = BoundReport(
        tuple(moduli), w.shifts, n, w.q, w.length,
        main_bound_complete(prof, n, w.q), main_bound_two_sided(prof, n, w.q),
        effective_density(w.length, n, w.q), w.gamma, w.gamma_star, count,
    )
    return rep, count, bad_complete, bad_two


@dataclass(frozen=True)
class CorpusSpec:
    pool: tuple[int, ...] = tuple(range(2, 13))
    max_grids: int = 4
    period_limit: int = 10**4

    def systems(self) -> list[tuple[int, ...]]:
        out = []
        for n in range(1, self.max_grids + 1):
            for mods in itertools.combinations_with_replacement(sorted(self.pool), n):
                if reduce(math.lcm, mods, 1) <= self.period_limit:
                    out.append(mods)
        return out


@dataclass
class CorpusResult:
    reports: list[BoundReport] = field(default_factory=list)
    fillings: int = 0
    violations_complete: int = 0
    violations_two_sided: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.reports:
            w.writerow(r.row())
        return buf.getvalue()


def bound_corpus_check(spec: CorpusSpec = CorpusSpec(), workers: int = 1) -> CorpusResult:
    """Exhaustive check of both bounds over every filling of the corpus."""
    systems = spec.systems()
    result = CorpusResult()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(check_multiset, systems, chunksize=8))
    else:
        outcomes = [check_multiset(m) for m in systems]
    for mods, (rep, count, b_c, b_t) in zip(systems, outcomes):
        result.fillings += count
        result.violations_complete += b_c
        result.violations_two_sided += b_t
        if rep is not None:
            result.reports.append(rep)
    log.info("corpus: %d systems, %d fillings", len(systems), result.fillings)
    return result


# ------------------------------------------------------- prime-system forms

def sp1_reciprocal_identity(primes: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Both sides of n / (1 - gamma_n) = n * prod(1 + 1/(p - 1)) for the
    grids S(p) with p in ``primes`` (pairwise coprime, so 1 - gamma is a
    product)."""
    n = len(primes)
    density = reduce(lambda acc, p: acc * Fraction(p - 1, p), primes, Fraction(1))
    left = Fraction(n) / density
    right = n * reduce(lambda acc, p: acc * (1 + Fraction(1, p - 1)), primes, Fraction(1))
    return left, right


def sp1_coefficient(primes: Sequence[int]) -> Fraction:
    """C_n = n / ((1 - gamma_n) p_n) for the odd primes p_1..p_n."""
    left, _ = sp1_reciprocal_identity(primes)
    return left / primes[-1]
