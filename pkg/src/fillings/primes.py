"""Prime systems of grids and the number-theoretic statistics built on them.

Prime indexing: ``p_0 = 2, p_1 = 3, p_2 = 5, ...`` throughout, so the odd
system's i-th modulus is ``p_i`` and the full system's is ``p_{i-1}``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .grid import Filling, unit_mask
from .series import enumerate_series


# ------------------------------------------------------------------ sieve

def sieve_mask(limit: int) -> np.ndarray:
    """is_prime[i] for 0 <= i <= limit."""
    if limit < 1:
        return np.zeros(max(limit + 1, 0), dtype=bool)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    mask[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if mask[p]:
            mask[p * p::2 * p] = False
    return mask


@lru_cache(maxsize=8)
def _primes_upto(limit: int) -> np.ndarray:
    return np.flatnonzero(sieve_mask(limit))


def sieve(limit: int) -> np.ndarray:
    """All primes <= limit, ascending."""
    return _primes_upto(int(limit)).copy()


def nth_prime(i: int) -> int:
    """p_i with p_0 = 2."""
    if i < 0:
        raise ValueError("prime index must be non-negative")
    limit = 64
    while True:
        ps = _primes_upto(limit)
        if len(ps) > i:
            return int(ps[i])
        limit *= 4


def first_primes(count: int, start: int = 0) -> list[int]:
    """p_start, ..., p_{start+count-1}."""
    if count <= 0:
        return []
    nth_prime(start + count - 1)
    limit = 64
    while len(_primes_upto(limit)) < start + count:
        limit *= 4
    return [int(p) for p in _primes_upto(limit)[start:start + count]]


def prime_index(p: int) -> int:
    ps = _primes_upto(max(64, 1 << int(p).bit_length()))
    i = int(np.searchsorted(ps, p))
    if i >= len(ps) or ps[i] != p:
        raise ValueError(f"{p} is not prime")
    return i


# ---------------------------------------------------------- prime systems

class SystemKind(str, Enum):
    SP0 = "SP0"
    SP1 = "SP1"
    SP1_PRIME = "SP1_PRIME"
    SM04 = "SM04"
    SW0 = "SW0"
    S2P = "S2P"
    S3W = "S3W"


@dataclass(frozen=True)
class PrimeSystemSpec:
    """The first n grids of a named prime system.

    SW0 takes n = 2k + 1 grids (S(2) and both classes 0, 2 of each odd
    prime); S3W takes n = 2k grids (the Smith system); the rest take any n.
    """

    kind: SystemKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SystemKind(self.kind))
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind is SystemKind.SW0 and self.n % 2 == 0:
            raise ValueError("SW0 has an odd number of grids")
        if self.kind is SystemKind.S3W and self.n % 2:
            raise ValueError("S3W has an even number of grids")

    def moduli(self) -> list[int]:
        n, k = self.n, self.kind
        if k is SystemKind.SP0:
            return first_primes(n)
        if k is SystemKind.SP1:
            return first_primes(n, 1)
        if k is SystemKind.SP1_PRIME:
            return ([3, 4] + first_primes(n - 2, 2))[:n]
        if k is SystemKind.SM04:
            return ([2, 3, 4] + first_primes(n - 3, 2))[:n]
        if k is SystemKind.SW0:
            odd = first_primes((n - 1) // 2, 1)
            return [2] + [p for p in odd for _ in (0, 1)]
        if k is SystemKind.S2P:
            return [2] + [2 * p for p in first_primes(n - 1)]
        half = n // 2
        odd = first_primes(half - 1, 1)
        return [2] + odd + [4] + [2 * p for p in odd]

    def shifts(self) -> list[int]:
        n, k = self.n, self.kind
        if k is SystemKind.SW0:
            return [0] + [s for _ in range((n - 1) // 2) for s in (0, 2)]
        if k is SystemKind.S3W:
            # odd i with i = 3 (mod 4): index 2s+1 whose half s is odd
            half = n // 2
            return [0] * half + [1] * half
        if k is SystemKind.SM04:
            # S(4) on the odd class left by S(2) stretches lengths by four
            return [1 if a == 4 else 0 for a in self.moduli()]
        return [0] * n

    def filling(self) -> Filling:
        return Filling.from_moduli(self.moduli(), self.shifts())


def sw0_density(k: int) -> Fraction:
    """1 - (1/2) prod_{i=1..k} (1 - 2/p_i)."""
    prod = Fraction(1)
    for p in first_primes(k, 1):
        prod *= 1 - Fraction(2, p)
    return 1 - prod / 2


def s3w_density(n: int) -> Fraction:
    """1 - (1/4) prod_{i=1..n-1} (1 - 2/p_i)."""
    prod = Fraction(1)
    for p in first_primes(n - 1, 1):
        prod *= 1 - Fraction(2, p)
    return 1 - prod / 4


# -------------------------------------------------- axial configurations

def _log2_floor_below(x: int) -> int:
    """max {i : 2**i < x}."""
    return (x - 1).bit_length() - 1


def check_window(n: int, q: int) -> None:
    if n < 1 or q < 0:
        raise ValueError("n must be positive and q non-negative")
    if nth_prime(n + max(q - 1, 0)) >= nth_prime(n + 1) ** 2:
        raise ValueError("window exceeded")


def axial_kf1(n: int, outer: int = 1) -> list[int]:
    """First axial configuration of the odd system, ``outer`` prime gaps per side."""
    p = first_primes(outer + 1, n + 1)
    side = [(p[0] - 1) // 2] + [(p[i + 1] - p[i]) // 2 for i in range(outer)]
    return side[::-1] + [1] + side


def _kf2_right(n: int, outer: int) -> tuple[list[int], int]:
    """Right half of the second configuration and its m."""
    p = first_primes(outer + 1, n + 1)
    m = _log2_floor_below(p[0])
    right = [2**r for r in range(m)]
    if outer:
        right += [p[0] - 2**m] + [p[i] - p[i - 1] for i in range(1, outer)]
    return right, m


def axial_kf2(n: int, outer: int = 0) -> list[int]:
    """Second axial configuration: the central series 2, powers of two up to
    2^(m-1) on each side, then p_{n+1} - 2^m and prime gaps outward."""
    right, _ = _kf2_right(n, outer)
    return right[::-1] + [2] + right


def kf1_series_length(n: int, q: int) -> int:
    """Longest q-series in the core of the first axial configuration."""
    check_window(n, q)
    p = lambda i: nth_prime(n + i)
    if q == 0:
        return (p(1) - 1) // 2
    if q == 1:
        return (p(2) - 1) // 2
    if q == 2:
        return p(1)
    return max(p(i) + (p(q - i) - p(i)) // 2 for i in range(1, q // 2 + 1))


def kf2_series_length(n: int, q: int) -> int:
    """Longest sum of q + 1 consecutive series of the second configuration.

    Below q = 2m the window must hold a series 2^(m-1) (a lone series may
    also be p_{n+1} - 2^m).  At q = 2m it must cover the core between the
    two series 2^(m-1), beyond that the whole power-of-two core.
    """
    check_window(n, q)
    right, m = _kf2_right(n, q + 1)
    seq = right[::-1] + [2] + right
    c = len(right)
    anchors = {c - m, c + m} | ({c - m - 1, c + m + 1} if q == 0 else set())
    best = 0
    for lo in range(len(seq) - q):
        hi = lo + q
        if q > 2 * m:
            ok = lo <= c - m and hi >= c + m
        elif q == 2 * m:
            ok = lo <= c - m + 1 and hi >= c + m - 1
        else:
            ok = any(lo <= i <= hi for i in anchors)
        if ok:
            best = max(best, sum(seq[lo:hi + 1]))
    return best


def configuration_around(filling: Filling, center_twice: int, width: int) -> list[int]:
    """Series lengths of the units within ``width`` of the point center_twice/2."""
    lo = (center_twice - 2 * width) // 2
    hi = (center_twice + 2 * width) // 2 + 1
    units = np.flatnonzero(unit_mask(filling, hi - lo + 1, lo)) + lo
    return [int(x) for x in np.diff(units)]


# ------------------------------------------------------------- n_m table

def n_m_row(m: int) -> tuple[int, int, int, int]:
    """(m, n, p_n, p_{n+1}) with p_{n+1} the least prime above 2^m."""
    ps = _primes_upto(2 ** (m + 1) + 2)
    j = int(np.searchsorted(ps, 2**m, side="right"))
    return m, j - 1, int(ps[j - 1]), int(ps[j])


def n_m_table(m_range: Sequence[int] = range(2, 13)) -> list[tuple[int, int, int, int]]:
    return [n_m_row(m) for m in m_range]


# ----------------------------------------------------- lower/upper forms

def odd_lower_m(n: int) -> int:
    """Largest stable m of m = [log2 p_{n-2m-1}], iterating down from
    [log2 p_{n-1}]."""
    m = nth_prime(n - 1).bit_length() - 1
    while m >= 0:
        idx = n - 2 * m - 1
        if idx >= 0 and nth_prime(idx).bit_length() - 1 == m:
            return m
        m -= 1
    raise ValueError("no stable m")


def odd_msr_lower(n: int) -> int:
    """2 p_{n-2m-1}, the lower estimate of msr_n for the odd system, n >= 26."""
    if n < 26:
        raise ValueError("estimate stated for n >= 26")
    m = odd_lower_m(n)
    return 2 * nth_prime(n - 2 * m - 1)


def odd_msr_envelope(n: int, q: int = 0) -> int:
    """p_{n+q}: upper estimate of msr_n(q) in the odd system while n + q < 25."""
    if n + q >= 25:
        raise ValueError("window exceeded")
    return nth_prime(n + q)


def odd_msr_asymptotic(n: int) -> int:
    """2 p_{n-2m} with m = [log2 p_{n+2m}], stated for n + 2m > 28."""
    m = nth_prime(n + 1).bit_length() - 1
    for _ in range(64):
        nxt = nth_prime(n + 2 * m).bit_length() - 1
        if nxt == m:
            break
        m = nxt
    if n + 2 * m <= 28 or n - 2 * m < 0:
        raise ValueError("window exceeded")
    return 2 * nth_prime(n - 2 * m)


def majorant_report(n: int, msr: int, s_values: Sequence[int] = range(1, 6)) -> list[tuple[int, int, bool]]:
    """(s, 2 p_{n-s}, msr < 2 p_{n-s}) for the odd system."""
    return [(s, 2 * nth_prime(n - s), msr < 2 * nth_prime(n - s)) for s in s_values if n - s >= 0]


# ---------------------------------------------------------- doubling law

def series_multiset(filling: Filling) -> list[int]:
    return sorted(r.length for r in enumerate_series(filling, 0))


def doubling_check(n: int) -> bool:
    """Full q=0 length multisets: SP0(n+1) = 2 SP1(n), SM04(n+2) = 4 SP1(n)."""
    base = series_multiset(PrimeSystemSpec(SystemKind.SP1, n).filling())
    sp0 = series_multiset(PrimeSystemSpec(SystemKind.SP0, n + 1).filling())
    sm04 = series_multiset(PrimeSystemSpec(SystemKind.SM04, n + 2).filling())
    return sp0 == [2 * x for x in base] and sm04 == [4 * x for x in base]


# ---------------------------------------------------------- gaps and pairs

@dataclass(frozen=True)
class GapRow:
    m: int
    p_m: int
    lo: int
    hi: int
    max_gap: int
    max_ratio: float
    first_series_ratio: float
    interval_ratio: float


def gap_scan(N: int) -> tuple[int, tuple[int, int], list[GapRow]]:
    """Largest prime gap up to N and per-interval ratio diagnostics.

    Rows cover the intervals (p_{m-1}^2, p_m^2] that meet [2, N]; max_ratio
    is the largest (p_{k+1} - p_k) / sqrt(p_k) with p_{k+1} in the interval.
    """
    if N < 9:
        raise ValueError("N must be at least 9")
    ps = sieve(N)
    gaps = np.diff(ps)
    i = int(np.argmax(gaps))
    ratios = gaps / np.sqrt(ps[:-1])
    rows = []
    m = 1
    while True:
        pm, prev = nth_prime(m), nth_prime(m - 1)
        lo, hi = prev * prev + 1, pm * pm
        if lo > N:
            break
        sel = (ps[1:] >= lo) & (ps[1:] <= min(hi, N))
        if sel.any():
            j = np.flatnonzero(sel)
            k = int(j[np.argmax(ratios[j])])
            rows.append(GapRow(m, pm, lo, hi, int(gaps[k]), float(ratios[k]),
                               (pm - 1) / pm, (pm * pm - pm) / pm))
        m += 1
    return int(gaps[i]), (int(ps[i]), int(ps[i + 1])), rows


def legendre_m(N: int) -> int:
    """1 + max {i : p_i <= sqrt N}."""
    ps = sieve(math.isqrt(N))
    return len(ps)


def _seniors(ps: np.ndarray, gap: int, consecutive: bool) -> np.ndarray:
    if consecutive:
        d = np.diff(ps)
        return ps[1:][d == gap]
    pset = np.zeros(int(ps[-1]) + 1 if len(ps) else 1, dtype=bool)
    pset[ps] = True
    cand = ps[ps > gap]
    return cand[pset[cand - gap]]


def gap_pairs(gap: int, lo: int, hi: int, consecutive: bool = True) -> np.ndarray:
    """Senior primes p in [lo, hi] with p - gap prime (and, if consecutive,
    no prime in between)."""
    ps = sieve(hi)
    s = _seniors(ps, gap, consecutive)
    return s[s >= lo]


def twins(lo: int, hi: int) -> np.ndarray:
    return gap_pairs(2, lo, hi, True)


def kinsfolk(r: int, lo: int, hi: int) -> np.ndarray:
    """Consecutive primes differing by 2r, senior in [lo, hi]."""
    return gap_pairs(2 * r, lo, hi, True)


def brun_partial(limit: int, exact: bool = False) -> float | Fraction:
    """Sum of 1/B over senior twins B <= limit."""
    seniors = twins(2, limit)
    if exact:
        return sum((Fraction(1, int(b)) for b in seniors), Fraction(0))
    return math.fsum(1.0 / float(b) for b in seniors)


def sum_ratios(N: int) -> tuple[Fraction, Fraction]:
    """(S6/TW, K6/TW) over seniors <= N."""
    tw = len(twins(2, N))
    s6 = len(gap_pairs(6, 2, N, consecutive=False))
    k6 = len(kinsfolk(3, 2, N))
    if tw == 0:
        raise ValueError("no twins below N")
    return Fraction(s6, tw), Fraction(k6, tw)


# -------------------------------------------- sieve-product constructions

def restored_sieve(hi: int) -> np.ndarray:
    """Units of the grid product S(p), p <= sqrt(hi), on [0, hi], with
    each grid's own prime put back and 0, 1 zeroed: the primes up to hi."""
    ps = [int(p) for p in _primes_upto(max(math.isqrt(hi), 1))]
    bits = unit_mask(Filling.from_moduli(ps), hi + 1)
    bits[ps] = True
    bits[:2] = False
    return bits


def shifted_product_seniors(hi: int, shift: int) -> np.ndarray:
    """Units of sieve(i) & sieve(i - shift): seniors of pairs at distance shift."""
    z = restored_sieve(hi)
    both = z.copy()
    both[:shift] = False
    both[shift:] &= z[:-shift]
    return np.flatnonzero(both)


def stretched(bits: np.ndarray, length: int) -> np.ndarray:
    """l_{2s+1} = l_s, l_{2s} = 0."""
    out = np.zeros(length, dtype=bool)
    odd = np.arange(1, length, 2)
    out[odd] = bits[(odd - 1) // 2]
    return out


def smith_numbers(limit: int) -> list[int]:
    """Primes p with (p - 1)/2 prime, by direct test."""
    mask = sieve_mask(limit)
    return [int(p) for p in np.flatnonzero(mask) if p % 2 and mask[(p - 1) // 2]]


def smith_by_construction(limit: int) -> list[int]:
    """Units of the sieve times its stretched copy."""
    z = restored_sieve(limit)
    return [int(i) for i in np.flatnonzero(z & stretched(z, limit + 1))]


# ---------------------------------------------------------------- Goldbach

def goldbach_table(limit: int) -> np.ndarray:
    """G[2J] for every even 2J <= limit (odd entries are zero)."""
    ps = sieve(limit)
    G = np.zeros(limit + 1, dtype=np.int64)
    for i, p in enumerate(ps):
        if 2 * p > limit:
            break
        partners = ps[i:]
        partners = partners[partners <= limit - p]
        G[p + partners] += 1
    G[1::2] = 0
    return G


def goldbach_count(two_j: int) -> int:
    if two_j < 4 or two_j % 2:
        raise ValueError("argument must be an even number >= 4")
    mask = sieve_mask(two_j)
    ps = np.flatnonzero(mask[: two_j // 2 + 1])
    return int(mask[two_j - ps].sum())


def goldbach_n(two_j: int) -> int:
    """max {i >= 1 : p_i <= sqrt(2J - 2)}, 0 when no odd prime qualifies."""
    r = math.isqrt(two_j - 2)
    return max(len(_primes_upto(max(r, 1))) - 1, 0)


def goldbach_by_construction(two_j: int) -> int:
    """Count via the sieve of n(2J)+1 grids, mirrored at 2J."""
    n = goldbach_n(two_j)
    ps = first_primes(n + 1)
    bits = unit_mask(Filling.from_moduli(ps), two_j + 1)
    bits[ps] = True
    bits[:2] = False
    prod = bits & bits[::-1]
    units = int(prod[2:two_j - 1].sum())
    center = int(prod[two_j // 2])
    return (units + center) // 2


# ------------------------------------------------------------- intervals

def nearest(x: float) -> int:
    """Round half away from zero."""
    return int(math.floor(abs(x) + 0.5)) * (1 if x >= 0 else -1)


def _bound_arg(n: int) -> float:
    return (1.2 * (n + 1) * math.log(n + 1)) ** 2


@dataclass(frozen=True)
class IntervalScheme:
    family: str
    index: int
    lo: int
    hi: int

    @classmethod
    def I(cls, n: int) -> "IntervalScheme":
        return cls("I", n, nearest(_bound_arg(n - 1)) + 1, nearest(_bound_arg(n)))

    @classmethod
    def J(cls, n: int) -> "IntervalScheme":
        return cls("J", n, goldbach_A(n - 1) + 2, goldbach_A(n))

    def evens(self) -> range:
        start = self.lo + (self.lo % 2)
        return range(start, self.hi + 1, 2)


def goldbach_A(n: int) -> int:
    return 2 * nearest(0.5 * _bound_arg(n))


@dataclass(frozen=True)
class GoldbachStats:
    n: int
    lo: int
    hi: int
    min_g: int
    mean_g: int
    max_g: int
    arg_min: int
    arg_max: int
    arg_mean: Fraction


def goldbach_interval_stats(n: int, table: np.ndarray | None = None) -> GoldbachStats:
    J = IntervalScheme.J(n)
    if table is None or len(table) <= J.hi:
        table = goldbach_table(J.hi)
    evens = np.arange(J.lo, J.hi + 1, 2)
    vals = table[evens]
    span = goldbach_A(n) - goldbach_A(n - 1)
    mean = nearest(float(Fraction(2 * int(vals.sum()), span)))
    i_min, i_max = int(np.argmin(vals)), int(np.argmax(vals))
    return GoldbachStats(
        n, J.lo, J.hi, int(vals[i_min]), mean, int(vals[i_max]),
        int(evens[i_min]), int(evens[i_max]),
        Fraction(goldbach_A(n - 1) + goldbach_A(n), 2),
    )


def goldbach_normalized(stats: GoldbachStats) -> tuple[float, float, float]:
    """G / 2J * ln^2(2J) for min, mean and max, each at its own argument."""
    def norm(g, x):
        x = float(x)
        return g / x * math.log(x) ** 2
    return (norm(stats.min_g, stats.arg_min),
            norm(stats.mean_g, stats.arg_mean),
            norm(stats.max_g, stats.arg_max))


# ---------------------------------------------------------- configurations

@dataclass(frozen=True)
class ConfigurationPattern:
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if not self.ranks or min(self.ranks) < 1:
            raise ValueError("ranks must be positive")


@dataclass(frozen=True)
class ConfigurationScan:
    starts: tuple[int, ...]
    max_spacing: int | None

    @property
    def count(self) -> int:
        return len(self.starts)


def configurations(pattern: ConfigurationPattern, limit: int) -> ConfigurationScan:
    """Runs of consecutive primes <= limit with gaps 2 r_1, 2 r_2, ..."""
    ps = sieve(limit)
    d = np.diff(ps)
    want = 2 * np.array(pattern.ranks)
    k = len(want)
    if len(d) < k:
        return ConfigurationScan((), None)
    win = np.lib.stride_tricks.sliding_window_view(d, k)
    hits = np.flatnonzero((win == want).all(axis=1))
    starts = tuple(int(ps[i]) for i in hits)
    spacing = int(np.diff(starts).max()) if len(starts) > 1 else None
    return ConfigurationScan(starts, spacing)


# ----------------------------------------------------------- figure data

FIGURES = (1, 3, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _interval_counts(n_max: int):
    hi = IntervalScheme.I(n_max).hi
    tw, qv, sx = (kinsfolk(r, 2, hi) for r in (1, 2, 3))
    out = []
    for n in range(1, n_max + 1):
        I = IntervalScheme.I(n)
        c = [int(((s >= I.lo) & (s <= I.hi)).sum()) for s in (tw, qv, sx)]
        out.append((I, *c))
    return out


def figure_data(fig: int, n_max: int = 50, N: int = 50000, step: int = 1000) -> str:
    """CSV text for one figure."""
    if fig == 1:
        f = PrimeSystemSpec(SystemKind.SP1, 3).filling()
        recs = enumerate_series(f, 0)
        return _csv(["start", "length"], ((r.start, r.length) for r in recs))
    if fig == 3:
        from .series import regulated_filling
        f = regulated_filling(first_primes(5))
        recs = enumerate_series(f, 0)
        return _csv(["start", "length"], ((r.start, r.length) for r in recs))
    if fig == 6:
        hi = 64
        z = restored_sieve(hi)
        tw = set(shifted_product_seniors(hi, 2).tolist())
        q4 = set(shifted_product_seniors(hi, 4).tolist())
        sm = set(smith_by_construction(hi))
        rows = ((i, int(z[i]), int(i in tw), int(i in q4), int(i in sm)) for i in range(hi + 1))
        return _csv(["i", "prime", "twin_senior", "shift4_senior", "smith"], rows)
    if fig == 7:
        rows = ((I.index, I.lo, I.hi, t, q) for I, t, q, _ in _interval_counts(n_max))
        return _csv(["n", "lo", "hi", "twins", "quads"], rows)
    if fig == 8:
        rows, a, b, c = [], 0, 0, 0
        for I, t, q, s in _interval_counts(n_max):
            a, b, c = a + t, b + q, c + s
            rows.append((I.index, a, b, c))
        return _csv(["n", "cum_tw", "cum_qv", "cum_sx"], rows)
    if fig == 9:
        tw, qv, sx = (kinsfolk(r, 2, N) for r in (1, 2, 3))
        rows = ((x, int((tw <= x).sum()), int((qv <= x).sum()), int((sx <= x).sum()))
                for x in range(step, N + 1, step))
        return _csv(["N", "tw", "qv", "sx"], rows)
    if fig == 10:
        counts = _interval_counts(n_max)
        rows = []
        for I, _, _, s in counts:
            double = ""
            if I.index % 2 == 0:
                double = _fmt((counts[I.index - 2][3] + s) / 2)
            rows.append((I.index, I.lo, I.hi, s, double))
        return _csv(["n", "lo", "hi", "single", "double"], rows)
    if fig == 11:
        rows = []
        for x in range(step, N + 1, step):
            s6, sx = sum_ratios(x)
            rows.append((x, _fmt(float(s6)), _fmt(float(sx))))
        return _csv(["N", "sums6", "sumsx"], rows)
    if fig == 12:
        table = goldbach_table(60)
        rows = ((x, int(table[x])) for x in range(60, 2, -2))
        return _csv(["twoJ", "G"], rows)
    if fig in (13, 14, 15):
        table = goldbach_table(IntervalScheme.J(n_max).hi)
        stats = [goldbach_interval_stats(n, table) for n in range(1, n_max + 1)]
        if fig == 13:
            rows = ((s.n, s.lo, s.hi, s.min_g, s.mean_g, s.max_g) for s in stats)
            return _csv(["n", "lo", "hi", "minG", "meanG", "maxG"], rows)
        if fig == 14:
            rows = ((_fmt(float(s.arg_mean)), s.min_g, s.mean_g, s.max_g) for s in stats)
            return _csv(["arg2J", "minG", "meanG", "maxG"], rows)
        rows = ((s.n, _fmt(float(s.arg_mean)), *(_fmt(v) for v in goldbach_normalized(s)))
                for s in stats)
        return _csv(["n", "arg2J", "minG_norm", "meanG_norm", "maxG_norm"], rows)
    raise ValueError(f"unknown figure {fig}")
