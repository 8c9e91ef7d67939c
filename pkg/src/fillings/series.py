"""Zero series of fillings and the search for maximum series.

A q-series is the stretch between two units with exactly q units strictly
inside; its length is the distance between the bounding units.  The
maximum over all shift vectors is found by a covering search: a window of
W positions can be zeroed (up to q leftover units) iff some filling has a
q-series of length at least W + 1.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from functools import reduce
from typing import Sequence

import numpy as np

from .grid import SCAN_BUDGET, Filling, Grid, eval_element, period, unit_mask

log = logging.getLogger(__name__)

# exhaustive certification is attempted up to this size
EXACT_MAX_GRIDS = 12
EXACT_MAX_MODULUS = 40
# node budget used outside the exhaustive range
DEFAULT_BUDGET = 2_000_000


class Certification(str, Enum):
    EXACT = "EXACT"
    LOWER_BOUND = "LOWER_BOUND"


@dataclass(frozen=True)
class SeriesRecord:
    q: int
    length: int
    start: int


@dataclass(frozen=True)
class SearchOutcome:
    length: int
    witness_shifts: tuple[int, ...]
    certification: Certification
    nodes_explored: int
    moduli: tuple[int, ...] = ()
    q: int = 0
    start: int = 0

    @property
    def exact(self) -> bool:
        return self.certification is Certification.EXACT

    def witness_json(self) -> str:
        return json.dumps(
            {
                "moduli": list(self.moduli),
                "shifts": list(self.witness_shifts),
                "start": self.start,
                "length": self.length,
                "q": self.q,
                "certification": self.certification.value,
            },
            separators=(",", ":"),
        )


# ---------------------------------------------------------------- periods

def unit_positions(filling: Filling, budget: int = SCAN_BUDGET) -> tuple[int, np.ndarray]:
    pz = period(filling, budget)
    if pz > budget:
        raise ValueError("period too large")
    return pz, np.flatnonzero(unit_mask(filling, pz))


def enumerate_series(filling: Filling, q: int) -> list[SeriesRecord]:
    """One q-series per unit of the period, read cyclically."""
    pz, units = unit_positions(filling)
    e = len(units)
    if e == 0:
        raise ValueError("singular filling")
    if q < 0 or q > e - 2:
        raise ValueError("not enough units")
    ends = np.concatenate([units, units + pz])
    lengths = ends[q + 1:q + 1 + e] - units
    return [SeriesRecord(q, int(l), int(s)) for s, l in zip(units, lengths)]


def series_lengths(filling: Filling, q: int = 0) -> list[int]:
    return [r.length for r in enumerate_series(filling, q)]


def max_series_in_period(filling: Filling, q: int) -> SeriesRecord:
    records = enumerate_series(filling, q)
    best = max(records, key=lambda r: (r.length, -r.start))
    return best


# ------------------------------------------------------ greedy constructions

def _next_unit(filling: Filling, start: int, limit: int) -> int | None:
    for i in range(start, start + limit):
        if eval_element(filling, i):
            return i
    return None


def regulated_filling(moduli: Sequence[int], anchor: int = 0) -> Filling:
    """Each grid in turn zeroes the leftmost unit at or right of ``anchor``."""
    filling = Filling()
    for a in moduli:
        span = max(filling.lcm(), 1) if filling.grids else 1
        x = _next_unit(filling, anchor, span)
        if x is None:
            raise ValueError("saturated before completion")
        filling = filling.with_grid(Grid(a, x))
    return filling


def series_through(filling: Filling, index: int, q: int = 0, limit: int | None = None) -> SeriesRecord:
    """The q-series whose left bound is the last unit at or before ``index``."""
    if limit is None:
        limit = max(filling.lcm(), 1) * (q + 2) if filling.finite else 10**6
    left = index
    while not eval_element(filling, left):
        left -= 1
        if index - left > limit:
            raise ValueError("singular filling")
    seen = 0
    i = left + 1
    while True:
        if eval_element(filling, i):
            if seen == q:
                return SeriesRecord(q, i - left, left)
            seen += 1
        i += 1
        if i - left > limit:
            raise ValueError("singular filling")


def first_series(filling: Filling, anchor: int = 0, q: int = 0) -> SeriesRecord:
    """Series covering the anchor, as produced by a regulated construction."""
    return series_through(filling, anchor, q)


def _outcome_from_filling(filling: Filling, rec: SeriesRecord, nodes: int) -> SearchOutcome:
    shifted = filling.translated(-rec.start)
    return SearchOutcome(
        rec.length,
        shifted.shifts,
        Certification.LOWER_BOUND,
        nodes,
        tuple(filling.moduli),
        rec.q,
        0,
    )


def _series_around(filling: Filling, q: int, reach: int) -> SeriesRecord | None:
    """Longest q-series whose span contains the origin, inside [-reach, reach]."""
    bits = unit_mask(filling, 2 * reach + 1, -reach)
    units = np.flatnonzero(bits) - reach
    if len(units) < q + 2:
        return None
    lefts, rights = units[:len(units) - q - 1], units[q + 1:]
    ok = (lefts <= 0) & (rights >= 0)
    # a series touching the window edge may be cut short; demand slack
    ok &= (lefts > -reach) & (rights < reach)
    if not ok.any():
        return None
    lengths = np.where(ok, rights - lefts, -1)
    i = int(np.argmax(lengths))
    return SeriesRecord(q, int(lengths[i]), int(lefts[i]))


def _greedy_fill(moduli: Sequence[int], q: int, two_sided: bool) -> SearchOutcome:
    # the placements do not depend on reach, so start small and widen
    reach = 4 * (q + 2) * min(max(moduli), 4 * (len(moduli) + q + 1))
    while True:
        covered = np.zeros(2 * reach + 1, dtype=bool)
        grids = []
        for a in moduli:
            free = np.flatnonzero(~covered) - reach
            if two_sided:
                free = free[np.lexsort((-free, np.abs(free)))]
            else:
                free = free[free >= 1]
            if len(free) == 0:
                break
            x = int(free[0])
            covered[(x + reach) % a::a] = True
            grids.append(Grid(a, x))
        filling = Filling(tuple(grids))
        rec = _series_around(filling, q, reach) if len(grids) == len(moduli) else None
        if rec is not None:
            return _outcome_from_filling(filling, rec, len(moduli))
        if reach > 10**7:
            raise ValueError("singular filling")
        reach *= 4


def one_sided_fill(moduli: Sequence[int], q: int = 0) -> SearchOutcome:
    """Grids in the given order zero the nearest free point right of the origin."""
    return _greedy_fill(moduli, q, two_sided=False)


def two_sided_fill(moduli: Sequence[int], q: int = 0) -> SearchOutcome:
    """Grids zero the free point nearest the origin, right side first on ties."""
    return _greedy_fill(moduli, q, two_sided=True)


# ------------------------------------------------------- covering search

class _Budget(Exception):
    pass


class _Cover:
    """Can the interior 1..W be zeroed, leaving at most ``q`` units?"""

    def __init__(self, moduli: Sequence[int], width: int, q: int, budget: int | None):
        self.moduli = list(moduli)
        self.width = width
        self.q = q
        self.budget = budget
        self.nodes = 0
        self.full = (1 << (width + 1)) - 2
        self.comb = {}
        for a in set(self.moduli):
            c = 0
            for k in range(0, width + 1, a):
                c |= 1 << k
            self.comb[a] = c
        # identical moduli are used in list order to avoid permuted repeats
        self.twin_prev = [
            max((j for j in range(i) if self.moduli[j] == a), default=-1)
            for i, a in enumerate(self.moduli)
        ]

    def branches(self, covered: int, used: int, skips: int):
        """Children of a node, in search order."""
        free = ~covered & self.full
        x = (free & -free).bit_length() - 1
        out = []
        for i, a in enumerate(self.moduli):
            if used >> i & 1:
                continue
            p = self.twin_prev[i]
            if p >= 0 and not used >> p & 1:
                continue
            out.append((covered | (self.comb[a] << x) & self.full, used | 1 << i, skips, (i, x)))
        if skips:
            out.append((covered | 1 << x, used, skips - 1, (None, x)))
        return out

    def capacity_ok(self, covered: int, used: int, skips: int) -> bool:
        free = ~covered & self.full
        need = free.bit_count() - skips
        if need <= 0:
            return True
        x = (free & -free).bit_length() - 1
        span = self.width - x
        cap = 0
        best: dict[int, int] = {}
        for i, a in enumerate(self.moduli):
            if used >> i & 1:
                continue
            if a not in best:
                if a > span:
                    best[a] = 1
                else:
                    comb = self.comb[a] << x
                    best[a] = max((free & comb << r).bit_count() for r in range(a))
            cap += best[a]
            if cap >= need:
                return True
        return False

    def solve(self, covered: int = 0, used: int = 0, skips: int | None = None, path=()):
        """Return the placement path of a solution, or None."""
        if skips is None:
            skips = self.q
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Budget
        if covered & self.full == self.full:
            return path
        if not self.capacity_ok(covered, used, skips):
            return None
        for cov, u, s, step in self.branches(covered, used, skips):
            found = self.solve(cov, u, s, path + (step,))
            if found is not None:
                return found
        return None


def _branch_job(args):
    moduli, width, q, budget, node = args
    cover = _Cover(moduli, width, q, budget)
    covered, used, skips, step = node
    try:
        found = cover.solve(covered, used, skips, (step,))
        return found, cover.nodes, False
    except _Budget:
        return None, cover.nodes, True


def _feasible(moduli, width, q, budget, workers=1):
    """(path or None, nodes, aborted) for the covering question at ``width``."""
    cover = _Cover(moduli, width, q, budget)
    if workers <= 1:
        try:
            return cover.solve(), cover.nodes, False
        except _Budget:
            return None, cover.nodes, True
    # split on the choices at position 1; replay the sequential accounting
    root = cover.branches(0, 0, q)
    jobs = [(moduli, width, q, budget, node) for node in root]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_branch_job, jobs))
    spent = 1
    for found, nodes, aborted in results:
        if budget is not None and (aborted or spent + nodes > budget):
            return None, budget + 1, True
        spent += nodes
        if found is not None:
            return found, spent, False
    return None, spent, False


def _path_to_shifts(moduli: Sequence[int], path, width: int, q: int) -> list[int]:
    """Residues from a covering path; unused grids are parked on zeros."""
    shifts: list[int | None] = [None] * len(moduli)
    units = {0, width + 1}
    for i, x in path:
        if i is None:
            units.add(x)
        else:
            shifts[i] = x % moduli[i]
    for i, a in enumerate(moduli):
        if shifts[i] is not None:
            continue
        # a residue whose class avoids every unit of the window, if any
        for r in range(a):
            if all((u - r) % a for u in units):
                shifts[i] = r
                break
        else:
            shifts[i] = 0
    return [int(s) for s in shifts]


def in_exact_range(moduli: Sequence[int]) -> bool:
    return len(moduli) <= EXACT_MAX_GRIDS and max(moduli) <= EXACT_MAX_MODULUS


def msr_search(
    moduli: Sequence[int],
    q: int = 0,
    budget: int | None = None,
    workers: int = 1,
    canonical: bool | None = None,
) -> SearchOutcome:
    """Longest q-series over all shift vectors of the given moduli.

    ``budget`` limits the nodes of the covering search (None: unlimited
    inside the exhaustive range, DEFAULT_BUDGET outside it).  ``canonical``
    asks for the lexicographically smallest witness; by default only inside
    the exhaustive range, where that extra pass stays cheap.
    """
    moduli = [int(a) for a in moduli]
    if not moduli:
        raise ValueError("empty filling has no zeros")
    if q < 0:
        raise ValueError("q must be non-negative")
    if budget is None and not in_exact_range(moduli):
        budget = DEFAULT_BUDGET
    L = reduce(math.lcm, moduli, 1)
    # a window this wide with <= q units forces a unit-free period
    cap = (q + 1) * L
    if canonical is None:
        canonical = in_exact_range(moduli)

    start = one_sided_fill(moduli, q)
    other = two_sided_fill(moduli, q)
    if other.length > start.length:
        start = other
    best_len = start.length
    shifts = list(start.witness_shifts)
    nodes = 0
    exhausted = False
    while True:
        width = best_len
        remaining = None if budget is None else max(budget - nodes, 0)
        path, used, aborted = _feasible(moduli, width, q, remaining, workers)
        nodes += used
        if aborted:
            log.info("budget exhausted at width %d after %d nodes", width, nodes)
            break
        if path is None:
            exhausted = True
            break
        if width >= cap:
            raise ValueError("singular filling")
        shifts = _path_to_shifts(moduli, path, width, q)
        best_len = series_through(Filling.from_moduli(moduli, shifts), 0, q).length
        log.info("length %d reached (%d nodes so far)", best_len, nodes)

    if exhausted and canonical:
        shifts, extra = canonical_witness(moduli, best_len - 1, q)
        nodes += extra
    rec = series_through(Filling.from_moduli(moduli, shifts), 0, q)
    if rec.start != 0 or rec.length != best_len:
        raise AssertionError(f"witness does not reproduce the series: {rec}")
    cert = Certification.EXACT if exhausted else Certification.LOWER_BOUND
    return SearchOutcome(rec.length, tuple(shifts), cert, nodes, tuple(moduli), q, 0)


def canonical_witness(moduli: Sequence[int], width: int, q: int) -> tuple[list[int], int]:
    """Lexicographically smallest shift vector whose series starts at 0.

    Residues are fixed grid by grid; each trial is settled by the covering
    search on the grids not yet fixed.
    """
    moduli = list(moduli)
    n = len(moduli)
    full = (1 << (width + 1)) - 2
    fixed: list[int] = []
    nodes = 0
    covered = 0
    for i, a in enumerate(moduli):
        for r in range(a):
            # a fixed residue must not zero either bounding unit
            if r % a == 0 or (width + 1 - r) % a == 0:
                continue
            mask = 0
            for x in range(r if r else a, width + 1, a):
                mask |= 1 << x
            rest = moduli[i + 1:]
            trial = covered | mask & full
            ok, used = _feasible_rest(rest, width, q, trial)
            nodes += used
            if ok:
                fixed.append(r)
                covered = trial
                break
        else:
            raise AssertionError("no canonical residue found")
    assert len(fixed) == n
    return fixed, nodes


def _feasible_rest(rest: Sequence[int], width: int, q: int, covered: int) -> tuple[bool, int]:
    """Can the grids in ``rest`` finish the cover with at most q free units?

    Grids that are not needed still have to avoid the bounding units; with a
    modulus below width + 2 some residue always lands on zeros only when the
    window is otherwise complete, so the free-unit count decides.
    """
    full = (1 << (width + 1)) - 2
    free = bin(~covered & full).count("1")
    if not rest:
        return free <= q, 1
    cover = _Cover(rest, width, q, None)
    found = cover.solve(covered, 0, q)
    return found is not None, cover.nodes


def verify_witness(moduli: Sequence[int], shifts: Sequence[int], claim: SeriesRecord) -> bool:
    """Rescan the claimed window: units at both ends and q units inside."""
    filling = Filling.from_moduli(moduli, shifts)
    lo, hi = claim.start, claim.start + claim.length
    if not (eval_element(filling, lo) and eval_element(filling, hi)):
        return False
    inside = sum(eval_element(filling, i) for i in range(lo + 1, hi))
    return inside == claim.q


def brute_force_msr(moduli: Sequence[int], q: int = 0) -> int:
    """Independent oracle: scan every shift vector with the first shift 0.

    Translating all shifts at once only rotates the pattern, so fixing the
    first shift loses nothing.
    """
    import itertools

    moduli = list(moduli)
    best = 0
    for rest in itertools.product(*(range(a) for a in moduli[1:])):
        filling = Filling.from_moduli(moduli, (0,) + rest)
        pz, units = unit_positions(filling)
        e = len(units)
        if e == 0:
            raise ValueError("singular filling")
        if q > e - 2:
            # the series wraps more than once around the period
            full = (q + 1) // e
            r = (q + 1) % e
            ends = np.concatenate([units, units + pz])
            extra = ends[r:r + e] - units if r else np.zeros(e, dtype=int)
            best = max(best, int(full * pz + extra.max()))
            continue
        ends = np.concatenate([units, units + pz])
        best = max(best, int((ends[q + 1:q + 1 + e] - units).max()))
    return best
