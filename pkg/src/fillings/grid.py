"""Grids, their products and the exact census of one period.

A grid ``S(a)`` is the 0/1 sequence with zeros on the residue class
``shift (mod a)``.  A filling is the elementwise AND of a list of grids.
All densities are exact ``Fraction`` values; numpy is only used to scan
bit patterns.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

INFINITE = math.inf

# largest period (in bits) that is scanned directly
SCAN_BUDGET = 10**8


@dataclass(frozen=True, order=True)
class Grid:
    modulus: int | float
    shift: int = 0

    def __post_init__(self):
        if self.modulus != INFINITE:
            if int(self.modulus) != self.modulus or self.modulus < 1:
                raise ValueError(f"bad modulus {self.modulus!r}")
            object.__setattr__(self, "modulus", int(self.modulus))
            object.__setattr__(self, "shift", int(self.shift) % self.modulus)
        else:
            object.__setattr__(self, "shift", int(self.shift))

    @property
    def finite(self) -> bool:
        return self.modulus != INFINITE

    def element(self, i: int) -> int:
        if self.finite:
            return 0 if (i - self.shift) % self.modulus == 0 else 1
        return 0 if i == self.shift else 1


@dataclass(frozen=True)
class Filling:
    grids: tuple[Grid, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "grids", tuple(self.grids))

    @classmethod
    def from_moduli(cls, moduli: Iterable, shifts: Iterable[int] | None = None) -> "Filling":
        moduli = list(moduli)
        shifts = [0] * len(moduli) if shifts is None else list(shifts)
        if len(shifts) != len(moduli):
            raise ValueError("moduli and shifts differ in length")
        return cls(tuple(Grid(a, s) for a, s in zip(moduli, shifts)))

    @property
    def n(self) -> int:
        return len(self.grids)

    @property
    def moduli(self) -> tuple:
        return tuple(g.modulus for g in self.grids)

    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(g.shift for g in self.grids)

    @property
    def finite(self) -> bool:
        return all(g.finite for g in self.grids)

    def element(self, i: int) -> int:
        return eval_element(self, i)

    def window(self, lo: int, hi: int) -> str:
        """Bits at indices lo..hi-1 as a '0'/'1' string."""
        return "".join(str(eval_element(self, i)) for i in range(lo, hi))

    def lcm(self) -> int:
        if not self.finite:
            raise ValueError("aperiodic")
        return reduce(math.lcm, self.moduli, 1)

    def translated(self, t: int) -> "Filling":
        return Filling(tuple(Grid(g.modulus, g.shift + t) for g in self.grids))

    def with_grid(self, grid: Grid) -> "Filling":
        return Filling(self.grids + (grid,))

    def to_json(self) -> str:
        grids = [
            {"modulus": "INFINITE" if not g.finite else g.modulus, "shift": g.shift}
            for g in self.grids
        ]
        return json.dumps({"grids": grids}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Filling":
        data = json.loads(text)
        grids = []
        for g in data["grids"]:
            a = INFINITE if g["modulus"] == "INFINITE" else int(g["modulus"])
            grids.append(Grid(a, int(g.get("shift", 0))))
        return cls(tuple(grids))


@dataclass(frozen=True)
class PeriodProfile:
    period: int
    units: int
    zeroes: int
    total_zeroes: int | Fraction
    gamma: Fraction
    gamma_star: Fraction

    # short aliases matching the usual notation
    @property
    def PZ(self) -> int:
        return self.period

    @property
    def E(self) -> int:
        return self.units

    @property
    def H(self) -> int:
        return self.zeroes

    @property
    def H_star(self) -> int | Fraction:
        return self.total_zeroes


def eval_element(filling: Filling, index: int) -> int:
    for g in filling.grids:
        if g.element(index) == 0:
            return 0
    return 1


def _require_finite(filling: Filling) -> None:
    if not filling.finite:
        raise ValueError("aperiodic")


def unit_mask(filling: Filling, length: int, start: int = 0) -> np.ndarray:
    """Boolean array of the bits at start..start+length-1."""
    bits = np.ones(length, dtype=bool)
    for g in filling.grids:
        if g.finite:
            first = (g.shift - start) % g.modulus
            bits[first::g.modulus] = False
        elif start <= g.shift < start + length:
            bits[g.shift - start] = False
    return bits


def _counts(filling: Filling, length: int) -> np.ndarray:
    counts = np.zeros(length, dtype=np.int32)
    for g in filling.grids:
        counts[g.shift % g.modulus::g.modulus] += 1
    return counts


def _reduce_period(bits: np.ndarray, length: int) -> int:
    for f in sorted(factorint(length)):
        while length % f == 0 and length > 1:
            sub = length // f
            if np.array_equal(bits[:length].reshape(f, sub), np.broadcast_to(bits[:sub], (f, sub))):
                length = sub
            else:
                break
    return length


def _crt_class(a: int, s: int, b: int, t: int) -> tuple[int, int] | None:
    """Intersection of x = s (mod a) with x = t (mod b), or None."""
    g = math.gcd(a, b)
    if (t - s) % g:
        return None
    l = a // g * b
    k = ((t - s) // g * pow(a // g, -1, b // g)) % (b // g) if b // g > 1 else 0
    return l, (s + a * k) % l


def _class_covered(a: int, s: int, others: Sequence[Grid], budget: int) -> bool:
    """True iff every x = s (mod a) is a zero of some grid in ``others``."""
    sub = []
    for g in others:
        hit = _crt_class(a, s, g.modulus, g.shift)
        if hit is None:
            continue
        b = hit[0] // a
        if b == 1:
            return True
        # position of x = s + a*t inside the class, as a class of t mod b
        sub.append((b, ((hit[1] - s) // a) % b))
    if not sub or sum(Fraction(1, b) for b, _ in sub) < 1:
        return False
    groups: dict[int, set[int]] = {}
    for b, t in sub:
        groups.setdefault(b, set()).add(t)
    mods = list(groups)
    if all(math.gcd(x, y) == 1 for i, x in enumerate(mods) for y in mods[i + 1:]):
        # CRT: a free residue in every group combines into an uncovered t
        return any(len(ts) == b for b, ts in groups.items())
    m = reduce(math.lcm, mods, 1)
    if m > budget:
        raise ValueError("period too large")
    bits = np.ones(m, dtype=bool)
    for b, t in sub:
        bits[t::b] = False
    return not bits.any()


def period(filling: Filling, budget: int = SCAN_BUDGET) -> int:
    _require_finite(filling)
    if not filling.grids:
        return 1
    L = filling.lcm()
    if L <= budget:
        return _reduce_period(unit_mask(filling, L), L)
    # structural route: L/f is a period iff every zero class moves onto zeros
    grids = sorted(set(filling.grids))
    for f in sorted(factorint(L)):
        while L % f == 0 and L > 1:
            sub = L // f
            ok = all(
                sub % g.modulus == 0
                or _class_covered(g.modulus, g.shift + sub, grids, budget)
                for g in grids
            )
            if not ok:
                break
            L = sub
    return L


def multiplicity_profile(filling: Filling, budget: int = SCAN_BUDGET) -> np.ndarray:
    """Number of grids with a zero at each index of [0, PZ)."""
    _require_finite(filling)
    pz = period(filling, budget)
    if pz > budget:
        raise ValueError("period too large")
    return _counts(filling, pz)


def _units_by_inclusion_exclusion(grids: Sequence[Grid], L: int) -> int:
    """Units in [0, L) by alternating sums over compatible grid subsets."""
    grids = sorted(set(grids))
    total = 0

    def walk(start: int, mod: int, res: int, sign: int) -> None:
        nonlocal total
        total += sign * (L // mod)
        for j in range(start, len(grids)):
            g = grids[j]
            hit = _crt_class(mod, res, g.modulus, g.shift)
            if hit is not None:
                walk(j + 1, hit[0], hit[1], -sign)

    walk(0, 1, 0, 1)
    return total


def count_units(filling: Filling, budget: int = SCAN_BUDGET, method: str = "auto") -> int:
    """Units in one lcm window; ``method`` is 'scan', 'ie' or 'auto'."""
    _require_finite(filling)
    L = filling.lcm()
    if method == "scan" or (method == "auto" and L <= budget):
        return int(unit_mask(filling, L).sum())
    return _units_by_inclusion_exclusion(filling.grids, L)


def profile(filling: Filling, budget: int = SCAN_BUDGET) -> PeriodProfile:
    _require_finite(filling)
    L = filling.lcm()
    pz = period(filling, budget)
    units = count_units(filling, budget) * pz // L
    zeroes = pz - units
    h_star = pz * sum((Fraction(1, a) for a in filling.moduli), Fraction(0))
    if h_star.denominator == 1:
        h_star = h_star.numerator
    gamma = Fraction(zeroes, pz)
    gamma_star = Fraction(h_star) / (units + h_star) if units + h_star else Fraction(0)
    return PeriodProfile(pz, units, zeroes, h_star, gamma, gamma_star)


def is_filling(grids: Filling | Sequence[Grid], budget: int = SCAN_BUDGET) -> bool:
    """Every grid changes the product when it is dropped."""
    grids = list(grids.grids if isinstance(grids, Filling) else grids)
    for i, g in enumerate(grids):
        rest = grids[:i] + grids[i + 1:]
        if _class_covered(g.modulus, g.shift, rest, budget):
            return False
    return True


def is_singular(filling: Filling, budget: int = SCAN_BUDGET) -> bool:
    return count_units(filling, budget) == 0


def is_saturated(filling: Filling, budget: int = SCAN_BUDGET) -> bool:
    """At most one unit per period, so any divisor-grid kills the rest."""
    return profile(filling, budget).units <= 1


def mixing_criterion(filling: Filling, budget: int = SCAN_BUDGET) -> Fraction:
    prof = profile(filling, budget)
    if prof.zeroes == 0:
        raise ValueError("criterion undefined")
    return prof.gamma_star / prof.gamma


def imaging(filling: Filling, lo: int, hi: int, cap: int | None = None) -> str:
    """Map each zero column of multiplicity m to min(m, cap) zeros.

    ``cap=None`` is the complete imaging, ``cap=1`` the direct pattern.
    """
    _require_finite(filling)
    out = []
    for i in range(lo, hi):
        m = sum(1 for g in filling.grids if (i - g.shift) % g.modulus == 0)
        if m == 0:
            out.append("1")
        else:
            out.append("0" * (m if cap is None else min(m, cap)))
    return "".join(out)


def complete_imaging(filling: Filling, lo: int, hi: int) -> str:
    return imaging(filling, lo, hi, cap=None)


def multiplicity_string(filling: Filling, lo: int, hi: int) -> str:
    """Per-index zero multiplicity with 'v' marking a unit."""
    chars = []
    for i in range(lo, hi):
        m = sum(1 for g in filling.grids if g.element(i) == 0)
        chars.append("v" if m == 0 else str(m))
    return "".join(chars)
