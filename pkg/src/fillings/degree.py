"""Exact maximum series of degree systems.

A degree system with base ``d`` is described by the base-d digits of its
zero density: digit ``m_i`` says how many grids of modulus ``d**i`` it
holds.  Grids are taken in increasing modulus order, so the first n grids
of a digit string form a definite filling.  Leading digits equal to d-1
form a saturated block; the rest is the sparse part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

# a modulus this large acts like an infinite grid inside any window we use
POINT_MODULUS = 10**9


@dataclass(frozen=True)
class DegreeSpec:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        object.__setattr__(self, "digits", tuple(int(m) for m in self.digits))
        check_correct(self.digits, self.base)

    @classmethod
    def from_density(cls, alpha: Fraction, base: int, count: int) -> "DegreeSpec":
        return cls(base, tuple(density_digits(alpha, base, count)))

    @property
    def density(self) -> Fraction:
        return digits_value(self.digits, self.base)

    @property
    def grid_count(self) -> int:
        return sum(self.digits)

    def moduli(self, n: int | None = None) -> list[int]:
        """First n grids, smallest modulus first."""
        out = []
        for i, m in enumerate(self.digits, start=1):
            out.extend([self.base**i] * m)
        return out if n is None else out[:n]


@dataclass
class DegreeTrace:
    value: int
    case: str
    r: int
    k: int
    v: int = 0
    t: list[int] = field(default_factory=list)
    terms: list[int] = field(default_factory=list)
    window: tuple[int, int] | None = None
    base_power: int = 1

    def describe(self) -> str:
        lines = [f"case {self.case}: r={self.r} k={self.k}"]
        if self.v:
            lo, hi = self.window
            lines.append(f"v={self.v} window {lo} < {self.k} <= {hi}")
            lines.append("t = " + ", ".join(str(x) for x in self.t))
            # zero terms are dropped, the tail reads t_v + 1
            parts = [x for x in self.terms if x] + [self.t[-1], 1]
            body = " + ".join(str(x) for x in parts)
            if self.base_power > 1:
                body = f"{self.base_power} * ({body})"
            lines.append(f"msr = {body}")
        lines.append(f"msr = {self.value}")
        return "\n".join(lines)


def check_correct(digits: Sequence[int], d: int) -> None:
    for m in digits:
        if not 0 <= m <= d - 1:
            raise ValueError("digits violate correctness")


def digits_value(digits: Sequence[int], d: int) -> Fraction:
    return sum((Fraction(m, d**i) for i, m in enumerate(digits, start=1)), Fraction(0))


def density_digits(alpha: Fraction, d: int, count: int) -> list[int]:
    """First ``count`` base-d digits of 0 <= alpha < 1."""
    alpha = Fraction(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("singular density")
    out = []
    for _ in range(count):
        alpha *= d
        m = alpha.numerator // alpha.denominator
        out.append(m)
        alpha -= m
    return out


def normalize_digits(digits: Sequence[int], d: int) -> list[int]:
    """Carry oversized digits leftwards; the value is unchanged."""
    out = list(digits)
    carry = 0
    for i in range(len(out) - 1, -1, -1):
        total = out[i] + carry
        out[i], carry = total % d, total // d
    if carry:
        raise ValueError("singular density")
    return out


def sparse_frequency(alpha_digits: Sequence[int], d: int) -> tuple[list[int], int]:
    """Strip the saturated prefix: returns (sparse digits, r)."""
    digits = list(alpha_digits)
    check_correct(digits, d)
    r = 0
    while r < len(digits) and digits[r] == d - 1:
        r += 1
    rest = digits[r:]
    if r and not rest and digits_value(digits, d) >= 1:
        raise ValueError("singular density")
    return rest, r


def _digit(digits: Sequence[int], i: int) -> int:
    return digits[i - 1] if 1 <= i <= len(digits) else 0


def grids_for_length(d: int, digits: Sequence[int], v: int) -> int:
    """Grid count at which the maximum series first reaches d**v."""
    return d**v - sum(_digit(digits, i) * (d ** (v - i) - 1) for i in range(1, v + 1)) - 1


def _free_span(d: int, digits: Sequence[int], l: int) -> int:
    """d^l (1 - gamma_l): units per d^l left by the first l digit levels."""
    return d**l - sum(_digit(digits, i) * d ** (l - i) for i in range(1, l + 1))


def sparse_msr(d: int, digits: Sequence[int], k: int, trace: DegreeTrace | None = None) -> int:
    """Maximum series of k grids of a sparse density (first digit < d-1)."""
    if k < 0:
        raise ValueError("inconsistent parameters")
    if k <= d - 1:
        if trace is not None:
            trace.t = [k]
        return k + 1
    v = 0
    while not grids_for_length(d, digits, v) < k <= grids_for_length(d, digits, v + 1):
        v += 1
        if v > 256 or _free_span(d, digits, v) <= 0:
            raise ValueError("inconsistent parameters")
    t = [k]
    terms = []
    for j in range(1, v + 1):
        l = v - j + 1
        carried = sum(_digit(digits, i) for i in range(1, l + 1))
        span = _free_span(d, digits, l)
        if span <= 0:
            raise ValueError("inconsistent parameters")
        prev = t[-1]
        nxt = (prev - carried) % span + carried if prev >= carried else prev
        step = Fraction((prev - nxt) * d**l, span)
        if step.denominator != 1:
            raise ValueError("inconsistent parameters")
        t.append(nxt)
        terms.append(int(step))
    if trace is not None:
        trace.v = v
        trace.t = t[1:]
        trace.terms = terms
        trace.window = (grids_for_length(d, digits, v), grids_for_length(d, digits, v + 1))
    return sum(terms) + t[-1] + 1


def _truncate(digits: Sequence[int], n: int) -> list[int]:
    """Digits of the first n grids only."""
    out, left = [], n
    for m in digits:
        take = min(m, left)
        out.append(take)
        left -= take
    while out and out[-1] == 0:
        out.pop()
    return out


def degree_trace(d: int, alpha_digits: Sequence[int], n: int, q: int = 0,
                 normalize: bool = False) -> DegreeTrace:
    """Exact maximum q-series of the first n grids, with its derivation.

    Grids beyond the digit string and the q interior units both act as
    infinite grids, so they simply raise the count k.
    """
    if n < 1 or q < 0:
        raise ValueError("inconsistent parameters")
    digits = normalize_digits(alpha_digits, d) if normalize else list(alpha_digits)
    check_correct(digits, d)
    digits = _truncate(digits, n)
    total = n + q
    r = 0
    while r < len(digits) and digits[r] == d - 1:
        r += 1
    saturated = (d - 1) * r
    if total <= saturated:
        # whole result inside the saturated block
        full = total // (d - 1)
        value = d**full * (1 + total - (d - 1) * full)
        return DegreeTrace(value, "A", r, total)
    k = total - saturated
    trace = DegreeTrace(0, "B" if r else "C", r, k)
    trace.base_power = d**r
    value = d**r * sparse_msr(d, digits[r:], k, trace)
    trace.value = value
    return trace


def msr_degree(d: int, alpha_digits: Sequence[int], n: int, q: int = 0,
               normalize: bool = False) -> int:
    return degree_trace(d, alpha_digits, n, q, normalize).value


def msr_gamma(d: int, gamma: Fraction, k: int) -> DegreeTrace:
    """Maximum series of the first k grids of a density given as a fraction."""
    digits = density_digits(gamma, d, 64)
    return degree_trace(d, digits, k)


def oracle_moduli(spec: DegreeSpec, n: int, q: int = 0) -> list[int]:
    """Moduli for a direct search: the first n grids, padded with point grids."""
    mods = spec.moduli(n)
    return mods + [POINT_MODULUS] * (n - len(mods) + q)


def bound_no_multiple_zeroes(n: int, q: int, alpha: Fraction) -> Fraction:
    """(n + q) / (1 - alpha) + 1, a strict bound for systems without multiple zeroes."""
    alpha = Fraction(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("density must lie in [0, 1)")
    return Fraction(n + q) / (1 - alpha) + 1
