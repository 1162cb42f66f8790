"""Conjugacy classes of Gamma wr S_N as marked partitions.

A class of Gamma wr S_N is labelled by counts ``p[r, alpha]``: how many
cycles of length r of the underlying permutation carry a cycle product in
the Gamma-class alpha.  The weight ``sum r * p[r, alpha]`` is N.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from .errors import ParseError, ResourceBoundError
from .exactnum import RationalAngle
from .groups import (
    GammaClassTable, GammaSpec, class_table, cycle_s_admissible, cycle_t_admissible,
)

__all__ = [
    "MarkedPartition", "CharPolyFactor", "CharPolyFactors", "CensusResult",
    "enumerate_marked_partitions", "is_t_admissible", "is_s_admissible",
    "census_counts", "char_poly", "char_poly_eval_signed_one", "expand_char_poly",
    "product_counts", "reflection_census", "check_enumeration_bound",
    "MAX_ENUMERATE_N", "MAX_ENUMERATE_WORK",
]

MAX_ENUMERATE_N = 60
MAX_ENUMERATE_WORK = 600  # bound on C(Gamma) * N


@dataclass(frozen=True)
class MarkedPartition:
    """Counts of marked cycles, stored as sorted ``(r, alpha, count)`` triples."""

    parts: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for r, alpha, p in self.parts:
            if r < 1 or alpha < 0 or p < 1:
                raise ValueError(f"bad part {(r, alpha, p)}")
            if (r, alpha) in seen:
                raise ValueError(f"repeated key {(r, alpha)}")
            seen.add((r, alpha))
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @classmethod
    def from_dict(cls, counts: Mapping[tuple[int, int], int]) -> "MarkedPartition":
        return cls(tuple((r, a, p) for (r, a), p in counts.items() if p))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(r, a): p for r, a, p in self.parts}

    @property
    def weight(self) -> int:
        return sum(r * p for r, _, p in self.parts)

    def keys(self):
        return [(r, a) for r, a, _ in self.parts]

    def __str__(self):
        # larger cycles first, as in the usual partition notation
        ordered = sorted(self.parts, key=lambda t: (-t[0], t[1]))
        return " ".join(f"{r}^{p}[c{a}]" for r, a, p in ordered)

    @classmethod
    def parse(cls, text: str) -> "MarkedPartition":
        """Inverse of ``str``: tokens ``r^p[c<alpha>]`` separated by whitespace."""
        counts: dict[tuple[int, int], int] = {}
        for token in text.split():
            m = _PART_RE.match(token)
            if not m:
                raise ParseError(f"bad marked-cycle token {token!r}; expected r^p[c<k>]")
            r, p, a = (int(g) for g in m.groups())
            if r < 1 or p < 1:
                raise ParseError(f"cycle length and count must be positive in {token!r}")
            counts[(r, a)] = counts.get((r, a), 0) + p
        return cls.from_dict(counts)


_PART_RE = re.compile(r"^(\d+)\^(\d+)\[c(\d+)\]$")


def check_enumeration_bound(t: GammaClassTable, N: int) -> None:
    if N > MAX_ENUMERATE_N:
        raise ResourceBoundError("enumeration N", N, MAX_ENUMERATE_N)
    if t.count * N > MAX_ENUMERATE_WORK:
        raise ResourceBoundError("enumeration C(Gamma)*N", t.count * N, MAX_ENUMERATE_WORK)


def enumerate_marked_partitions(t: GammaClassTable, N: int, check_bound: bool = True) -> Iterator[MarkedPartition]:
    """Yield every marked partition of weight N exactly once.

    Order: keys are visited by decreasing cycle length, then increasing class
    id, and each key takes its largest feasible count first.  For the trivial
    group this is the reverse-lexicographic order of ordinary partitions.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if check_bound:
        check_enumeration_bound(t, N)
    keys = [(r, a) for r in range(N, 0, -1) for a in range(t.count)]
    chosen: list[tuple[int, int, int]] = []

    def descend(pos: int, remaining: int):
        if remaining == 0:
            yield MarkedPartition(tuple(chosen))
            return
        if pos == len(keys):
            return
        r, a = keys[pos]
        if r > remaining:  # skip to the first key that still fits
            nxt = pos
            while nxt < len(keys) and keys[nxt][0] > remaining:
                nxt += 1
            yield from descend(nxt, remaining)
            return
        for p in range(remaining // r, 0, -1):
            chosen.append((r, a, p))
            yield from descend(pos + 1, remaining - r * p)
            chosen.pop()
        yield from descend(pos + 1, remaining)

    yield from descend(0, N)


def is_t_admissible(mp: MarkedPartition, t: GammaClassTable) -> bool:
    return all(cycle_t_admissible(t[a], r) for r, a in mp.keys())


def is_s_admissible(mp: MarkedPartition, t: GammaClassTable) -> bool:
    return all(cycle_s_admissible(t[a], r) for r, a in mp.keys())


@dataclass(frozen=True)
class CensusResult:
    gamma: GammaSpec
    N: int
    C: int
    T: int
    S: int

    def as_dict(self) -> dict:
        return {"gamma": str(self.gamma), "N": self.N, "C": self.C, "T": self.T, "S": self.S}


def _count_solutions(colors: tuple[int, ...], N: int) -> int:
    """Number of marked partitions of weight N when ``colors[r-1]`` keys have cycle length r.

    Choosing j cycles of length r among n_r admissible marks is a multiset
    choice, ``binom(n_r + j - 1, j)`` ways.
    """

    @lru_cache(maxsize=None)
    def ways(r: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        if r > remaining:
            return 0
        n_r = colors[r - 1]
        if n_r == 0:
            return ways(r + 1, remaining)
        return sum(
            math.comb(n_r + j - 1, j) * ways(r + 1, remaining - r * j)
            for j in range(remaining // r + 1)
        )

    return ways(1, N)


def census_counts(spec: GammaSpec, N: int, mode: str = "count") -> CensusResult:
    """C, T, S of Gamma wr S_N by direct counting over marked partitions.

    ``mode="enumerate"`` walks every partition and tests it and raises
    :class:`ResourceBoundError` past the enumeration bound.  ``mode="count"``
    counts admissible keys per cycle length without materializing anything;
    past the bound it reads the coefficients of the generating functions.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    t = class_table(spec)
    if N == 0:
        return CensusResult(spec, 0, 1, 1, 1)
    if mode == "enumerate":
        C = T = S = 0
        for mp in enumerate_marked_partitions(t, N):
            C += 1
            T += is_t_admissible(mp, t)
            S += is_s_admissible(mp, t)
        return CensusResult(spec, N, C, T, S)
    if mode != "count":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        check_enumeration_bound(t, N)
    except ResourceBoundError:
        from . import series

        return CensusResult(
            spec, N,
            series.class_series(spec, N)[N],
            series.trace_series(spec, N)[N],
            series.supertrace_series(spec, N)[N],
        )
    lengths = range(1, N + 1)
    all_c = tuple(t.count for _ in lengths)
    t_c = tuple(sum(cycle_t_admissible(c, r) for c in t.classes) for r in lengths)
    s_c = tuple(sum(cycle_s_admissible(c, r) for c in t.classes) for r in lengths)
    return CensusResult(spec, N, _count_solutions(all_c, N), _count_solutions(t_c, N), _count_solutions(s_c, N))


@dataclass(frozen=True)
class CharPolyFactor:
    """``(lambda^{2r} - 2cos(angle) lambda^r + 1) ** multiplicity``."""

    angle: RationalAngle
    r: int
    multiplicity: int

    def trace(self) -> float:
        return self.angle.two_cos_float()

    def zero_at(self, sign: int) -> bool:
        if sign == 1:
            return self.angle.is_zero()
        return (self.r % 2 == 0 and self.angle.is_zero()) or (self.r % 2 == 1 and self.angle.is_half())

    def value_at(self, sign: int) -> float:
        return (2.0 - self.trace() * sign ** self.r) ** self.multiplicity


@dataclass(frozen=True)
class CharPolyFactors:
    factors: tuple[CharPolyFactor, ...]

    @property
    def N(self) -> int:
        return sum(f.r * f.multiplicity for f in self.factors)

    @property
    def degree(self) -> int:
        return 2 * self.N

    def __iter__(self):
        return iter(self.factors)


def char_poly(mp: MarkedPartition, t: GammaClassTable) -> CharPolyFactors:
    """Factored ``det(g - lambda)`` of the class labelled by mp."""
    return CharPolyFactors(tuple(CharPolyFactor(t[a].angle, r, p) for r, a, p in mp.parts))


def char_poly_eval_signed_one(f: CharPolyFactors, sign: int) -> tuple[bool, float]:
    """(exact zero flag, numeric value) of the characteristic polynomial at lambda = sign."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    is_zero = any(factor.zero_at(sign) for factor in f)
    value = 0.0 if is_zero else float(np.prod([factor.value_at(sign) for factor in f]))
    return is_zero, value


def expand_char_poly(f: CharPolyFactors) -> np.ndarray:
    """Numeric coefficients, index = power of lambda."""
    coeffs = np.array([1.0])
    for factor in f:
        block = np.zeros(2 * factor.r + 1)
        block[0] = block[-1] = 1.0
        block[factor.r] = -factor.trace()
        for _ in range(factor.multiplicity):
            coeffs = np.convolve(coeffs, block)
    return coeffs


def product_counts(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """(T, S) of a product of symplectic reflection groups."""
    return (a[0] * b[0], a[1] * b[1])


def reflection_census(spec: GammaSpec, N: int) -> tuple[int, int]:
    """(number of conjugacy classes of symplectic reflections, number of parameters).

    For N >= 2 the D-type reflections give C(Gamma)-1 classes and all K/S-type
    reflections form one more.  For N = 1 only D-type reflections exist and
    both numbers are C(Gamma)-1.
    """
    if N < 1:
        raise ValueError("reflections need N >= 1")
    C = class_table(spec).count
    if N == 1:
        return (C - 1, C - 1)
    return (C, C)
