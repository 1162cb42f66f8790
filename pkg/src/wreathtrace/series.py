"""Truncated power series with exact integer coefficients.

Implements the generating functions for conjugacy classes, traces and
supertraces of Gamma wr S_N: the Euler function ``Psi = prod 1/(1-x^i)``,
its odd-index analogue ``Phi``, and the colored-weights products
``F_{n_1, n_2, ...} = prod (1/(1-x^i))^{n_i}``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .groups import GammaSpec, admissible_counts, class_table

__all__ = [
    "TruncatedSeries", "ColorSpec",
    "series_mul", "series_pow", "geometric_factor", "colored_generating_function",
    "euler_psi", "odd_phi", "trace_series", "supertrace_series", "class_series",
    "JSON_SAFE_INT",
]

JSON_SAFE_INT = 2 ** 53


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def one(cls, n_max: int) -> "TruncatedSeries":
        return cls((1,) + (0,) * n_max)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    def __pow__(self, e: int):
        return series_pow(self, e)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def to_json(self) -> list:
        """Coefficients as JSON values; those above 2**53 become decimal strings."""
        return [c if abs(c) <= JSON_SAFE_INT else str(c) for c in self.coeffs]


def _check_same(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.n_max != b.n_max:
        raise ValueError(f"mismatched n_max: {a.n_max} vs {b.n_max}")


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, n + 1 - i):
                out[i + j] += x * b[j]
    return out


def _kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Truncated product of nonnegative sequences by packing into one big int.

    Each output coefficient is < (n+1) * max(a) * max(b), so a slot width of
    that many bits keeps the packed digits from overlapping.
    """
    bound = (n + 1) * max(a) * max(b)
    width = bound.bit_length() + 1
    pa = _pack(a, width)
    pb = _pack(b, width)
    return _unpack(pa * pb, width, n + 1)


def _pack(coeffs: Sequence[int], width: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << width) | c
    return acc


def _unpack(value: int, width: int, count: int) -> list[int]:
    mask = (1 << width) - 1
    out = []
    for _ in range(count):
        out.append(value & mask)
        value >>= width
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_same(a, b)
    n = a.n_max
    if min(a.coeffs) < 0 or min(b.coeffs) < 0 or n < 32 or not any(a.coeffs) or not any(b.coeffs):
        coeffs = _schoolbook(a.coeffs, b.coeffs, n)
    else:
        coeffs = _kronecker(a.coeffs, b.coeffs, n)
    return TruncatedSeries(tuple(coeffs))


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e`` by repeated squaring."""
    if e < 0:
        raise ValueError("negative powers are not supported")
    result = TruncatedSeries.one(a.n_max)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def geometric_factor(i: int, n_max: int) -> TruncatedSeries:
    """``f_i = 1 + x^i + x^{2i} + ...`` truncated at degree n_max."""
    if i < 1:
        raise ValueError("geometric factor index must be positive")
    return TruncatedSeries(tuple(1 if k % i == 0 else 0 for k in range(n_max + 1)))


def _times_geometric(coeffs: list[int], i: int, times: int) -> None:
    # multiplying by 1/(1-x^i) is a running sum with stride i
    n = len(coeffs)
    for _ in range(times):
        for k in range(i, n):
            coeffs[k] += coeffs[k - i]


@dataclass(frozen=True)
class ColorSpec:
    """Eventually-constant color counts: ``n_r = prefix[r-1]`` for r <= len(prefix), else ``tail``."""

    prefix: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        if any(v < 0 for v in self.prefix) or self.tail < 0:
            raise ValueError("color counts must be nonnegative")

    @classmethod
    def from_function(cls, f, length: int, tail: int) -> "ColorSpec":
        return cls(tuple(f(r) for r in range(1, length + 1)), tail)

    def __getitem__(self, r: int) -> int:
        if r < 1:
            raise IndexError("weights start at 1")
        return self.prefix[r - 1] if r <= len(self.prefix) else self.tail

    def __add__(self, other: "ColorSpec") -> "ColorSpec":
        k = max(len(self.prefix), len(other.prefix))
        return ColorSpec(tuple(self[r] + other[r] for r in range(1, k + 1)), self.tail + other.tail)

    @classmethod
    def random(cls, rng: random.Random, max_prefix: int = 8, max_count: int = 3) -> "ColorSpec":
        prefix = tuple(rng.randint(0, max_count) for _ in range(rng.randint(0, max_prefix)))
        return cls(prefix, rng.randint(0, max_count))


def colored_generating_function(colors: ColorSpec, n_max: int) -> TruncatedSeries:
    """``prod_{i=1..n_max} f_i^{n_i}``: weighings of total mass N with n_i colors of weight i."""
    coeffs = [1] + [0] * n_max
    for i in range(1, n_max + 1):
        _times_geometric(coeffs, i, colors[i])
    return TruncatedSeries(tuple(coeffs))


def euler_psi(n_max: int) -> TruncatedSeries:
    return colored_generating_function(ColorSpec((), 1), n_max)


def odd_phi(n_max: int) -> TruncatedSeries:
    odd = ColorSpec.from_function(lambda r: r % 2, max(n_max, 1), 0)
    return colored_generating_function(odd, n_max)


def trace_colors(spec: GammaSpec, length: int) -> ColorSpec:
    """Color spec ``n_r = t_r(Gamma)`` from the per-class admissibility predicates."""
    t = class_table(spec)
    return ColorSpec.from_function(lambda r: admissible_counts(t, r)[0], max(length, 1), t.count - 1)


def supertrace_colors(spec: GammaSpec, length: int) -> ColorSpec:
    """Color spec ``n_r = s_r(Gamma)``; not eventually constant, so spelled out to ``length``."""
    t = class_table(spec)
    return ColorSpec.from_function(lambda r: admissible_counts(t, r)[1], max(length, 1), t.count - 1)


def trace_series(spec: GammaSpec, n_max: int, method: str = "closed") -> TruncatedSeries:
    """``t(Gamma, x) = Psi^{C-1}``; ``method="colored"`` goes through the color spec instead."""
    if method == "colored":
        return colored_generating_function(trace_colors(spec, n_max), n_max)
    _check_method(method)
    return series_pow(euler_psi(n_max), spec.class_count - 1)


def supertrace_series(spec: GammaSpec, n_max: int, method: str = "closed") -> TruncatedSeries:
    """``s(Gamma, x)``: ``Psi^{C-1}`` if -1 is in Gamma, else ``Psi^{C-1} Phi``."""
    if method == "colored":
        return colored_generating_function(supertrace_colors(spec, n_max), n_max)
    _check_method(method)
    s = series_pow(euler_psi(n_max), spec.class_count - 1)
    if not spec.has_minus_one:
        s = series_mul(s, odd_phi(n_max))
    return s


def class_series(spec: GammaSpec, n_max: int) -> TruncatedSeries:
    return series_pow(euler_psi(n_max), spec.class_count)


def _check_method(method: str) -> None:
    if method != "closed":
        raise ValueError(f"unknown method {method!r}; use 'closed' or 'colored'")


def series_by_name(which: str, spec: GammaSpec, n_max: int) -> TruncatedSeries:
    fn = {"t": trace_series, "s": supertrace_series, "c": class_series}[which]
    return fn(spec, n_max)
