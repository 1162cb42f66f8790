"""Finite subgroups of Sp(2, C) and their conjugacy-class tables.

Five families: cyclic ``Z<n>``, binary dihedral ``D<n>`` (order 4n), and the
binary tetrahedral, octahedral and icosahedral groups ``2T``, ``2O``, ``2I``.
The polyhedral groups are realized exactly as unit quaternions over
Q(sqrt2, sqrt5); cyclic and dihedral groups are realized by normal forms
(exponents, resp. ``a^k b^e``), which keeps them exact for every n.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

from .errors import ConsistencyError, ParseError
from .exactnum import (
    GOLDEN, QUAT_I, QUAT_ONE, SQRT2, Quaternion, RationalAngle,
    angle_from_quaternion, field_inverse, quat_mul, quat_order,
)

__all__ = [
    "GammaSpec", "GammaClass", "GammaClassTable", "GammaGroup",
    "parse_spec", "build_group", "brute_force_class_table", "class_table",
    "contains_minus_one", "admissible_counts", "klein_exists",
    "cycle_t_admissible", "cycle_s_admissible", "element_class_ids",
]

CYCLIC, DIHEDRAL, TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL = "Z", "D", "2T", "2O", "2I"
POLYHEDRAL = (TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL)
_POLYHEDRAL_ORDER = {TETRAHEDRAL: 24, OCTAHEDRAL: 48, ICOSAHEDRAL: 120}
_POLYHEDRAL_CLASSES = {TETRAHEDRAL: 7, OCTAHEDRAL: 8, ICOSAHEDRAL: 9}


@dataclass(frozen=True)
class GammaSpec:
    family: str
    n: Optional[int] = None

    def __post_init__(self):
        if self.family in (CYCLIC, DIHEDRAL):
            if not isinstance(self.n, int) or self.n < 1:
                raise ValueError(f"{self.family}<n> needs a positive integer n, got {self.n!r}")
        elif self.family in POLYHEDRAL:
            if self.n is not None:
                raise ValueError(f"{self.family} takes no parameter")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def cyclic(cls, n: int) -> "GammaSpec":
        return cls(CYCLIC, n)

    @classmethod
    def dihedral(cls, n: int) -> "GammaSpec":
        return cls(DIHEDRAL, n)

    @property
    def order(self) -> int:
        if self.family == CYCLIC:
            return self.n
        if self.family == DIHEDRAL:
            return 4 * self.n
        return _POLYHEDRAL_ORDER[self.family]

    @property
    def class_count(self) -> int:
        """C(Gamma), from the closed forms n, n+3, 7, 8, 9."""
        if self.family == CYCLIC:
            return self.n
        if self.family == DIHEDRAL:
            return self.n + 3
        return _POLYHEDRAL_CLASSES[self.family]

    @property
    def has_minus_one(self) -> bool:
        return not (self.family == CYCLIC and self.n % 2 == 1)

    @property
    def is_polyhedral(self) -> bool:
        return self.family in POLYHEDRAL

    def __str__(self):
        return f"{self.family}{self.n}" if self.n is not None else self.family


_SPEC_RE = re.compile(r"^\s*(?:([zd])\s*(\d+)|2\s*([toi]))\s*$", re.IGNORECASE)


def parse_spec(text: str) -> GammaSpec:
    """Parse ``Z<n>``, ``D<n>``, ``2T``, ``2O`` or ``2I`` (case-insensitive)."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"unparsable group spec {text!r}; expected Z<n>, D<n>, 2T, 2O or 2I")
    if m.group(3):
        return GammaSpec("2" + m.group(3).upper())
    n = int(m.group(2))
    if n < 1:
        raise ParseError(f"group parameter must be >= 1 in {text!r}")
    return GammaSpec(m.group(1).upper(), n)


@dataclass(frozen=True)
class GammaClass:
    id: int
    size: int
    element_order: int
    angle: RationalAngle
    is_identity: bool
    is_minus_one: bool
    rep: int  # smallest element index in the class

    @property
    def label(self) -> str:
        return f"c{self.id}"

    def signature(self) -> tuple:
        return (self.size, self.element_order, self.angle)


@dataclass(frozen=True)
class GammaClassTable:
    spec: GammaSpec
    order: int
    classes: tuple[GammaClass, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def identity(self) -> GammaClass:
        return next(c for c in self.classes if c.is_identity)

    @property
    def minus_one(self) -> Optional[GammaClass]:
        return next((c for c in self.classes if c.is_minus_one), None)

    def __getitem__(self, cid: int) -> GammaClass:
        return self.classes[cid]

    def signatures(self) -> list[tuple]:
        return sorted(c.signature() for c in self.classes)


@dataclass(frozen=True, eq=False)
class GammaGroup:
    """A concrete Gamma with a full multiplication table over element indices.

    Index 0 is always the identity.
    """

    spec: GammaSpec
    elements: tuple[Any, ...]
    cayley: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def index(self, element) -> int:
        return self._index[element]

    def power_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.cayley[x][i]
            k += 1
        return k

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: k for k, e in enumerate(self.elements)})


def _polyhedral_generators(family: str) -> list[Quaternion]:
    half = Fraction(1, 2)
    omega = Quaternion(-half, half, half, half)
    if family == TETRAHEDRAL:
        return [QUAT_I, omega]
    if family == OCTAHEDRAL:
        r = SQRT2 * half  # 1/sqrt2
        return [Quaternion(r, r), omega]
    tau = GOLDEN
    return [Quaternion(tau * half, field_inverse(tau) * half, half), QUAT_I]


def _close_under(generators: Sequence[Quaternion], cap: int = 240):
    """BFS closure from the identity by right multiplication.

    Returns the element list and, for each element after the first, the
    (parent index, generator index) it was reached from.
    """
    elements = [QUAT_ONE]
    index = {QUAT_ONE: 0}
    parent: list[Optional[tuple[int, int]]] = [None]
    right: list[list[int]] = [[] for _ in generators]
    head = 0
    while head < len(elements):
        e = elements[head]
        for s, g in enumerate(generators):
            prod = quat_mul(e, g)
            k = index.get(prod)
            if k is None:
                k = len(elements)
                if k >= cap:
                    raise ConsistencyError("quaternion closure exceeded cap")
                index[prod] = k
                elements.append(prod)
                parent.append((head, s))
            right[s].append(k)
        head += 1
    return elements, parent, right


def _cayley_from_words(order: int, parent, right) -> list[list[int]]:
    table = [[0] * order for _ in range(order)]
    for i in range(order):
        row = table[i]
        row[0] = i
        for j in range(1, order):
            p, s = parent[j]
            row[j] = right[s][row[p]]
    return table


def _dihedral_elements(n: int) -> list[tuple[int, int]]:
    # index of a^k b^e is e*2n + k
    return [(k, e) for e in (0, 1) for k in range(2 * n)]


def _dihedral_mul(n: int, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    k1, e1 = x
    k2, e2 = y
    k = k1 + (-k2 if e1 else k2)
    if e1 and e2:
        k += n  # b^2 = a^n
    return (k % (2 * n), (e1 + e2) % 2)


@lru_cache(maxsize=None)
def build_group(spec: GammaSpec) -> GammaGroup:
    if spec.family == CYCLIC:
        n = spec.n
        elements = list(range(n))
        cayley = [[(i + j) % n for j in range(n)] for i in range(n)]
    elif spec.family == DIHEDRAL:
        n = spec.n
        elements = _dihedral_elements(n)
        pos = {e: k for k, e in enumerate(elements)}
        cayley = [[pos[_dihedral_mul(n, x, y)] for y in elements] for x in elements]
    else:
        elements, parent, right = _close_under(_polyhedral_generators(spec.family))
        cayley = _cayley_from_words(len(elements), parent, right)
    if len(elements) != spec.order:
        raise ConsistencyError(f"{spec}: closure has {len(elements)} elements, expected {spec.order}")
    inverse = [row.index(0) for row in cayley]
    return GammaGroup(spec, tuple(elements), tuple(map(tuple, cayley)), tuple(inverse))


def _element_angle(g: GammaGroup, i: int) -> RationalAngle:
    spec = g.spec
    if spec.family == CYCLIC:
        return RationalAngle.of(g.elements[i], spec.n)
    if spec.family == DIHEDRAL:
        k, e = g.elements[i]
        return RationalAngle(1, 4) if e else RationalAngle.of(k, 2 * spec.n)
    return angle_from_quaternion(g.elements[i])


def _element_order(g: GammaGroup, i: int) -> int:
    if g.spec.is_polyhedral:
        return quat_order(g.elements[i])
    return g.power_order(i)


def _finish_table(spec: GammaSpec, raw: list[tuple[int, int, RationalAngle, int]]) -> GammaClassTable:
    """raw entries are (size, element_order, angle, rep); assigns canonical ids."""
    raw = sorted(raw, key=lambda c: (c[1], c[2], c[0], c[3]))
    classes = tuple(
        GammaClass(
            id=cid, size=size, element_order=order, angle=angle,
            is_identity=angle.is_zero(), is_minus_one=angle.is_half(), rep=rep,
        )
        for cid, (size, order, angle, rep) in enumerate(raw)
    )
    for c in classes:
        if c.is_identity != (c.element_order == 1) or c.is_minus_one != (c.element_order == 2):
            raise ConsistencyError(f"{spec}: class {c} violates the +-1 dichotomy")
    table = GammaClassTable(spec, spec.order, classes)
    if sum(c.size for c in classes) != spec.order:
        raise ConsistencyError(f"{spec}: class sizes do not sum to the group order")
    if any(spec.order % c.size for c in classes):
        raise ConsistencyError(f"{spec}: a class size does not divide the group order")
    if sum(c.is_identity for c in classes) != 1 or sum(c.is_minus_one for c in classes) > 1:
        raise ConsistencyError(f"{spec}: expected one identity class and at most one -1 class")
    return table


def brute_force_class_table(g: GammaGroup) -> GammaClassTable:
    """Classes as orbits of the conjugation action, read off the Cayley table."""
    seen = [False] * g.order
    raw = []
    for x in range(g.order):
        if seen[x]:
            continue
        orbit = {g.cayley[g.cayley[h][x]][g.inverse[h]] for h in range(g.order)}
        for y in orbit:
            seen[y] = True
        raw.append((len(orbit), _element_order(g, x), _element_angle(g, x), min(orbit)))
    return _finish_table(g.spec, raw)


@lru_cache(maxsize=None)
def class_table(spec: GammaSpec) -> GammaClassTable:
    """Class table by closed formulas for Z_n and D_n; brute force for 2T, 2O, 2I."""
    if spec.family == CYCLIC:
        n = spec.n
        raw = [(1, n // math.gcd(k, n), RationalAngle.of(k, n), k) for k in range(n)]
    elif spec.family == DIHEDRAL:
        n = spec.n
        raw = [(1, 1, RationalAngle(0, 1), 0), (1, 2, RationalAngle(1, 2), n)]
        raw += [(2, 2 * n // math.gcd(k, 2 * n), RationalAngle.of(k, 2 * n), k) for k in range(1, n)]
        # a^{even} b and a^{odd} b
        raw += [(n, 4, RationalAngle(1, 4), 2 * n), (n, 4, RationalAngle(1, 4), 2 * n + 1)]
    else:
        return brute_force_class_table(build_group(spec))
    return _finish_table(spec, raw)


def contains_minus_one(t: GammaClassTable) -> bool:
    return t.minus_one is not None


def cycle_t_admissible(cls: GammaClass, r: int) -> bool:
    """Whether the marked cycle of length r marked by cls lacks eigenvalue +1."""
    return not cls.is_identity


def cycle_s_admissible(cls: GammaClass, r: int) -> bool:
    """Whether the marked cycle of length r marked by cls lacks eigenvalue -1."""
    if not cls.is_identity and not cls.is_minus_one:
        return True
    if cls.is_minus_one:
        return r % 2 == 0
    return r % 2 == 1


def admissible_counts(t: GammaClassTable, r: int) -> tuple[int, int]:
    """(t_r, s_r): numbers of classes whose r-cycle is t-/s-admissible."""
    if r < 1:
        raise ValueError("cycle length must be positive")
    t_r = sum(cycle_t_admissible(c, r) for c in t.classes)
    s_r = sum(cycle_s_admissible(c, r) for c in t.classes)
    C = t.count
    expected_s = C - 1 if contains_minus_one(t) or r % 2 == 0 else C
    if t_r != C - 1 or s_r != expected_s:
        raise ConsistencyError(f"{t.spec}, r={r}: got ({t_r}, {s_r}), closed form ({C - 1}, {expected_s})")
    return t_r, s_r


def klein_exists(t: GammaClassTable, N: int) -> bool:
    if N < 0:
        raise ValueError("N must be nonnegative")
    # N = 0: the trivial algebra has E and -E as Klein operators
    return N == 0 or contains_minus_one(t)


@lru_cache(maxsize=None)
def element_class_ids(spec: GammaSpec) -> tuple[int, ...]:
    """Class id of every element index of ``build_group(spec)``."""
    g = build_group(spec)
    ids = [-1] * g.order
    for c in class_table(spec).classes:
        for h in range(g.order):
            ids[g.cayley[g.cayley[h][c.rep]][g.inverse[h]]] = c.id
    if -1 in ids:
        raise ConsistencyError(f"{spec}: class representatives do not cover the group")
    return tuple(ids)
