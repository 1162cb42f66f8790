"""Element-level brute force over Gamma wr S_N for tiny N.

Everything here is deliberately naive: the whole group is listed, classes
are conjugation orbits, and the +-1 eigenvalue tests are numeric
determinants of the explicit 2N x 2N matrices.  The counts it produces
depend only on the Gamma multiplication table and numeric matrices; the
census predicates are consulted only to report agreement.
"""
from __future__ import annotations

import cmath
import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .census import MarkedPartition, is_s_admissible, is_t_admissible
from .errors import ResourceBoundError
from .groups import (
    CYCLIC, DIHEDRAL, GammaGroup, GammaSpec, build_group, class_table, element_class_ids,
)

DEFAULT_CAP = 50_000
CAP_ENV = "WREATH_ORACLE_CAP"
EIGEN_TOL = 1e-6


def default_cap() -> int:
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True)
class WreathElement:
    """``D sigma`` with ``d[k]`` a Gamma element index and ``sigma[l]`` the image of l (0-based)."""

    d: tuple[int, ...]
    sigma: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, N: int) -> "WreathElement":
        return cls((0,) * N, tuple(range(N)))

    @classmethod
    def diagonal(cls, d) -> "WreathElement":
        return cls(tuple(d), tuple(range(len(d))))

    @classmethod
    def swap(cls, N: int, i: int, j: int) -> "WreathElement":
        sigma = list(range(N))
        sigma[i], sigma[j] = j, i
        return cls((0,) * N, tuple(sigma))


def wreath_mul(a: WreathElement, b: WreathElement, g: GammaGroup) -> WreathElement:
    """``(d1 s1)(d2 s2) = (d1 * s1(d2), s1 s2)`` where ``s1(d2)[s1(l)] = d2[l]``."""
    moved = [0] * a.N
    for l, k in enumerate(a.sigma):
        moved[k] = b.d[l]
    d = tuple(g.cayley[x][y] for x, y in zip(a.d, moved))
    sigma = tuple(a.sigma[b.sigma[l]] for l in range(a.N))
    return WreathElement(d, sigma)


def wreath_inverse(a: WreathElement, g: GammaGroup) -> WreathElement:
    inv_sigma = [0] * a.N
    for l, k in enumerate(a.sigma):
        inv_sigma[k] = l
    d = tuple(g.inverse[a.d[a.sigma[k]]] for k in range(a.N))
    return WreathElement(d, tuple(inv_sigma))


def enumerate_wreath(spec: GammaSpec, N: int, cap: int | None = None) -> list[WreathElement]:
    cap = default_cap() if cap is None else cap
    size = spec.order ** N * math.factorial(N)
    if size > cap:
        raise ResourceBoundError(f"oracle group size for {spec} wr S_{N}", size, cap)
    g = build_group(spec)
    perms = list(itertools.permutations(range(N)))
    return [WreathElement(d, s) for d in itertools.product(range(g.order), repeat=N) for s in perms]


def conjugacy_classes_brute(elements: list[WreathElement], g: GammaGroup) -> list[list[int]]:
    """Orbits of the conjugation action, as lists of indices into ``elements``."""
    index = {e: k for k, e in enumerate(elements)}
    conjugators = [(h, wreath_inverse(h, g)) for h in elements]
    seen = [False] * len(elements)
    classes = []
    for k, x in enumerate(elements):
        if seen[k]:
            continue
        orbit = set()
        for h, h_inv in conjugators:
            orbit.add(index[wreath_mul(wreath_mul(h, x, g), h_inv, g)])
        for j in orbit:
            seen[j] = True
        classes.append(sorted(orbit))
    return classes


@lru_cache(maxsize=None)
def gamma_matrices(spec: GammaSpec) -> tuple[np.ndarray, ...]:
    """Numeric 2x2 matrices in SL(2, C) for every element index of Gamma."""
    g = build_group(spec)
    if spec.family == CYCLIC:
        mats = []
        for k in g.elements:
            t = 2 * math.pi * k / spec.n
            mats.append(np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]], dtype=complex))
    elif spec.family == DIHEDRAL:
        # a = diag(z, 1/z) with z = exp(i pi/n); b = [[0, 1], [-1, 0]]
        b = np.array([[0, 1], [-1, 0]], dtype=complex)
        mats = []
        for k, e in g.elements:
            z = cmath.exp(1j * math.pi * k / spec.n)
            a_k = np.diag([z, 1 / z])
            mats.append(a_k @ b if e else a_k)
    else:
        mats = [np.array(q.su2_matrix(), dtype=complex) for q in g.elements]
    return tuple(mats)


def to_matrix(e: WreathElement, g: GammaGroup) -> np.ndarray:
    """Block (k, l) is ``M(d[k])`` when ``sigma(l) = k``, else zero."""
    mats = gamma_matrices(g.spec)
    N = e.N
    m = np.zeros((2 * N, 2 * N), dtype=complex)
    for l, k in enumerate(e.sigma):
        m[2 * k:2 * k + 2, 2 * l:2 * l + 2] = mats[e.d[k]]
    if N:
        err = np.abs(m @ m.conj().T - np.eye(2 * N)).max()
        if err >= 1e-9:
            raise ArithmeticError(f"matrix of {e} is not unitary (error {err:.2e})")
    return m


def has_eigenvalue_signed_one(m: np.ndarray, sign: int, tol: float = EIGEN_TOL) -> bool:
    """Whether ``sign`` is an eigenvalue, via ``|det(M - sign I)| < tol``.

    ``numpy.linalg.det`` is LU with partial pivoting.  Empty matrices have
    determinant 1 and so no eigenvalues.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    shifted = m - sign * np.eye(m.shape[0])
    return bool(abs(np.linalg.det(shifted)) < tol)


def classify_element(e: WreathElement, g: GammaGroup) -> MarkedPartition:
    """Marked partition of e: each sigma-cycle marked by the class of its cycle product.

    Starting at l, the product is ``d[s^r(l)] ... d[s^2(l)] d[s(l)]``; this is
    the restriction of the r-th power of the element to block l.
    """
    class_of = element_class_ids(g.spec)
    visited = [False] * e.N
    counts: dict[tuple[int, int], int] = {}
    for start in range(e.N):
        if visited[start]:
            continue
        prod, x, r = 0, start, 0
        while True:
            visited[x] = True
            x = e.sigma[x]
            prod = g.cayley[e.d[x]][prod]
            r += 1
            if x == start:
                break
        key = (r, class_of[prod])
        counts[key] = counts.get(key, 0) + 1
    return MarkedPartition.from_dict(counts)


@dataclass
class OracleReport:
    spec: GammaSpec
    N: int
    C: int
    T: int
    S: int
    labels: list[MarkedPartition]  # classify_element of each class representative
    class_sizes: list[int]
    constant_on_classes: bool
    eigen_agrees: bool  # numeric +-1 tests match the census admissibility predicates

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.C, self.T, self.S)


def oracle_report(spec: GammaSpec, N: int, cap: int | None = None, tol: float = EIGEN_TOL) -> OracleReport:
    g = build_group(spec)
    t = class_table(spec)
    elements = enumerate_wreath(spec, N, cap)
    classes = conjugacy_classes_brute(elements, g)
    T = S = 0
    labels = []
    constant = True
    eigen_ok = True
    for orbit in classes:
        rep = elements[orbit[0]]
        label = classify_element(rep, g)
        labels.append(label)
        constant &= all(classify_element(elements[j], g) == label for j in orbit)
        m = to_matrix(rep, g)
        no_plus = not has_eigenvalue_signed_one(m, 1, tol)
        no_minus = not has_eigenvalue_signed_one(m, -1, tol)
        T += no_plus
        S += no_minus
        eigen_ok &= (no_plus == is_t_admissible(label, t)) and (no_minus == is_s_admissible(label, t))
    return OracleReport(spec, N, len(classes), T, S, labels, [len(o) for o in classes], constant, eigen_ok)


def oracle_counts(spec: GammaSpec, N: int, cap: int | None = None, tol: float = EIGEN_TOL) -> tuple[int, int, int]:
    """(C, T, S) from the element-level brute force."""
    return oracle_report(spec, N, cap, tol).counts
