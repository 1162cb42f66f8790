import itertools

import numpy as np
import pytest

from wreathtrace.census import MarkedPartition, census_counts, enumerate_marked_partitions
from wreathtrace.errors import ResourceBoundError
from wreathtrace.groups import GammaSpec, build_group, class_table, element_class_ids
from wreathtrace.oracle import (
    CAP_ENV, WreathElement, classify_element, conjugacy_classes_brute, enumerate_wreath,
    gamma_matrices, has_eigenvalue_signed_one, oracle_counts, oracle_report, to_matrix,
    wreath_inverse, wreath_mul,
)

Z1, Z2, Z3 = (GammaSpec.cyclic(n) for n in (1, 2, 3))


@pytest.mark.parametrize("spec,N,size", [(Z2, 2, 8), (Z3, 2, 18), (GammaSpec("2T"), 2, 1152)], ids=str)
def test_enumerate_wreath_sizes(spec, N, size):
    elements = enumerate_wreath(spec, N)
    assert len(elements) == size == len(set(elements))


def test_enumerate_wreath_cap(monkeypatch):
    with pytest.raises(ResourceBoundError) as info:
        enumerate_wreath(GammaSpec("2I"), 3)
    assert info.value.required == 120 ** 3 * 6
    monkeypatch.setenv(CAP_ENV, "7")
    with pytest.raises(ResourceBoundError):
        enumerate_wreath(Z2, 2)
    monkeypatch.setenv(CAP_ENV, "8")
    assert len(enumerate_wreath(Z2, 2)) == 8


def test_wreath_mul_examples():
    g = build_group(Z3)
    x = WreathElement((1, 2), (1, 0))
    assert wreath_mul(WreathElement.identity(2), x, g) == x
    assert wreath_mul(WreathElement.diagonal((1, 0)), WreathElement.diagonal((0, 2)), g) == WreathElement.diagonal((1, 2))
    K = WreathElement.swap(2, 0, 1)
    D1 = WreathElement.diagonal((1, 0))
    assert wreath_mul(wreath_mul(K, D1, g), K, g) == WreathElement.diagonal((0, 1))


@pytest.mark.parametrize("spec", [Z3, GammaSpec.dihedral(2), GammaSpec("2T")], ids=str)
def test_wreath_group_laws_and_matrix_homomorphism(spec):
    g = build_group(spec)
    elements = enumerate_wreath(spec, 2)[::37][:40]
    e = WreathElement.identity(2)
    for a in elements:
        assert wreath_mul(a, wreath_inverse(a, g), g) == e
        for b in elements[:10]:
            ab = wreath_mul(a, b, g)
            np.testing.assert_allclose(to_matrix(ab, g), to_matrix(a, g) @ to_matrix(b, g), atol=1e-12)
            for c in elements[:4]:
                assert wreath_mul(ab, c, g) == wreath_mul(a, wreath_mul(b, c, g), g)


def test_gamma_matrices_form_a_representation():
    for spec in (GammaSpec.cyclic(5), GammaSpec.dihedral(3), GammaSpec("2O"), GammaSpec("2I")):
        g = build_group(spec)
        mats = gamma_matrices(spec)
        for i in range(g.order):
            assert abs(np.linalg.det(mats[i]) - 1) < 1e-12
            for j in range(0, g.order, 7):
                np.testing.assert_allclose(mats[g.cayley[i][j]], mats[i] @ mats[j], atol=1e-12)


def test_to_matrix_examples():
    g = build_group(Z2)
    np.testing.assert_allclose(to_matrix(WreathElement.identity(2), g), np.eye(4))
    np.testing.assert_allclose(to_matrix(WreathElement.diagonal((1, 0)), g), np.diag([-1, -1, 1, 1]), atol=1e-15)
    swap = np.zeros((4, 4))
    swap[0:2, 2:4] = swap[2:4, 0:2] = np.eye(2)
    np.testing.assert_allclose(to_matrix(WreathElement.swap(2, 0, 1), g), swap)


def test_symplectic_determinant_one():
    for spec in (Z3, GammaSpec.dihedral(2), GammaSpec("2T")):
        g = build_group(spec)
        for e in enumerate_wreath(spec, 2)[::11]:
            assert abs(np.linalg.det(to_matrix(e, g)) - 1) < 1e-8


def test_has_eigenvalue_examples():
    assert has_eigenvalue_signed_one(np.eye(4), 1)
    assert not has_eigenvalue_signed_one(-np.eye(4), 1)
    K = to_matrix(WreathElement.swap(2, 0, 1), build_group(Z1))
    assert has_eigenvalue_signed_one(K, 1) and has_eigenvalue_signed_one(K, -1)
    assert not has_eigenvalue_signed_one(np.zeros((0, 0)), 1)


@pytest.mark.parametrize("spec,N,C", [(Z2, 2, 5), (Z1, 3, 3), (Z3, 2, 9)], ids=str)
def test_conjugacy_classes_brute(spec, N, C):
    g = build_group(spec)
    elements = enumerate_wreath(spec, N)
    classes = conjugacy_classes_brute(elements, g)
    assert len(classes) == C
    assert sorted(itertools.chain.from_iterable(classes)) == list(range(len(elements)))


@pytest.mark.parametrize("spec,N,expected", [(Z2, 2, (5, 2, 2)), (Z1, 3, (3, 0, 2)), (Z3, 2, (9, 5, 8))], ids=str)
def test_oracle_counts_examples(spec, N, expected):
    assert oracle_counts(spec, N) == expected
    r = census_counts(spec, N)
    assert (r.C, r.T, r.S) == expected


def test_classify_element_examples():
    g = build_group(Z3)
    ids = element_class_ids(Z3)
    assert classify_element(WreathElement.identity(3), build_group(Z1)) == MarkedPartition(((1, 0, 3),))
    assert classify_element(WreathElement((1, 0), (1, 0)), g) == MarkedPartition(((2, ids[1], 1),))
    assert classify_element(WreathElement((1, 2), (0, 1)), g) == MarkedPartition(((1, ids[1], 1), (1, ids[2], 1)))


def test_classify_uses_ordered_cycle_product():
    # in a nonabelian Gamma the two orders of a cycle product can land in different classes
    spec = GammaSpec("2T")
    g = build_group(spec)
    ids = element_class_ids(spec)
    for e in enumerate_wreath(spec, 2)[::13]:
        if e.sigma != (1, 0):
            continue
        (r, a, p), = classify_element(e, g).parts
        assert r == 2 and a == ids[g.cayley[e.d[0]][e.d[1]]]


@pytest.mark.parametrize("spec,N", [(Z1, 4), (Z2, 3), (Z3, 3), (GammaSpec.cyclic(4), 2),
                                    (GammaSpec.dihedral(1), 2), (GammaSpec.dihedral(2), 2), (GammaSpec("2T"), 2)], ids=str)
def test_oracle_report_bijection(spec, N):
    rep = oracle_report(spec, N)
    assert rep.constant_on_classes
    assert rep.eigen_agrees
    assert len(set(rep.labels)) == len(rep.labels)
    assert set(rep.labels) == set(enumerate_marked_partitions(class_table(spec), N))
