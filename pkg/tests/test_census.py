import numpy as np
import pytest

from _oracles import marked_partitions_brute, odd_partition_count, partitions
from wreathtrace.census import (
    CharPolyFactor, CharPolyFactors, MarkedPartition, census_counts, char_poly,
    char_poly_eval_signed_one, enumerate_marked_partitions, expand_char_poly,
    is_s_admissible, is_t_admissible, product_counts, reflection_census,
)
from wreathtrace.errors import ParseError, ResourceBoundError
from wreathtrace.exactnum import RationalAngle
from wreathtrace.groups import GammaSpec, class_table, klein_exists
from wreathtrace.series import class_series

Z1, Z2, Z3 = (GammaSpec.cyclic(n) for n in (1, 2, 3))
GRID = (
    [GammaSpec.cyclic(n) for n in range(1, 7)]
    + [GammaSpec.dihedral(n) for n in range(1, 5)]
    + [GammaSpec(f) for f in ("2T", "2O", "2I")]
)


def mp(*parts):
    return MarkedPartition(tuple(parts))


def test_enumerate_examples():
    t = class_table(Z1)
    assert list(enumerate_marked_partitions(t, 3)) == [mp((3, 0, 1)), mp((1, 0, 1), (2, 0, 1)), mp((1, 0, 3))]
    assert len(list(enumerate_marked_partitions(class_table(Z2), 2))) == 5
    assert list(enumerate_marked_partitions(class_table(Z3), 0)) == [MarkedPartition()]


@pytest.mark.parametrize("spec,N", [(Z1, 5), (Z2, 4), (Z3, 3), (GammaSpec.dihedral(2), 3), (GammaSpec("2T"), 2)], ids=str)
def test_enumerate_matches_brute_force_listing(spec, N):
    t = class_table(spec)
    got = [frozenset(m.as_dict().items()) for m in enumerate_marked_partitions(t, N)]
    assert len(got) == len(set(got))
    assert set(got) == marked_partitions_brute(t.count, N)


def test_enumerated_weights():
    for spec in GRID:
        t = class_table(spec)
        for N in range(5):
            assert all(m.weight == N for m in enumerate_marked_partitions(t, N))


def test_enumeration_bound():
    with pytest.raises(ResourceBoundError) as info:
        list(enumerate_marked_partitions(class_table(Z1), 61))
    assert info.value.required == 61 and info.value.allowed == 60
    with pytest.raises(ResourceBoundError):
        census_counts(GammaSpec.cyclic(12), 51, mode="enumerate")


def test_count_mode_past_bound_uses_series():
    res = census_counts(Z3, 100)
    assert res.C == class_series(Z3, 100)[100]


def test_admissibility_examples():
    z1, z2 = class_table(Z1), class_table(Z2)
    assert not is_t_admissible(mp((1, 0, 2)), z1)
    assert is_t_admissible(mp((2, 1, 1)), z2)
    assert is_t_admissible(MarkedPartition(), z2)
    assert is_s_admissible(mp((1, 0, 2)), z2)
    assert not is_s_admissible(mp((2, 0, 1)), z2)
    assert is_s_admissible(mp((2, 1, 1)), z2)
    assert is_s_admissible(MarkedPartition(), z2)


def test_census_examples():
    for spec, N, expected in [(Z1, 4, (5, 0, 2)), (Z2, 2, (5, 2, 2)), (Z3, 2, (9, 5, 8))]:
        for mode in ("count", "enumerate"):
            r = census_counts(spec, N, mode=mode)
            assert (r.C, r.T, r.S) == expected


def test_census_trivial_group_matches_partition_oracle():
    for N in range(1, 9):
        r = census_counts(Z1, N, mode="enumerate")
        assert r.C == sum(1 for _ in partitions(N))
        assert r.T == 0
        assert r.S == odd_partition_count(N)


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_count_and_enumerate_modes_agree(spec):
    for N in range(7):
        assert census_counts(spec, N, mode="count") == census_counts(spec, N, mode="enumerate")


def test_n_zero_convention():
    for spec in GRID:
        r = census_counts(spec, 0)
        assert (r.C, r.T, r.S) == (1, 1, 1)


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_inequality_theorem(spec):
    t = class_table(spec)
    for N in range(9):
        r = census_counts(spec, N)
        assert r.S > 0
        assert r.S >= r.T
        assert (r.S == r.T) == klein_exists(t, N)


def test_char_poly_examples():
    z2 = class_table(Z2)
    quarter = RationalAngle(1, 4)
    assert list(char_poly(mp((2, 1, 1)), z2)) == [CharPolyFactor(RationalAngle(1, 2), 2, 1)]
    assert list(char_poly(mp((1, 0, 1)), z2)) == [CharPolyFactor(RationalAngle(0, 1), 1, 1)]
    z4 = class_table(GammaSpec.cyclic(4))
    alpha = next(c.id for c in z4.classes if c.angle == quarter)
    f = char_poly(mp((3, alpha, 1)), z4)
    assert list(f) == [CharPolyFactor(quarter, 3, 1)]
    np.testing.assert_allclose(expand_char_poly(f), [1, 0, 0, 0, 0, 0, 1], atol=1e-12)
    np.testing.assert_allclose(expand_char_poly(char_poly(mp((2, 1, 1)), z2)), [1, 0, 2, 0, 1], atol=1e-12)


def test_char_poly_eval_examples():
    zero, half = RationalAngle(0, 1), RationalAngle(1, 2)
    assert char_poly_eval_signed_one(CharPolyFactors((CharPolyFactor(zero, 1, 1),)), 1) == (True, 0.0)
    assert char_poly_eval_signed_one(CharPolyFactors((CharPolyFactor(half, 2, 1),)), -1) == (False, 4.0)
    assert char_poly_eval_signed_one(CharPolyFactors((CharPolyFactor(half, 1, 1),)), -1) == (True, 0.0)
    with pytest.raises(ValueError):
        char_poly_eval_signed_one(CharPolyFactors(()), 0)


def _numeric_char_poly(m, t):
    """det(g - lambda) for the block matrix of the marked-cycle normal form."""
    blocks = []
    for r, a, p in m.parts:
        ang = t[a].angle
        th = 2 * np.pi * ang.k / ang.m
        g = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        for _ in range(p):
            A = np.zeros((2 * r, 2 * r))
            for i in range(r - 1):
                A[2 * i:2 * i + 2, 2 * i + 2:2 * i + 4] = np.eye(2)
            A[2 * r - 2:, :2] = g
            blocks.append(A)
    n = sum(b.shape[0] for b in blocks)
    M = np.zeros((n, n))
    k = 0
    for b in blocks:
        M[k:k + b.shape[0], k:k + b.shape[0]] = b
        k += b.shape[0]
    # np.poly gives det(lambda - M), which equals det(M - lambda) in even dimension
    return np.poly(M)[::-1]


@pytest.mark.parametrize("spec", [Z2, Z3, GammaSpec.cyclic(5), GammaSpec.dihedral(3), GammaSpec("2O")], ids=str)
def test_char_poly_matches_block_matrix(spec):
    t = class_table(spec)
    for m in enumerate_marked_partitions(t, 3):
        np.testing.assert_allclose(expand_char_poly(char_poly(m, t)), _numeric_char_poly(m, t), atol=1e-8)


def test_product_counts_examples():
    assert product_counts((2, 2), (5, 8)) == (10, 16)
    assert product_counts((0, 2), (7, 7)) == (0, 14)
    assert product_counts((1, 1), (3, 9)) == (3, 9)


def test_reflection_census_examples():
    assert reflection_census(Z2, 3) == (2, 2)
    assert reflection_census(Z1, 5) == (1, 1)
    assert reflection_census(GammaSpec("2I"), 2) == (9, 9)
    assert reflection_census(Z3, 1) == (2, 2)
    with pytest.raises(ValueError):
        reflection_census(Z3, 0)


def test_text_form_round_trip():
    for spec in (Z2, GammaSpec("2T")):
        t = class_table(spec)
        for m in enumerate_marked_partitions(t, 4):
            assert MarkedPartition.parse(str(m)) == m
    assert str(mp((1, 0, 3), (2, 2, 1))) == "2^1[c2] 1^3[c0]"
    assert MarkedPartition.parse("") == MarkedPartition()
    with pytest.raises(ParseError):
        MarkedPartition.parse("2^1(c1)")
    with pytest.raises(ParseError):
        MarkedPartition.parse("0^1[c1]")
