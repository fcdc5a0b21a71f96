"""Tests for independent-conditions degree arithmetic."""

import pytest

from strataforge.errors import DegreeTooSmall, SplittingInvalid
from strataforge.linear_conditions import (
    LineBundleOnCurve,
    expected_sections,
    independence_bound,
    plane_bound,
    tetragonal_bound,
    tetragonal_summand_degrees,
    trigonal_bound,
    trigonal_sections,
)


def test_independence_bound_examples():
    for g in range(0, 20):
        assert independence_bound(LineBundleOnCurve(g, 3 * g + 6)) == g + 7
    # canonical degree: the criterion guarantees nothing, and says so
    assert independence_bound(LineBundleOnCurve(5, 2 * 5 - 2)) == -1
    assert independence_bound(LineBundleOnCurve(3, 0)) == -5


def test_independence_bound_monotonicity():
    for g in range(0, 10):
        for deg in range(-3, 30):
            b = independence_bound(LineBundleOnCurve(g, deg))
            assert independence_bound(LineBundleOnCurve(g, deg + 1)) == b + 1
            assert independence_bound(LineBundleOnCurve(g + 1, deg)) == b - 2


def test_expected_sections():
    assert expected_sections(LineBundleOnCurve(4, 3 * 4 + 6)) == 2 * 4 + 7
    assert trigonal_sections(4) == 15
    for g in range(2, 15):
        assert trigonal_sections(g) == 2 * g + 7


def test_plane_bounds():
    assert plane_bound(4) == (3, 11)
    assert plane_bound(5) == (6, 14)
    assert plane_bound(3) == (1, 8)
    g, bound = plane_bound(3)
    assert 8 <= bound  # the genus-1 use case needs eight points


def test_plane_bound_degree_guard():
    with pytest.raises(DegreeTooSmall):
        plane_bound(2)
    with pytest.raises(DegreeTooSmall):
        plane_bound(0)


def test_trigonal_bounds():
    assert trigonal_bound(4) == 11
    assert trigonal_bound(5) == 12
    for g in range(2, 30):
        assert trigonal_bound(g) == g + 7


def test_tetragonal_bounds():
    assert tetragonal_bound(5, 4) == 7
    assert tetragonal_bound(6, 4) == 5


def test_tetragonal_summand_degrees():
    # g=5, f1=4 forces the balanced splitting (4, 4)
    assert tetragonal_summand_degrees(5, 4) == (16, 16)
    # g=6, f1=4: splitting (4, 5), degrees 4g+12-4*fi
    assert tetragonal_summand_degrees(6, 4) == (20, 16)


def test_tetragonal_bound_is_min_over_summands():
    for g in range(4, 20):
        for f1 in range(0, (g + 3) // 2 + 1):
            degs = tetragonal_summand_degrees(g, f1)
            expected = min(d - 2 * g + 1 for d in degs)
            assert tetragonal_bound(g, f1) == expected == 4 * f1 - 2 * g + 1


def test_tetragonal_bound_monotone_in_f1():
    for g in range(4, 15):
        bounds = [
            tetragonal_bound(g, f1) for f1 in range(0, (g + 3) // 2 + 1)
        ]
        assert bounds == sorted(bounds)


def test_tetragonal_balanced_splitting_capped_at_seven():
    for g in range(4, 41):
        f1 = (g + 3) // 2
        assert tetragonal_bound(g, f1) <= 7
        if g % 2 == 1:
            assert tetragonal_bound(g, f1) == 7


def test_tetragonal_splitting_guard():
    with pytest.raises(SplittingInvalid):
        tetragonal_bound(5, 5)
    with pytest.raises(SplittingInvalid):
        tetragonal_bound(6, -1)


def test_named_bounds_agree_with_generic_criterion():
    for d in range(3, 12):
        g, bound = plane_bound(d)
        assert bound == independence_bound(LineBundleOnCurve(g, d * d))
    for g in range(2, 12):
        assert trigonal_bound(g) == independence_bound(
            LineBundleOnCurve(g, 3 * g + 6)
        )
