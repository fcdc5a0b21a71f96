"""Degree arithmetic for "points impose independent conditions" bounds.

The common argument pattern: points Gamma on a curve C impose independent
conditions on sections of a line bundle L as soon as the twisted-dual
degree goes negative, i.e. 2g - 2 - deg(L) + n < 0. The largest such n is
deg(L) - 2g + 1. A negative bound means the criterion guarantees nothing;
it is returned as-is, never clamped, so callers can see the failure.

Three curve families get named wrappers: smooth plane curves of degree d
(restricting degree-d forms), trigonal curves (restricting a fixed
twist of the scroll class), and tetragonal curves (restricting the two
summands of the splitting of the pushed-forward structure sheaf).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeTooSmall, SplittingInvalid


@dataclass(frozen=True)
class LineBundleOnCurve:
    """A degree on a curve of known genus; nothing else is tracked."""

    genus: int
    degree: int


def independence_bound(bundle: LineBundleOnCurve) -> int:
    """Largest number of points guaranteed to impose independent
    conditions on sections: deg - 2g + 1. May be negative."""
    return bundle.degree - 2 * bundle.genus + 1


def expected_sections(bundle: LineBundleOnCurve) -> int:
    """Euler characteristic deg - g + 1 (equals h0 once h1 vanishes)."""
    return bundle.degree - bundle.genus + 1


def plane_bound(d: int) -> tuple:
    """(genus, bound) for a smooth plane curve of degree d.

    The bundle is the restriction of degree-d forms, of degree d*d; the
    curve has genus (d-1)(d-2)/2.
    """
    if d < 3:
        raise DegreeTooSmall("plane-curve analysis needs degree >= 3")
    g = (d - 1) * (d - 2) // 2
    bound = independence_bound(LineBundleOnCurve(genus=g, degree=d * d))
    assert bound == 3 * d - 1
    return g, bound


def trigonal_bound(g: int) -> int:
    """Bound g + 7 for a trigonal curve of genus g.

    The restricted bundle has degree 3g + 6, so the generic count gives
    deg - 2g + 1 = g + 7 points, with 2g + 7 expected sections.
    """
    bundle = LineBundleOnCurve(genus=g, degree=3 * g + 6)
    bound = independence_bound(bundle)
    assert bound == g + 7
    assert expected_sections(bundle) == 2 * g + 7
    return bound


def trigonal_sections(g: int) -> int:
    """Section count 2g + 7 of the degree-(3g+6) trigonal bundle."""
    return expected_sections(LineBundleOnCurve(genus=g, degree=3 * g + 6))


def tetragonal_summand_degrees(g: int, f1: int) -> tuple:
    """Degrees of the two splitting summands restricted to the curve.

    A tetragonal curve of genus g determines a splitting f1 + f2 = g + 3
    with f1 <= f2; the two restricted summands have degree 4g + 12 - 4fi.
    """
    f2 = g + 3 - f1
    if f1 > f2:
        raise SplittingInvalid(
            "splitting (%d, %d) is not sorted: need 2*f1 <= g + 3" % (f1, f2)
        )
    if f1 < 0:
        raise SplittingInvalid("splitting parts must be non-negative")
    return (4 * g + 12 - 4 * f1, 4 * g + 12 - 4 * f2)


def tetragonal_bound(g: int, f1: int) -> int:
    """Bound 4*f1 - 2g + 1 for a tetragonal curve with splitting (f1, f2).

    Points must impose independent conditions on both summands, so the
    bound is the minimum of the two per-summand counts; the larger
    summand wins because degrees move opposite to the splitting part.
    """
    degrees = tetragonal_summand_degrees(g, f1)
    bound = min(
        independence_bound(LineBundleOnCurve(genus=g, degree=deg))
        for deg in degrees
    )
    assert bound == 4 * f1 - 2 * g + 1
    return bound
