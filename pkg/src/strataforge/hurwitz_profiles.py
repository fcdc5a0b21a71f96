"""Ramification-profile bookkeeping for spaces of branched covers of the line.

A profile records the degree k, the source genus g, and one partition of
k per branch point. The degree-genus count (the Riemann-Hurwitz identity
2g - 2 + 2k = sum of (k - length) over the partitions) is checked, not
assumed: violations come back as data so callers can inspect deficits.

The fully-ramified-point constructions used for marked-cycle arguments
live here too: the profile with one point of ramification order a + 2
and otherwise simple branching, the component labels of the resulting
intersection loci, and their codimension count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInput, InvalidSpec, ProfileTooRamified


def _as_partition(parts) -> tuple:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p <= 0 for p in parts):
        raise DegenerateInput("partition parts must be positive integers")
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class RamificationProfile:
    """Degree, genus, and one partition of the degree per branch point."""

    k: int
    g: int
    partitions: tuple

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise DegenerateInput("covering degree must be an integer >= 2")
        if not isinstance(self.g, int) or self.g < 0:
            raise DegenerateInput("genus must be a non-negative integer")
        object.__setattr__(
            self,
            "partitions",
            tuple(_as_partition(mu) for mu in self.partitions),
        )

    @property
    def num_branch_points(self) -> int:
        return len(self.partitions)

    @property
    def warnings(self) -> tuple:
        """Metadata caveats; never failures.

        Large covering degree needs a tame ground field, so profiles with
        k >= 5 carry a characteristic caveat.
        """
        if self.k >= 5:
            return (
                "assumes ground-field characteristic 0 or greater than %d"
                % self.k,
            )
        return ()

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "g": self.g,
            "partitions": [list(mu) for mu in self.partitions],
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class ProfileReport:
    """Outcome of checking a profile; violations are data, not errors.

    deficit is 2g - 2 + 2k minus the achieved total ramification; zero is
    required. bad_partitions lists indices that do not sum to the degree.
    """

    ok: bool
    deficit: int
    bad_partitions: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "deficit": self.deficit,
            "bad_partitions": list(self.bad_partitions),
        }


def validate_profile(profile: RamificationProfile) -> ProfileReport:
    """Check partition sums and the degree-genus count."""
    bad = tuple(
        i
        for i, mu in enumerate(profile.partitions)
        if sum(mu) != profile.k
    )
    achieved = sum(profile.k - len(mu) for mu in profile.partitions)
    deficit = (2 * profile.g - 2 + 2 * profile.k) - achieved
    return ProfileReport(
        ok=not bad and deficit == 0,
        deficit=deficit,
        bad_partitions=bad,
    )


def _simple_partition(k: int) -> tuple:
    return (2,) + (1,) * (k - 2)


def simple_profile(k: int, g: int) -> RamificationProfile:
    """The profile of a cover with only simple branch points.

    The degree-genus count forces exactly m = 2g - 2 + 2k of them.
    """
    m = 2 * g - 2 + 2 * k
    if m <= 0:
        raise DegenerateInput(
            "no simple profile exists for k = %d, g = %d" % (k, g)
        )
    profile = RamificationProfile(k, g, (_simple_partition(k),) * m)
    assert validate_profile(profile).ok
    return profile


@dataclass(frozen=True)
class FphProfile:
    """A one-special-fiber profile plus its bookkeeping constants.

    special is the partition of the fiber holding the order-(a+2) point
    (absent when a = 0); m counts the simple fibers; N is the number of
    source markings used downstream, m(k-1) - a for a > 0 and m(k-1)
    when a = 0.
    """

    profile: RamificationProfile
    special: tuple
    m: int
    N: int

    def to_json_dict(self) -> dict:
        return {
            "profile": self.profile.to_json_dict(),
            "special": list(self.special) if self.special else None,
            "m": self.m,
            "N": self.N,
        }


def fph_profile(k: int, g: int, a: int) -> FphProfile:
    """Profile with one ramification point of order a + 2, rest simple.

    For a = 0 the special fiber degenerates to an ordinary simple one and
    is not singled out.
    """
    if not isinstance(a, int) or a < 0:
        raise DegenerateInput("ramification excess must be a non-negative integer")
    if not isinstance(k, int) or k < 2:
        raise DegenerateInput("covering degree must be an integer >= 2")
    if a + 2 > k:
        raise ProfileTooRamified(
            "a point of order %d cannot exist in degree %d" % (a + 2, k)
        )
    if a == 0:
        m = 2 * g - 2 + 2 * k
        if m <= 0:
            raise DegenerateInput("no such profile for k = %d, g = %d" % (k, g))
        profile = RamificationProfile(k, g, (_simple_partition(k),) * m)
        out = FphProfile(profile=profile, special=(), m=m, N=m * (k - 1))
    else:
        m = 2 * g - 2 + 2 * k - a - 1
        if m <= 0:
            raise DegenerateInput(
                "no such profile for k = %d, g = %d, a = %d" % (k, g, a)
            )
        special = _as_partition((a + 2,) + (1,) * (k - a - 2))
        profile = RamificationProfile(
            k, g, (special,) + (_simple_partition(k),) * m
        )
        out = FphProfile(
            profile=profile, special=special, m=m, N=m * (k - 1) - a
        )
    assert validate_profile(out.profile).ok
    return out


# -- marked-cycle specifications ---------------------------------------------


@dataclass(frozen=True)
class RamCycleSpec:
    """Which markings are forced to ramify, and how hard one point must.

    n markings live on the source; each index in indices pins a marking
    to a ramification point (codimension one each); a asks for some point
    of ramification order at least a + 2 (codimension a).
    """

    n: int
    indices: tuple
    a: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidSpec("marking count must be a non-negative integer")
        if not isinstance(self.k, int) or self.k < 2:
            raise InvalidSpec("covering degree must be an integer >= 2")
        if not isinstance(self.a, int) or self.a < 0:
            raise InvalidSpec("ramification excess must be non-negative")
        if self.a + 2 > self.k:
            raise InvalidSpec(
                "a point of order %d cannot exist in degree %d"
                % (self.a + 2, self.k)
            )
        idx = tuple(sorted(self.indices))
        if len(set(idx)) != len(idx):
            raise InvalidSpec("ramified-marking indices must be distinct")
        if any(not (1 <= i <= self.n) for i in idx):
            raise InvalidSpec("ramified-marking indices must lie in 1..n")
        object.__setattr__(self, "indices", idx)


@dataclass(frozen=True)
class ComponentDescriptor:
    """One component of the all-markings-ramified, one-deep-point locus.

    ramified_marking is the marking forced to carry the order-(a+2)
    point, or None when that point is an extra unmarked one. The recipe
    says which marking the parametrizing forgetful map drops.
    """

    name: str
    ramified_marking: object
    order: int
    forget_recipe: str

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "ramified_marking": self.ramified_marking,
            "order": self.order,
            "forget_recipe": self.forget_recipe,
        }


def component_labels(spec: RamCycleSpec) -> list:
    """Components of the locus where all markings ramify and one point
    has order at least a + 2.

    For a = 0 the order condition is vacuous and the locus is
    irreducible. For a > 0 the deep point is either an extra unmarked
    point (one component) or one of the n markings (n more).
    """
    if spec.a == 0:
        return [
            ComponentDescriptor(
                name="Y",
                ramified_marking=None,
                order=2,
                forget_recipe="identity; no extra point is introduced",
            )
        ]
    order = spec.a + 2
    out = [
        ComponentDescriptor(
            name="Y0",
            ramified_marking=None,
            order=order,
            forget_recipe="drop the extra point carrying the deep"
            " ramification; all markings stay simple",
        )
    ]
    for i in range(1, spec.n + 1):
        out.append(
            ComponentDescriptor(
                name="Y%d" % i,
                ramified_marking=i,
                order=order,
                forget_recipe="drop marking %d and relabel the extra point"
                " as the new marking %d" % (i, i),
            )
        )
    return out


def cycle_codim(spec: RamCycleSpec) -> int:
    """Each pinned marking costs one; the deep point costs a."""
    return len(spec.indices) + spec.a
