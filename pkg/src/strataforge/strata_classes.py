"""Decorated boundary strata: the additive generators of tautological rings.

A decorated stratum is a stable graph with a cotangent-class exponent on
every half-edge (legs included, and both branches at every node) and a
multiset of kappa indices on every vertex. Its codimension is the edge
count plus all psi exponents plus all kappa indices. No linear relations
among these generators are modeled; enumeration produces a spanning set.

Socle degrees record the top nonvanishing degree of the tautological ring
on each of the four nested flavors of the moduli space: the open part,
curves with rational tails, curves of compact type, and all stable curves.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .errors import UnknownLabel, UnstablePair, UnstableResult
from .stable_graphs import (
    DEFAULT_CAP,
    StableGraph,
    canonical_key,
    enumerate_by_edges,
    half_edge_automorphisms,
)


class SpaceKind(enum.IntEnum):
    """The four nested flavors of the moduli space, ordered by strength.

    A statement proved for the larger space restricts to the smaller, so
    STABLE is the strongest and OPEN the weakest.
    """

    OPEN = 0
    RATIONAL_TAILS = 1
    COMPACT_TYPE = 2
    STABLE = 3

    @classmethod
    def from_string(cls, text: str) -> "SpaceKind":
        aliases = {
            "open": cls.OPEN,
            "rt": cls.RATIONAL_TAILS,
            "rational_tails": cls.RATIONAL_TAILS,
            "ct": cls.COMPACT_TYPE,
            "compact_type": cls.COMPACT_TYPE,
            "bar": cls.STABLE,
            "stable": cls.STABLE,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            raise UnknownLabel("unknown space kind %r" % text) from None


def socle_degree(kind: SpaceKind, g: int, n: int) -> int:
    """Top degree of the tautological ring on the given space flavor.

    stable: 3g - 3 + n; compact type: 2g - 3 + n; rational tails and the
    open part: g - 2 + n, minus one more in genus 0. The stable and
    compact-type values always differ by exactly g.
    """
    if 2 * g - 2 + n <= 0:
        raise UnstablePair("(g, n) = (%d, %d) is unstable" % (g, n))
    kind = SpaceKind(kind)
    if kind is SpaceKind.STABLE:
        return 3 * g - 3 + n
    if kind is SpaceKind.COMPACT_TYPE:
        return 2 * g - 3 + n
    return g - 2 + n - (1 if g == 0 else 0)


# -- decorated strata ------------------------------------------------------


def _half_edge_slots(graph: StableGraph):
    """Deterministic list of decoration slots: legs, then edge sides."""
    slots = [("leg", lab) for lab, _ in graph.legs]
    slots += [
        ("he", i, s) for i in range(graph.num_edges) for s in (0, 1)
    ]
    return slots


@dataclass(frozen=True)
class DecoratedStratum:
    """A stable graph with psi exponents and kappa multidegrees.

    psi maps slot ids to positive exponents; slot ids are ("leg", label)
    for marked points and ("he", edge_index, side) for the two branches
    of a node. kappa maps a vertex index to a weakly decreasing tuple of
    positive kappa indices living on that vertex.
    """

    graph: StableGraph
    psi: tuple = field(default=())    # sorted ((slot, exponent), ...)
    kappa: tuple = field(default=())  # sorted ((vertex, parts), ...)

    @property
    def codim(self) -> int:
        return (
            self.graph.num_edges
            + sum(e for _, e in self.psi)
            + sum(sum(parts) for _, parts in self.kappa)
        )

    def psi_exponent(self, slot) -> int:
        for s, e in self.psi:
            if s == slot:
                return e
        return 0

    def kappa_at(self, v: int):
        for w, parts in self.kappa:
            if w == v:
                return parts
        return ()

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph.to_json_dict(),
            "psi": [list(slot) + [exp] for slot, exp in self.psi],
            "kappa": [[v, list(parts)] for v, parts in self.kappa],
            "codim": self.codim,
        }


def _normalized_decoration(psi_map, kappa_map):
    psi = tuple(sorted((slot, e) for slot, e in psi_map.items() if e > 0))
    kappa = tuple(
        sorted((v, tuple(parts)) for v, parts in kappa_map.items() if parts)
    )
    return psi, kappa


def make_decorated(graph, psi_map=None, kappa_map=None) -> DecoratedStratum:
    """Build a DecoratedStratum from slot/exponent and vertex/parts maps."""
    psi, kappa = _normalized_decoration(psi_map or {}, kappa_map or {})
    for v, parts in kappa:
        if list(parts) != sorted(parts, reverse=True) or any(p <= 0 for p in parts):
            raise ValueError("kappa parts must be weakly decreasing positives")
    return DecoratedStratum(graph, psi, kappa)


def _weak_compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _partitions(total):
    if total == 0:
        yield ()
        return

    def rec(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(total, total)


def _decoration_orbit_rep(graph, slots, psi_vec, kappa_parts):
    """Minimal image of a decoration under the graph's automorphisms."""
    autos = half_edge_automorphisms(graph)
    if len(autos) == 1:
        return psi_vec, kappa_parts
    index_of = {slot: i for i, slot in enumerate(slots)}
    best = None
    for pi, hmap in autos:
        moved_psi = [0] * len(slots)
        for i, slot in enumerate(slots):
            if psi_vec[i] == 0:
                continue
            if slot[0] == "leg":
                moved_psi[i] = psi_vec[i]
            else:
                dst = ("he",) + hmap[(slot[1], slot[2])]
                moved_psi[index_of[dst]] = psi_vec[i]
        moved_kappa = [()] * len(kappa_parts)
        for v, parts in enumerate(kappa_parts):
            moved_kappa[pi[v]] = parts
        cand = (tuple(moved_psi), tuple(moved_kappa))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_decorated(g, n, codim, cap=DEFAULT_CAP):
    """All decorated strata of exact codimension, up to automorphism.

    Runs over stable graphs with at most codim edges and distributes the
    remaining budget over psi exponents and kappa indices; decorations
    equivalent under a graph automorphism are listed once. Deterministic
    output, sorted by (graph key, decoration).
    """
    if 2 * g - 2 + n <= 0:
        raise UnstablePair("(g, n) = (%d, %d) is unstable" % (g, n))
    dim = 3 * g - 3 + n
    if codim > dim:
        return []
    levels = enumerate_by_edges(g, n, cap=cap, max_edges=codim)
    out = []
    for E, level in enumerate(levels):
        budget = codim - E
        for graph in level:
            slots = _half_edge_slots(graph)
            V = graph.num_vertices
            seen = set()
            for psi_total in range(budget + 1):
                kappa_budget = budget - psi_total
                for psi_vec in _weak_compositions(psi_total, len(slots)):
                    for shares in _weak_compositions(kappa_budget, V):
                        for parts_combo in itertools.product(
                            *[list(_partitions(s)) for s in shares]
                        ):
                            rep = _decoration_orbit_rep(
                                graph, slots, psi_vec, parts_combo
                            )
                            seen.add(rep)
            for psi_vec, kappa_parts in sorted(seen):
                psi_map = {
                    slot: e for slot, e in zip(slots, psi_vec) if e > 0
                }
                kappa_map = {
                    v: parts
                    for v, parts in enumerate(kappa_parts)
                    if parts
                }
                out.append(make_decorated(graph, psi_map, kappa_map))
    out.sort(key=lambda D: (canonical_key(D.graph), D.psi, D.kappa))
    return out


# -- forgetting a marked point ---------------------------------------------


def forget_leg(decorated, i: int) -> StableGraph:
    """Remove marked point i and stabilize; decorations are dropped.

    Remaining labels above i shift down by one so the result carries legs
    1..n-1. Stabilization removes genus-0 vertices left with valence two
    or less: a two-endpoint vertex fuses its edges, a leaf hands its leg
    (if any) to the neighbor and disappears. Raises UnstableResult when
    the ambient target (g, n-1) is itself unstable.

    Inputs only need to be structurally sound; genus-0 vertices that are
    already below the stability threshold get swept up by the same pass.
    """
    graph = decorated.graph if isinstance(decorated, DecoratedStratum) else decorated
    graph.validate(require_stability=False)
    labels = [lab for lab, _ in graph.legs]
    if i not in labels:
        raise UnknownLabel("no leg labeled %d" % i)
    g = graph.total_genus
    n = graph.num_legs
    if 2 * g - 2 + (n - 1) <= 0:
        raise UnstableResult(
            "(g, n) = (%d, %d) is unstable" % (g, n - 1)
        )
    genera = list(graph.genera)
    legs = [
        (lab - 1 if lab > i else lab, v)
        for lab, v in graph.legs
        if lab != i
    ]
    edges = [list(e) for e in graph.edges]

    def valence(v):
        ends = sum((a == v) + (b == v) for a, b in edges)
        return ends + sum(1 for _, w in legs if w == v)

    while True:
        bad = None
        for v in range(len(genera)):
            if genera[v] == 0 and valence(v) <= 2:
                bad = v
                break
        if bad is None:
            break
        v = bad
        my_legs = [lab for lab, w in legs if w == v]
        incident = []
        for idx, (a, b) in enumerate(edges):
            if a == v:
                incident.append((idx, 0))
            if b == v:
                incident.append((idx, 1))
        if len(incident) == 2 and not my_legs:
            (i1, s1), (i2, s2) = incident
            if i1 == i2:
                # a bare loop vertex is a whole component; connectivity
                # plus the ambient stability check rule this out
                raise UnstableResult("stabilization stuck on a bare loop")
            far1 = edges[i1][1 - s1]
            far2 = edges[i2][1 - s2]
            edges = [e for idx, e in enumerate(edges) if idx not in (i1, i2)]
            edges.append([far1, far2])
            drop = v
        elif len(incident) == 1:
            (i1, s1) = incident[0]
            far = edges[i1][1 - s1]
            edges = [e for idx, e in enumerate(edges) if idx != i1]
            legs = [
                (lab, far if w == v else w) for lab, w in legs
            ]
            drop = v
        else:
            raise UnstableResult(
                "stabilization stuck at vertex %d" % v
            )
        genera = genera[:drop] + genera[drop + 1 :]
        legs = [
            (lab, w - 1 if w > drop else w) for lab, w in legs
        ]
        edges = [
            [a - 1 if a > drop else a, b - 1 if b > drop else b]
            for a, b in edges
        ]
    result = StableGraph(genera, legs, edges)
    result.validate(g=g, n=n - 1)
    return result
