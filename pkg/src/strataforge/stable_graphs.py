"""Stable graphs: the combinatorial types of nodal marked curves.

A stable graph has genus-labeled vertices, edges for nodes (a pair (v, v)
is a loop, repeated pairs are parallel edges), and numbered legs for
marked points. Vertex stability demands 2g(v) - 2 + n(v) > 0 where n(v)
counts incident legs plus incident edge endpoints, a loop counting twice.

The module enumerates isomorphism classes graded by edge count, computes
canonical keys and automorphism counts, contracts edges, and answers
whether a set of classes is closed under contraction (equivalently,
whether the union of the corresponding strata is open).

Canonical keys are hex strings that encode the canonically labeled graph,
so a key can be decoded back into its graph without any lookup table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CapExceeded,
    IndexOutOfRange,
    InvalidGraph,
    UnknownKey,
    UnstablePair,
)

DEFAULT_CAP = 12


class StableGraph:
    """Immutable genus-labeled multigraph with numbered legs.

    genera: tuple of vertex genera, vertices indexed 0..V-1.
    legs:   tuple of (label, vertex), labels are 1..n, each used once.
    edges:  tuple of (a, b) with a <= b; (v, v) is a loop.

    Equality and hashing are on the labeled data, not up to isomorphism;
    use canonical_key for isomorphism classes.
    """

    __slots__ = ("genera", "legs", "edges", "_key")

    def __init__(self, genera, legs=(), edges=()):
        self.genera = tuple(int(x) for x in genera)
        self.legs = tuple(sorted((int(l), int(v)) for l, v in legs))
        self.edges = tuple(
            sorted(tuple(sorted((int(a), int(b)))) for a, b in edges)
        )
        self._key = None

    # -- basic shape --------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_legs(self) -> int:
        return len(self.legs)

    @property
    def total_genus(self) -> int:
        """Sum of vertex genera plus the first Betti number of the graph."""
        return sum(self.genera) + len(self.edges) - len(self.genera) + 1

    def legs_at(self, v: int):
        return tuple(lab for lab, w in self.legs if w == v)

    def valence(self, v: int) -> int:
        """n(v): legs plus edge endpoints at v, loops counted twice."""
        ends = 0
        for a, b in self.edges:
            ends += (a == v) + (b == v)
        return ends + sum(1 for _, w in self.legs if w == v)

    def loops_at(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == v and b == v)

    def __eq__(self, other):
        return (
            isinstance(other, StableGraph)
            and self.genera == other.genera
            and self.legs == other.legs
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.genera, self.legs, self.edges))

    def __repr__(self):
        return "StableGraph(genera=%r, legs=%r, edges=%r)" % (
            self.genera,
            self.legs,
            self.edges,
        )

    # -- validity ------------------------------------------------------

    def validate(self, g=None, n=None, require_stability=True) -> None:
        """Raise InvalidGraph unless every stable-graph invariant holds.

        With g or n given, additionally pins the total genus and the leg
        count to the ambient pair.  require_stability=False skips the
        per-vertex inequality (for inputs that a later stabilization pass
        is expected to clean up) but keeps all structural checks.
        """
        V = len(self.genera)
        if V == 0:
            raise InvalidGraph("graph needs at least one vertex")
        if any(gv < 0 for gv in self.genera):
            raise InvalidGraph("negative vertex genus")
        labels = [lab for lab, _ in self.legs]
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise InvalidGraph(
                "leg labels must be exactly 1..n, got %r" % (labels,)
            )
        for lab, v in self.legs:
            if not 0 <= v < V:
                raise InvalidGraph("leg %d attached to missing vertex %d" % (lab, v))
        for a, b in self.edges:
            if not (0 <= a < V and 0 <= b < V):
                raise InvalidGraph("edge (%d, %d) touches a missing vertex" % (a, b))
        if require_stability:
            for v in range(V):
                if 2 * self.genera[v] - 2 + self.valence(v) <= 0:
                    raise InvalidGraph(
                        "vertex %d unstable: genus %d, valence %d"
                        % (v, self.genera[v], self.valence(v))
                    )
        if not self.is_connected():
            raise InvalidGraph("graph is not connected")
        if g is not None and self.total_genus != g:
            raise InvalidGraph(
                "total genus %d, expected %d" % (self.total_genus, g)
            )
        if n is not None and len(self.legs) != n:
            raise InvalidGraph("%d legs, expected %d" % (len(self.legs), n))

    def is_connected(self) -> bool:
        V = len(self.genera)
        if V <= 1:
            return True
        seen = {0}
        frontier = [0]
        adj = [[] for _ in range(V)]
        for a, b in self.edges:
            if a != b:
                adj[a].append(b)
                adj[b].append(a)
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return len(seen) == V

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.genera),
            "legs": [list(p) for p in self.legs],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data) -> "StableGraph":
        try:
            return cls(data["vertices"], data["legs"], data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraph("malformed graph JSON: %s" % exc) from exc


# -- canonical form ------------------------------------------------------


def _legs_at(genera, legs):
    out = [[] for _ in genera]
    for lab, v in legs:
        out[v].append(lab)
    for ls in out:
        ls.sort()
    return out


def _refined_classes(genera, legs, edges):
    """Vertex classes under iterated genus/leg/neighborhood coloring.

    Legs are fixed by the isomorphisms considered here, so the sorted leg
    labels enter the initial color. Returns classes as lists of vertices;
    the class order is itself an isomorphism invariant.
    """
    V = len(genera)
    legs_at = _legs_at(genera, legs)
    ends = [[] for _ in range(V)]
    for a, b in edges:
        ends[a].append(b)
        ends[b].append(a)
    raw = [(genera[v], tuple(legs_at[v])) for v in range(V)]
    rank = {c: i for i, c in enumerate(sorted(set(raw)))}
    color = [rank[raw[v]] for v in range(V)]
    ncls = len(rank)
    while ncls < V:
        raw = [
            (color[v], tuple(sorted(color[u] for u in ends[v])))
            for v in range(V)
        ]
        rank = {c: i for i, c in enumerate(sorted(set(raw)))}
        if len(rank) == ncls:
            break
        color = [rank[raw[v]] for v in range(V)]
        ncls = len(rank)
    classes = [[] for _ in range(ncls)]
    for v in range(V):
        classes[color[v]].append(v)
    return classes


def _canonical_triple(genera, legs, edges):
    """Canonically labeled (genera, legs, edges).

    Orders vertices by refined color class, then backtracks over the
    labelings inside each class and keeps the minimal edge encoding.
    Within a class all vertices share genus and (necessarily empty or
    equal) leg sets, so only the edge tuple varies between labelings.
    """
    V = len(genera)
    classes = _refined_classes(genera, legs, edges)
    base = [v for cls in classes for v in cls]
    pos = [0] * V
    for i, v in enumerate(base):
        pos[v] = i
    genera_t = tuple(genera[v] for v in base)
    legs_t = tuple(sorted((lab, pos[v]) for lab, v in legs))
    if all(len(cls) == 1 for cls in classes):
        edges_t = tuple(
            sorted(
                (pos[a], pos[b]) if pos[a] <= pos[b] else (pos[b], pos[a])
                for a, b in edges
            )
        )
        return genera_t, legs_t, edges_t
    best = None
    offsets = []
    k = 0
    for cls in classes:
        offsets.append(k)
        k += len(cls)
    for arrangement in itertools.product(
        *[itertools.permutations(cls) for cls in classes]
    ):
        for cls_idx, perm in enumerate(arrangement):
            off = offsets[cls_idx]
            for j, v in enumerate(perm):
                pos[v] = off + j
        cand = tuple(
            sorted(
                (pos[a], pos[b]) if pos[a] <= pos[b] else (pos[b], pos[a])
                for a, b in edges
            )
        )
        if best is None or cand < best:
            best = cand
    return genera_t, legs_t, best


def _encode_triple(genera, legs, edges) -> bytes:
    vals = [len(genera)]
    vals.extend(genera)
    vals.append(len(legs))
    for lab, v in legs:
        vals.append(lab)
        vals.append(v)
    vals.append(len(edges))
    for a, b in edges:
        vals.append(a)
        vals.append(b)
    if any(not 0 <= x < 256 for x in vals):
        raise InvalidGraph("graph data does not fit the key encoding")
    return bytes(vals)


def _key_of_triple(genera, legs, edges) -> str:
    return _encode_triple(*_canonical_triple(genera, legs, edges)).hex()


def canonical_key(graph: StableGraph) -> str:
    """Isomorphism-invariant key of a valid stable graph, as lowercase hex.

    Two graphs get equal keys exactly when a leg-fixing isomorphism maps
    one to the other. The key encodes the canonical labeling itself, so
    key_to_graph inverts it.
    """
    graph.validate()
    if graph._key is None:
        graph._key = _key_of_triple(graph.genera, graph.legs, graph.edges)
    return graph._key


def key_to_graph(key: str) -> StableGraph:
    """Decode a canonical key back into its graph; UnknownKey if malformed."""
    try:
        raw = bytes.fromhex(key)
    except ValueError as exc:
        raise UnknownKey("key is not hex: %r" % key) from exc
    i = 0

    def take(count):
        nonlocal i
        if i + count > len(raw):
            raise UnknownKey("truncated key: %r" % key)
        vals = raw[i : i + count]
        i += count
        return vals

    (nv,) = take(1)
    genera = tuple(take(nv))
    (nl,) = take(1)
    legs = tuple(zip(*(iter(take(2 * nl)),) * 2))
    (ne,) = take(1)
    edges = tuple(zip(*(iter(take(2 * ne)),) * 2))
    if i != len(raw):
        raise UnknownKey("trailing bytes in key: %r" % key)
    graph = StableGraph(genera, legs, edges)
    try:
        graph.validate()
    except InvalidGraph as exc:
        raise UnknownKey("key decodes to an invalid graph: %s" % exc) from exc
    if canonical_key(graph) != key:
        raise UnknownKey("key is not in canonical form: %r" % key)
    return graph


# -- automorphisms -------------------------------------------------------


def _valid_vertex_permutations(genera, legs, edges):
    """Vertex permutations preserving genus, legs pointwise, and adjacency."""
    V = len(genera)
    classes = _refined_classes(genera, legs, edges)
    mult = {}
    for a, b in edges:
        mult[(a, b)] = mult.get((a, b), 0) + 1
    perms = []
    for arrangement in itertools.product(
        *[itertools.permutations(cls) for cls in classes]
    ):
        pi = [0] * V
        for cls, perm in zip(classes, arrangement):
            for v, w in zip(cls, perm):
                pi[v] = w
        ok = True
        for (a, b), m in mult.items():
            x, y = pi[a], pi[b]
            if x > y:
                x, y = y, x
            if mult.get((x, y), 0) != m:
                ok = False
                break
        if ok:
            perms.append(tuple(pi))
    return perms


def automorphism_count(graph: StableGraph) -> int:
    """Order of the group of leg-fixing self-isomorphisms.

    Counts vertex symmetries, interchanges of parallel edges, and the two
    half-edge orientations of every loop. The smooth one-vertex graph has
    exactly one; two genus-0 vertices joined by three parallel edges have
    2 * 3! = 12.
    """
    graph.validate()
    perms = _valid_vertex_permutations(graph.genera, graph.legs, graph.edges)
    mult = {}
    for e in graph.edges:
        mult[e] = mult.get(e, 0) + 1
    factor = 1
    for (a, b), m in mult.items():
        for j in range(2, m + 1):
            factor *= j
        if a == b:
            factor *= 2 ** m
    return len(perms) * factor


def half_edge_automorphisms(graph: StableGraph):
    """All leg-fixing automorphisms as explicit half-edge maps.

    Yields (vertex_perm, half_edge_map) pairs where half_edge_map sends
    (edge_index, side) to (edge_index, side); side 0 sits at the smaller
    endpoint of the stored pair. The number of pairs equals
    automorphism_count(graph).
    """
    graph.validate()
    edges = graph.edges
    perms = _valid_vertex_permutations(graph.genera, graph.legs, graph.edges)
    by_pair = {}
    for idx, e in enumerate(edges):
        by_pair.setdefault(e, []).append(idx)
    pairs = sorted(by_pair)
    out = []
    for pi in perms:
        image_pair = {}
        for p in pairs:
            a, b = pi[p[0]], pi[p[1]]
            image_pair[p] = (a, b) if a <= b else (b, a)
        choice_sets = []
        for p in pairs:
            targets = by_pair[image_pair[p]]
            bijections = list(itertools.permutations(targets))
            if p[0] == p[1]:
                flip_sets = list(
                    itertools.product((0, 1), repeat=len(by_pair[p]))
                )
            else:
                flip_sets = [None]
            choice_sets.append(
                [(bij, flips) for bij in bijections for flips in flip_sets]
            )
        for combo in itertools.product(*choice_sets):
            hmap = {}
            for p, (bij, flips) in zip(pairs, combo):
                for slot, src_idx in enumerate(by_pair[p]):
                    dst_idx = bij[slot]
                    if p[0] == p[1]:
                        s = flips[slot]
                        hmap[(src_idx, 0)] = (dst_idx, s)
                        hmap[(src_idx, 1)] = (dst_idx, 1 - s)
                    else:
                        # side 0 of the source sits at vertex p[0]
                        dst_edge = edges[dst_idx]
                        at = pi[p[0]]
                        side = 0 if at == dst_edge[0] else 1
                        hmap[(src_idx, 0)] = (dst_idx, side)
                        hmap[(src_idx, 1)] = (dst_idx, 1 - side)
            out.append((pi, hmap))
    return out


# -- contraction ---------------------------------------------------------


def contract_edge(graph: StableGraph, e: int) -> StableGraph:
    """Contract the e-th edge.

    A loop disappears and raises its vertex's genus by one; any other edge
    merges its endpoints, adding their genera. Total genus and legs are
    preserved.
    """
    if not 0 <= e < len(graph.edges):
        raise IndexOutOfRange("edge index %d out of range" % e)
    a, b = graph.edges[e]
    rest = graph.edges[:e] + graph.edges[e + 1 :]
    if a == b:
        genera = list(graph.genera)
        genera[a] += 1
        return StableGraph(genera, graph.legs, rest)
    # merge b into a, reindexing vertices above b; a < b since pairs are sorted
    def remap(v):
        if v == b:
            return a
        return v - 1 if v > b else v

    genera = []
    for v, gv in enumerate(graph.genera):
        if v == b:
            continue
        genera.append(gv + (graph.genera[b] if v == a else 0))
    legs = [(lab, remap(v)) for lab, v in graph.legs]
    edges = [(remap(x), remap(y)) for x, y in rest]
    return StableGraph(genera, legs, edges)


# -- structure predicates -------------------------------------------------


@dataclass(frozen=True)
class GraphClass:
    """Structural flags of a stable graph."""

    smooth: bool
    compact_type: bool
    rational_tails: bool
    has_nonseparating_edge: bool


def _bridges(graph: StableGraph):
    """Indices of separating (bridge) edges; loops never separate."""
    out = []
    V = graph.num_vertices
    for idx, (a, b) in enumerate(graph.edges):
        if a == b:
            continue
        seen = {a}
        frontier = [a]
        while frontier:
            v = frontier.pop()
            for j, (x, y) in enumerate(graph.edges):
                if j == idx or x == y:
                    continue
                if x == v and y not in seen:
                    seen.add(y)
                    frontier.append(y)
                elif y == v and x not in seen:
                    seen.add(x)
                    frontier.append(x)
        if len(seen) != V:
            out.append(idx)
    return out


def has_separating_edge(graph: StableGraph) -> bool:
    """True when some edge is a bridge (the graph of a disconnecting node)."""
    return bool(_bridges(graph))


def classify(graph: StableGraph) -> GraphClass:
    """Smooth / compact-type / rational-tails / nonseparating-edge flags.

    Compact type means the graph is a tree. Rational tails means compact
    type with a single vertex of full genus and the rest genus 0. An edge
    is nonseparating when it is a loop or lies on a cycle.
    """
    graph.validate()
    E, V = graph.num_edges, graph.num_vertices
    smooth = E == 0
    compact_type = E == V - 1
    g = graph.total_genus
    rational_tails = compact_type and sum(
        1 for gv in graph.genera if gv == g
    ) == 1 and all(gv in (0, g) for gv in graph.genera)
    nonsep = E > len(_bridges(graph))
    return GraphClass(smooth, compact_type, rational_tails, nonsep)


# -- enumeration ----------------------------------------------------------


def _degeneration_candidates(genera, legs, edges):
    """All one-edge degenerations of a stable graph, as raw triples.

    Two moves: trade one unit of vertex genus for a loop, or split a
    vertex in two joined by a new edge, distributing its genus, legs, and
    incident half-edges. Unstable splits are dropped here; every emitted
    triple is a stable graph with one more edge.
    """
    V = len(genera)
    legs_at = _legs_at(genera, legs)
    out = []
    for v in range(V):
        if genera[v] >= 1:
            g2 = list(genera)
            g2[v] -= 1
            out.append((tuple(g2), legs, tuple(sorted(edges + ((v, v),)))))
    ends_at = [[] for _ in range(V)]
    for i, (a, b) in enumerate(edges):
        ends_at[a].append((i, 0))
        ends_at[b].append((i, 1))
    for v in range(V):
        slots = [("leg", lab) for lab in legs_at[v]]
        slots += [("he", i, s) for i, s in ends_at[v]]
        k = len(slots)
        gv = genera[v]
        for g1 in range(gv // 2 + 1):
            g2 = gv - g1
            for mask in range(1 << k):
                if g1 == g2 and k and (mask & 1):
                    continue  # unordered split: pin slot 0 when genera tie
                moved = mask.bit_count()
                n_keep = k - moved + 1
                n_new = moved + 1
                if 2 * g1 - 2 + n_keep <= 0 or 2 * g2 - 2 + n_new <= 0:
                    continue
                new_genera = list(genera)
                new_genera[v] = g1
                new_genera.append(g2)
                new_legs = list(legs)
                edge_list = [list(e) for e in edges]
                for j in range(k):
                    if not mask >> j & 1:
                        continue
                    slot = slots[j]
                    if slot[0] == "leg":
                        lab = slot[1]
                        new_legs = [
                            (l, V if l == lab and w == v else w)
                            for l, w in new_legs
                        ]
                    else:
                        edge_list[slot[1]][slot[2]] = V
                edge_list.append([v, V])
                new_edges = tuple(
                    sorted(tuple(sorted(e)) for e in edge_list)
                )
                out.append((tuple(new_genera), tuple(sorted(new_legs)), new_edges))
    return out


def enumerate_by_edges(g, n, cap=DEFAULT_CAP, max_edges=None, keep=None):
    """Isomorphism classes of stable (g, n) graphs, graded by edge count.

    Returns a list indexed by edge count; entry E holds the classes with
    exactly E edges, each as a canonically labeled StableGraph sorted by
    key. Classes are grown level by level through one-edge degenerations,
    which reaches everything because contracting any edge of a stable
    graph is again stable.

    keep, when given, must be a predicate on StableGraph that is closed
    under edge contraction; the search is then restricted to graphs
    satisfying it. max_edges bounds the number of levels and bypasses the
    complexity cap, which otherwise rejects 3g - 3 + n > cap.
    """
    if 2 * g - 2 + n <= 0:
        raise UnstablePair("(g, n) = (%d, %d) is unstable" % (g, n))
    dim = 3 * g - 3 + n
    if max_edges is None:
        if dim > cap:
            raise CapExceeded(
                "3g - 3 + n = %d exceeds the cap %d" % (dim, cap)
            )
        emax = dim
    else:
        emax = min(max_edges, dim)
    smooth = ((g,), tuple((i, 0) for i in range(1, n + 1)), ())
    levels = []
    current = {}
    graph = StableGraph(*smooth)
    if keep is None or keep(graph):
        current[_encode_triple(*smooth).hex()] = graph
    levels.append(current)
    for _ in range(emax):
        nxt = {}
        for parent in levels[-1].values():
            for triple in _degeneration_candidates(
                parent.genera, parent.legs, parent.edges
            ):
                canon = _canonical_triple(*triple)
                key = _encode_triple(*canon).hex()
                if key in nxt:
                    continue
                cand = StableGraph(*canon)
                cand._key = key
                if keep is None or keep(cand):
                    nxt[key] = cand
        levels.append(nxt)
    return [
        [lvl[key] for key in sorted(lvl)] for lvl in levels
    ]


def enumerate_graphs(g, n, cap=DEFAULT_CAP, max_edges=None):
    """All isomorphism classes of stable graphs of type (g, n).

    Deterministic: the result is sorted by canonical key. Raises
    UnstablePair for 2g - 2 + n <= 0 and CapExceeded when 3g - 3 + n
    exceeds the cap (unless max_edges bounds the search explicitly).
    """
    levels = enumerate_by_edges(g, n, cap=cap, max_edges=max_edges)
    flat = [graph for level in levels for graph in level]
    flat.sort(key=canonical_key)
    return flat


def distinguished_vertex_graphs(g, n, vertex_types, max_edges=7):
    """Graphs carrying every leg on one vertex of a prescribed local type.

    vertex_types is a collection of (genus, valence) pairs. Returns the
    stable (g, n) classes that have a vertex v carrying all n legs with
    (genus(v), n(v)) among vertex_types, and no separating edge. The
    all-legs-on-one-vertex condition is closed under contraction, so the
    search runs on that restricted family only.
    """
    types = {(int(a), int(b)) for a, b in vertex_types}

    def concentrated(graph):
        if n == 0:
            return True
        return any(
            len(graph.legs_at(v)) == n for v in range(graph.num_vertices)
        )

    levels = enumerate_by_edges(
        g, n, max_edges=max_edges, keep=concentrated
    )
    picked = []
    for level in levels:
        for graph in level:
            special = any(
                len(graph.legs_at(v)) == n
                and (graph.genera[v], graph.valence(v)) in types
                for v in range(graph.num_vertices)
            )
            if special and not has_separating_edge(graph):
                picked.append(graph)
    picked.sort(key=canonical_key)
    return picked


# -- openness and the contraction poset -----------------------------------


def is_open_union(g, n, keys) -> bool:
    """Is a set of classes closed under single-edge contraction?

    keys is a set of canonical keys of stable (g, n) graphs. True exactly
    when contracting any edge of any member lands back in the set, which
    is the condition for the union of the corresponding strata to be open.
    Raises UnknownKey when a key does not decode to a stable (g, n) graph.
    """
    keyset = set(keys)
    graphs = []
    for key in keyset:
        graph = key_to_graph(key)
        try:
            graph.validate(g=g, n=n)
        except InvalidGraph as exc:
            raise UnknownKey(
                "key %r is not a stable (%d, %d) class: %s" % (key, g, n, exc)
            ) from exc
        graphs.append(graph)
    for graph in graphs:
        for e in range(graph.num_edges):
            if canonical_key(contract_edge(graph, e)) not in keyset:
                return False
    return True


@dataclass(frozen=True)
class ContractionPoset:
    """Stable (g, n) classes ordered by single-edge contraction.

    nodes are canonical keys; covers maps a key to the keys obtained by
    contracting one edge. The unique top is the smooth one-vertex graph,
    and every maximal chain upward from a node has length equal to its
    edge count.
    """

    g: int
    n: int
    nodes: tuple
    covers: dict
    top: str

    @classmethod
    def build(cls, g, n, cap=DEFAULT_CAP, max_edges=None):
        graphs = enumerate_graphs(g, n, cap=cap, max_edges=max_edges)
        covers = {}
        top = None
        for graph in graphs:
            key = canonical_key(graph)
            covers[key] = frozenset(
                canonical_key(contract_edge(graph, e))
                for e in range(graph.num_edges)
            )
            if graph.num_edges == 0:
                top = key
        return cls(g, n, tuple(sorted(covers)), covers, top)

    def edge_count(self, key: str) -> int:
        if key not in self.covers:
            raise UnknownKey("key %r is not a node of this poset" % key)
        return key_to_graph(key).num_edges
