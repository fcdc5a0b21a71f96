"""Fixed-point inference over the (g, n) grid of moduli-space flags.

Each stable pair (g, n) can carry up to four positive flags, one per
space flavor (open part, rational tails, compact type, stable), plus
negative flags that block derivation. Base facts come from an external
fact file; four filling rules propagate them across the grid until
nothing new can be derived. Every flag carries a provenance record that
can be explained and replayed.

The rules quantify over stable pairs only, and premises that would fall
outside the configured grid bounds fail conservatively: the engine never
extrapolates beyond what it can store.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    InconsistentFacts,
    MissingCitation,
    UnknownLabel,
    UnstablePair,
)
from .strata_classes import SpaceKind

FACT_KINDS = ("open", "rt", "ct", "bar", "dn_complement")

KIND_SHORT = {
    SpaceKind.OPEN: "open",
    SpaceKind.RATIONAL_TAILS: "rt",
    SpaceKind.COMPACT_TYPE: "ct",
    SpaceKind.STABLE: "bar",
}


def _stable_pair(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


# -- facts -------------------------------------------------------------------


@dataclass(frozen=True)
class Fact:
    """One cited assertion about a single grid cell."""

    kind: str
    g: int
    n: int
    cite: str

    def check(self, allow_dn=True) -> None:
        kinds = FACT_KINDS if allow_dn else FACT_KINDS[:4]
        if self.kind not in kinds:
            raise UnknownLabel("unknown fact kind %r" % self.kind)
        if not isinstance(self.cite, str) or not self.cite.strip():
            raise MissingCitation(
                "fact %s(%d, %d) has no citation" % (self.kind, self.g, self.n)
            )
        if self.g < 0 or self.n < 0 or not _stable_pair(self.g, self.n):
            raise UnstablePair(
                "fact about unstable pair (%d, %d)" % (self.g, self.n)
            )


@dataclass(frozen=True)
class FactFile:
    """A bundle of positive assertions and negatives, all cited."""

    facts: tuple = ()
    negatives: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "facts", tuple(self.facts))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        for f in self.facts:
            f.check(allow_dn=True)
        for f in self.negatives:
            f.check(allow_dn=False)

    @classmethod
    def from_json_dict(cls, blob: dict) -> "FactFile":
        def parse(row):
            return Fact(
                kind=row["kind"], g=int(row["g"]), n=int(row["n"]),
                cite=row.get("cite", ""),
            )

        return cls(
            facts=tuple(parse(r) for r in blob.get("facts", [])),
            negatives=tuple(parse(r) for r in blob.get("negatives", [])),
        )

    @classmethod
    def load(cls, path) -> "FactFile":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def to_json_dict(self) -> dict:
        row = lambda f: {"kind": f.kind, "g": f.g, "n": f.n, "cite": f.cite}
        return {
            "facts": [row(f) for f in self.facts],
            "negatives": [row(f) for f in self.negatives],
        }


def load_packaged_facts() -> FactFile:
    """The fact set shipped with the package (data/paper_facts.json)."""
    from importlib import resources

    path = resources.files("strataforge").joinpath("data/paper_facts.json")
    return FactFile.from_json_dict(json.loads(path.read_text(encoding="utf-8")))


# -- grid state --------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """Provenance for one rule application.

    rule is "base", "v1", "v2", "thicken", "rt", "strength" or "column";
    anchor is the (g, n) the rule fired at; derived lists every cell it
    grants; premises lists the cells (kind, g, n) it consulted, where
    kind "dn_complement" marks the cited side fact of rule v2.
    """

    rule: str
    anchor: tuple
    derived: tuple
    premises: tuple = ()
    cite: str = ""


class GridStatus:
    """Mutable flag store over the bounded (g, n) grid."""

    def __init__(self, g_max: int = 8, n_max: int = 16):
        self.g_max = g_max
        self.n_max = n_max
        self._flags = {}      # (SpaceKind, g, n) -> Derivation
        self._negatives = {}  # (SpaceKind, g, n) -> Fact
        self._dn = {}         # (g, n) -> Fact

    def in_grid(self, g: int, n: int) -> bool:
        return 0 <= g <= self.g_max and 0 <= n <= self.n_max and _stable_pair(g, n)

    def has(self, kind: SpaceKind, g: int, n: int) -> bool:
        return (SpaceKind(kind), g, n) in self._flags

    def open_ok(self, g, n):
        return self.has(SpaceKind.OPEN, g, n)

    def rt_ok(self, g, n):
        return self.has(SpaceKind.RATIONAL_TAILS, g, n)

    def ct_ok(self, g, n):
        return self.has(SpaceKind.COMPACT_TYPE, g, n)

    def bar_ok(self, g, n):
        return self.has(SpaceKind.STABLE, g, n)

    def is_negative(self, kind: SpaceKind, g: int, n: int) -> bool:
        return (SpaceKind(kind), g, n) in self._negatives

    def derivation_of(self, kind: SpaceKind, g: int, n: int) -> Derivation:
        try:
            return self._flags[(SpaceKind(kind), g, n)]
        except KeyError:
            raise UnknownLabel(
                "no %s flag at (%d, %d)" % (KIND_SHORT[SpaceKind(kind)], g, n)
            ) from None

    def dn_fact(self, g: int, n: int):
        return self._dn.get((g, n))

    def add_dn_fact(self, fact: Fact) -> None:
        self._dn[(fact.g, fact.n)] = fact

    def add_negative(self, fact: Fact) -> None:
        """Install a negative and close it upward.

        A failure for a weaker flavor rules out every stronger one at the
        same cell, and a failure of the stable flavor rules it out for all
        larger n in the same column.
        """
        kind = SpaceKind.from_string(fact.kind)
        stack = [(kind, fact.g, fact.n)]
        while stack:
            k, g, n = stack.pop()
            if not self.in_grid(g, n) or (k, g, n) in self._negatives:
                continue
            if (k, g, n) in self._flags:
                raise InconsistentFacts(
                    "negative %s(%d, %d) [%s] collides with a derived flag"
                    % (KIND_SHORT[k], g, n, fact.cite)
                )
            self._negatives[(k, g, n)] = fact
            for stronger in SpaceKind:
                if stronger > k:
                    stack.append((stronger, g, n))
            if k is SpaceKind.STABLE and n + 1 <= self.n_max:
                stack.append((k, g, n + 1))

    def apply(self, derivation: Derivation) -> bool:
        """Install every cell the derivation grants; True if anything new."""
        new = False
        for cell in derivation.derived:
            kind, g, n = SpaceKind(cell[0]), cell[1], cell[2]
            if not self.in_grid(g, n) or (kind, g, n) in self._flags:
                continue
            if (kind, g, n) in self._negatives:
                raise InconsistentFacts(
                    "rule %s at %r derives %s(%d, %d), contradicting the "
                    "negative [%s]"
                    % (
                        derivation.rule,
                        derivation.anchor,
                        KIND_SHORT[kind],
                        g,
                        n,
                        self._negatives[(kind, g, n)].cite,
                    )
                )
            self._flags[(kind, g, n)] = derivation
            new = True
        return new

    def cells(self):
        return sorted(self._flags)

    def strongest(self, g: int, n: int):
        for kind in reversed(SpaceKind):
            if self.has(kind, g, n):
                return kind
        return None

    def max_n(self, kind: SpaceKind, g: int):
        """Largest n carrying the flag in row g, or None."""
        best = None
        for n in range(self.n_max + 1):
            if self.has(kind, g, n):
                best = n
        return best

    # -- rendering -----------------------------------------------------------

    def chart_text(self) -> str:
        symbols = {
            SpaceKind.STABLE: "B",
            SpaceKind.COMPACT_TYPE: "C",
            SpaceKind.RATIONAL_TAILS: "R",
            SpaceKind.OPEN: "O",
        }
        lines = [
            "n: " + " ".join("%2d" % n for n in range(self.n_max + 1)),
        ]
        for g in range(self.g_max, -1, -1):
            row = []
            for n in range(self.n_max + 1):
                if not self.in_grid(g, n):
                    row.append(" -")
                    continue
                kind = self.strongest(g, n)
                if kind is not None:
                    row.append(" " + symbols[kind])
                elif any(
                    self.is_negative(k, g, n) for k in SpaceKind
                ):
                    row.append(" x")
                else:
                    row.append(" .")
            lines.append("g=%d" % g + "".join(row))
        lines.append(
            "legend: B=stable C=compact-type R=rational-tails O=open-only "
            "x=ruled-out .=unknown -=unstable"
        )
        return "\n".join(lines)

    def chart_json(self) -> dict:
        cells = []
        for g in range(self.g_max + 1):
            for n in range(self.n_max + 1):
                if not self.in_grid(g, n):
                    continue
                kind = self.strongest(g, n)
                cells.append(
                    {
                        "g": g,
                        "n": n,
                        "status": None if kind is None else KIND_SHORT[kind],
                        "negative": sorted(
                            KIND_SHORT[k]
                            for k in SpaceKind
                            if self.is_negative(k, g, n)
                        ),
                    }
                )
        return {"g_max": self.g_max, "n_max": self.n_max, "cells": cells}


# -- rules -------------------------------------------------------------------


def _open_column(db: GridStatus, g: int, n: int):
    cells = []
    for m in range(n + 1):
        if not _stable_pair(g, m):
            continue
        cell = (SpaceKind.OPEN, g, m)
        if not db.has(*cell):
            return None
        cells.append(cell)
    return cells


def _rectangle(db: GridStatus, kind: SpaceKind, g: int, n: int):
    """All (kind, g', n') flags for g' <= g-1, n' <= n+1, or None."""
    cells = []
    for gp in range(g):
        for np in range(n + 2):
            if not _stable_pair(gp, np):
                continue
            if np > db.n_max or gp > db.g_max:
                return None
            cell = (kind, gp, np)
            if not db.has(*cell):
                return None
            cells.append(cell)
    return cells


def _column_cells(kind: SpaceKind, g: int, n: int):
    return tuple(
        (kind, g, m) for m in range(n + 1) if _stable_pair(g, m)
    )


def rule_v1(db: GridStatus, g: int, n: int):
    """First filling rule: an open column plus a filled hinterland.

    Needs open flags up the column at genus g, stable flags on the whole
    rectangle one genus down and one marking over, and a stable flag two
    markings over in the previous genus. Grants stable flags up the
    column. Genus 0 has no hinterland, so the column alone suffices.
    """
    if not db.in_grid(g, n):
        return None
    prem1 = _open_column(db, g, n)
    if prem1 is None:
        return None
    prem2 = _rectangle(db, SpaceKind.STABLE, g, n)
    if prem2 is None:
        return None
    prem3 = []
    if g >= 1:
        cell = (SpaceKind.STABLE, g - 1, n + 2)
        if not db.in_grid(g - 1, n + 2) or not db.has(*cell):
            return None
        prem3 = [cell]
    return Derivation(
        rule="v1",
        anchor=(g, n),
        derived=_column_cells(SpaceKind.STABLE, g, n),
        premises=tuple(prem1 + prem2 + prem3),
    )


def rule_v2(db: GridStatus, g: int, n: int, extra: Fact):
    """Second filling rule: swap the far premise for a cited side fact.

    The side fact asserts that the locus of curves with at least two
    nodes can be removed at exactly (g, n); it must be declared in the
    database with a citation. Grants stable flags up the column.
    """
    if (
        not isinstance(extra, Fact)
        or extra.kind != "dn_complement"
        or (extra.g, extra.n) != (g, n)
    ):
        raise MissingCitation(
            "rule v2 at (%d, %d) needs a matching declared side fact" % (g, n)
        )
    extra.check()
    if db.dn_fact(g, n) != extra:
        raise MissingCitation(
            "side fact at (%d, %d) is not declared in the database" % (g, n)
        )
    if not db.in_grid(g, n):
        return None
    prem1 = _open_column(db, g, n)
    if prem1 is None:
        return None
    prem2 = _rectangle(db, SpaceKind.STABLE, g, n)
    if prem2 is None:
        return None
    return Derivation(
        rule="v2",
        anchor=(g, n),
        derived=_column_cells(SpaceKind.STABLE, g, n),
        premises=tuple(prem1 + prem2 + [("dn_complement", g, n)]),
        cite=extra.cite,
    )


def rule_thicken(db: GridStatus, g: int, n: int):
    """Compact-type rule: open column plus a compact-type hinterland.

    Same shape as the first filling rule but one premise lighter: no far
    cell is needed. Grants compact-type flags up the column.
    """
    if not db.in_grid(g, n):
        return None
    prem1 = _open_column(db, g, n)
    if prem1 is None:
        return None
    prem2 = _rectangle(db, SpaceKind.COMPACT_TYPE, g, n)
    if prem2 is None:
        return None
    return Derivation(
        rule="thicken",
        anchor=(g, n),
        derived=_column_cells(SpaceKind.COMPACT_TYPE, g, n),
        premises=tuple(prem1 + prem2),
    )


def rule_rt(db: GridStatus, g: int, n: int):
    """Rational-tails rule: an open column upgrades to rational tails.

    The tails glued on are genus-0 stable curves, so the rule leans on
    the genus-0 stable column up to n+1 markings.
    """
    if not db.in_grid(g, n):
        return None
    prem1 = _open_column(db, g, n)
    if prem1 is None:
        return None
    prem2 = []
    for m in range(3, n + 2):
        if m > db.n_max:
            return None
        cell = (SpaceKind.STABLE, 0, m)
        if not db.has(*cell):
            return None
        prem2.append(cell)
    return Derivation(
        rule="rt",
        anchor=(g, n),
        derived=_column_cells(SpaceKind.RATIONAL_TAILS, g, n),
        premises=tuple(prem1 + prem2),
    )


RULE_FUNCTIONS = {
    "v1": rule_v1,
    "thicken": rule_thicken,
    "rt": rule_rt,
}


# -- the engine --------------------------------------------------------------


def _closure_pass(db: GridStatus) -> bool:
    """Strength order and column closure, one sweep."""
    changed = False
    weaker = {
        SpaceKind.STABLE: SpaceKind.COMPACT_TYPE,
        SpaceKind.COMPACT_TYPE: SpaceKind.RATIONAL_TAILS,
        SpaceKind.RATIONAL_TAILS: SpaceKind.OPEN,
    }
    for (kind, g, n) in list(db.cells()):
        if kind in weaker and not db.has(weaker[kind], g, n):
            changed |= db.apply(
                Derivation(
                    rule="strength",
                    anchor=(g, n),
                    derived=((weaker[kind], g, n),),
                    premises=((kind, g, n),),
                )
            )
        if (
            kind is SpaceKind.STABLE
            and db.in_grid(g, n - 1)
            and not db.has(kind, g, n - 1)
        ):
            changed |= db.apply(
                Derivation(
                    rule="column",
                    anchor=(g, n),
                    derived=((kind, g, n - 1),),
                    premises=((kind, g, n),),
                )
            )
    return changed


def propagate(
    facts: FactFile,
    g_max: int = 8,
    n_max: int = 16,
    order=None,
) -> GridStatus:
    """Least fixed point of all rules over the bounded grid.

    Facts and negatives falling outside the bounds are ignored (the grid
    cannot represent them). order, if given, permutes the anchor sweep
    and must not change the outcome; it exists so tests can check
    confluence.
    """
    db = GridStatus(g_max=g_max, n_max=n_max)
    for f in facts.negatives:
        db.add_negative(f)
    for f in facts.facts:
        if f.kind == "dn_complement":
            if db.in_grid(f.g, f.n):
                db.add_dn_fact(f)
            continue
        kind = SpaceKind.from_string(f.kind)
        if db.in_grid(f.g, f.n):
            db.apply(
                Derivation(
                    rule="base",
                    anchor=(f.g, f.n),
                    derived=((kind, f.g, f.n),),
                    cite=f.cite,
                )
            )
    anchors = [
        (g, n)
        for g in range(g_max + 1)
        for n in range(n_max + 1)
        if db.in_grid(g, n)
    ]
    if order is not None:
        anchors = list(order(anchors))
    changed = True
    while changed:
        changed = _closure_pass(db)
        for g, n in anchors:
            for fn in (rule_v1, rule_thicken, rule_rt):
                d = fn(db, g, n)
                if d is not None:
                    changed |= db.apply(d)
            side = db.dn_fact(g, n)
            if side is not None:
                d = rule_v2(db, g, n, side)
                if d is not None:
                    changed |= db.apply(d)
    return db


# -- provenance --------------------------------------------------------------


def explain_chain(db: GridStatus, kind, g: int, n: int):
    """Dependency-first list of provenance nodes ending at the query cell.

    Each node is a dict with the cell, the rule that granted it, its
    citation (for base and side facts) and its premise cells. Cells are
    listed once, premises before dependents.
    """
    kind = kind if isinstance(kind, SpaceKind) else SpaceKind.from_string(kind)
    out = []
    seen = set()

    def visit(cell):
        if cell in seen:
            return
        seen.add(cell)
        if cell[0] == "dn_complement":
            fact = db.dn_fact(cell[1], cell[2])
            out.append(
                {
                    "cell": ["dn_complement", cell[1], cell[2]],
                    "rule": "base",
                    "cite": "" if fact is None else fact.cite,
                    "premises": [],
                }
            )
            return
        d = db.derivation_of(*cell)
        for p in d.premises:
            visit(p)
        out.append(
            {
                "cell": [KIND_SHORT[cell[0]], cell[1], cell[2]],
                "rule": d.rule,
                "anchor": list(d.anchor),
                "cite": d.cite,
                "premises": [
                    [
                        p[0] if p[0] == "dn_complement" else KIND_SHORT[p[0]],
                        p[1],
                        p[2],
                    ]
                    for p in d.premises
                ],
            }
        )

    visit((kind, g, n))
    return out


def replay_chain(db: GridStatus, facts: FactFile, kind, g: int, n: int) -> bool:
    """Re-derive a flag from scratch following its recorded provenance.

    Builds a fresh grid holding only the chain's cells, re-firing each
    recorded rule at its anchor; raises InconsistentFacts if any step no
    longer goes through.
    """
    kind = kind if isinstance(kind, SpaceKind) else SpaceKind.from_string(kind)
    chain = explain_chain(db, kind, g, n)
    fresh = GridStatus(g_max=db.g_max, n_max=db.n_max)
    for f in facts.facts:
        if f.kind == "dn_complement" and fresh.in_grid(f.g, f.n):
            fresh.add_dn_fact(f)
    short_to_kind = {v: k for k, v in KIND_SHORT.items()}
    base_facts = {(f.kind, f.g, f.n): f for f in facts.facts}
    for node in chain:
        kname, cg, cn = node["cell"]
        if kname == "dn_complement":
            if ("dn_complement", cg, cn) not in base_facts:
                raise InconsistentFacts(
                    "side fact at (%d, %d) is missing from the fact file"
                    % (cg, cn)
                )
            continue
        ckind = short_to_kind[kname]
        if fresh.has(ckind, cg, cn):
            continue
        rule = node["rule"]
        if rule == "base":
            f = base_facts.get((kname, cg, cn))
            if f is None or f.cite != node["cite"]:
                raise InconsistentFacts(
                    "base fact %s(%d, %d) is missing from the fact file"
                    % (kname, cg, cn)
                )
            fresh.apply(
                Derivation(
                    rule="base",
                    anchor=(cg, cn),
                    derived=((ckind, cg, cn),),
                    cite=f.cite,
                )
            )
            continue
        if rule in ("strength", "column"):
            src = node["premises"][0]
            if not fresh.has(short_to_kind[src[0]], src[1], src[2]):
                raise InconsistentFacts(
                    "closure premise %r not re-derived" % (src,)
                )
            fresh.apply(
                Derivation(
                    rule=rule,
                    anchor=tuple(node["anchor"]),
                    derived=((ckind, cg, cn),),
                    premises=((short_to_kind[src[0]], src[1], src[2]),),
                )
            )
            continue
        ag, an = node["anchor"]
        if rule == "v2":
            side = fresh.dn_fact(ag, an)
            if side is None:
                raise InconsistentFacts(
                    "side fact at (%d, %d) is missing from the fact file"
                    % (ag, an)
                )
            d = rule_v2(fresh, ag, an, side)
        else:
            d = RULE_FUNCTIONS[rule](fresh, ag, an)
        if d is None or (ckind, cg, cn) not in d.derived:
            raise InconsistentFacts(
                "rule %s at (%d, %d) no longer derives %s(%d, %d)"
                % (rule, ag, an, kname, cg, cn)
            )
        fresh.apply(d)
    if not fresh.has(kind, g, n):
        raise InconsistentFacts(
            "replay did not reconstruct %s(%d, %d)"
            % (KIND_SHORT[kind], g, n)
        )
    return True
