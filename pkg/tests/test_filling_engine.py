"""Tests for the grid inference engine: rules, fixed point, provenance."""

import json
import random

import pytest

from strataforge.errors import (
    InconsistentFacts,
    MissingCitation,
    UnknownLabel,
    UnstablePair,
)
from strataforge.filling_engine import (
    Fact,
    FactFile,
    GridStatus,
    explain_chain,
    load_packaged_facts,
    propagate,
    replay_chain,
    rule_rt,
    rule_thicken,
    rule_v1,
    rule_v2,
)
from strataforge.strata_classes import SpaceKind

BAR = SpaceKind.STABLE
CT = SpaceKind.COMPACT_TYPE
RT = SpaceKind.RATIONAL_TAILS
OPEN = SpaceKind.OPEN


@pytest.fixture(scope="module")
def shipped():
    facts = load_packaged_facts()
    return facts, propagate(facts)


def drop_side_fact(facts, g, n):
    return FactFile(
        facts=tuple(
            f
            for f in facts.facts
            if not (f.kind == "dn_complement" and (f.g, f.n) == (g, n))
        ),
        negatives=facts.negatives,
    )


# -- headline table ----------------------------------------------------------


def test_shipped_run_reproduces_table_rows(shipped):
    _, db = shipped
    assert [db.max_n(BAR, g) for g in range(2, 8)] == [9, 8, 6, 4, 2, 0]
    assert [db.max_n(CT, g) for g in range(2, 8)] == [9, 8, 7, 6, 5, 0]
    assert [db.max_n(RT, g) for g in range(2, 8)] == [10, 11, 11, 7, 5, 0]


def test_shipped_run_fills_low_slope_region(shipped):
    _, db = shipped
    for g in range(0, 9):
        for n in range(0, 17):
            if 2 * g - 2 + n <= 0:
                continue
            if 2 * g + n <= 12:
                assert db.bar_ok(g, n), (g, n)


def test_genus_zero_column_fills_by_induction(shipped):
    _, db = shipped
    for n in range(3, 17):
        assert db.bar_ok(0, n)


def test_genus_one_negatives_hold(shipped):
    _, db = shipped
    assert db.max_n(BAR, 1) == 10
    for n in range(11, 17):
        assert not db.bar_ok(1, n)
        assert db.is_negative(BAR, 1, n)
    # the failure is about the compactified space; nothing rules out
    # weaker flavors, they are simply underivable here
    assert not db.open_ok(1, 11)
    assert not db.is_negative(OPEN, 1, 11)


def test_counterfactual_without_3_8_side_fact(shipped):
    facts, _ = shipped
    db = propagate(drop_side_fact(facts, 3, 8))
    assert [db.max_n(BAR, g) for g in range(2, 8)] == [9, 7, 5, 3, 1, None]


def test_counterfactual_without_2_9_side_fact(shipped):
    facts, _ = shipped
    db = propagate(drop_side_fact(facts, 2, 9))
    assert [db.max_n(BAR, g) for g in range(2, 8)] == [8, 6, 4, 2, 0, None]
    # the compact-type row does not depend on the side facts
    assert [db.max_n(CT, g) for g in range(2, 8)] == [9, 8, 7, 6, 5, 0]


def test_empty_fact_file_derives_nothing():
    db = propagate(FactFile())
    assert db.cells() == []


# -- individual rules --------------------------------------------------------


def test_rule_v1_fires_at_2_8_but_not_2_9(shipped):
    _, db = shipped
    d = rule_v1(db, 2, 8)
    assert d is not None and d.rule == "v1"
    assert (BAR, 2, 8) in d.derived and (BAR, 2, 0) in d.derived
    assert (BAR, 1, 10) in d.premises
    assert rule_v1(db, 2, 9) is None


def test_rule_v1_genus_zero_needs_no_hinterland():
    db = propagate(
        FactFile(facts=tuple(Fact("open", 0, n, "seed") for n in (3, 4, 5)))
    )
    d = rule_v1(db, 0, 5)
    assert d is not None
    assert all(cell[0] is OPEN for cell in d.premises)
    assert db.bar_ok(0, 5)


def test_rule_v1_absent_on_empty_grid():
    assert rule_v1(GridStatus(), 2, 5) is None
    assert rule_v1(GridStatus(), 0, 3) is None


def test_rule_v2_requires_declared_side_fact(shipped):
    facts, db = shipped
    side = next(
        f
        for f in facts.facts
        if f.kind == "dn_complement" and (f.g, f.n) == (2, 9)
    )
    d = rule_v2(db, 2, 9, side)
    assert d is not None and d.cite == side.cite
    assert (BAR, 2, 9) in d.derived
    assert ("dn_complement", 2, 9) in d.premises
    with pytest.raises(MissingCitation):
        rule_v2(db, 2, 9, Fact("dn_complement", 2, 9, "undeclared variant"))
    with pytest.raises(MissingCitation):
        rule_v2(db, 3, 8, side)
    with pytest.raises(MissingCitation):
        rule_v2(db, 2, 9, Fact("open", 2, 9, "wrong kind"))


def test_rule_thicken_examples(shipped):
    _, db = shipped
    d = rule_thicken(db, 4, 7)
    assert d is not None and (CT, 4, 7) in d.derived
    d = rule_thicken(db, 6, 5)
    assert d is not None and (CT, 6, 5) in d.derived
    assert rule_thicken(GridStatus(), 4, 7) is None


def test_rule_rt_examples(shipped):
    _, db = shipped
    d = rule_rt(db, 3, 11)
    assert d is not None and (RT, 3, 11) in d.derived
    d = rule_rt(db, 5, 7)
    assert d is not None and (RT, 5, 7) in d.derived
    assert rule_rt(GridStatus(), 3, 11) is None
    # no open column at (2, 11), so no rational tails there
    assert rule_rt(db, 2, 11) is None


def test_strength_order_closure(shipped):
    _, db = shipped
    for (kind, g, n) in db.cells():
        if kind is BAR:
            assert db.ct_ok(g, n) and db.rt_ok(g, n) and db.open_ok(g, n)
        elif kind is CT:
            assert db.rt_ok(g, n) and db.open_ok(g, n)
        elif kind is RT:
            assert db.open_ok(g, n)


def test_bar_columns_are_downward_closed(shipped):
    _, db = shipped
    for (kind, g, n) in db.cells():
        if kind is BAR and n >= 1 and 2 * g - 2 + (n - 1) > 0:
            assert db.bar_ok(g, n - 1)


# -- fixed-point properties --------------------------------------------------


def test_monotone_in_facts(shipped):
    facts, full_db = shipped
    full = set(full_db.cells())
    rng = random.Random(20260814)
    pool = list(facts.facts)
    prev_cells = set()
    prev_subset = []
    for size in (10, 25, 40, 60, len(pool)):
        subset = prev_subset + rng.sample(
            [f for f in pool if f not in prev_subset],
            size - len(prev_subset),
        )
        db = propagate(FactFile(facts=tuple(subset), negatives=facts.negatives))
        cells = set(db.cells())
        assert prev_cells <= cells
        assert cells <= full
        prev_cells, prev_subset = cells, subset


def test_confluent_under_anchor_reordering(shipped):
    facts, base_db = shipped
    expected = set(base_db.cells())
    for seed in (1, 2, 3):
        rng = random.Random(seed)

        def scramble(anchors, rng=rng):
            anchors = list(anchors)
            rng.shuffle(anchors)
            return anchors

        db = propagate(facts, order=scramble)
        assert set(db.cells()) == expected


def test_inconsistent_when_negative_meets_derivation():
    bad = FactFile(
        facts=tuple(
            [Fact("open", 0, n, "seed") for n in (3, 4, 5)]
            + [Fact("open", 1, n, "seed") for n in (1, 2, 3)]
        ),
        negatives=(Fact("bar", 1, 3, "ruled out"),),
    )
    with pytest.raises(InconsistentFacts):
        propagate(bad)


def test_inconsistent_when_negative_meets_base_fact():
    bad = FactFile(
        facts=(Fact("open", 2, 0, "yes"),),
        negatives=(Fact("open", 2, 0, "no"),),
    )
    with pytest.raises(InconsistentFacts):
        propagate(bad)


def test_negative_closure_strengthens_upward():
    db = propagate(FactFile(negatives=(Fact("open", 2, 3, "blocked"),)))
    for kind in (OPEN, RT, CT, BAR):
        assert db.is_negative(kind, 2, 3)
    db2 = propagate(FactFile(negatives=(Fact("bar", 2, 3, "blocked"),)))
    assert db2.is_negative(BAR, 2, 3)
    assert db2.is_negative(BAR, 2, 10)
    assert not db2.is_negative(CT, 2, 3)


# -- fact files --------------------------------------------------------------


def test_fact_file_validation():
    with pytest.raises(MissingCitation):
        FactFile(facts=(Fact("open", 0, 3, ""),))
    with pytest.raises(MissingCitation):
        FactFile(facts=(Fact("open", 0, 3, "   "),))
    with pytest.raises(UnknownLabel):
        FactFile(facts=(Fact("smooth", 0, 3, "x"),))
    with pytest.raises(UnstablePair):
        FactFile(facts=(Fact("open", 1, 0, "x"),))
    with pytest.raises(UnknownLabel):
        FactFile(negatives=(Fact("dn_complement", 2, 9, "x"),))


def test_fact_file_json_roundtrip(shipped):
    facts, _ = shipped
    blob = facts.to_json_dict()
    again = FactFile.from_json_dict(json.loads(json.dumps(blob)))
    assert again == facts


def test_out_of_grid_facts_are_ignored():
    facts = FactFile(
        facts=(Fact("open", 0, 3, "in"), Fact("open", 12, 0, "out")),
        negatives=(Fact("bar", 9, 1, "out"),),
    )
    db = propagate(facts, g_max=8, n_max=16)
    assert db.open_ok(0, 3)
    assert all(g <= 8 for (_, g, _) in db.cells())


# -- provenance --------------------------------------------------------------


def test_explain_base_fact(shipped):
    _, db = shipped
    chain = explain_chain(db, "open", 5, 3)
    assert len(chain) == 1
    assert chain[0]["rule"] == "base"
    assert chain[0]["cite"]


def test_explain_orders_premises_first(shipped):
    _, db = shipped
    chain = explain_chain(db, "bar", 3, 8)
    position = {tuple(node["cell"]): i for i, node in enumerate(chain)}
    for node in chain:
        for prem in node["premises"]:
            assert position[tuple(prem)] < position[tuple(node["cell"])]
    assert chain[-1]["rule"] == "v2"


def test_explain_unknown_flag(shipped):
    _, db = shipped
    with pytest.raises(UnknownLabel):
        explain_chain(db, "bar", 8, 16)


def test_replay_every_flag(shipped):
    facts, db = shipped
    for (kind, g, n) in db.cells():
        assert replay_chain(db, facts, kind, g, n)


def test_replay_detects_missing_base_fact(shipped):
    facts, db = shipped
    gutted = FactFile(
        facts=tuple(
            f for f in facts.facts if not (f.kind == "open" and f.g == 3)
        ),
        negatives=facts.negatives,
    )
    with pytest.raises(InconsistentFacts):
        replay_chain(db, gutted, "bar", 3, 8)


def test_replay_detects_missing_side_fact(shipped):
    facts, db = shipped
    with pytest.raises(InconsistentFacts):
        replay_chain(db, drop_side_fact(facts, 3, 8), "bar", 3, 8)


# -- rendering ---------------------------------------------------------------


def test_chart_text_shape(shipped):
    _, db = shipped
    text = db.chart_text()
    lines = text.splitlines()
    assert lines[0].startswith("n:")
    assert len(lines) == 1 + 9 + 1  # header, g=8..0, legend
    assert lines[1].startswith("g=8")
    assert "legend" in lines[-1]


def test_chart_json_spot_values(shipped):
    _, db = shipped
    blob = db.chart_json()
    by_cell = {(c["g"], c["n"]): c for c in blob["cells"]}
    assert by_cell[(3, 8)]["status"] == "bar"
    assert by_cell[(4, 7)]["status"] == "ct"
    assert by_cell[(2, 10)]["status"] == "rt"
    assert by_cell[(1, 11)]["status"] is None
    assert by_cell[(1, 11)]["negative"] == ["bar"]
    assert by_cell[(8, 16)]["status"] is None
    assert (0, 2) not in by_cell
