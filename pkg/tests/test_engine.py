import pytest

from pww.dsl import parse_construction
from pww.engine import (
    EngineError,
    Justification,
    LineClasses,
    ProofForest,
    SaturationLimits,
    SaturationReport,
    init_store,
    insert_fact,
    materialize,
    prove,
    query,
    saturate,
    seg,
)
from pww.facts import make_fact
from pww.witness import Tolerances, eval_fact, instantiate

T = Tolerances()

# name -> DSL; every goal is provable
SUITE: dict[str, str] = {
    "midsegment": (
        "point A B C\nmidpoint M A B\nmidpoint N A C\ngoal para M N B C\n"
    ),
    "circumcenter-equidistant": (
        "point A B C\ncircumcenter O A B C\ngoal cong O A O C\n"
    ),
    "thales-semicircle": (
        "point A B\nmidpoint O A B\ncircle k O A\non C k\ngoal perp A C B C\n"
    ),
    "inscribed-angle": (
        "point A B C\ncircumcircle k A B C\non P k\ngoal eqangle C A C B P A P B\n"
    ),
    "isosceles-base-angles": (
        "point A B\nperpbisector r A B\non C r\ngoal eqangle A B A C B C B A\n"
    ),
    "perp-bisector-characterization": (
        "point A B C\ncircumcenter O A B C\nmidpoint M A B\ngoal perp O M A B\n"
    ),
}

EULER = """\
point A B C
circumcenter O A B C
centroid G A B C
orthocenter H A B C
goal coll O G H
"""


def store_for(text: str, seed: int = 0):
    c = parse_construction(text)
    return c, init_store(c, instantiate(c, seed, T), T)


# -- equivalence-class structures ----------------------------------------------


def test_line_classes_merge_on_two_shared_points() -> None:
    lc = LineClasses()
    c1 = lc.class_of_pair("A", "B")
    assert lc.class_of_pair("A", "B") == c1
    lc.attach(c1, "C", fid=1)
    c2 = lc.class_of_pair("D", "E")
    assert c2 != c1
    # attach B then C to the second class: two shared points force a merge
    lc.attach(c2, "B", fid=2)
    assert lc.find_pair("B", "C") == c1
    events = lc.attach(c2, "C", fid=3)
    assert events  # a merge happened and was reported for the chaser
    survivor = lc.find_pair("A", "B")
    assert lc.find_pair("D", "E") == survivor
    assert lc.containing(("A", "B", "C", "D", "E")) is not None


def test_proof_forest_explains_unions() -> None:
    pf = ProofForest()
    assert pf.union(seg("A", "B"), seg("C", "D"), fid=5)
    assert pf.union(seg("C", "D"), seg("E", "F"), fid=8)
    assert not pf.union(seg("A", "B"), seg("E", "F"), fid=9)  # already same
    assert pf.same(seg("A", "B"), seg("E", "F"))
    assert sorted(pf.explain(seg("A", "B"), seg("E", "F"))) == [5, 8]
    assert pf.explain(seg("A", "B"), seg("C", "D")) == [5]
    assert pf.classes() == [[("A", "B"), ("C", "D"), ("E", "F")]]


def test_seg_is_unordered() -> None:
    assert seg("B", "A") == seg("A", "B") == ("A", "B")


# -- insertion outcomes ----------------------------------------------------------


def test_insert_outcomes() -> None:
    c, s = store_for("point A B C\nmidpoint M A B\n")
    rule = Justification(kind="rule", rule_id="R99")
    # exact duplicate of a stored fact
    outcome, fid = insert_fact(s, make_fact("midp", ("M", "A", "B")), rule)
    assert outcome == "known" and fid == s.by_fact[make_fact("midp", ("M", "A", "B"))]
    # structurally known: M sits on line AB, so the directions already agree
    outcome, fid = insert_fact(s, make_fact("para", ("A", "M", "A", "B")), rule)
    assert outcome == "known" and fid is None
    # numerically false: rejected and logged
    outcome, fid = insert_fact(s, make_fact("coll", ("A", "B", "C")), rule)
    assert outcome == "rejected" and fid is None
    assert (make_fact("coll", ("A", "B", "C")), "R99") in s.rejected
    # genuinely new: no structural index covers similarity statements
    outcome, fid = insert_fact(s, make_fact("simtri", ("A", "C", "M", "A", "C", "M")), rule)
    assert outcome == "new" and fid is not None


def test_midp_folds_into_coll_and_cong() -> None:
    c, s = store_for("point A B\nmidpoint M A B\n")
    assert make_fact("coll", ("A", "B", "M")) in s.by_fact
    assert make_fact("cong", ("A", "M", "B", "M")) in s.by_fact
    fold = s.nodes[s.by_fact[make_fact("coll", ("A", "B", "M"))]]
    assert fold.just.rule_id == "R01"
    assert fold.just.premises == (s.by_fact[make_fact("midp", ("M", "A", "B"))],)


def test_init_store_rejects_false_seed() -> None:
    lying = parse_construction("point A B\nline l A B\non M l\n")
    honest = parse_construction("point A B\nline l A B\nmidpoint M A B\n")
    witness = instantiate(lying, 0, T)  # M is generically not the midpoint
    with pytest.raises(EngineError):
        init_store(honest, witness, T)


# -- query and materialize -------------------------------------------------------


def test_query_kinds_and_materialize() -> None:
    c, s = store_for("point A B C\nmidpoint M A B\nmidpoint N A C\n")
    saturate(s)
    stored = query(s, make_fact("midp", ("M", "A", "B")))
    assert stored.kind == "stored" and stored.fid is not None

    two_colls = ("point A B\nline l A B\non P l\non Q l\n")
    c2, s2 = store_for(two_colls)
    cls = query(s2, make_fact("coll", ("A", "P", "Q")))
    assert cls is not None and cls.kind == "classes"
    fid = materialize(s2, cls)
    assert s2.nodes[fid].fact == make_fact("coll", ("A", "P", "Q"))
    assert s2.nodes[fid].just.kind == "classes"

    c3, s3 = store_for("point A B C\ncircumcenter O A B C\n")
    forest = query(s3, make_fact("cong", ("O", "A", "O", "C")))
    assert forest is not None and forest.kind == "forest"
    assert len(forest.premises) == 2  # the two seeded equidistances

    chase = query(s3, make_fact("eqratio", ("O", "A", "O", "B", "O", "B", "O", "C")))
    assert chase is not None and chase.kind == "chase" and chase.system == "length"
    assert chase.certificate is not None
    fid3 = materialize(s3, chase)
    assert s3.nodes[fid3].just.kind == "chase"

    assert query(s3, make_fact("coll", ("A", "B", "C"))) is None


def test_query_certificate_premises_map_to_fids() -> None:
    c, s = store_for("point A B C\nmidpoint M A B\nmidpoint N A C\n")
    d = query(s, make_fact("para", ("A", "B", "A", "M")))
    assert d is not None and d.kind == "chase" and d.system == "angle"
    for fid in d.premises:
        assert 0 <= fid < len(s.nodes)


# -- saturation ------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SUITE))
def test_theorem_suite(name: str) -> None:
    c = parse_construction(SUITE[name])
    m = instantiate(c, 0, T)
    s, report, d = prove(c, c.goal.to_fact(), m)
    assert d is not None, name
    assert report.stopped == "fixpoint"


def test_euler_line_proves() -> None:
    c = parse_construction(EULER)
    m = instantiate(c, 0, T)
    s, report, d = prove(c, c.goal.to_fact(), m)
    assert d is not None
    assert report.stopped == "fixpoint"
    assert report.levels <= 12


def test_saturation_report_line_format() -> None:
    r = SaturationReport(6, 55, "fixpoint", 26)
    assert r.line() == "levels=6 facts=55 stopped=fixpoint elapsed_ms=26"


def test_every_stored_fact_holds_on_fresh_witnesses() -> None:
    c = parse_construction(EULER)
    s, report, d = prove(c, c.goal.to_fact(), instantiate(c, 0, T))
    for ws in (11, 12, 13):
        m = instantiate(c, ws, T)
        for node in s.nodes:
            assert eval_fact(m, node.fact, Tolerances(eq_tol=1e-7)), node.fact


def test_level_cap() -> None:
    c = parse_construction(EULER)
    s = init_store(c, instantiate(c, 0, T), T)
    report = saturate(s, SaturationLimits(max_levels=2))
    assert report.stopped == "levelcap"
    assert report.levels == 2
    assert query(s, c.goal.to_fact()) is None


def test_fact_cap() -> None:
    c = parse_construction(EULER)
    s = init_store(c, instantiate(c, 0, T), T)
    report = saturate(s, SaturationLimits(max_facts=15))
    assert report.stopped == "factcap"
    assert report.facts >= 15


def test_time_cap() -> None:
    c = parse_construction(EULER)
    s = init_store(c, instantiate(c, 0, T), T)
    report = saturate(s, SaturationLimits(time_budget_s=0.0))
    assert report.stopped == "timecap"
    assert report.levels == 0


def test_saturation_is_deterministic() -> None:
    def run() -> list[str]:
        c = parse_construction(EULER)
        s, _, _ = prove(c, c.goal.to_fact(), instantiate(c, 5, T))
        return [f"{n.fact}|{n.just.kind}|{n.just.premises}" for n in s.nodes]

    assert run() == run()


def test_rejected_conclusions_never_become_nodes() -> None:
    c = parse_construction(EULER)
    s, _, _ = prove(c, c.goal.to_fact(), instantiate(c, 0, T))
    stored = {n.fact for n in s.nodes}
    for f, _rule in s.rejected:
        assert f not in stored


def test_proof_dag_premises_precede_conclusions() -> None:
    c = parse_construction(EULER)
    s, _, d = prove(c, c.goal.to_fact(), instantiate(c, 0, T))
    for node in s.nodes:
        for p in node.just.premises:
            if node.just.rule_id == "R01":
                continue  # midpoint folding cites its own midp node
            assert p < node.fid, (node.fact, node.just)
