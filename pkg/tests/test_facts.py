import pytest

from pww.facts import Fact, FactError, PREDICATES, make_fact, render_fact


def test_coll_sorted() -> None:
    f = make_fact("coll", ("C", "A", "B"))
    assert f == Fact("coll", ("A", "B", "C"))
    assert make_fact("coll", ("B", "C", "A")) == f


def test_cyclic_sorted() -> None:
    f = make_fact("cyclic", ("D", "B", "A", "C"))
    assert f.args == ("A", "B", "C", "D")


def test_midp_keeps_midpoint_first() -> None:
    f = make_fact("midp", ("M", "B", "A"))
    assert f.args == ("M", "A", "B")
    assert make_fact("midp", ("M", "A", "B")) == f


def test_circle_keeps_center_first() -> None:
    f = make_fact("circle", ("O", "C", "A", "B"))
    assert f.args == ("O", "A", "B", "C")


def test_pair_symmetry_group() -> None:
    base = make_fact("para", ("A", "B", "C", "D"))
    for args in [("B", "A", "C", "D"), ("A", "B", "D", "C"),
                 ("C", "D", "A", "B"), ("D", "C", "B", "A")]:
        assert make_fact("para", args) == base
    assert make_fact("cong", ("D", "C", "B", "A")) == make_fact(
        "cong", ("A", "B", "C", "D"))


def test_eqangle_symmetry_group() -> None:
    base = make_fact("eqangle", ("A", "B", "C", "D", "E", "F", "G", "H"))
    # swap the two sides of the equality
    assert make_fact("eqangle", ("E", "F", "G", "H", "A", "B", "C", "D")) == base
    # flip both angles jointly
    assert make_fact("eqangle", ("C", "D", "A", "B", "G", "H", "E", "F")) == base
    # reorder the points inside each line
    assert make_fact("eqangle", ("B", "A", "D", "C", "F", "E", "H", "G")) == base
    # flipping only one side is a different statement
    assert make_fact("eqangle", ("C", "D", "A", "B", "E", "F", "G", "H")) != base


def test_eqratio_shares_eqangle_symmetries() -> None:
    base = make_fact("eqratio", ("A", "B", "C", "D", "E", "F", "G", "H"))
    assert make_fact("eqratio", ("G", "H", "E", "F", "C", "D", "A", "B")) == base


def test_simtri_rotation_and_swap() -> None:
    base = make_fact("simtri", ("A", "B", "C", "P", "Q", "R"))
    assert make_fact("simtri", ("B", "C", "A", "Q", "R", "P")) == base
    assert make_fact("simtri", ("P", "Q", "R", "A", "B", "C")) == base
    # a reflection of the correspondence is a different statement
    assert make_fact("simtri", ("A", "C", "B", "P", "R", "Q")) != base


def test_contri_same_canonicalization() -> None:
    assert make_fact("contri", ("C", "A", "B", "R", "P", "Q")) == make_fact(
        "contri", ("A", "B", "C", "P", "Q", "R"))


def test_arity_checked() -> None:
    with pytest.raises(FactError):
        make_fact("coll", ("A", "B"))
    with pytest.raises(FactError):
        make_fact("eqangle", ("A", "B", "C", "D"))
    with pytest.raises(FactError):
        make_fact("between", ("A", "B", "C"))


def test_degenerate_arguments_rejected() -> None:
    with pytest.raises(FactError):
        make_fact("coll", ("A", "A", "B"))
    with pytest.raises(FactError):
        make_fact("cong", ("A", "A", "B", "C"))
    with pytest.raises(FactError):
        make_fact("midp", ("A", "A", "B"))
    with pytest.raises(FactError):
        make_fact("simtri", ("A", "B", "B", "P", "Q", "R"))
    with pytest.raises(FactError):
        make_fact("cyclic", ("A", "B", "C", "C"))


def test_facts_are_hashable_and_ordered() -> None:
    a = make_fact("coll", ("A", "B", "C"))
    b = make_fact("coll", ("A", "B", "D"))
    assert len({a, b, make_fact("coll", ("C", "B", "A"))}) == 2
    assert sorted([b, a]) == [a, b]


def test_render_covers_every_predicate() -> None:
    samples = {
        "coll": ("A", "B", "C"),
        "para": ("A", "B", "C", "D"),
        "perp": ("A", "B", "C", "D"),
        "cong": ("A", "B", "C", "D"),
        "midp": ("M", "A", "B"),
        "cyclic": ("A", "B", "C", "D"),
        "circle": ("O", "A", "B", "C"),
        "eqangle": ("A", "B", "C", "D", "E", "F", "G", "H"),
        "eqratio": ("A", "B", "C", "D", "E", "F", "G", "H"),
        "simtri": ("A", "B", "C", "P", "Q", "R"),
        "contri": ("A", "B", "C", "P", "Q", "R"),
    }
    assert set(samples) == set(PREDICATES)
    for pred, args in samples.items():
        text = render_fact(make_fact(pred, args))
        assert isinstance(text, str) and text
