import pytest

from torsionlab.diagrams import (FIXTURE_NAMES, KnotDiagram, UNKNOT,
                                 load_fixture, parse_pd)
from torsionlab.errors import InconsistentArcs, MalformedCode


def test_empty_is_unknot():
    assert parse_pd("") == UNKNOT
    assert parse_pd("# just a comment\n") == UNKNOT
    assert parse_pd("unknot") == UNKNOT


def test_trefoil_structure():
    d = load_fixture("trefoil_lh")
    assert len(d.crossings) == 3
    assert len(d.arcs()) == 6
    assert d.is_knot()
    assert d.writhe() == -3
    assert all(c.sign == -1 for c in d.crossings)


def test_all_fixtures_parse_as_knots():
    for name in FIXTURE_NAMES:
        d = load_fixture(name)
        if name == "unknot":
            assert len(d.components()) == 0
        else:
            assert d.is_knot()


def test_arc_used_three_times():
    with pytest.raises(InconsistentArcs):
        parse_pd("X 1 1 2 1\nX 2 3 3 2")


def test_malformed():
    with pytest.raises(MalformedCode):
        parse_pd("this is not a code")
    with pytest.raises(MalformedCode):
        parse_pd("X 1 2 3")


def test_bracket_style_accepted():
    d1 = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    d2 = load_fixture("trefoil_lh")
    assert d1.canonical_key() == d2.canonical_key()


def test_mirror_is_switch_all():
    lh = load_fixture("trefoil_lh")
    rh = load_fixture("trefoil_rh")
    assert lh.mirror().canonical_key() == rh.canonical_key()
    assert lh.mirror().writhe() == -lh.writhe()


def test_switch_flips_sign_once():
    d = load_fixture("figure8")
    s = d.switch(0)
    assert s.crossings[0].sign == -d.crossings[0].sign
    assert s.crossings[1:] == d.crossings[1:]
    assert s.succ == d.succ


def test_smooth_drops_crossing():
    d = load_fixture("trefoil_lh")
    s = d.smooth(1)
    assert len(s.crossings) == 2
    # oriented smoothing of one trefoil crossing leaves a two-crossing
    # diagram of two components (a Hopf-like picture)
    assert len(s.components()) == 2


def test_hopf_components():
    h = load_fixture("hopf_positive")
    assert len(h.components()) == 2
    assert h.writhe() == 2


def test_kink():
    k = parse_pd("X 1 2 2 1")
    assert len(k.components()) == 1
    assert k.writhe() == -1


def test_canonical_key_label_invariance():
    base = load_fixture("trefoil_lh")
    shifted = parse_pd("X 11 14 12 15\nX 13 16 14 11\nX 15 12 16 13")
    assert base.canonical_key() == shifted.canonical_key()


def test_pd_text_round_trip():
    for name in FIXTURE_NAMES:
        d = load_fixture(name)
        if not d.crossings:
            continue
        again = parse_pd(d.pd_text())
        assert again.canonical_key() == d.canonical_key()
