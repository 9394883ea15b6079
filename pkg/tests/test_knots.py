import cmath
import math
from fractions import Fraction

import pytest

from torsionlab.cw import (EulerStructure, FlatBundle, HomOrientation,
                           absolute_torsion, canonical_euler, torsion_euler,
                           untwisted_betti)
from torsionlab.diagrams import FIXTURE_NAMES, load_fixture, parse_pd
from torsionlab.errors import NonAcyclicBundle, ParityError
from torsionlab.knots import (TorsionRep, absolute_torsion_at, alexander_poly,
                              build_surgery_complex, canonical_normalize,
                              conway_from_torsion, conway_symbolic,
                              equals_up_to_unit, exterior_torsion, fox_matrix,
                              surgery_torsion, wirtinger)
from torsionlab.linalg import LAURENT, Matrix, det
from torsionlab.scalars import LaurentPoly, RatFunc, parse_laurent, parse_ratfunc
from torsionlab.skein import ConwayPoly, conway_skein

# a trefoil with an extra positive kink on its last arc: same knot,
# different diagram, used for the move-invariance smoke test
TREFOIL_KINKED = "X 1 4 2 5\nX 3 8 4 1\nX 5 2 6 3\nX 6 8 7 7"


def test_wirtinger_unknot():
    pres = wirtinger(load_fixture("unknot"))
    assert pres.generators == 1
    assert pres.relators == ()


def test_wirtinger_trefoil():
    pres = wirtinger(load_fixture("trefoil_lh"))
    assert pres.generators == 3
    assert len(pres.relators) == 3
    assert all(len(r) == 4 for r in pres.relators)


def test_relators_abelianize_trivially():
    for name in FIXTURE_NAMES:
        pres = wirtinger(load_fixture(name))
        for r in pres.relators:
            assert sum(e for _, e in r) == 0
        assert sum(e for _, e in pres.longitude) == 0


def test_longitude_commutes_with_meridian():
    """The zero-framed longitude lies in the peripheral subgroup: it must
    commute with the base meridian.  Checked in an exact faithful matrix
    representation of the trefoil group."""
    d = load_fixture("trefoil_lh")
    pres = wirtinger(d)

    def mmul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]

    def minv(X):
        dd = X[0][0] * X[1][1] - X[0][1] * X[1][0]
        return [[X[1][1] / dd, -X[0][1] / dd], [-X[1][0] / dd, X[0][0] / dd]]

    A = [[Fraction(-3), Fraction(1)], [Fraction(0), Fraction(1)]]
    B = [[Fraction(1), Fraction(0)], [Fraction(3), Fraction(-3)]]
    C = mmul(mmul(minv(A), B), A)
    gens = [A, B, C]
    ident = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]

    def word_mat(word):
        M = ident
        for g, e in word:
            M = mmul(M, gens[g] if e == 1 else minv(gens[g]))
        return M

    for r in pres.relators:
        assert word_mat(r) == ident
    lam = word_mat(pres.longitude)
    base = gens[pres.base_generator]
    assert mmul(lam, base) == mmul(base, lam)


def test_fox_matrix_row_pattern():
    pres = wirtinger(load_fixture("trefoil_lh"))
    M = fox_matrix(pres)
    # every relator column sums against (t-1) to zero: fundamental identity
    tm1 = parse_laurent("t-1")
    for j in range(M.cols):
        total = LaurentPoly.zero()
        for i in range(M.rows):
            total = total + tm1 * M.data[i][j]
        assert total.is_zero()


def test_exterior_torsion_unknot():
    rep = exterior_torsion(load_fixture("unknot"))
    assert equals_up_to_unit(rep.value, parse_ratfunc("(1)/(1-t)"))


def test_exterior_torsion_trefoil():
    rep = exterior_torsion(load_fixture("trefoil_lh"))
    alex = rep.value * RatFunc(parse_laurent("1-t"))
    assert equals_up_to_unit(alex, RatFunc(parse_laurent("t^2-t+1")))


def test_exterior_torsion_figure8():
    rep = exterior_torsion(load_fixture("figure8"))
    alex = rep.value * RatFunc(parse_laurent("1-t"))
    assert equals_up_to_unit(alex, RatFunc(parse_laurent("t^2-3t+1")))


def test_minor_choice_invariance():
    """Any admissible relator/generator deletion gives the same value up to
    sign and powers of t."""
    d = load_fixture("figure8")
    pres = wirtinger(d)
    n = pres.generators
    full = fox_matrix(pres)
    reference = exterior_torsion(d).value
    one_minus_t = RatFunc(parse_laurent("1-t"))
    found = 0
    for drop_rel in range(n):
        for drop_gen in range(n):
            keep_rows = [i for i in range(n) if i != drop_gen]
            keep_cols = [j for j in range(n) if j != drop_rel]
            minor = Matrix([[full.data[i][j] for j in keep_cols]
                            for i in keep_rows], LAURENT)
            val = det(minor.map(RatFunc.from_laurent,
                                _dom('ratfunc')))
            if val.is_zero():
                continue
            found += 1
            assert equals_up_to_unit(val / one_minus_t, reference)
    assert found > 1


def _dom(name):
    from torsionlab.linalg import DOMAINS
    return DOMAINS[name]


def test_surgery_torsion_unknot():
    rep = surgery_torsion(load_fixture("unknot"))
    assert equals_up_to_unit(rep.value, parse_ratfunc("(1)/(1-2t+t^2)"))


def test_surgery_torsion_trefoil():
    rep = surgery_torsion(load_fixture("trefoil_lh"))
    want = RatFunc(parse_laurent("t^2-t+1"), parse_laurent("1-2t+t^2"))
    assert equals_up_to_unit(rep.value, want)


def test_surgery_scaling_multiplicative():
    rep = exterior_torsion(load_fixture("trefoil_lh"))
    unit = RatFunc(parse_laurent("-t^3"))
    scaled = TorsionRep(rep.value * unit, "raw")
    s1 = surgery_torsion(load_fixture("trefoil_lh")).value
    one_minus_t = RatFunc(parse_laurent("1-t"))
    assert scaled.value / one_minus_t == unit * s1


def test_canonical_normalize_fixed_point():
    rep = canonical_normalize(surgery_torsion(load_fixture("trefoil_lh")))
    again = canonical_normalize(rep)
    assert again.value == rep.value
    assert rep.normalization == "canonical"


def test_canonical_normalize_strips_units():
    rep = surgery_torsion(load_fixture("figure8"))
    s = canonical_normalize(rep)
    twisted = TorsionRep(rep.value * RatFunc(parse_laurent("-t^3")), "raw")
    assert canonical_normalize(twisted).value == s.value
    assert s.value.bar() == s.value


def test_canonical_normalize_unknot_value():
    s = canonical_normalize(surgery_torsion(load_fixture("unknot")))
    # 1/((1-t)(1-1/t)) up to the sign fixed by the constant-term rule
    assert equals_up_to_unit(s.value, parse_ratfunc("(t)/(1-2t+t^2)"))
    assert s.value.bar() == s.value


def test_canonical_normalize_parity_error():
    odd = TorsionRep(RatFunc(parse_laurent("1"), parse_laurent("1-t")), "raw")
    with pytest.raises(ParityError):
        canonical_normalize(odd)


def test_conway_from_torsion_examples():
    assert conway_from_torsion(load_fixture("unknot")) == ConwayPoly.one()
    assert conway_from_torsion(load_fixture("trefoil_lh")) == ConwayPoly((1, 0, 1))
    assert conway_from_torsion(load_fixture("figure8")) == ConwayPoly((1, 0, -1))


def test_conway_pipelines_agree_everywhere():
    for name in FIXTURE_NAMES:
        d = load_fixture(name)
        assert conway_from_torsion(d) == conway_skein(d)[0], name


def test_move_invariance_smoke():
    """A kinked trefoil diagram gives identical output through both routes."""
    d = parse_pd(TREFOIL_KINKED)
    assert d.is_knot() and len(d.crossings) == 4
    want = ConwayPoly((1, 0, 1))
    assert conway_skein(d)[0] == want
    assert conway_from_torsion(d) == want


def test_alexander_examples():
    assert str(alexander_poly(load_fixture("unknot"))) == "1"
    assert str(alexander_poly(load_fixture("trefoil_lh"))) == "1-t+t^2"
    assert str(alexander_poly(load_fixture("figure8"))) == "1-3t+t^2"
    assert str(alexander_poly(load_fixture("k6_1"))) == "2-5t+2t^2"


def test_alexander_normalization_properties():
    for name in FIXTURE_NAMES:
        p = alexander_poly(load_fixture(name))
        assert p.min_exp() == 0
        assert p == p.bar().shift(p.max_exp())  # palindromic
        assert abs(p.evaluate(Fraction(1))) == 1


def test_conway_alexander_relation():
    """The Conway polynomial at z^2 = t - 2 + 1/t recovers the Alexander
    polynomial up to sign and half powers, on every fixture."""
    z2 = RatFunc(parse_laurent("t-2+t^-1"))
    for name in FIXTURE_NAMES:
        d = load_fixture(name)
        nabla, _ = conway_skein(d)
        value = RatFunc.zero()
        acc = RatFunc.one()
        for j, c in enumerate(nabla.coeffs[0::2]):
            if c:
                value = value + RatFunc.const(c) * acc
            acc = acc * z2
        alex = RatFunc(alexander_poly(d))
        assert equals_up_to_unit(value, alex), name


def test_absolute_torsion_values():
    assert absolute_torsion_at(load_fixture("unknot"), 2) == 1
    assert absolute_torsion_at(load_fixture("trefoil_lh"), 2) == Fraction(3, 2)


def test_absolute_torsion_complex_sample():
    a = cmath.exp(1j * 2.0)
    val = absolute_torsion_at(load_fixture("trefoil_lh"), a)
    want = (a - 1 + 1 / a)
    assert abs(val - want) < 1e-12
    assert abs(val.imag) < 1e-9


def test_absolute_torsion_error_contracts():
    tre = load_fixture("trefoil_lh")
    with pytest.raises(NonAcyclicBundle):
        absolute_torsion_at(tre, 1)
    with pytest.raises(NonAcyclicBundle):
        absolute_torsion_at(tre, Fraction(1))
    k61 = load_fixture("k6_1")
    with pytest.raises(NonAcyclicBundle):
        absolute_torsion_at(k61, 2)
    with pytest.raises(NonAcyclicBundle):
        absolute_torsion_at(k61, Fraction(1, 2))
    with pytest.raises(NonAcyclicBundle):
        absolute_torsion_at(tre, cmath.exp(1j * math.pi / 3))


def test_symbolic_identity_against_skein():
    u = RatFunc.t()
    zu = u - RatFunc.one() / u
    for name in ("unknot", "trefoil_lh", "figure8", "k5_2"):
        d = load_fixture(name)
        nabla, _ = conway_skein(d)
        rhs = RatFunc.zero()
        for j, c in enumerate(nabla.coeffs):
            if c:
                rhs = rhs + RatFunc.const(c) * zu ** j
        assert (conway_symbolic(d) - rhs).is_zero(), name


# ---------------------------------------------------------------------------
# surgery complex construction
# ---------------------------------------------------------------------------

def test_surgery_complex_unknot_matches_product():
    X = build_surgery_complex(load_fixture("unknot"))
    assert X.cells == (1, 1, 1, 1)
    tm1 = parse_laurent("t-1")
    assert X.boundaries[0].data[0][0] == tm1
    assert X.boundaries[1].data[0][0].is_zero()
    assert equals_up_to_unit(RatFunc(X.boundaries[2].data[0][0]),
                             RatFunc(tm1))


def test_surgery_complex_betti_all_fixtures():
    for name in FIXTURE_NAMES:
        X = build_surgery_complex(load_fixture(name))
        assert untwisted_betti(X) == [1, 1, 1, 1], name


def test_surgery_complex_torsion_matches_fox_route():
    F = FlatBundle.symbolic_line()
    for name in FIXTURE_NAMES:
        d = load_fixture(name)
        X = build_surgery_complex(d)
        via_complex = torsion_euler(X, EulerStructure(0), F, HomOrientation(1))
        via_fox = surgery_torsion(d)
        assert equals_up_to_unit(via_complex.value, via_fox.value), name
        can_a = canonical_normalize(TorsionRep(via_complex.value, "raw"))
        can_b = canonical_normalize(via_fox)
        assert can_a.value == can_b.value, name


def test_surgery_complex_absolute_torsion_symbolic():
    Xu = build_surgery_complex(load_fixture("unknot"))
    at = absolute_torsion(Xu, FlatBundle.symbolic_line(), HomOrientation(1))
    assert at.value.value == RatFunc.one()
    Xt = build_surgery_complex(load_fixture("trefoil_lh"))
    att = absolute_torsion(Xt, FlatBundle.symbolic_line(), HomOrientation(1))
    assert att.value.value == RatFunc(parse_laurent("t-1+t^-1"))


def test_surgery_complex_canonical_structure():
    X = build_surgery_complex(load_fixture("trefoil_lh"))
    xi = canonical_euler(X)
    tau = torsion_euler(X, xi, FlatBundle.symbolic_line(), HomOrientation(1))
    assert tau.value.bar() == tau.value


def test_multi_component_rejected():
    with pytest.raises(ValueError):
        wirtinger(load_fixture("hopf_positive"))
