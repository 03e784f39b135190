import json
import random

import pytest

from alexlab import intmat
from alexlab.bigpoly import IntPoly, LaurentPoly, is_reciprocal, normalize_unit
from alexlab.cyclores import cyclic_resultant
from alexlab.errors import (BraidSyntaxError, IndexOutOfRange, MissingPresentation, NotAKnot,
                            NotASeifertMatrix, NonDivisorClosedLevels)
from alexlab.knot import (BraidWord, SeifertMatrix, alexander_data, alexander_from_braid,
                          alexander_from_seifert, branched_cover_homology, cover_relation_matrix,
                          fox_formula_check, knot_table, laurent_det, load_table, parse_braid,
                          poly_det, reduced_burau, table_knot, theorem_pipeline)
from alexlab.quotring import FinAbGroup

P = IntPoly.parse
TREFOIL = P("t^2 - t + 1")
FIG8 = P("t^2 - 3t + 1")


def random_knot_braids(count, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, 4)
        letters = tuple(rng.choice([1, -1]) * rng.randint(1, k - 1) for _ in range(rng.randint(1, 9)))
        b = BraidWord(k, letters)
        if b.is_knot():
            out.append(b)
    return out


# -- braids ------------------------------------------------------------------------

def test_parse_braid_examples():
    assert parse_braid("s1 s1 s1") == BraidWord(2, (1, 1, 1))
    assert parse_braid("s1 S2 s1 S2") == BraidWord(3, (1, -2, 1, -2))
    with pytest.raises(IndexOutOfRange):
        parse_braid("s0")
    with pytest.raises(BraidSyntaxError):
        parse_braid("x1")
    with pytest.raises(BraidSyntaxError):
        parse_braid("   ")
    assert parse_braid("s1", strands=3).strands == 3


def test_closure_components():
    assert parse_braid("s1 s1 s1").is_knot()
    assert parse_braid("s1", strands=3).components() == 2
    assert parse_braid("s1 s1").components() == 2


def test_burau_of_single_generator():
    M = reduced_burau(parse_braid("s1"))
    assert M == [[LaurentPoly.t_power(1, -1)]]
    # sigma * sigma^-1 is the identity
    M = reduced_burau(parse_braid("s2 S2 s1 S1", strands=4))
    assert M == [[LaurentPoly.from_int(int(i == j)) for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("braid, delta", [
    ("s1 s1 s1", TREFOIL),
    ("s1 S2 s1 S2", FIG8),
    ("s1", IntPoly([1])),
])
def test_alexander_from_braid_examples(braid, delta):
    assert alexander_from_braid(parse_braid(braid)).delta == delta


def test_trefoil_burau_by_hand():
    # 1x1 reduced Burau of sigma^3 is (-t)^3, and (-t^3 - 1)/(1 + t) = -(t^2 - t + 1)
    M = reduced_burau(parse_braid("s1 s1 s1"))
    assert M == [[LaurentPoly.t_power(3, -1)]]
    det = laurent_det([[M[0][0] - 1]])
    assert det == LaurentPoly(P("-t^3 - 1"))


def test_not_a_knot():
    with pytest.raises(NotAKnot):
        alexander_from_braid(parse_braid("s1", strands=3))


# -- Seifert -----------------------------------------------------------------------

@pytest.mark.parametrize("V, delta", [
    ([[-1, 1], [0, -1]], TREFOIL),
    ([[1, 1], [0, -1]], FIG8),
    ([], IntPoly([1])),
])
def test_alexander_from_seifert_examples(V, delta):
    data = alexander_from_seifert(SeifertMatrix(V))
    assert data.delta == delta
    assert normalize_unit(poly_det(data.Q))[0] == delta


def test_seifert_determinants_by_hand():
    t = P("t")
    one = IntPoly([1])
    # trefoil: (t - 1)^2 + t ; figure eight: -(t - 1)^2 + t
    assert poly_det(alexander_from_seifert(SeifertMatrix([[-1, 1], [0, -1]])).Q) == (t - one) ** 2 + t
    assert poly_det(alexander_from_seifert(SeifertMatrix([[1, 1], [0, -1]])).Q) == -((t - one) ** 2) + t


def test_bad_seifert_matrix():
    with pytest.raises(NotASeifertMatrix):
        SeifertMatrix([[1, 0], [0, 1]])
    with pytest.raises(NotASeifertMatrix):
        SeifertMatrix([[1]])


# -- table -------------------------------------------------------------------------

def test_table_contents():
    table = knot_table()
    assert set(table) >= {"0_1", "3_1", "4_1", "5_1", "5_2", "6_1", "granny", "square"}


@pytest.mark.parametrize("name", sorted(load_table()))
def test_table_entry_dual_path(name):
    entry = knot_table()[name]
    via_braid = alexander_from_braid(entry.braid_word()).delta
    via_seifert = alexander_from_seifert(entry.seifert_matrix()).delta
    assert via_braid == via_seifert == entry.golden_delta()
    assert via_seifert(1) in (1, -1)
    assert is_reciprocal(via_seifert)
    data = table_knot(name)
    assert normalize_unit(poly_det(data.Q))[0] == data.delta


def test_load_table_from_file(tmp_path):
    path = tmp_path / "knots.json"
    path.write_text(json.dumps([{"name": "3_1", "braid": "s1 s1 s1", "seifert": [[-1, 1], [0, -1]],
                                 "delta_coeffs": ["1", "-1", "1"]}]), encoding="utf-8")
    table = load_table(path)
    assert table["3_1"].golden_delta() == TREFOIL


def test_alexander_data_resolution():
    assert alexander_data("4_1").delta == FIG8
    assert alexander_data("s1 s1 s1").delta == TREFOIL
    assert alexander_data(parse_braid("s1 S2 s1 S2")).delta == FIG8
    with pytest.raises(NotAKnot):
        table_knot("8_19")


def test_random_braids_give_valid_alexander_polynomials():
    for b in random_knot_braids(50):
        d = alexander_from_braid(b).delta
        assert d(1) in (1, -1), str(b)
        assert is_reciprocal(d), str(b)


def test_markov_moves():
    rng = random.Random(11)
    for b in random_knot_braids(20, seed=3):
        d = alexander_from_braid(b).delta
        k = b.strands
        stab = BraidWord(k + 1, b.letters + (rng.choice([k, -k]),))
        assert alexander_from_braid(stab).delta == d
        i = rng.randint(1, k - 1)
        conj = BraidWord(k, (i,) + b.letters + (-i,))
        assert alexander_from_braid(conj).delta == d
        rot = BraidWord(k, b.letters[1:] + b.letters[:1])
        assert alexander_from_braid(rot).delta == d


# -- branched covers ---------------------------------------------------------------

def smith_from_minors(rows, size):
    dk = intmat.determinantal_divisors(rows)
    diag = [dk[0]] + [dk[k] // dk[k - 1] for k in range(1, len(dk))] if dk else []
    return FinAbGroup.from_diagonal(size - len(diag), diag)


@pytest.mark.parametrize("name, n, expected", [
    ("3_1", 2, FinAbGroup(0, (3,))),
    ("3_1", 3, FinAbGroup(0, (2, 2))),
    ("4_1", 3, FinAbGroup(0, (4, 4))),
    ("4_1", 2, FinAbGroup(0, (5,))),
])
def test_branched_cover_examples(name, n, expected):
    data = table_knot(name)
    assert branched_cover_homology(data, n) == expected
    rows = cover_relation_matrix(data.Q, n)
    assert smith_from_minors(rows, len(rows)) == expected


def test_figure_eight_circulant_lattice():
    # the 3x3 circulant of t^2 - 3t + 1: determinant 16, gcd of 2-minors 4
    circ = [[1, -3, 1], [1, 1, -3], [-3, 1, 1]]
    assert abs(intmat.bareiss_det(circ)) == 16
    assert intmat.determinantal_divisors(circ) == [1, 4, 16]


@pytest.mark.parametrize("name", sorted(load_table()))
def test_first_cover_is_trivial(name):
    assert branched_cover_homology(table_knot(name), 1).is_trivial()


def test_braid_input_has_no_presentation():
    with pytest.raises(MissingPresentation):
        branched_cover_homology(alexander_from_braid(parse_braid("s1 s1 s1")), 2)


def test_fox_examples():
    rep = fox_formula_check(table_knot("4_1"), 2)
    assert rep.passed and rep.group.order == 5 == abs(rep.resultant)
    rep = fox_formula_check(table_knot("3_1"), 6)
    assert rep.passed and rep.resultant == 0 and rep.group.rank >= 1
    for n in range(1, 8):
        rep = fox_formula_check(table_knot("0_1"), n)
        assert rep.passed and rep.group.is_trivial() and abs(rep.resultant) == 1


@pytest.mark.parametrize("name", sorted(load_table()))
def test_homology_order_equals_cyclic_resultant(name):
    data = table_knot(name)
    for n in range(1, 11):
        grp = branched_cover_homology(data, n)
        r = cyclic_resultant(data.delta, n)
        if r:
            assert grp.rank == 0 and grp.order == abs(r)
        else:
            assert grp.rank >= 1


# -- pipeline ----------------------------------------------------------------------

def test_pipeline_trefoil_self():
    rep = theorem_pipeline("3_1", "3_1")
    assert rep.equal and rep.consistent and rep.ideal_match.compatible
    a, b, ms = rep.stripped
    assert (a, b, ms) == (IntPoly([1]), IntPoly([1]), [6])


def test_pipeline_trefoil_vs_figure_eight():
    rep = theorem_pipeline("3_1", "4_1")
    assert not rep.equal and rep.consistent
    assert rep.ideal_match.candidates[2] == [] and rep.ideal_match.witness_level == 2


def test_pipeline_granny_square():
    granny = alexander_from_braid(parse_braid("s1 s1 s1 s2 s2 s2"))
    square = alexander_from_braid(parse_braid("s1 s1 s1 S2 S2 S2"))
    assert granny.delta == square.delta == TREFOIL * TREFOIL
    rep = theorem_pipeline(granny, square)
    assert rep.equal and rep.consistent


def test_pipeline_rejects_bad_levels():
    with pytest.raises(NonDivisorClosedLevels):
        theorem_pipeline("3_1", "4_1", levels=[1, 4])
