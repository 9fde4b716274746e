from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from threshold_spectra.exact import (
    CharPoly,
    Inertia,
    LengthMismatch,
    NonSquare,
    char_poly,
    det_A_formula,
    det_Bpi_formula,
    det_calBpi_formula,
    determinant,
    distinct_count,
    exact_inertia,
    full_char_poly,
    full_char_poly_direct,
    inertia_formula,
    spectra_equal,
)
from threshold_spectra.quotient import build_quotient
from threshold_spectra.threshold_model import block_form, parse_string

from conftest import all_strings, sympy_char_poly

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def ts(text):
    return parse_string(text)


def bf(text):
    return block_form(parse_string(text))


def test_char_poly_basics():
    assert char_poly([[0, 1], [1, 0]]).coefficients == (1, 0, -1)
    assert char_poly([[F(2), 0], [0, F(-3)]]) == CharPoly.from_roots([2, -3])
    with pytest.raises(NonSquare):
        char_poly([[1, 2]])


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_char_poly_matches_sympy(M):
    x = sympy.Symbol("x")
    sM = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in M])
    want = [F(int(c.p), int(c.q)) for c in sympy.Poly(sM.charpoly(x), x).all_coeffs()]
    assert list(char_poly(M).coefficients) == want
    assert determinant(M) == F(int(sM.det().p), int(sM.det().q))


def test_char_poly_0101_constant_term():
    # 4x4 cofactor expansion by hand gives det(calB) = r1 r2 r3 r4 = 1/2 * 1/2 * 1 * 1/3
    qs = build_quotient(bf("0101"))
    assert char_poly(qs.calB_pi).coefficients[-1] == F(1, 12)


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("01", ["1", "0", "-1"]),
        ("0001", ["1", "0", "-1", "0", "0"]),
        ("0111", ["1", "0", "-2/3", "-8/27", "-1/27"]),
        (
            "0011100011",
            ["1", "0", "-1343/1620", "-47/180", "43/810", "353/10935", "199/43740", "1/4860", "0", "0", "0"],
        ),
    ],
)
def test_full_char_poly_frozen(text, coeffs):
    # frozen from sympy charpoly of the full D^-1 A
    assert full_char_poly(ts(text)).serialize() == coeffs


@pytest.mark.parametrize("text", all_strings(10))
def test_full_char_poly_routes_agree(text):
    p = full_char_poly(ts(text))
    assert p == full_char_poly_direct(ts(text))
    assert list(p.coefficients) == sympy_char_poly(text)


@pytest.mark.parametrize(
    "text, expected",
    [("0011100011", (5, 3, 2)), ("0001", (1, 2, 1)), ("0111", (3, 0, 1))],
)
def test_inertia_examples(text, expected):
    assert inertia_formula(bf(text)).as_tuple() == expected
    assert exact_inertia(full_char_poly(ts(text))).as_tuple() == expected


@pytest.mark.parametrize("text", all_strings(10))
def test_inertia_matches_exact(text):
    assert inertia_formula(bf(text)) == exact_inertia(full_char_poly_direct(ts(text)))


def test_inertia_type():
    assert Inertia(1, 2, 3).n == 6


def test_det_examples():
    assert det_A_formula(bf("0101")) == F(1, 12)
    assert det_A_formula(bf("0011100011")) == 0
    # K4: four vertices of degree 3, spectrum 1, (-1/3)^3
    assert det_A_formula(bf("0111")) == F(-1, 27)
    assert det_Bpi_formula(bf("0011100011")) == 36
    assert det_Bpi_formula(bf("01")) == -1
    assert det_calBpi_formula(bf("0101")) == F(1, 12)


@pytest.mark.parametrize("text", all_strings(10))
def test_det_formulas(text):
    b = bf(text)
    p = full_char_poly(ts(text))
    assert det_A_formula(b) == (-1) ** b.n * p.coefficients[-1]
    qs = build_quotient(b)
    assert det_Bpi_formula(b) == determinant(qs.B_pi)
    assert det_calBpi_formula(b) == determinant(qs.calB_pi)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_det_alternating(n):
    import math

    assert det_A_formula(bf("01" * (n // 2))) == F((-1) ** (n // 2) * 2, math.factorial(n))


def test_distinct_count():
    assert distinct_count(CharPoly((F(1), F(0), F(-1)))) == 2
    assert distinct_count(CharPoly((F(1), F(0), F(-1), F(0), F(0)))) == 3
    assert distinct_count(full_char_poly(ts("0111"))) == 2


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.fractions(min_value=1, max_value=9).filter(bool))
def test_distinct_count_scale_invariant(roots, c):
    p = CharPoly.from_roots(roots)
    assert distinct_count(p) == len(set(roots))
    assert distinct_count([c * a for a in p.coefficients]) == len(set(roots))


@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=1, max_size=6))
def test_sign_counts_and_multiplicity(roots):
    p = CharPoly.from_roots(roots)
    assert p.sign_counts() == (sum(r < 0 for r in roots), sum(r == 0 for r in roots), sum(r > 0 for r in roots))
    for r in roots:
        assert p.root_multiplicity(r) == roots.count(r)


def test_spectra_equal():
    assert spectra_equal(ts("0011100011"), ts("0011100011"))
    assert not spectra_equal(ts("0111"), ts("0001"))
    assert not spectra_equal(ts("0011"), ts("0101"))
    with pytest.raises(LengthMismatch):
        spectra_equal(ts("01"), ts("001"))


def test_serialization_round_trip():
    p = full_char_poly(ts("0011100011"))
    assert CharPoly.deserialize(p.serialize()) == p
    assert p.fingerprint() != full_char_poly(ts("0101100011")).fingerprint()
