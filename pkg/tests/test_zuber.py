from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fplpoly import codec, fpl_grid as G, zuber as Z
from fplpoly.zuber import RationalPolynomial as RP

P = codec.parse_matching
coeffs = st.lists(st.fractions(max_denominator=7).filter(lambda f: abs(f) < 50), max_size=5)


@given(coeffs, coeffs, st.integers(-6, 6))
def test_polynomial_ring_ops(a, b, t):
    p, q = RP(tuple(a)), RP(tuple(b))
    assert (p + q)(t) == p(t) + q(t)
    assert (p - q)(t) == p(t) - q(t)
    assert (p * q)(t) == p(t) * q(t)


@given(coeffs, st.integers(-3, 3))
def test_interpolate_recovers(a, t0):
    p = RP(tuple(a))
    assert Z.interpolate(p, max(p.degree, 0) + 1, t0=t0) == p


def test_interpolate_examples():
    assert Z.interpolate(lambda t: 1, 0).coeffs == (1,)
    assert Z.interpolate(lambda t: codec.ssyt_count((1,), t - 3), 1) == RP.linear(-3)
    with pytest.raises(Z.DegreeBoundError):
        Z.interpolate(lambda t: t ** 3, 2)


def test_ssyt_poly():
    assert Z.ssyt_poly(()) == Z.ONE
    assert Z.ssyt_poly((1,), -3) == RP.linear(-3)
    p = Z.ssyt_poly((2, 1))
    assert p == RP((0, Fraction(-1, 3), 0, Fraction(1, 3)))
    assert p.leading == Fraction(codec.dim_of((2, 1)), 6)


@given(st.sampled_from([(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2, 1)]),
       st.integers(-4, 4), st.integers(0, 6))
def test_ssyt_poly_matches_count(lam, shift, m):
    assert Z.ssyt_poly(lam, shift)(m) == codec.ssyt_count(lam, m + shift)


def test_a_poly_main_examples():
    assert Z.a_poly_main(P("((()))")) == Z.ONE
    assert Z.a_poly_main(P("()()")) == RP.linear(1)
    A = Z.a_poly_main(P("()()()"))
    assert A == RP((2, Fraction(19, 6), Fraction(3, 2), Fraction(1, 3)))


def test_frozen_polynomials():
    assert Z.a_poly_main(P("(()())")) == RP.linear(2)
    assert Z.a_poly_main(P("(())()")) == RP((1, Fraction(3, 2), Fraction(1, 2)))
    assert Z.a_poly_main(P("()(())")) == Z.a_poly_main(P("(())()"))


@pytest.mark.parametrize("X", [X for d in (1, 2, 3, 4) for X in codec.enumerate_matchings(d)])
def test_structure_main(X):
    rep = Z.structure_report(Z.a_poly_main(X), X)
    assert rep["ok"], rep


@pytest.mark.parametrize("X", [X for d in (2, 3, 4) for X in codec.enumerate_matchings(d)])
def test_corner_equals_main(X):
    assert Z.a_poly_corner(X) == Z.a_poly_main(X)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_value_at_zero_is_square_count(d):
    census = G.census_by_matching(d)
    for X in codec.enumerate_matchings(d):
        assert Z.a_poly_corner(X)(0) == census[X]


def test_guards():
    X6 = codec.enumerate_matchings(6)[0]
    with pytest.raises(Z.GuardError):
        Z.a_poly_main(X6)
    with pytest.raises(Z.GuardError):
        Z.a_poly_corner(codec.enumerate_matchings(5)[0])
    with pytest.raises(Z.GuardError):
        Z.a_poly_squeeze(codec.enumerate_matchings(4)[0], P("()"))


def test_squeeze_reductions():
    empty = codec.Matching(())
    for X in codec.enumerate_matchings(3):
        assert Z.a_poly_squeeze(X, empty) == Z.a_poly_main(X)
    assert Z.a_poly_squeeze(P("((()))"), P("(())")) == Z.ONE


def test_squeeze_frozen():
    assert Z.a_poly_squeeze(P("()()"), P("()")) == RP.linear(2)
    assert Z.a_poly_squeeze(P("()()"), P("()()")) == RP((7, 6, 1))
    assert Z.a_poly_squeeze(P("()()"), P("(())")) == RP.linear(3)


@pytest.mark.parametrize("pair", [(X, Y) for d in (1, 2, 3) for e in (1, 2, 3)
                                  for X in codec.enumerate_matchings(d)
                                  for Y in codec.enumerate_matchings(e)])
def test_structure_squeeze(pair):
    X, Y = pair
    rep = Z.structure_report(Z.a_poly_squeeze(X, Y), X, Y)
    assert rep["ok"], rep


def test_squeeze_bruteforce_small():
    for X, Y, m in [(P("()()"), P("()()"), 4), (P("(())"), P("()()"), 4), (P("()"), P("()"), 3)]:
        assert Z.a_poly_squeeze(X, Y)(m) == G.count_placed("squeeze", X, m, Y)


def test_scaled_P():
    assert Z.scaled_P(RP.linear(1), 1) == (RP.linear(1), True)
    assert Z.scaled_P(Z.ONE, 1) == (Z.ONE, True)
    Pm, ok = Z.scaled_P(Z.a_poly_main(P("()()()")), 6)
    assert ok and Pm.leading == 2


def test_crosscheck():
    for m in range(0, 7):
        r = Z.crosscheck(P("()"), m)
        assert r["ok"] and r["brute"] == 1
    for m in range(0, 5):
        assert Z.crosscheck(P("()()"), m)["ok"]
        assert Z.crosscheck(P("()()()"), m)["ok"]


def test_crosscheck_guard():
    with pytest.raises(Z.GuardError):
        Z.crosscheck(P("()"), 8)


def test_polynomial_text_and_json():
    A = Z.a_poly_main(P("()()()"))
    assert str(A) == "(1/3)*m^3 + (3/2)*m^2 + (19/6)*m + 2"
    assert A.to_json() == ["2", "19/6", "3/2", "1/3"]
    assert str(RP.linear(-3)) == "m - 3"
    assert str(Z.ZERO) == "0"
