"""Exact word algebra: products, sigma, duality, rewriting, parsing."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omzv import (ALetter, AMonomial, APoly, HPoly, HbarLaurent, dual_index,
                  harmonic, index_to_e_word, index_to_g_word,
                  monomials_up_to_weight, parse_amonomial, parse_apoly,
                  parse_hpoly, parse_index, parse_word, satoh_residual,
                  shuffle, sigma, sigma_monomial, to_a_basis)
from omzv.words import E, G

H = HbarLaurent.h


# -- coefficient ring -------------------------------------------------------

def test_laurent_arithmetic():
    x = H(1, 2) + HbarLaurent.of(3)          # 2h + 3
    y = H(-1) - HbarLaurent.one()            # h^-1 - 1
    assert x * y == H(1, -2) + 2 * HbarLaurent.one() + 3 * H(-1) - 3 * HbarLaurent.of(1)
    assert (x * y).shifted(1) == x.shifted(1) * y
    assert x.eval(2.0) == 7.0
    assert x.is_polynomial() and not y.is_polynomial()
    assert y.min_exp() == -1 and x.max_exp() == 1


def test_laurent_eval_fraction():
    x = H(2, 3) - H(1) + HbarLaurent.of(5)
    assert x.eval_fraction(Fraction(1, 2)) == Fraction(3, 4) - Fraction(1, 2) + 5


# -- shuffle ----------------------------------------------------------------

def test_shuffle_g1_g1():
    g1 = HPoly.word("ba")
    lhs = shuffle(g1, g1)
    assert lhs == HPoly.word("baba", 2) + HPoly.word("bba", H(1))


def test_shuffle_hb_hb():
    hb = HPoly.word("b", H(1))
    assert shuffle(hb, hb) == HPoly.word("bb", H(2))


def test_shuffle_unit():
    g2 = HPoly.word("baa")
    assert shuffle(g2, HPoly.one()) == g2
    assert shuffle(HPoly.one(), g2) == g2


# -- harmonic ---------------------------------------------------------------

def test_harmonic_g1_g1():
    g1 = APoly.monomial(parse_amonomial("G1"))
    out = harmonic(g1, g1)
    want = (APoly.monomial(parse_amonomial("G1 G1"), HbarLaurent.of(2))
            + APoly.monomial(parse_amonomial("G2")))
    assert out == want


def test_harmonic_e_contracts_with_h():
    e = APoly.monomial(AMonomial((E,)))
    gk = APoly.monomial(parse_amonomial("G2"))
    out = harmonic(e, gk)
    want = (APoly.monomial(parse_amonomial("E G2"))
            + APoly.monomial(parse_amonomial("G2 E"))
            + APoly.monomial(parse_amonomial("G2"), H(1)))
    assert out == want


# -- sigma ------------------------------------------------------------------

def test_sigma_g2_is_h_bba():
    assert sigma(HPoly.word("baa")) == HPoly.word("bba", H(1))


def test_sigma_fixes_ab():
    assert sigma(HPoly.word("ab")) == HPoly.word("ab")


def test_sigma_monomial_blocks():
    m = parse_amonomial("E E G3 G1")
    assert m.blocks() == [(2, 2), (0, 0)]
    assert sigma_monomial(m).blocks() == [(0, 0), (2, 2)]
    assert sigma_monomial(parse_amonomial("E G3")) == AMonomial.from_blocks(
        [(2, 1)])


def test_satoh_samples():
    g1 = APoly.monomial(parse_amonomial("G1"))
    eg2 = APoly.monomial(parse_amonomial("E G2"))
    assert satoh_residual(g1, g1).is_zero()
    assert satoh_residual(g1, eg2).is_zero()
    assert satoh_residual(eg2, eg2).is_zero()


def test_satoh_rejects_inadmissible():
    b = HPoly.word("b")
    with pytest.raises(ValueError):
        satoh_residual(b, b)


# -- rewriting --------------------------------------------------------------

def test_to_a_basis_examples():
    assert to_a_basis(HPoly.word("ba")) == [(HbarLaurent.one(),
                                             parse_amonomial("G1"))]
    assert to_a_basis(HPoly.word("bba")) == [(H(-1),
                                              parse_amonomial("E G1"))]
    with pytest.raises(ValueError):
        to_a_basis(HPoly.word("ab"))


def test_e_word_expansion():
    # e_2 = b a a + h b a
    assert index_to_e_word((2,)) == HPoly.word("baa") + HPoly.word("ba", H(1))
    assert index_to_g_word((1, 2)) == parse_amonomial("G1 G2")
    assert index_to_g_word((1, 2)).to_hpoly() == HPoly.word("babaa")


# -- indices ----------------------------------------------------------------

def test_dual_index_examples():
    assert dual_index((3,)) == (1, 2)
    assert dual_index((4,)) == (1, 1, 2)
    assert dual_index((1, 3)) == (1, 3)
    assert dual_index((2, 2)) == (2, 2)
    assert dual_index((1, 3, 1, 1, 2)) == (4, 1, 3)


def test_dual_index_rejects_inadmissible():
    with pytest.raises(ValueError):
        dual_index((2, 1))


def test_parse_index():
    assert parse_index("1,3,2") == (1, 3, 2)
    assert parse_index("1 3 2") == (1, 3, 2)
    with pytest.raises(ValueError):
        parse_index("2,,")
    with pytest.raises(ValueError):
        parse_index("")
    with pytest.raises(ValueError):
        parse_index("2,x")


def test_monomial_enumeration():
    mons = monomials_up_to_weight(4)
    assert len(mons) == 34
    assert all(m.is_admissible() for m in mons)
    assert AMonomial(()) in mons
    assert len(monomials_up_to_weight(2)) == 5


# -- parsing round trips ----------------------------------------------------

def test_parse_word_and_hpoly():
    assert parse_word("b a a") == "baa"
    assert parse_hpoly("2 b a + h b b") == (HPoly.word("ba", 2)
                                            + HPoly.word("bb", H(1)))
    assert parse_hpoly("(h^-1 - 1) b a") == HPoly.word("ba", H(-1)
                                                       - HbarLaurent.one())
    with pytest.raises(ValueError):
        parse_word("b c")


def test_parse_apoly():
    assert parse_apoly("E G2 - 3 G1") == (
        APoly.monomial(parse_amonomial("E G2"))
        + APoly.monomial(parse_amonomial("G1"), HbarLaurent.of(-3)))
    with pytest.raises(ValueError):
        parse_amonomial("G0")


# -- property tests ---------------------------------------------------------

letters = st.sampled_from([E, G(1), G(2), G(3)])


@st.composite
def admissible_monomials(draw, max_len=3):
    body = draw(st.lists(letters, min_size=0, max_size=max_len - 1))
    last = draw(st.sampled_from([G(1), G(2), G(3)]))
    return AMonomial(tuple(body) + (last,))


@given(admissible_monomials(), admissible_monomials())
@settings(max_examples=60, deadline=None)
def test_products_commute(m1, m2):
    h1, h2 = m1.to_hpoly(), m2.to_hpoly()
    assert shuffle(h1, h2) == shuffle(h2, h1)
    a1, a2 = APoly.monomial(m1), APoly.monomial(m2)
    assert harmonic(a1, a2) == harmonic(a2, a1)


@given(admissible_monomials(2), admissible_monomials(2),
       admissible_monomials(2))
@settings(max_examples=30, deadline=None)
def test_products_associate(m1, m2, m3):
    h1, h2, h3 = (m.to_hpoly() for m in (m1, m2, m3))
    assert shuffle(shuffle(h1, h2), h3) == shuffle(h1, shuffle(h2, h3))
    a1, a2, a3 = (APoly.monomial(m) for m in (m1, m2, m3))
    assert harmonic(harmonic(a1, a2), a3) == harmonic(a1, harmonic(a2, a3))


@given(admissible_monomials(), admissible_monomials())
@settings(max_examples=60, deadline=None)
def test_satoh_residual_vanishes(m1, m2):
    assert satoh_residual(APoly.monomial(m1), APoly.monomial(m2)).is_zero()


@given(admissible_monomials())
@settings(max_examples=60, deadline=None)
def test_sigma_involution_and_block_form(m):
    hp = m.to_hpoly()
    assert sigma(sigma(hp)) == hp
    assert to_a_basis(sigma(hp)) == [(HbarLaurent.one(), sigma_monomial(m))]
    assert sigma_monomial(sigma_monomial(m)) == m


@given(admissible_monomials())
@settings(max_examples=60, deadline=None)
def test_a_basis_roundtrip(m):
    basis = to_a_basis(m.to_hpoly())
    assert basis == [(HbarLaurent.one(), m)]
    back = APoly.monomial(m).to_hpoly()
    assert to_a_basis(back) == basis


@given(st.lists(st.integers(min_value=1, max_value=4), min_size=0,
                max_size=3),
       st.integers(min_value=2, max_value=4))
@settings(max_examples=60, deadline=None)
def test_dual_involution(body, last):
    k = tuple(body) + (last,)
    kd = dual_index(k)
    assert dual_index(kd) == k
    assert sum(kd) == sum(k)
