import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from sftlab.block_codes import OneBlockCode, apply_code
from sftlab.core_sft import check_point, forbid_symbol, make_point, periodic_point, point_shift
from sftlab.corpus import (
    code_corpus,
    full2_decoding_codes,
    full2_identity_codes,
    full_shift,
    golden_conjugacy_codes,
    golden_swap_target,
    sft_corpus,
)
from sftlab.entropy_conjugacy import (
    conjugacy_map,
    excluded_word_count,
    excluded_wordcount_check,
    gap_certificate,
    in_X_prime,
    invert_pi1,
    reconstruct_lift,
    roundtrip_check,
    symbol_gap,
    validate_setup,
    verify_window,
    window_determination,
)
from sftlab.errors import EmptyShift, InvalidInput, NotAlmostInvertible, NotInXPrime, NotLeftClosing, NotMagic
from strategies import points

GOLDEN = validate_setup(*golden_conjugacy_codes())
GOLDEN_BACK = validate_setup(*reversed(golden_conjugacy_codes()))
FULL2 = validate_setup(*full2_identity_codes(), "1", "1")
DECODE = validate_setup(*full2_decoding_codes())
_, RELABEL = golden_swap_target()


def _numeric_entropy(X):
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.sqf_part(sympy.Matrix(X.matrix).charpoly(x).as_expr()), x)
    return math.log(max(abs(complex(r)) for r in poly.nroots(n=30, maxsteps=200)))


def _golden_member(x):
    # a lift sees the magic pattern infinitely often on the right iff x does: symbol 1
    return "1" in x.right_cycle


def test_golden_setup_summary():
    s = GOLDEN
    assert s.K1 == 0 and s.K2 == 0
    assert s.magic_a.word == ("1",) and s.magic_a.z_symbol == "10"
    assert s.magic_b.word == ("a",)


def test_setups_refuse_bad_hypotheses():
    codes = code_corpus()
    with pytest.raises(NotAlmostInvertible):
        validate_setup(codes["xor_full2"], codes["xor_full2"])
    with pytest.raises(NotLeftClosing):
        validate_setup(codes["collapse3"], codes["collapse3"])
    with pytest.raises(InvalidInput):
        validate_setup(codes["identity_golden"], codes["identity_full2"])
    with pytest.raises(NotMagic):
        validate_setup(*full2_decoding_codes(), "0", None)


def test_recoded_magic_pattern_for_decoding_setup():
    m = DECODE.magic_a
    assert len(m.word) == 2
    assert m.presentation != DECODE.Z
    pre = m.recoding.code.preimage(m.recoding.code.codomain.index(m.symbol))
    assert len(pre) == 1


@given(st.data())
def test_conjugacy_map_is_the_relabeling(data):
    x = data.draw(points(GOLDEN.X))
    if not _golden_member(x):
        with pytest.raises(NotInXPrime):
            conjugacy_map(GOLDEN, x)
        return
    y = conjugacy_map(GOLDEN, x)
    assert y == x.map(RELABEL.__getitem__)
    assert conjugacy_map(GOLDEN_BACK, y) == x


@given(st.data())
def test_membership_matches_right_tail_oracle(data):
    x = data.draw(points(GOLDEN.X))
    assert bool(in_X_prime(GOLDEN, x)) == _golden_member(x)


@given(st.data(), st.integers(-5, 5))
def test_shift_equivariance(data, k):
    x = data.draw(points(GOLDEN.X))
    if not _golden_member(x):
        return
    assert conjugacy_map(GOLDEN, point_shift(x, k)) == point_shift(conjugacy_map(GOLDEN, x), k)


@given(st.data())
def test_injectivity_on_pairs(data):
    x = data.draw(points(GOLDEN.X))
    y = data.draw(points(GOLDEN.X))
    if not (_golden_member(x) and _golden_member(y)):
        return
    assert (conjugacy_map(GOLDEN, x) == conjugacy_map(GOLDEN, y)) == (x == y)


@given(st.data())
def test_decoding_setup_is_the_identity(data):
    x = data.draw(points(DECODE.X))
    if not bool(in_X_prime(DECODE, x)):
        return
    assert conjugacy_map(DECODE, x) == x


@given(st.data())
def test_lift_reconstruction_matches_fiber(data):
    setup = data.draw(st.sampled_from([GOLDEN, DECODE, FULL2]))
    x = data.draw(points(setup.X))
    if not bool(in_X_prime(setup, x)):
        return
    z = invert_pi1(setup, x)
    assert apply_code(setup.pi1, z) == x
    assert tuple(reconstruct_lift(setup, x, -12, 12)) == z.window(-12, 12)


@given(st.data())
def test_window_certificates_reverify_and_match_enumeration(data):
    setup = data.draw(st.sampled_from([GOLDEN, DECODE]))
    x = data.draw(points(setup.X))
    if not bool(in_X_prime(setup, x)):
        return
    cert = window_determination(setup, x)
    assert verify_window(setup, cert.window, cert.N) == cert.value == invert_pi1(setup, x)[0]
    # every domain word labelled by the bare window carries the same symbol at its center
    labelled = O.words_by_image(setup.pi1, 2 * cert.N + 1).get(tuple(cert.window), [])
    assert labelled and {u[cert.N] for u in labelled} == {cert.value}


def test_excluded_point_is_refused():
    x = make_point(["0"], ["1"], ["0"])
    with pytest.raises(NotInXPrime):
        conjugacy_map(FULL2, x)


def test_roundtrips():
    assert roundtrip_check(GOLDEN, GOLDEN_BACK, 30, seed=3).ok
    assert roundtrip_check(DECODE, DECODE, 20, seed=4).ok


@pytest.mark.parametrize("name", sorted(sft_corpus()))
def test_symbol_gaps_are_positive_and_enclose_numeric_gap(name):
    Z = sft_corpus()[name]
    hz = _numeric_entropy(Z)
    for a in Z.alphabet:
        g = symbol_gap(Z, a)
        assert g.gap.lo > Fraction(1, 10**6)
        try:
            ha = _numeric_entropy(forbid_symbol(Z, a))
        except EmptyShift:
            ha = 0.0
        assert float(g.gap.lo) - 1e-9 <= hz - max(ha, 0.0) <= float(g.gap.hi) + 1e-9


def test_gap_certificates_of_setups():
    assert gap_certificate(GOLDEN).gap.lo > Fraction(1, 10**6)
    assert gap_certificate(DECODE).gap.lo > Fraction(1, 10**6)
    g = gap_certificate(FULL2)
    assert g.h_Za.hi == 0 and abs(float(g.gap.mid) - math.log(2)) < 1e-8


@pytest.mark.parametrize("name", ["golden", "full2", "random3_11"])
@pytest.mark.parametrize("n0", [-2, 0, 1, 3])
def test_excluded_word_counts_match_enumeration(name, n0):
    Z = sft_corpus()[name]
    for a in Z.alphabet:
        for n in range(1, 6):
            assert excluded_word_count(Z, a, n0, n) == O.excluded_words_brute(Z, a, n0, n)


@pytest.mark.parametrize("n0", [-2, 0, 3])
def test_excluded_bound_holds_on_full_shift(n0):
    report = excluded_wordcount_check(FULL2, n0, 20)
    assert report.passed
    for row in report.rows:
        assert row.count == 2 ** min(row.n, max(0, n0))
        assert row.count <= row.bound


def test_excluded_bound_on_golden_setup():
    for n0 in (0, 2, 5):
        assert excluded_wordcount_check(GOLDEN, n0, 20).passed
        assert excluded_wordcount_check(GOLDEN, n0, 20, side="b").passed
