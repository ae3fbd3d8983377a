import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import enumerate_words, matrix_entry_sum
from sftlab.core_sft import (
    agree_on_window,
    block_encode,
    check_point,
    contains,
    forbid_symbol,
    higher_block,
    is_irreducible,
    is_mixing,
    make_point,
    make_sft,
    period,
    periodic_point,
    point_shift,
    power_shift,
    reverse,
    reverse_point,
    word_count,
    words,
)
from sftlab.corpus import golden_mean, sft_corpus
from sftlab.errors import (
    DuplicateSymbol,
    EmptyShift,
    InvalidInput,
    InvalidPoint,
    NonBinaryEntry,
    NotSquare,
    ZeroRowOrColumn,
)
from strategies import points, sft_and_point, sfts


def _brute_period(X):
    """gcd of lengths of closed walks up to 2n^2, from powers of the matrix."""
    from math import gcd

    n = len(X)
    g = 0
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, 2 * n * n + 2):
        M = [[int(any(M[i][m] and X.matrix[m][j] for m in range(n))) for j in range(n)] for i in range(n)]
        if any(M[i][i] for i in range(n)):
            g = gcd(g, k)
    return g


def _brute_primitivity_index(X):
    n = len(X)
    M = [list(r) for r in X.matrix]
    for k in range(1, (n - 1) ** 2 + 2):
        if all(all(r) for r in M):
            return k
        M = [[int(any(M[i][m] and X.matrix[m][j] for m in range(n))) for j in range(n)] for i in range(n)]
    return None


@pytest.mark.parametrize(
    "alphabet, matrix, error",
    [
        ([], [], InvalidInput),
        (["a", "a"], [[1, 1], [1, 1]], DuplicateSymbol),
        (["a", "b"], [[1, 1]], NotSquare),
        (["a", "b"], [[1, 2], [1, 1]], NonBinaryEntry),
        (["a", "b"], [[0, 0], [1, 1]], ZeroRowOrColumn),
        (["a", "b"], [[1, 0], [1, 0]], ZeroRowOrColumn),
    ],
)
def test_invalid_shifts_are_rejected(alphabet, matrix, error):
    with pytest.raises(error) as info:
        make_sft(alphabet, matrix)
    assert isinstance(info.value, InvalidInput)


@given(sfts(), st.integers(1, 6))
def test_word_count_matches_enumeration_and_matrix(X, n):
    listed = list(enumerate_words(X, n))
    assert word_count(X, n) == len(listed) == matrix_entry_sum(X.matrix, n - 1)
    assert sorted(words(X, n)) == sorted(listed)


@given(sfts())
def test_period_and_mixing_against_matrix_powers(X):
    rep = is_mixing(X)
    if is_irreducible(X):
        p = period(X)
        assert p == _brute_period(X)
        assert rep.mixing == (p == 1)
    else:
        assert not rep.mixing
    if rep.mixing:
        assert rep.primitivity_index == _brute_primitivity_index(X)


def test_golden_mean_report():
    rep = is_mixing(golden_mean())
    assert rep.mixing and rep.primitivity_index == 2 and period(golden_mean()) == 1


def test_period_two_cycle_is_not_mixing():
    X = make_sft(["a", "b"], [[0, 1], [1, 0]])
    assert is_irreducible(X) and period(X) == 2 and not is_mixing(X).mixing


@given(sfts(), st.integers(2, 3), st.integers(1, 5))
def test_higher_block_counts(X, m, n):
    Xm, decode = higher_block(X, m)
    assert word_count(Xm, n) == word_count(X, n + m - 1)
    assert decode.domain == Xm and decode.codomain == X


@given(sft_and_point())
def test_higher_block_encoding_decodes_back(data):
    X, x = data
    Xm, decode = higher_block(X, 2)
    z = block_encode(x, 2)
    assert contains(Xm, z)
    assert z.map(decode.image) == x


@given(sfts(), st.integers(2, 3), st.integers(1, 4))
def test_power_shift_counts(X, m, n):
    P = power_shift(X, m)
    assert word_count(P, n) == word_count(X, m * n)


@given(sft_and_point())
def test_reverse_point_lies_in_reverse_shift(data):
    X, x = data
    y = reverse_point(x)
    assert contains(reverse(X), y)
    assert all(y[n] == x[-n] for n in range(-15, 16))
    assert reverse_point(y) == x


@given(sft_and_point(), st.integers(-7, 7))
def test_shift_and_canonical_form(data, k):
    X, x = data
    y = point_shift(x, k)
    assert all(y[n] == x[n + k] for n in range(-20, 21))
    c = x.canonical()
    assert c == x and hash(c) == hash(x)
    assert all(c[n] == x[n] for n in range(-25, 26))
    assert agree_on_window(x, c)


def test_equal_points_with_different_presentations():
    x = make_point(["0", "1"], ["0"], ["1", "0"], 0)
    y = periodic_point(["0", "1"], 0)
    assert x == y
    assert make_point(["0"], [], ["1"]) != make_point(["0"], ["0"], ["1"])


def test_check_point_rejects_forbidden_transition():
    with pytest.raises(InvalidPoint):
        check_point(golden_mean(), periodic_point(["1"]))
    assert contains(golden_mean(), periodic_point(["0", "1"]))


@given(sfts(min_size=2))
def test_forbid_symbol_words(X):
    a = X.alphabet[0]
    brute = {w for w in enumerate_words(X, 4) if a not in w}
    try:
        Y = forbid_symbol(X, a)
    except EmptyShift:
        # no bi-infinite a-free point: long a-free words cannot exist
        assert not any(a not in w for w in enumerate_words(X, len(X) + 1))
        return
    assert set(words(Y, 4)) <= brute
    # every word of Z(a) extends both ways, so long a-free words of X all survive
    survivors = {w[len(X):-len(X)] for w in enumerate_words(X, 4 + 2 * len(X)) if a not in w}
    assert survivors == set(words(Y, 4))


def test_corpus_shifts_are_mixing():
    for X in sft_corpus().values():
        assert is_mixing(X).mixing
