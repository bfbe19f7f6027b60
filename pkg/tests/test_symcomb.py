import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klcanon import symcomb as sc

perms = st.integers(1, 6).flatmap(lambda r: st.permutations(list(range(1, r + 1)))).map(tuple)
words = st.lists(st.integers(1, 3), min_size=0, max_size=8).map(tuple)


def hook_count(lam):
    r = sum(lam)
    conj = sc.conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(r) // hooks


def subword_bruhat(x, w):
    """x <= w iff x is a product of a subword of a reduced word of w."""
    rw = sc.reduced_word(w)
    r = len(w)
    for mask in itertools.product((0, 1), repeat=len(rw)):
        y = sc.identity(r)
        for keep, i in zip(mask, rw):
            if keep:
                y = sc.compose(y, sc.simple(i, r))
        if y == tuple(x):
            return True
    return False


def longest_weakly_increasing(k):
    best = [0] * len(k)
    for i in range(len(k)):
        best[i] = 1 + max((best[j] for j in range(i) if k[j] <= k[i]), default=0)
    return max(best, default=0)


# -- permutations ------------------------------------------------------------


def test_simple_and_longest():
    assert sc.simple(2, 4) == (1, 3, 2, 4)
    assert sc.longest(4) == (4, 3, 2, 1)
    assert sc.length(sc.longest(5)) == 10
    assert sc.parse_perm("2413") == (2, 4, 1, 3)
    assert sc.perm_text((2, 4, 1, 3)) == "2413"


@given(perms)
def test_reduced_word(w):
    rw = sc.reduced_word(w)
    assert len(rw) == sc.length(w)
    y = sc.identity(len(w))
    for i in rw:
        y = sc.compose(y, sc.simple(i, len(w)))
    assert y == w


@given(perms)
def test_inverse_and_descents(w):
    r = len(w)
    assert sc.compose(w, sc.inverse(w)) == sc.identity(r)
    assert sc.left_descents(w) == sc.right_descents(sc.inverse(w))
    for i in range(1, r):
        longer = sc.length(sc.compose(w, sc.simple(i, r))) > sc.length(w)
        assert (i in sc.right_descents(w)) == (not longer)


@pytest.mark.parametrize("r", [3, 4])
def test_bruhat_matches_subword_property(r):
    for x in sc.permutations(r):
        for w in sc.permutations(r):
            assert sc.bruhat_leq(x, w) == subword_bruhat(x, w)


def test_word_action():
    assert sc.act((1, 2, 3), (2, 3, 1)) == (2, 3, 1)
    assert sc.act((5, 6, 7), sc.simple(1, 3)) == (6, 5, 7)


@given(words)
def test_coset_reps_sort(k):
    if not k:
        return
    d, _ = sc.coset_reps(k)
    assert sc.act(sc.sort_word(k), d) == k
    assert sc.length(d) == sum(1 for i, j in itertools.combinations(range(len(k)), 2) if k[i] > k[j])


# -- partitions ----------------------------------------------------------------


def test_partition_counts():
    assert [len(sc.partitions(r)) for r in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]
    assert sc.partitions(4, max_parts=2) == [(4,), (3, 1), (2, 2)]


def test_dominance():
    assert sc.dominance_leq((2, 2), (3, 1))
    assert not sc.dominance_leq((3, 1), (2, 2))
    assert sc.dominates_strictly((3, 1), (2, 1, 1))
    assert not sc.dominates_strictly((3, 1), (3, 1))
    assert not sc.dominance_leq((3, 1, 1, 1), (2, 2, 2)) and not sc.dominance_leq((2, 2, 2), (3, 1, 1, 1))


@pytest.mark.parametrize("r", range(1, 8))
def test_conjugation_reverses_dominance(r):
    for lam, mu in itertools.product(sc.partitions(r), repeat=2):
        assert sc.conjugate(sc.conjugate(lam)) == lam
        assert sc.dominance_leq(lam, mu) == sc.dominance_leq(sc.conjugate(mu), sc.conjugate(lam))


# -- tableaux ------------------------------------------------------------------


@pytest.mark.parametrize("r", range(1, 8))
def test_standard_tableaux_count(r):
    for lam in sc.partitions(r):
        syt = sc.standard_tableaux(lam)
        assert len(syt) == hook_count(lam) == len(set(syt))
        assert all(Q.is_standard() and Q.shape == lam for Q in syt)


def test_tableau_parse_and_transpose():
    Q = sc.Tableau.parse("124/35")
    assert Q.shape == (3, 2)
    assert str(Q) == "124/35"
    assert str(Q.transpose()) == "13/25/4"
    assert str(Q.restrict(3)) == "12/3"


def test_semistandard_count():
    # Kostka sum: number of SSYT of shape (2,1) in 3 letters is dim V_(2,1) = 8
    assert len(sc.semistandard_tableaux((2, 1), 3)) == 8


# -- RSK -------------------------------------------------------------------------


@pytest.mark.parametrize("r", range(1, 7))
def test_rsk_bijection_on_permutations(r):
    pairs = {sc.perm_rsk(w) for w in sc.permutations(r)}
    assert len(pairs) == math.factorial(r)
    assert sum(len(sc.standard_tableaux(lam)) ** 2 for lam in sc.partitions(r)) == math.factorial(r)


@given(words)
def test_rsk_roundtrip_and_greene(k):
    P, Q = sc.rsk(k)
    assert P.is_semistandard() and Q.is_standard()
    assert sc.inverse_rsk(P, Q) == k
    assert (P.shape[0] if k else 0) == longest_weakly_increasing(k)


@given(perms)
def test_rsk_symmetry(w):
    P, Q = sc.perm_rsk(w)
    assert sc.perm_rsk(sc.inverse(w)) == (Q, P)
    Pr, Qr = sc.perm_rsk(tuple(reversed(w)))
    assert Pr == P.transpose()
    assert Qr == sc.evacuation(Q).transpose()


@given(perms)
def test_descents_read_from_tableaux(w):
    P, Q = sc.perm_rsk(w)
    assert sc.descent_set_upper(Q) == sc.right_descents(w)
    assert sc.descent_set_upper(P) == sc.left_descents(w)


@given(words)
def test_knuth_moves_preserve_P(k):
    P = sc.rsk(k)[0]
    for i in range(len(k) - 2):
        a, b, c = k[i : i + 3]
        # Knuth relations: bca ~ bac when a < b <= c, and acb ~ cab when a <= b < c
        if c < a <= b:
            assert sc.rsk(k[:i] + (a, c, b) + k[i + 3 :])[0] == P
        if a <= c < b:
            assert sc.rsk(k[:i] + (b, a, c) + k[i + 3 :])[0] == P


@pytest.mark.parametrize("r", range(1, 7))
def test_evacuation_is_shape_preserving_involution(r):
    for lam in sc.partitions(r):
        for Q in sc.standard_tableaux(lam):
            E = sc.evacuation(Q)
            assert E.shape == lam and E.is_standard()
            assert sc.evacuation(E) == Q


@pytest.mark.parametrize("r", range(2, 8))
def test_dual_knuth_edges_change_one_pair(r):
    for lam in sc.partitions(r):
        for Q, Q2, i, _ in sc.dual_knuth_graph(lam):
            diff = [x for x in range(1, r + 1) if Q.position(x) != Q2.position(x)]
            assert Q.shape == Q2.shape == lam
            assert len(diff) == 2 and diff[1] - diff[0] in (1, 2)


def test_superstandard():
    T = sc.superstandard((3, 2))
    assert str(T) == "111/22" and T.is_semistandard()
