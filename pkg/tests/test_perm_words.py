import itertools

import pytest
from hypothesis import given, settings, strategies as st

from flagcob.errors import InvalidLetter, InvalidMove, InvalidPartition, NotAboveCoxeter, NotReduced, RankMismatch
from flagcob.perm_words import (
    NEG_INF, Permutation, all_reduced_words, bruhat_leq, commutation_normal_form, commuting_equivalent,
    commuting_path, coxeter_word, decompose_ucv, decompose_ucv_mirrored, dominant_permutation,
    dominant_reading, format_word, is_reduced, parse_word, partitions_in_staircase, predecessor_table,
    reduced_words, rothe_diagram, shift_letters, stable_prefix, word_to_perm,
)

from oracles import bfs_commuting_class, bruhat_by_subwords, inversions, perm_of_word, reduced_words_bfs


def test_word_io_roundtrip():
    assert parse_word("2,3,4,3") == (2, 3, 4, 3)
    assert parse_word("") == ()
    assert format_word((2, 3, 4, 3)) == "2,3,4,3"
    with pytest.raises(InvalidLetter):
        parse_word("1,x")


def test_word_to_perm_examples():
    assert word_to_perm((), 3).oneline == (1, 2, 3)
    for n in range(1, 6):
        assert word_to_perm(coxeter_word(n), n + 1).oneline == tuple(range(2, n + 2)) + (1,)
    with pytest.raises(InvalidLetter):
        word_to_perm((3,), 3)


def test_word_to_perm_matches_function_composition():
    for w in all_reduced_words(4):
        assert word_to_perm(w, 4).oneline == perm_of_word(w, 4)


def test_dominant_example_word():
    # s_2 s_3 s_4 s_3 is a reduced word of w0 * (53124)
    w0 = Permutation.longest(5)
    assert word_to_perm((2, 3, 4, 3), 5) == w0 * Permutation((5, 3, 1, 2, 4))
    assert rothe_diagram(Permutation((5, 3, 1, 2, 4))) == {(1, b) for b in range(1, 5)} | {(2, 1), (2, 2)}


def test_is_reduced_examples():
    assert not is_reduced((1, 1))
    assert is_reduced((1, 2, 1))
    assert is_reduced(())


def test_coxeter_prefix_preserves_reducedness():
    for n in range(1, 5):
        for v in itertools.product(range(1, n), repeat=min(3, n)):
            if is_reduced(v, n):
                assert is_reduced(coxeter_word(n) + v, n + 1)
            if is_reduced(coxeter_word(n) + v, n + 1):
                assert is_reduced(v, n)


def test_stable_prefix_is_reduced_for_longest_element():
    assert stable_prefix(3, 3) == ()
    assert stable_prefix(2, 4) == (1, 2, 3, 1, 2)
    assert word_to_perm(stable_prefix(1, 5), 5) == Permutation.longest(5)


def test_bruhat_matches_subword_definition_on_s4():
    perms = Permutation.all(4)
    for u, w in itertools.product(perms, repeat=2):
        assert bruhat_leq(u, w) == bruhat_by_subwords(u.oneline, w.oneline)


def test_bruhat_rank_mismatch():
    with pytest.raises(RankMismatch):
        bruhat_leq(Permutation.identity(3), Permutation.identity(4))


def test_reduced_words_match_bfs():
    for p in Permutation.all(4):
        assert tuple(reduced_words(p)) == reduced_words_bfs(p.oneline)
        assert len(p.reduced_word()) == p.length() == inversions(p.oneline)
        assert word_to_perm(p.reduced_word(), 4) == p


def test_decompose_examples():
    d = decompose_ucv((1, 2, 1), 3)
    assert (d.u, d.v) == ((), (1,))
    assert d.word == (1, 2, 1)
    d = decompose_ucv((2, 1, 2), 3)
    assert (d.u, d.v) == ((2,), ())
    with pytest.raises(NotAboveCoxeter):
        decompose_ucv((2,), 3)
    with pytest.raises(NotReduced):
        decompose_ucv((1, 1, 2), 3)


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_decompose_invariants(rank):
    n = rank - 1
    c = word_to_perm(coxeter_word(n), rank)
    for w in all_reduced_words(rank):
        above = bruhat_leq(c, word_to_perm(w, rank))
        try:
            d = decompose_ucv(w, rank)
        except NotAboveCoxeter:
            assert not above
            continue
        assert above
        assert 1 not in d.u and n not in d.v
        assert d.word in bfs_commuting_class(w)


@pytest.mark.parametrize("rank", [3, 4])
def test_mirrored_decompose_invariants(rank):
    n = rank - 1
    c = word_to_perm(tuple(range(n, 0, -1)), rank)
    for w in all_reduced_words(rank):
        try:
            d = decompose_ucv_mirrored(w, rank)
        except NotAboveCoxeter:
            assert not bruhat_leq(c, word_to_perm(w, rank))
            continue
        assert n not in d.u and 1 not in d.v
        assert d.c == tuple(range(n, 0, -1))
        assert commuting_equivalent(d.word, w)


def test_shift_letters():
    assert shift_letters((2, 3), -1) == (1, 2)
    assert shift_letters((1,), 1) == (2,)


def test_commuting_examples():
    assert commuting_equivalent((1, 3), (3, 1))
    assert not commuting_equivalent((1, 2, 1), (2, 1, 2))
    assert commutation_normal_form((3, 1)) == (1, 3)


words = st.lists(st.integers(1, 5), max_size=8).map(tuple)


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_commuting_equivalent_matches_bfs(w1, w2):
    assert commuting_equivalent(w1, w2) == (w2 in bfs_commuting_class(w1))


@settings(max_examples=100, deadline=None)
@given(words, words, words)
def test_commuting_equivalence_relation(a, b, c):
    assert commuting_equivalent(a, a)
    assert commuting_equivalent(a, b) == commuting_equivalent(b, a)
    if commuting_equivalent(a, b) and commuting_equivalent(b, c):
        assert commuting_equivalent(a, c)


@settings(max_examples=100, deadline=None)
@given(words)
def test_commuting_path_reaches_normal_form(w):
    target = commutation_normal_form(w)
    cur = w
    for pos in commuting_path(w, target):
        assert abs(cur[pos - 1] - cur[pos]) >= 2
        cur = cur[:pos - 1] + (cur[pos], cur[pos - 1]) + cur[pos + 1:]
    assert cur == target


def test_commuting_path_rejects_inequivalent():
    with pytest.raises(InvalidMove):
        commuting_path((1, 2), (2, 1))


def _naive_lo(w, k, a):
    best = NEG_INF
    for j in range(1, k + 1):
        if w[j - 1] == a:
            best = j
    return best


def test_predecessor_examples():
    t = predecessor_table((1, 2, 1))
    assert t.lo(1) == 3 and t.lo(2) == 2
    assert [t.lp(k) for k in (1, 2, 3)] == [NEG_INF, 1, NEG_INF]
    assert [t.rp(k) for k in (1, 2, 3)] == [NEG_INF, NEG_INF, 2]
    empty = predecessor_table(())
    assert all(empty.lo(a) == NEG_INF for a in range(1, 6))
    assert t.lp(NEG_INF) == NEG_INF


@settings(max_examples=200, deadline=None)
@given(words)
def test_predecessor_table_matches_definition(w):
    t = predecessor_table(w)
    for k in range(1, len(w) + 1):
        assert t.lp(k) == _naive_lo(w, k, w[k - 1] - 1)
        assert t.rp(k) == _naive_lo(w, k, w[k - 1] + 1)
        assert t.lp(k) == NEG_INF or t.lp(k) < k
        assert t.rp(k) == NEG_INF or t.rp(k) < k
    for a in range(1, 7):
        assert t.lo(a) == _naive_lo(w, len(w), a)


def _ucv_words(rank, max_len):
    for w in all_reduced_words(rank, max_len):
        try:
            d = decompose_ucv(w, rank)
        except NotAboveCoxeter:
            continue
        yield d


@pytest.mark.parametrize("rank", [3, 4, 5])
def test_predecessor_identities_for_ucv_words(rank):
    n = rank - 1
    for d in _ucv_words(rank, 7):
        w = d.word
        r1, r2 = len(d.u), len(d.v)
        w2 = shift_letters(d.u, -1) + d.v
        tw, tw2, tv = predecessor_table(w), predecessor_table(w2), predecessor_table(d.v)
        for a in range(1, n + 1):
            if tv.lo(a) != NEG_INF:
                assert tw2.lo(a) == tw.lo(a) - n == tv.lo(a) + r1
            else:
                assert tw2.lo(a) == predecessor_table(d.u).lo(a + 1) == tw.rp(r1 + a)
                assert tw.lo(a) == r1 + a
        for a in range(1, r1 + 1):
            assert tw2.lp(a) == tw.lp(a) and tw2.rp(a) == tw.rp(a)
        for a in range(r1 + 1, r1 + r2 + 1):
            if tv.lp(a - r1) != NEG_INF:
                assert tw2.lp(a) == tw.lp(a + n) - n
            else:
                assert tw2.lp(a) == tw.rp(tw.lp(a + n))
            if tv.rp(a - r1) != NEG_INF:
                assert tw2.rp(a) == tw.rp(a + n) - n
            else:
                assert tw2.rp(a) == tw.rp(tw.rp(a + n))
        for k in range(r1 + 1, r1 + n + 1):
            lp, rp = tw.lp(k), tw.rp(k)
            assert lp == NEG_INF or r1 + 1 <= lp <= r1 + n
            if rp > tw.rp(lp):
                assert tw.rp(lp) == tw.lp(rp)
            elif rp < tw.rp(lp):
                assert tw.rp(tw.rp(lp)) == rp


def test_dominant_reading_examples():
    r = dominant_reading((4, 2), 5)
    assert r.segments == ((2, 3, 4), (3,))
    assert r.orbits == (((2, 5),), ((3, 4),))
    r = dominant_reading((3, 3), 5)
    assert r.segments == ((1, 3, 4), (3,))
    assert r.orbits == (((1, 2), (3, 5)), ((3, 4),))
    assert dominant_reading((4, 4, 2, 2), 6).segments == ((1, 3, 5),)
    assert dominant_reading((4, 3, 2, 1), 5).segments == ()
    with pytest.raises(InvalidPartition):
        dominant_reading((5,), 5)
    with pytest.raises(InvalidPartition):
        dominant_reading((1, 2), 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_dominant_reading_is_reduced_for_w0_w_lambda(n):
    w0 = Permutation.longest(n)
    rho = n * (n - 1) // 2
    for lam in partitions_in_staircase(n):
        word = dominant_reading(lam, n).word
        wl = dominant_permutation(lam, n)
        assert is_reduced(word, n)
        assert len(word) == rho - sum(lam)
        assert word_to_perm(word, n) == w0 * wl
        assert rothe_diagram(wl) == {(a, b) for a, p in enumerate(lam, start=1) for b in range(1, p + 1)}


def test_partition_count():
    # Catalan numbers count partitions inside a staircase
    assert [len(partitions_in_staircase(n)) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]
