import random

import pytest
from hypothesis import given, strategies as st

from oracle import phi
from stylus.errors import DecodeError, FactorizationError, InvalidInput
from stylus.words import (Alphabet, Morphism, RankEncoder, apply_morphism, count_occurrences, decode_word,
                          encode_word, factorize_over_rank_code, find_all, format_word, parse_word, swap)

BICYCLIC_X = RankEncoder(Alphabet("bcx"), {"x": 0, "b": 1, "c": 2})


def test_parse_and_format():
    assert parse_word("x1 y2^3 x1") == ("x1", "y2", "y2", "y2", "x1")
    assert parse_word("1") == ()
    assert parse_word("a^0") == ()
    assert format_word(()) == "1"
    assert format_word(("a", "b")) == "a b"


def test_alphabet_rejects_unknown_letter():
    with pytest.raises(InvalidInput):
        Alphabet("ab").parse("a c")


def test_swap_renames_code_letters():
    assert swap(("a", "a", "b")) == ("c", "c", "d")


def test_hall_style_morphism():
    m = Morphism(Alphabet(["a1", "a2"]), Alphabet("xy"), {"a1": ("x", "y"), "a2": ("x", "y", "y")})
    assert apply_morphism(m, ("a1", "a2")) == tuple("xyxyy")
    assert apply_morphism(m, ()) == ()
    with pytest.raises(InvalidInput):
        apply_morphism(m, ("a3",))


def test_encode_examples():
    assert encode_word(BICYCLIC_X, ()) == ("a",)
    assert "".join(encode_word(BICYCLIC_X, tuple("xbxcx"))) == "aabaabbaa"
    enc = RankEncoder(Alphabet("y"), {"y": 0})
    assert encode_word(enc, ("y", "y")) == ("a", "a", "a")


def test_decode_examples():
    assert decode_word(BICYCLIC_X, tuple("aabaabbaa")) == tuple("xbxcx")
    assert decode_word(BICYCLIC_X, ("a",)) == ()
    for bad in ("bab", "", "ab", "abbbba"):
        with pytest.raises(DecodeError):
            decode_word(BICYCLIC_X, tuple(bad))


def test_rank_must_be_injective():
    with pytest.raises(InvalidInput):
        RankEncoder(Alphabet("ab"), {"a": 1, "b": 1})


def test_factorize_examples():
    assert factorize_over_rank_code(tuple("aababba")) == [0, 1, 2]
    assert factorize_over_rank_code(("a",)) == []
    for bad in ("ba", "", "ab"):
        with pytest.raises(FactorizationError):
            factorize_over_rank_code(tuple(bad))


def test_count_and_find():
    assert count_occurrences(tuple("abab"), "a") == 2
    assert count_occurrences((), "a") == 0
    assert count_occurrences(("b",) * 5, "a") == 0
    assert find_all(tuple("aaa"), ("a", "a")) == [0, 1]


@st.composite
def encoder_and_word(draw):
    n = draw(st.integers(1, 10))
    symbols = [f"s{k}" for k in range(n)]
    ranks = draw(st.lists(st.integers(0, 30), min_size=n, max_size=n, unique=True))
    word = draw(st.lists(st.sampled_from(symbols), max_size=20))
    return RankEncoder(Alphabet(symbols), dict(zip(symbols, ranks))), tuple(word)


@given(encoder_and_word())
def test_encode_matches_reference_and_round_trips(case):
    enc, word = case
    code = encode_word(enc, word)
    assert "".join(code) == phi(word, enc.rank)
    assert code[0] == code[-1] == "a"
    assert count_occurrences(code, "a") == len(word) + 1
    if word:
        assert decode_word(enc, code) == word
    factors = factorize_over_rank_code(code)
    assert "".join("a" + "b" * k for k in factors) + "a" == "".join(code)


@given(st.lists(st.sampled_from("ab")), st.lists(st.sampled_from("ab")))
def test_morphism_is_multiplicative(u, v):
    m = Morphism(Alphabet("ab"), Alphabet("xy"), {"a": ("x", "y"), "b": ("y",)})
    assert m(tuple(u + v)) == m(tuple(u)) + m(tuple(v))


def test_random_words_decode_uniquely():
    rng = random.Random(7)
    for _ in range(200):
        ranks = rng.sample(range(31), 4)
        enc = RankEncoder(Alphabet("pqrs"), dict(zip("pqrs", ranks)))
        w = tuple(rng.choice("pqrs") for _ in range(rng.randint(1, 12)))
        assert decode_word(enc, encode_word(enc, w)) == w
