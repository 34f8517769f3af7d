import itertools
from pathlib import Path

import pytest

from oracle import phi
from stylus.catalog import get_named, get_tseytin
from stylus.encoder import (RecordMode, augment_special, build_pipeline, encode_presentation,
                            free_product_with_free_generator, hall_embed, makanin_morphism,
                            reencode_presentation)
from stylus.errors import InvalidInput
from stylus.presentations import Presentation, classify_presentation, format_presentation
from stylus.words import Alphabet, Morphism, RankEncoder, factorize_over_rank_code, find_all, format_word, swap

GOLDEN = Path(__file__).parent / "golden"
BICYCLIC = get_named("bicyclic").presentation


def body(text):
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))


def test_bicyclic_chain_matches_golden():
    b = build_pipeline(BICYCLIC, 0, mode=RecordMode.SHARED_BOUNDARY)
    assert b.rank_encoder.rank == {"x": 0, "b": 1, "c": 2}
    assert body(format_presentation(b.augmented)) == (GOLDEN / "bicyclic_augmented.txt").read_text()
    assert body(format_presentation(b.encoded)) == (GOLDEN / "bicyclic_encoded.txt").read_text()
    assert format_word(b.record) + "\n" == (GOLDEN / "bicyclic_record.txt").read_text()


def test_augment_examples():
    p = Presentation.build("a b", [("a b", "1"), ("b", "1")], kind="monoid")
    assert [format_word(r.lhs) for r in augment_special(p).relations] == ["x a x b x", "x b x", "x"]
    degenerate = Presentation.build("a", [("1", "1")], kind="monoid")
    assert [r.lhs for r in augment_special(degenerate).relations] == [("x",)]
    with pytest.raises(InvalidInput):
        augment_special(get_named("commutative").presentation)
    with pytest.raises(InvalidInput):
        augment_special(Presentation.build("x", [("x", "1")], kind="monoid"))


def test_encode_presentation_examples():
    p = Presentation.build("x", [("x", "1")], kind="monoid")
    enc = RankEncoder(Alphabet("x"), {"x": 1})
    assert [str(r) for r in encode_presentation(p, enc).relations] == ["a b a = a"]
    with pytest.raises(InvalidInput):
        encode_presentation(p, RankEncoder(Alphabet("y"), {"y": 1}))


def test_encoded_relations_match_reference():
    b = build_pipeline(BICYCLIC, 3)
    for rel, relator in zip(b.encoded.relations, b.relators):
        assert "".join(rel.lhs) == phi(relator, b.rank_encoder.rank) and rel.rhs == ("a",)


def test_default_ranks_skip_i():
    b = build_pipeline(BICYCLIC, 1)
    assert b.rank_encoder.rank == {"x": 1, "b": 2, "c": 3}


def test_record_modes():
    shared = build_pipeline(BICYCLIC, 0, mode="paper").record
    comp = build_pipeline(BICYCLIC, 0).record
    assert len(comp) > len(shared) and set(comp) <= {"c", "d"}
    assert find_all(comp, tuple("ccdccddcc")) and find_all(comp, tuple("ccc"))
    assert not find_all(shared, tuple("ccc"))
    empty = Presentation.build("b", [], kind="monoid")
    assert build_pipeline(empty, 0, mode="paper").record == ("c", "c")


@pytest.mark.parametrize("i", [0, 1, 2])
def test_compiler_record_holds_every_padded_block(i):
    p = Presentation.build("b c", [("b c", "1"), ("c c b", "1")], kind="monoid")
    b = build_pipeline(p, i)
    for relator in b.relators:
        block = swap(b.rank_encoder.encode(("x",) + relator + ("x",)))
        assert find_all(b.record, block)


def test_hall_embed_examples():
    p = Presentation.build("a1 a2", [("a1 a2", "a2 a1")])
    q, h = hall_embed(p)
    assert [str(r) for r in q.relations] == ["x y x y y = x y y x y"]
    q, _ = hall_embed(Presentation.build("a1", [("a1 a1", "a1")]))
    assert [str(r) for r in q.relations] == ["x y x y = x y"]
    assert len(hall_embed(get_tseytin(0).presentation)[0].relations) == 7


def test_hall_images_form_a_code():
    p = Presentation.build("p q r", [])
    _, h = hall_embed(p)
    rename = {"x": "a", "y": "b"}
    for word in itertools.product("pqr", repeat=3):
        image = tuple(rename[s] for s in h(word)) + ("a",)
        assert factorize_over_rank_code(image) == [p.alphabet.index(s) + 1 for s in word]


def test_reencode_examples():
    tseytin = get_tseytin(0).presentation
    out = reencode_presentation(tseytin, makanin_morphism())
    assert str(out.relations[0]) == "z z y y = y y z z"
    ident = Morphism(tseytin.alphabet, tseytin.alphabet, {s: (s,) for s in tseytin.alphabet})
    assert reencode_presentation(tseytin, ident).relations == tseytin.relations
    collapse = Morphism(Alphabet("ab"), Alphabet("a"), {"a": ("a",), "b": ("a",)})
    assert reencode_presentation(Presentation.build("a b", [("a b", "b a")]), collapse).relations == ()


def test_free_product():
    q = free_product_with_free_generator(BICYCLIC, "y")
    assert tuple(q.alphabet) == ("b", "c", "y") and q.relations == BICYCLIC.relations
    assert classify_presentation(q).is_special
    with pytest.raises(InvalidInput):
        free_product_with_free_generator(BICYCLIC, "b")


def test_bundle_json():
    data = build_pipeline(BICYCLIC, 0, mode="paper").to_json()
    assert data["record"] == "c c d c c d d c c" and data["rank"]["x"] == 0
