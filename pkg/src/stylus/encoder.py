"""Builders that turn a special monoid into data for the seven-relation semigroup.

The chain is: special monoid ``M`` -> augmented monoid ``M1`` (a fresh
letter ``x`` interleaved into every relator, plus the relator ``x``) ->
two-letter monoid ``M1o`` (each relator ``W`` becomes ``encode(W) = a``) ->
record word ``S`` over {c, d}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import InvalidInput
from .presentations import Kind, Presentation, Relation, classify_presentation, format_presentation
from .words import CODE_ALPHABET, Alphabet, Morphism, RankEncoder, Word, apply_morphism, format_word, swap


class RecordMode(str, Enum):
    # values double as the CLI spellings of --mode
    SHARED_BOUNDARY = "paper"
    PADDED = "compiler"


def interleave(word: Sequence[str], token: str = "x") -> Word:
    """``x w1 x w2 x ... wn x``; the empty word maps to ``x``."""
    out = [token]
    for letter in word:
        out.append(letter)
        out.append(token)
    return tuple(out)


def _require_special(p: Presentation) -> None:
    if p.kind is not Kind.MONOID or not classify_presentation(p).is_special:
        raise InvalidInput("expected a special monoid presentation (every relation of the form R = 1)")


def _dedupe(relations) -> tuple[Relation, ...]:
    out: list[Relation] = []
    for r in relations:
        if r not in out:
            out.append(r)
    return tuple(out)


def augment_special(p: Presentation, fresh: str = "x") -> Presentation:
    """Interleave ``fresh`` into every relator and add the relator ``fresh``.

    Interleaved relators keep the source order; the bare relator comes last.
    Exact duplicates are dropped.
    """
    _require_special(p)
    if fresh in p.alphabet:
        raise InvalidInput(f"fresh token {fresh!r} already in the alphabet")
    alphabet = p.alphabet.extend(fresh)
    rels = [Relation(interleave(r.lhs, fresh), ()) for r in p.relations]
    rels.append(Relation((fresh,), ()))
    return Presentation(alphabet, _dedupe(rels), Kind.MONOID, f"{p.name}+{fresh}" if p.name else None)


def default_rank_encoder(alphabet: Alphabet, fixed: Mapping[str, int]) -> RankEncoder:
    """Ranks ``fixed`` as given; everything else gets 1, 2, ... in alphabet order,
    skipping values already taken."""
    rank = dict(fixed)
    taken = set(rank.values())
    nxt = 1
    for s in alphabet:
        if s in rank:
            continue
        while nxt in taken:
            nxt += 1
        rank[s] = nxt
        taken.add(nxt)
    return RankEncoder(alphabet, rank)


def encode_presentation(p: Presentation, enc: RankEncoder) -> Presentation:
    """Each relator ``W`` becomes ``encode(W) = a`` over {a, b}.

    Trivial relations ``a = a`` and repeats are dropped.
    """
    _require_special(p)
    if set(p.alphabet) != set(enc.source):
        raise InvalidInput("rank encoder's source alphabet differs from the presentation's")
    rels = [Relation(enc.encode(r.lhs), ("a",)) for r in p.relations]
    rels = [r for r in rels if r.lhs != r.rhs]
    return Presentation(CODE_ALPHABET, _dedupe(rels), Kind.MONOID, f"{p.name}:encoded" if p.name else None)


def record_base(augmented: Presentation, fresh: str = "x",
                mode: RecordMode = RecordMode.PADDED) -> Word:
    """The word over ``A + {x}`` whose encoding, renamed to c/d, is the record."""
    relators = [r.lhs for r in augmented.relations]
    mode = RecordMode(mode)
    if mode is RecordMode.SHARED_BOUNDARY:
        # consecutive relators share their boundary x
        base = [fresh]
        for w in relators:
            if not w or w[0] != fresh:
                raise InvalidInput("augmented relators must begin with the fresh letter")
            base.extend(w[1:])
        return tuple(base)
    base = []
    for w in relators:
        base.extend((fresh, fresh))
        base.extend(w)
    base.extend((fresh, fresh))
    return tuple(base)


def build_record_word(augmented: Presentation, enc: RankEncoder, fresh: str = "x",
                      mode: RecordMode = RecordMode.PADDED) -> Word:
    return swap(enc.encode(record_base(augmented, fresh, mode)))


@dataclass(frozen=True)
class PipelineBundle:
    source: Presentation
    augmented: Presentation
    rank_encoder: RankEncoder
    encoded: Presentation
    record: Word
    record_mode: RecordMode
    fresh: str = "x"

    @property
    def i(self) -> int:
        return self.rank_encoder.rank[self.fresh]

    @property
    def relators(self) -> tuple[Word, ...]:
        """Augmented relators, aligned with the relations of ``encoded``."""
        return tuple(r.lhs for r in self.augmented.relations)

    def to_json(self) -> dict:
        return {
            "schema": "stylus.pipeline/1",
            "source": format_presentation(self.source),
            "augmented": format_presentation(self.augmented),
            "encoded": format_presentation(self.encoded),
            "rank": {s: self.rank_encoder.rank[s] for s in self.rank_encoder.source},
            "record": format_word(self.record),
            "record_mode": self.record_mode.value,
        }


def build_pipeline(p: Presentation, i: int = 0, *, mode: RecordMode = RecordMode.PADDED,
                   fresh: str = "x", rank: Mapping[str, int] | None = None) -> PipelineBundle:
    """Build every level of the encoding for the special monoid ``p``.

    ``rank`` overrides the default ranking; the fresh letter always gets
    rank ``i``.
    """
    augmented = augment_special(p, fresh)
    fixed = dict(rank or {})
    if fixed.get(fresh, i) != i:
        raise InvalidInput(f"rank of {fresh!r} must equal i={i}")
    fixed[fresh] = i
    enc = default_rank_encoder(augmented.alphabet, fixed)
    encoded = encode_presentation(augmented, enc)
    if len(encoded.relations) != len(augmented.relations):
        raise InvalidInput("encoding merged two relators")
    mode = RecordMode(mode)
    record = build_record_word(augmented, enc, fresh, mode)
    return PipelineBundle(p, augmented, enc, encoded, record, mode, fresh)


def hall_embed(p: Presentation, x: str = "x", y: str = "y") -> tuple[Presentation, Morphism]:
    """Send the k-th generator (k = 1, 2, ...) to ``x y^k``; relation count is kept."""
    target = Alphabet((x, y))
    images = {s: (x,) + (y,) * (k + 1) for k, s in enumerate(p.alphabet)}
    h = Morphism(p.alphabet, target, images)
    rels = tuple(Relation(h(r.lhs), h(r.rhs)) for r in p.relations)
    name = f"hall({p.name})" if p.name else None
    return Presentation(target, rels, p.kind, name), h


def reencode_presentation(p: Presentation, m: Morphism, dedupe: bool = True) -> Presentation:
    """Apply ``m`` to both sides of every relation.

    With ``dedupe``, relations whose sides coincide and repeated relations
    are dropped (first occurrence kept).
    """
    if set(m.source) != set(p.alphabet):
        raise InvalidInput("morphism source differs from the presentation's alphabet")
    rels = [Relation(m(r.lhs), m(r.rhs)) for r in p.relations]
    if dedupe:
        rels = list(_dedupe(r for r in rels if r.lhs != r.rhs))
    kind = p.kind
    if kind is Kind.SEMIGROUP and any(not r.lhs or not r.rhs for r in rels):
        kind = Kind.MONOID
    return Presentation(m.target, tuple(rels), kind, None)


def makanin_morphism() -> Morphism:
    """a -> zz, b -> yzz, c -> yy, d -> zyy, e -> x."""
    source = Alphabet("abcde")
    target = Alphabet("xyz")
    images = {"a": ("z", "z"), "b": ("y", "z", "z"), "c": ("y", "y"),
              "d": ("z", "y", "y"), "e": ("x",)}
    return Morphism(source, target, images)


def free_product_with_free_generator(p: Presentation, fresh: str = "y") -> Presentation:
    if fresh in p.alphabet:
        raise InvalidInput(f"fresh token {fresh!r} already in the alphabet")
    name = f"{p.name}*<{fresh}>" if p.name else None
    return Presentation(p.alphabet.extend(fresh), p.relations, p.kind, name)
