"""Compile derivations down the encoding chain into Tseytin's semigroup.

Words in the target semigroup use the letters a, b (code letters), c, d
(record letters) and e (the stylus).  A source derivation in a special
monoid ``M`` becomes, in order:

* a derivation in the augmented monoid ``M1`` (:func:`lift_to_augmented`),
* a derivation in the two-letter monoid ``M1o`` (:func:`encode_derivation`),
* a derivation ``S u => S v`` in ``C^(i)`` (:func:`compile_equality`).

Every function returns a plain :class:`~stylus.presentations.Derivation`
that can be re-verified with :func:`~stylus.presentations.check_derivation`
alone.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .catalog import CatalogEntry, get_tseytin, get_tseytin_specific, specific_word, trigger_word
from .encoder import PipelineBundle, RecordMode, interleave
from .errors import InvalidInput, InvalidParams, UnsupportedRecordMode
from .presentations import (Derivation, DerivationStep, Presentation, apply_derivation_step,
                            check_derivation, concat_derivations, embed_derivation, invert_derivation)
from .words import CODE_ALPHABET, RECORD_ALPHABET, Word, find_all, format_word, swap


def _relation_index(p: Presentation) -> dict[tuple[Word, Word], int]:
    return {(r.lhs, r.rhs): k for k, r in enumerate(p.relations)}


def _lookup(p: Presentation, lhs: Sequence[str], rhs: Sequence[str]) -> int:
    try:
        return _relation_index(p)[(tuple(lhs), tuple(rhs))]
    except KeyError:
        raise InvalidInput(f"{p.name or 'presentation'} has no relation "
                           f"{format_word(lhs)} = {format_word(rhs)}") from None


class _Chain:
    """Accumulates steps while tracking the current word."""

    def __init__(self, p: Presentation, start: Sequence[str]):
        self.p = p
        self.start = tuple(start)
        self.word = self.start
        self.steps: list[DerivationStep] = []

    def step(self, rel: int, forward: bool, pos: int) -> None:
        s = DerivationStep(rel, forward, pos)
        self.word = apply_derivation_step(self.p, self.word, s)
        self.steps.append(s)

    def splice(self, d: Derivation, offset: int) -> None:
        """Run ``d`` on the factor of the current word starting at ``offset``."""
        n = len(d.start)
        if self.word[offset:offset + n] != d.start:
            raise AssertionError(f"splice mismatch at {offset}: {format_word(self.word)} vs {format_word(d.start)}")
        self.steps.extend(s.shifted(offset) for s in d.steps)
        self.word = self.word[:offset] + d.end + self.word[offset + n:]

    def result(self) -> Derivation:
        return Derivation(self.p, self.start, tuple(self.steps), self.word)


# -- free-product and stylus gadgets ----------------------------------------


def compile_commutation(u: Sequence[str], v: Sequence[str], target: Presentation | None = None) -> Derivation:
    """``u v => v u`` for ``u`` over {a, b} and ``v`` over {c, d}.

    Each letter of ``v`` in turn bubbles left across all of ``u``, meeting
    the rightmost letter of ``u`` first: exactly ``|u| |v|`` steps.
    """
    p = target or get_tseytin(0).presentation
    u = CODE_ALPHABET.check(u)
    v = RECORD_ALPHABET.check(v)
    index = _relation_index(p)
    steps = []
    for k, y in enumerate(v):
        for q in range(len(u) - 1, -1, -1):
            steps.append(DerivationStep(index[((u[q], y), (y, u[q]))], True, k + q))
    return Derivation(p, u + v, tuple(steps), v + u)


def compile_stylus(x_word: Sequence[str], target: Presentation | None = None) -> Derivation:
    """``swap(X) e => e swap(X) X``.

    The stylus reads ``swap(X)`` right to left; each letter it crosses is
    copied behind it by one reverse stylus step and then slid right past
    the record letters already crossed.
    """
    p = target or get_tseytin(0).presentation
    x_word = CODE_ALPHABET.check(x_word)
    y_word = swap(x_word)
    index = _relation_index(p)
    n = len(x_word)
    chain = _Chain(p, y_word + ("e",))
    for j in range(n - 1, -1, -1):
        y, x = y_word[j], x_word[j]
        chain.step(index[(("e", y, x), (y, "e"))], False, j)
        for pos in range(j + 2, n + 1):
            chain.step(index[((x, y_word[pos - 1]), (y_word[pos - 1], x))], True, pos)
    return chain.result()


# -- compile context ---------------------------------------------------------


@dataclass
class CompileContext:
    """A compiler-ready pipeline bundle paired with its target semigroup."""

    bundle: PipelineBundle
    target: CatalogEntry
    stats: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if self.target.metadata.get("i") != self.bundle.i:
            raise InvalidParams(f"target i={self.target.metadata.get('i')} does not match rank of "
                                f"{self.bundle.fresh!r} = {self.bundle.i}")

    @classmethod
    def for_bundle(cls, bundle: PipelineBundle, j: int | None = None) -> "CompileContext":
        if j is None:
            return cls(bundle, get_tseytin(bundle.i))
        return cls(bundle, get_tseytin_specific(bundle.i, j))

    @property
    def presentation(self) -> Presentation:
        return self.target.presentation

    @property
    def record(self) -> Word:
        return self.bundle.record


# -- between pipeline levels --------------------------------------------------


def lift_to_augmented(d: Derivation, bundle: PipelineBundle) -> Derivation:
    """Lift a derivation in the special monoid to the augmented monoid.

    Words are mapped to their x-interleaved images.  Deleting a relator
    ``R`` costs one x-insertion and one application of ``I(R)``; inserting
    one costs an application of ``I(R)`` and one x-deletion.
    """
    src, aug, x = bundle.source, bundle.augmented, bundle.fresh
    if d.presentation.relations != src.relations:
        raise InvalidInput("derivation is not over the bundle's source presentation")
    if not check_derivation(d).ok:
        raise InvalidInput("source derivation fails its check")
    if x in d.start or x in d.end:
        raise InvalidInput(f"source words may not contain the fresh letter {x!r}")
    index = _relation_index(aug)
    bare = index[((x,), ())]
    chain = _Chain(aug, interleave(d.start, x))
    word = d.start
    for s in d.steps:
        rel = src.relations[s.rel]
        relator = interleave(rel.lhs, x)
        k = index[(relator, ())]
        if s.forward:
            chain.step(bare, False, 2 * s.pos)
            chain.step(k, True, 2 * s.pos + 1)
        else:
            chain.step(k, False, 2 * s.pos + 1)
            chain.step(bare, True, 2 * s.pos)
        word = apply_derivation_step(src, word, s)
    out = chain.result()
    assert out.end == interleave(d.end, x)
    return out


def encode_derivation(d: Derivation, bundle: PipelineBundle) -> Derivation:
    """Map each step on ``w`` at letter ``p`` to the same-index step on
    ``encode(w)`` at the offset of the p-th block."""
    if d.presentation.relations != bundle.augmented.relations:
        raise InvalidInput("derivation is not over the bundle's augmented presentation")
    if not check_derivation(d).ok:
        raise InvalidInput("augmented derivation fails its check")
    enc = bundle.rank_encoder
    steps = []
    word = d.start
    for s in d.steps:
        steps.append(DerivationStep(s.rel, s.forward, len(enc.block(word[:s.pos]))))
        word = apply_derivation_step(d.presentation, word, s)
    return Derivation(bundle.encoded, enc.encode(d.start), tuple(steps), enc.encode(d.end))


def x_padding_derivation(bundle: PipelineBundle, word: Sequence[str]) -> Derivation:
    """``w => I(w)`` in the augmented monoid by inserting the fresh letter."""
    aug, x = bundle.augmented, bundle.fresh
    bare = _lookup(aug, (x,), ())
    chain = _Chain(aug, word)
    for q in range(len(word) + 1):
        chain.step(bare, False, 2 * q)
    return chain.result()


# -- inside the target semigroup ---------------------------------------------


def insertion_block(ctx: CompileContext, relator_index: int) -> Word:
    """The record factor ``swap(encode(x W))`` used to insert ``encode(W)``."""
    bundle = ctx.bundle
    w = bundle.relators[relator_index]
    return swap(bundle.rank_encoder.encode((bundle.fresh,) + w))


def compile_insertion(ctx: CompileContext, u: Sequence[str], position: int, relator_index: int) -> Derivation:
    """``S u => S u'`` where the ``a`` at ``position`` of ``u`` becomes ``encode(W)``.

    ``W`` is the augmented relator ``relator_index``.  The record block
    ``F = swap(encode(x W)) = c d^i c Q`` is carried out of ``S`` to sit
    just left of the target ``a``.  The trigger writes ``e`` after ``a``,
    ``a`` steps left over ``Q``, the stylus crosses ``Q`` writing the copy
    ``Z`` (with ``a Z = encode(W)``), the trigger absorbs ``e`` again and
    everything returns home.
    """
    p = ctx.presentation
    bundle = ctx.bundle
    u = CODE_ALPHABET.check(u)
    if not 0 <= position < len(u) or u[position] != "a":
        raise InvalidInput(f"position {position} of {format_word(u)} does not hold 'a'")
    if not 0 <= relator_index < len(bundle.relators):
        raise InvalidInput(f"no relator {relator_index}")
    i = bundle.i
    S = bundle.record
    block = insertion_block(ctx, relator_index)
    occurrences = find_all(S, block)
    if not occurrences:
        raise UnsupportedRecordMode(
            f"record {format_word(S)} lacks the factor {format_word(block)}; "
            f"build the pipeline in {RecordMode.PADDED.value!r} mode")
    s1 = occurrences[-1]
    head, tail = S[:s1], S[s1:]
    rest = S[s1 + len(block):]
    u0, u1 = u[:position], u[position + 1:]
    lead = len(trigger_word(i)) - 1  # c d^i c
    q_word = block[lead:]
    copy = bundle.rank_encoder.encode(bundle.relators[relator_index])[1:]
    assert swap(copy) == q_word
    trig = _lookup(p, trigger_word(i), trigger_word(i) + ("e",))

    chain = _Chain(p, S + u)
    f = len(head) + len(u0)
    if u0:
        chain.splice(invert_derivation(compile_commutation(u0, tail, p)), len(head))
    if rest:
        chain.splice(invert_derivation(compile_commutation(("a",), rest, p)), f + len(block))
    a_at = f + len(block)
    chain.step(trig, True, a_at - lead)
    chain.splice(invert_derivation(compile_commutation(("a",), q_word, p)), f + lead)
    chain.splice(compile_stylus(copy, p), f + lead + 1)
    chain.step(trig, False, f)
    chain.splice(compile_commutation(("a",), q_word, p), f + lead)
    if rest:
        chain.splice(compile_commutation(("a",) + copy, rest, p), a_at)
    if u0:
        chain.splice(compile_commutation(u0, tail, p), len(head))
    out = chain.result()
    ctx.stats["insertion"] += len(out)
    assert out.end == S + u0 + ("a",) + copy + u1
    return out


def compile_equality(ctx: CompileContext, d: Derivation) -> Derivation:
    """``S u => S v`` for a derivation ``u => v`` in the two-letter monoid."""
    bundle = ctx.bundle
    if d.presentation.relations != bundle.encoded.relations:
        raise InvalidInput("derivation is not over the bundle's encoded presentation")
    if not check_derivation(d).ok:
        raise InvalidInput("encoded derivation fails its check")
    parts = [Derivation.identity(ctx.presentation, bundle.record + d.start)]
    word = d.start
    for s in d.steps:
        nxt = apply_derivation_step(d.presentation, word, s)
        if s.forward:
            parts.append(invert_derivation(compile_insertion(ctx, nxt, s.pos, s.rel)))
        else:
            parts.append(compile_insertion(ctx, word, s.pos, s.rel))
        word = nxt
    out = concat_derivations(*parts)
    ctx.stats["equality"] += len(out)
    return out


def compile_source_equality(ctx: CompileContext, d: Derivation) -> Derivation:
    """``S encode(I(u)) => S encode(I(v))`` for ``u => v`` in the special monoid."""
    lifted = lift_to_augmented(d, ctx.bundle)
    ctx.stats["lift"] += len(lifted)
    return compile_equality(ctx, encode_derivation(lifted, ctx.bundle))


def compile_wipe(ctx: CompileContext, trailing: Sequence[str]) -> Derivation:
    """``S trailing => trailing`` by deleting the record one letter at a time,
    last letter first."""
    p = ctx.presentation
    trailing = tuple(trailing)
    index = _relation_index(p)
    try:
        wipe = {y: index[((y,) + trailing, trailing)] for y in ("c", "d")}
    except KeyError:
        raise InvalidInput(f"{p.name} has no wipe relations for {format_word(trailing)}") from None
    S = ctx.record
    steps = tuple(DerivationStep(wipe[S[q]], True, q) for q in range(len(S) - 1, -1, -1))
    ctx.stats["wipe"] += len(steps)
    return Derivation(p, S + trailing, steps, trailing)


def compile_specific(ctx: CompileContext, d: Derivation, fresh_y: str = "y") -> Derivation:
    """``S encode(y P y) => a b^j a b^j a`` from a derivation ``P => 1`` in ``M``.

    ``ctx.bundle`` must be built over ``M * <y>`` with ``y`` ranked ``j``
    and the target must be ``C^(i,j)``.
    """
    bundle = ctx.bundle
    j = ctx.target.metadata.get("j")
    if j is None:
        raise InvalidInput("compile_specific needs a C^(i,j) target")
    if bundle.i == j:
        raise InvalidParams("i and j must differ")
    if bundle.rank_encoder.rank.get(fresh_y) != j:
        raise InvalidParams(f"{fresh_y!r} must have rank j={j}")
    src = bundle.source
    if d.presentation.relations != src.relations or fresh_y in d.presentation.alphabet:
        raise InvalidInput("derivation must be over M, whose free product with <y> built the bundle")
    if d.end:
        raise InvalidInput("source derivation must end at the empty word")
    if not check_derivation(d).ok:
        raise InvalidInput("source derivation fails its check")
    y = (fresh_y,)
    moved = Derivation(src, d.start, d.steps, d.end)
    framed = embed_derivation(moved, y, y)
    if framed.steps:
        lifted = concat_derivations(x_padding_derivation(bundle, framed.start),
                                    lift_to_augmented(framed, bundle),
                                    invert_derivation(x_padding_derivation(bundle, framed.end)))
    else:
        lifted = Derivation.identity(bundle.augmented, framed.start)
    ctx.stats["lift"] += len(lifted)
    equality = compile_equality(ctx, encode_derivation(lifted, bundle))
    trailing = bundle.rank_encoder.encode(y + y)
    assert trailing == specific_word(j)
    out = concat_derivations(equality, compile_wipe(ctx, trailing))
    ctx.stats["specific"] += len(out)
    return out
