"""Finite presentations, derivation certificates and their checker.

A :class:`Derivation` is a start word plus a list of single-relation
applications.  Nothing in this package trusts a derivation until
:func:`check_derivation` has replayed it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import InvalidInput, ParseError, StepError
from .words import Alphabet, Word, format_word, parse_word


class Kind(str, Enum):
    SEMIGROUP = "semigroup"
    MONOID = "monoid"


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def side(self, forward: bool) -> tuple[Word, Word]:
        """(replaced, replacement) for a step in the given direction."""
        return (self.lhs, self.rhs) if forward else (self.rhs, self.lhs)

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[Relation, ...]
    kind: Kind = Kind.MONOID
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        rels = tuple(r if isinstance(r, Relation) else Relation(*r) for r in self.relations)
        object.__setattr__(self, "relations", rels)
        for k, rel in enumerate(rels):
            self.alphabet.check(rel.lhs)
            self.alphabet.check(rel.rhs)
            if self.kind is Kind.SEMIGROUP and (not rel.lhs or not rel.rhs):
                raise InvalidInput(f"relation {k} ({rel}) has an empty side in a semigroup presentation")

    @classmethod
    def build(cls, gens, relations: Iterable[tuple[str, str]], kind="monoid", name=None):
        """Convenience constructor from text, e.g. ``build("a b", [("a b", "b a")])``."""
        alphabet = gens if isinstance(gens, Alphabet) else Alphabet(gens.split() if isinstance(gens, str) else gens)
        rels = [Relation(alphabet.parse(l), alphabet.parse(r)) for l, r in relations]
        return cls(alphabet, tuple(rels), Kind(kind), name)

    def with_name(self, name: str | None) -> "Presentation":
        return Presentation(self.alphabet, self.relations, self.kind, name)

    def to_text(self) -> str:
        return format_presentation(self)

    def __str__(self) -> str:
        gens = ", ".join(self.alphabet)
        rels = ", ".join(str(r) for r in self.relations)
        return f"<{gens} | {rels}>"


def parse_presentation(text: str, *, allowed_kinds=("monoid", "semigroup")) -> Presentation:
    """Read the line-oriented presentation format.

    ::

        kind: monoid
        gens: b c
        rel: b c = 1     # comments run to end of line
    """
    kind = None
    alphabet = None
    rels: list[tuple[int, Word, Word]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {raw.strip()!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "kind":
            if kind is not None:
                raise ParseError("duplicate kind line", lineno)
            if value not in allowed_kinds:
                raise ParseError(f"unknown kind {value!r}", lineno)
            kind = value
        elif key == "gens":
            if alphabet is not None:
                raise ParseError("duplicate gens line", lineno)
            tokens = value.split()
            seen = set()
            for tok in tokens:
                if tok in seen:
                    raise ParseError(f"generator {tok!r} declared twice", lineno)
                seen.add(tok)
            try:
                alphabet = Alphabet(tokens)
            except InvalidInput as exc:
                raise ParseError(str(exc), lineno) from None
        elif key == "rel":
            if alphabet is None:
                raise ParseError("rel before gens", lineno)
            lhs_text, eq, rhs_text = value.partition("=")
            if not eq or "=" in rhs_text:
                raise ParseError("relation must contain exactly one '='", lineno)
            try:
                lhs = alphabet.check(parse_word(lhs_text))
                rhs = alphabet.check(parse_word(rhs_text))
            except InvalidInput as exc:
                raise ParseError(str(exc), lineno) from None
            if kind == "semigroup" and (not lhs or not rhs):
                raise ParseError("empty word in a semigroup relation", lineno)
            rels.append((lineno, lhs, rhs))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if kind is None:
        raise ParseError("missing kind line")
    if alphabet is None:
        raise ParseError("missing gens line")
    if kind == "rewriting":
        kind = "monoid"
    return Presentation(alphabet, tuple(Relation(l, r) for _, l, r in rels), Kind(kind))


def format_presentation(p: Presentation, kind: str | None = None) -> str:
    lines = []
    if p.name:
        lines.append(f"# {p.name}")
    lines.append(f"kind: {kind or p.kind.value}")
    lines.append("gens: " + " ".join(p.alphabet))
    lines.extend(f"rel: {r}" for r in p.relations)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ClassificationReport:
    is_special: bool
    is_positive: bool
    is_monadic: bool
    relation_count: int
    letter_occurrence_count: int


def classify_presentation(p: Presentation) -> ClassificationReport:
    rels = p.relations
    return ClassificationReport(
        is_special=all(not r.rhs for r in rels),
        # words here never carry formal inverses
        is_positive=True,
        is_monadic=len(rels) == 1 and len(rels[0].rhs) == 1 and len(rels[0].lhs) > 0,
        relation_count=len(rels),
        letter_occurrence_count=sum(len(r.lhs) + len(r.rhs) for r in rels),
    )


# -- derivations -------------------------------------------------------------


@dataclass(frozen=True)
class DerivationStep:
    rel: int
    forward: bool
    pos: int

    def flipped(self) -> "DerivationStep":
        return DerivationStep(self.rel, not self.forward, self.pos)

    def shifted(self, offset: int) -> "DerivationStep":
        return DerivationStep(self.rel, self.forward, self.pos + offset)

    def to_json(self) -> dict:
        return {"rel": self.rel, "dir": "fwd" if self.forward else "rev", "pos": self.pos}


@dataclass(frozen=True)
class Derivation:
    """A claimed proof that ``start`` equals ``end`` modulo ``presentation``."""

    presentation: Presentation
    start: Word
    steps: tuple[DerivationStep, ...]
    end: Word

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "end", tuple(self.end))
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    @classmethod
    def identity(cls, p: Presentation, word: Sequence[str]) -> "Derivation":
        return cls(p, tuple(word), (), tuple(word))

    @classmethod
    def from_steps(cls, p: Presentation, start: Sequence[str], steps: Sequence[DerivationStep]) -> "Derivation":
        """Build a derivation whose end is obtained by replaying ``steps``."""
        word = tuple(start)
        for step in steps:
            word = apply_derivation_step(p, word, step)
        return cls(p, tuple(start), tuple(steps), word)

    def words(self) -> list[Word]:
        """All intermediate words, ``start`` first; raises on a bad step."""
        out = [self.start]
        for step in self.steps:
            out.append(apply_derivation_step(self.presentation, out[-1], step))
        return out


def apply_derivation_step(p: Presentation, word: Sequence[str], step: DerivationStep) -> Word:
    word = tuple(word)
    if not 0 <= step.rel < len(p.relations):
        raise StepError("range", f"relation index {step.rel} out of range")
    old, new = p.relations[step.rel].side(step.forward)
    if step.pos < 0 or step.pos + len(old) > len(word):
        raise StepError("range", f"position {step.pos} out of range for word of length {len(word)}")
    if word[step.pos:step.pos + len(old)] != old:
        raise StepError("mismatch", f"{format_word(old)} does not occur at position {step.pos} of {format_word(word)}")
    return word[:step.pos] + new + word[step.pos + len(old):]


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    final: Word | None
    failed_step: int | None = None
    reason: str = ""


def check_derivation(d: Derivation) -> CheckReport:
    """Replay every step.

    On failure ``failed_step`` is the index of the first step that does not
    apply, or ``len(d.steps)`` when all steps apply but the final word is not
    the claimed end.
    """
    word = d.start
    for k, step in enumerate(d.steps):
        try:
            word = apply_derivation_step(d.presentation, word, step)
        except StepError as exc:
            return CheckReport(False, word, k, str(exc))
    if word != d.end:
        return CheckReport(False, word, len(d.steps),
                           f"replay ends at {format_word(word)}, claimed {format_word(d.end)}")
    return CheckReport(True, word)


def _require_valid(d: Derivation) -> None:
    report = check_derivation(d)
    if not report.ok:
        raise InvalidInput(f"derivation fails its check at step {report.failed_step}: {report.reason}")


def invert_derivation(d: Derivation) -> Derivation:
    _require_valid(d)
    # replacing at pos leaves the other side starting at the same offset
    steps = tuple(s.flipped() for s in reversed(d.steps))
    return Derivation(d.presentation, d.end, steps, d.start)


def embed_derivation(d: Derivation, left: Sequence[str] = (), right: Sequence[str] = ()) -> Derivation:
    left, right = tuple(left), tuple(right)
    d.presentation.alphabet.check(left)
    d.presentation.alphabet.check(right)
    shift = len(left)
    return Derivation(d.presentation, left + d.start + right,
                      tuple(s.shifted(shift) for s in d.steps), left + d.end + right)


def concat_derivations(*parts: Derivation) -> Derivation:
    if not parts:
        raise InvalidInput("nothing to concatenate")
    first = parts[0]
    steps = list(first.steps)
    end = first.end
    for d in parts[1:]:
        if d.presentation != first.presentation:
            raise InvalidInput("cannot concatenate derivations over different presentations")
        if d.start != end:
            raise InvalidInput(f"endpoint mismatch: {format_word(end)} vs {format_word(d.start)}")
        steps.extend(d.steps)
        end = d.end
    return Derivation(first.presentation, first.start, tuple(steps), end)


# -- certificate JSON --------------------------------------------------------


def presentation_ref(p: Presentation) -> str:
    """Catalog name if ``p`` is exactly that catalog entry, else its file text."""
    if p.name:
        from .catalog import resolve_name
        try:
            if resolve_name(p.name) == p:
                return p.name
        except InvalidInput:
            pass
    return format_presentation(p)


def derivation_to_json(d: Derivation, ref: str | None = None) -> dict:
    ref = ref or presentation_ref(d.presentation)
    return {
        "presentation": ref,
        "start": format_word(d.start),
        "steps": [s.to_json() for s in d.steps],
        "end": format_word(d.end),
    }


def dump_certificate(d: Derivation) -> str:
    return json.dumps(derivation_to_json(d), indent=1)


def derivation_from_json(data: dict | str, resolve=None) -> Derivation:
    """Parse a certificate.

    ``resolve`` maps a presentation name to a :class:`Presentation`; it
    defaults to the catalog resolver.  Inline presentation text is
    recognised by its ``kind:`` line.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        ref = data["presentation"]
        if "kind:" in ref:
            p = parse_presentation(ref)
        else:
            if resolve is None:
                from .catalog import resolve_name as resolve
            p = resolve(ref)
        steps = []
        for raw in data["steps"]:
            if raw["dir"] not in ("fwd", "rev"):
                raise InvalidInput(f"bad direction {raw['dir']!r}")
            rel, pos = raw["rel"], raw["pos"]
            if not isinstance(rel, int) or not isinstance(pos, int):
                raise InvalidInput("rel and pos must be integers")
            steps.append(DerivationStep(rel, raw["dir"] == "fwd", pos))
        start = p.alphabet.parse(data["start"])
        end = p.alphabet.parse(data["end"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed certificate: {exc}") from None
    return Derivation(p, start, tuple(steps), end)
