"""Alphabets, words, morphisms and the rank code {a b^i}.

A word is a plain tuple of generator tokens; ``()`` is the empty word.
Tokens are arbitrary non-blank strings, so multi-character generators such
as ``x1`` need no escaping.  The text form of a word is its tokens joined
by single spaces, with the empty word spelled ``1``.  On input the
shorthand ``tok^n`` stands for ``n`` copies of ``tok``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DecodeError, FactorizationError, InvalidInput

Word = tuple[str, ...]

EMPTY: Word = ()
IDENTITY_TOKEN = "1"
_RESERVED = {IDENTITY_TOKEN, "=", "->", "#"}


def _check_token(token: str) -> None:
    if not isinstance(token, str) or not token:
        raise InvalidInput(f"generator must be a non-empty string, got {token!r}")
    if token in _RESERVED or any(ch.isspace() for ch in token):
        raise InvalidInput(f"reserved or blank generator token {token!r}")
    if "^" in token or "#" in token:
        raise InvalidInput(f"generator token may not contain '^' or '#': {token!r}")


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of generator tokens.

    The declared order is the default symbol ranking used for shortlex
    comparisons.
    """

    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        for s in symbols:
            _check_token(s)
        if len(set(symbols)) != len(symbols):
            raise InvalidInput(f"duplicate generators in {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, token) -> bool:
        return token in self._index

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise InvalidInput(f"{token!r} is not in alphabet {self.symbols}") from None

    def extend(self, *tokens: str) -> "Alphabet":
        return Alphabet(self.symbols + tuple(tokens))

    def check(self, word: Sequence[str]) -> Word:
        """Return ``word`` as a tuple, raising if a letter is foreign."""
        for letter in word:
            if letter not in self._index:
                raise InvalidInput(f"letter {letter!r} is not in alphabet {self.symbols}")
        return tuple(word)

    def parse(self, text: str) -> Word:
        return self.check(parse_word(text))


def parse_word(text: str) -> Word:
    """Parse the whitespace-separated text form of a word.

    >>> parse_word("a^2 b 1")
    ('a', 'a', 'b')
    """
    letters: list[str] = []
    for token in text.split():
        if token == IDENTITY_TOKEN:
            continue
        if "^" in token:
            base, _, exp = token.rpartition("^")
            if not base or not exp.isdigit():
                raise InvalidInput(f"bad exponent token {token!r}")
            _check_token(base)
            letters.extend([base] * int(exp))
        else:
            _check_token(token)
            letters.append(token)
    return tuple(letters)


def format_word(word: Sequence[str]) -> str:
    return " ".join(word) if word else IDENTITY_TOKEN


def count_occurrences(word: Sequence[str], symbol: str) -> int:
    return sum(1 for letter in word if letter == symbol)


def find_all(word: Sequence[str], factor: Sequence[str]) -> list[int]:
    """Offsets of every occurrence of ``factor`` in ``word``."""
    word, factor = tuple(word), tuple(factor)
    m = len(factor)
    return [p for p in range(len(word) - m + 1) if word[p:p + m] == factor]


def shortlex_key(word: Sequence[str], ranking: Mapping[str, int]):
    return (len(word), tuple(ranking[s] for s in word))


@dataclass(frozen=True)
class Morphism:
    """A monoid morphism given by one image word per source generator."""

    source: Alphabet
    target: Alphabet
    images: Mapping[str, Word]

    def __post_init__(self):
        missing = [s for s in self.source if s not in self.images]
        if missing:
            raise InvalidInput(f"morphism has no image for {missing}")
        images = {s: self.target.check(self.images[s]) for s in self.source}
        object.__setattr__(self, "images", images)

    def __call__(self, word: Sequence[str]) -> Word:
        return apply_morphism(self, word)


def apply_morphism(m: Morphism, word: Sequence[str]) -> Word:
    out: list[str] = []
    for letter in word:
        try:
            out.extend(m.images[letter])
        except KeyError:
            raise InvalidInput(f"letter {letter!r} is outside the morphism's source") from None
    return tuple(out)


CODE_ALPHABET = Alphabet(("a", "b"))
RECORD_ALPHABET = Alphabet(("c", "d"))


def swap_morphism() -> Morphism:
    """The renaming a -> c, b -> d that moves a code word onto the record letters."""
    return Morphism(CODE_ALPHABET, RECORD_ALPHABET, {"a": ("c",), "b": ("d",)})


def swap(word: Sequence[str]) -> Word:
    return apply_morphism(swap_morphism(), word)


@dataclass(frozen=True)
class RankEncoder:
    """Injective ranking of a source alphabet, realising the code {a b^i}.

    ``encode`` sends ``s1 ... sn`` to ``a b^r(s1) a b^r(s2) ... a b^r(sn) a``.
    """

    source: Alphabet
    rank: Mapping[str, int]

    def __post_init__(self):
        rank = dict(self.rank)
        if set(rank) != set(self.source):
            raise InvalidInput("rank must be defined on exactly the source alphabet")
        values = list(rank.values())
        if any((not isinstance(r, int)) or r < 0 for r in values):
            raise InvalidInput("ranks must be natural numbers")
        if len(set(values)) != len(values):
            raise InvalidInput(f"rank is not injective: {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_by_rank", {r: s for s, r in rank.items()})

    target = CODE_ALPHABET

    def block(self, word: Sequence[str]) -> Word:
        """The morphic part ``a b^r(s1) ... a b^r(sn)`` without the closing ``a``."""
        out: list[str] = []
        for letter in word:
            try:
                r = self.rank[letter]
            except KeyError:
                raise InvalidInput(f"letter {letter!r} is not ranked") from None
            out.append("a")
            out.extend("b" * r)
        return tuple(out)

    def encode(self, word: Sequence[str]) -> Word:
        return self.block(word) + ("a",)

    def decode(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        if not word:
            raise DecodeError("cannot decode the empty word")
        if word[0] != "a" or word[-1] != "a":
            raise DecodeError(f"encoded words start and end with 'a': {format_word(word)}")
        try:
            runs = factorize_over_rank_code(word)
        except FactorizationError as exc:
            raise DecodeError(str(exc)) from None
        out = []
        for r in runs:
            if r not in self._by_rank:
                raise DecodeError(f"no generator has rank {r}")
            out.append(self._by_rank[r])
        return tuple(out)


def encode_word(enc: RankEncoder, word: Sequence[str]) -> Word:
    return enc.encode(word)


def decode_word(enc: RankEncoder, word: Sequence[str]) -> Word:
    return enc.decode(word)


def factorize_over_rank_code(word: Sequence[str]) -> list[int]:
    """Split ``word`` minus its final ``a`` into factors ``a b^i``.

    Returns the exponents ``[i1, i2, ...]``.  Each factor is an ``a``
    followed by its maximal run of ``b``.
    """
    word = tuple(word)
    if not word:
        raise FactorizationError("empty word")
    if word[0] != "a":
        raise FactorizationError(f"word must start with 'a': {format_word(word)}")
    if word[-1] != "a":
        raise FactorizationError(f"word must end with 'a': {format_word(word)}")
    runs: list[int] = []
    for letter in word[:-1]:
        if letter == "a":
            runs.append(0)
        elif letter == "b":
            runs[-1] += 1
        else:
            raise FactorizationError(f"letter {letter!r} is not a or b")
    return runs
