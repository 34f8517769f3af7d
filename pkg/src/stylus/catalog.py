"""Named presentations: Tseytin's family and its relatives.

Every entry is data, typed in letter for letter.  Words over the Tseytin
generators always use the letters a..e; :data:`TSEYTIN_GENERATOR_MAP`
records their reading as x1, x2 (the code letters), y1, y2 (the record
letters) and t (the stylus).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InvalidInput, InvalidParams
from .presentations import Kind, Presentation, Relation
from .words import Alphabet, Word, format_word

TSEYTIN_GENERATOR_MAP = {"a": "x1", "b": "x2", "c": "y1", "d": "y2", "e": "t"}

COMMUTATION_RELATIONS = (("a c", "c a"), ("a d", "d a"), ("b c", "c b"), ("b d", "d b"))
STYLUS_RELATIONS = (("e c a", "c e"), ("e d b", "d e"))


@dataclass(frozen=True)
class CatalogEntry:
    presentation: Presentation
    provenance: str
    complete: bool = True
    generator_map: dict | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.presentation.name


def _pres(name, gens, rels, kind=Kind.SEMIGROUP) -> Presentation:
    return Presentation.build(gens, rels, kind=kind, name=name)


def trigger_word(i: int) -> Word:
    """``c d^i c a``, the left side of the last Tseytin relation."""
    return ("c",) + ("d",) * i + ("c", "a")


def get_tseytin(i: int) -> CatalogEntry:
    if not isinstance(i, int) or i < 0:
        raise InvalidParams(f"i must be a natural number, got {i!r}")
    trigger = " ".join(trigger_word(i))
    rels = COMMUTATION_RELATIONS + STYLUS_RELATIONS + ((trigger, trigger + " e"),)
    return CatalogEntry(_pres(f"tseytin(i={i})", "a b c d e", rels),
                        "Tseytin (1958), seven-relation semigroup C^(i)",
                        generator_map=dict(TSEYTIN_GENERATOR_MAP), metadata={"i": i})


def specific_word(j: int) -> Word:
    """``a b^j a b^j a``."""
    return ("a",) + ("b",) * j + ("a",) + ("b",) * j + ("a",)


def get_tseytin_specific(i: int, j: int) -> CatalogEntry:
    if not isinstance(j, int) or j < 0:
        raise InvalidParams(f"j must be a natural number, got {j!r}")
    if i == j:
        raise InvalidParams("the specific-word semigroup needs i != j")
    base = get_tseytin(i).presentation
    target = specific_word(j)
    extra = (Relation(("c",) + target, target), Relation(("d",) + target, target))
    p = Presentation(base.alphabet, base.relations + extra, Kind.SEMIGROUP, f"tseytin_specific(i={i},j={j})")
    return CatalogEntry(p, "Tseytin (1958), nine-relation semigroup C^(i,j) with a fixed specific word",
                        generator_map=dict(TSEYTIN_GENERATOR_MAP),
                        metadata={"i": i, "j": j, "specific_word": format_word(target)})


def _scott():
    rels = [("a c", "c a"), ("a d", "d a"), ("a e", "e a"),
            ("b c", "c b"), ("b d", "d b"), ("b e", "e b"),
            ("e", "e f"), ("e", "f e"), ("f c a", "c f"), ("f d b", "d f")]
    return CatalogEntry(_pres("scott", "a b c d e f", rels), "Scott (1956), announced ten-relation semigroup")


def _matiyasevich5():
    rels = [("x y x^2 y^2", "y^2 x^2 y x"),
            ("x^2 y x y^2 x", "y^2 x^3 y x"),
            ("x y x^3 y^2", "x y^2 x y x^2"),
            ("x^4 y^2 x^2 y x", "y^2 x^4"),
            ("y^3 x^2 y^2 x^2 y x", "y^3 x^2 y^2 x^4")]
    return CatalogEntry(_pres("matiyasevich5", "x y", rels), "Matiyasevich (1967), two-generator five-relation semigroup")


def _makanin5():
    rels = [("z^2 y^2", "y^2 z^2"),
            ("y z^3 y^2", "z y^3 z^2"),
            ("x z^2 y^2", "y^2 x"),
            ("x y z^3 y^2", "z y^2 x"),
            ("y^2 z^2 y^4 z^2", "y^2 z^2 y^4 z^2 x")]
    return CatalogEntry(_pres("makanin5", "x y z", rels), "Makanin (1966, added in proof), five-relation semigroup",
                        metadata={"encoding": {"a": "z z", "b": "y z z", "c": "y y", "d": "z y y", "e": "x"}})


def _matiyasevich3():
    rels = [("a a b a b", "b a a"), ("a a b b", "b a a")]
    return CatalogEntry(_pres("matiyasevich3", "a b", rels), "Matiyasevich (1967), three-relation semigroup",
                        complete=False,
                        metadata={"missing": "third relation W1 = W2 is not printed",
                                  "W1_length": 304, "W2_length": 608})


def _tseytin_cce():
    base = get_tseytin(0).presentation
    rels = base.relations[:6] + (Relation(("c", "c", "a"), ("c", "c", "e")),)
    p = Presentation(base.alphabet, rels, Kind.SEMIGROUP, "tseytin_cce")
    return CatalogEntry(p, "Matiyasevich's variant of C^(0): last relation cca = cce",
                        generator_map=dict(TSEYTIN_GENERATOR_MAP))


def _commutative():
    return CatalogEntry(_pres("commutative", "a b", [("a b", "b a")], Kind.MONOID),
                        "free commutative monoid of rank two")


def _bicyclic():
    return CatalogEntry(_pres("bicyclic", "b c", [("b c", "1")], Kind.MONOID), "bicyclic monoid")


_NAMED = {
    "scott": _scott,
    "matiyasevich5": _matiyasevich5,
    "makanin5": _makanin5,
    "matiyasevich3": _matiyasevich3,
    "tseytincce": _tseytin_cce,
    "commutative": _commutative,
    "bicyclic": _bicyclic,
}

NAMES = ("tseytin", "tseytin_specific", "scott", "matiyasevich5", "makanin5",
         "matiyasevich3", "tseytin_cce", "commutative", "bicyclic")


def _normalise(name: str) -> str:
    return name.lower().replace("-", "").replace("_", "")


def get_named(name: str) -> CatalogEntry:
    key = _normalise(name)
    if key not in _NAMED:
        raise InvalidInput(f"unknown catalog entry {name!r}")
    return _NAMED[key]()


def get_entry(name: str, i: int | None = None, j: int | None = None) -> CatalogEntry:
    """Look up any entry, including the parameterised Tseytin families."""
    key = _normalise(name)
    if key == "tseytin":
        return get_tseytin(0 if i is None else i)
    if key == "tseytinspecific":
        return get_tseytin_specific(1 if i is None else i, 0 if j is None else j)
    return get_named(name)


_PARAM = re.compile(r"^\s*([A-Za-z_\-0-9]+)\s*(?:\((.*)\))?\s*$")


def resolve_name(ref: str) -> Presentation:
    """Resolve a presentation name such as ``tseytin(i=1)`` or ``bicyclic``."""
    m = _PARAM.match(ref)
    if not m:
        raise InvalidInput(f"bad presentation reference {ref!r}")
    params = {}
    if m.group(2):
        for part in m.group(2).split(","):
            k, eq, v = part.partition("=")
            if not eq or not v.strip().isdigit():
                raise InvalidInput(f"bad parameter {part!r} in {ref!r}")
            params[k.strip()] = int(v)
    return get_entry(m.group(1), params.get("i"), params.get("j")).presentation


@dataclass(frozen=True)
class LetterStatistics:
    relation_count: int
    letter_occurrence_count: int
    per_relation: tuple[int, ...]


def letter_statistics(p: Presentation) -> LetterStatistics:
    per = tuple(len(r.lhs) + len(r.rhs) for r in p.relations)
    return LetterStatistics(len(per), sum(per), per)
