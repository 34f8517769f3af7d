"""Bounded bidirectional breadth-first search for equality certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .presentations import Derivation, DerivationStep, Presentation
from .words import Word, shortlex_key


def neighbours(p: Presentation, word: Word) -> Iterator[tuple[DerivationStep, Word]]:
    """One-step successors in (relation, forward-first, position) order."""
    n = len(word)
    for k, rel in enumerate(p.relations):
        for forward in (True, False):
            old, new = rel.side(forward)
            m = len(old)
            for pos in range(n - m + 1):
                if word[pos:pos + m] == old:
                    yield DerivationStep(k, forward, pos), word[:pos] + new + word[pos + m:]


@dataclass(frozen=True)
class Found:
    derivation: Derivation
    expanded: int


@dataclass(frozen=True)
class NotFoundWithinBudget:
    """No certificate within budget.  Never a proof of inequality, except
    that ``exhausted`` records that one side's whole class was enumerated."""

    expanded: int
    depth: int
    exhausted: bool = False


class _Side:
    def __init__(self, root: Word):
        self.parent: dict[Word, tuple[Word, DerivationStep] | None] = {root: None}
        self.depth_of: dict[Word, int] = {root: 0}
        self.frontier: list[Word] = [root]
        self.depth = 0

    def path_to(self, word: Word) -> list[tuple[Word, DerivationStep]]:
        """(predecessor, step) pairs from the root to ``word``."""
        out = []
        while self.parent[word] is not None:
            prev, step = self.parent[word]
            out.append((prev, step))
            word = prev
        out.reverse()
        return out


def search_equality(p: Presentation, u: Sequence[str], v: Sequence[str], *,
                    max_nodes: int, max_depth: int) -> Found | NotFoundWithinBudget:
    """Look for a derivation ``u => v`` of minimal length.

    Whole BFS layers are expanded alternately from the side with the smaller
    frontier (ties go to ``u``).  The first layer that meets the other side
    yields a shortest certificate; among meeting words the shortlex-least
    is used.  ``max_nodes`` caps the number of expanded words and
    ``max_depth`` the certificate length.
    """
    u = p.alphabet.check(u)
    v = p.alphabet.check(v)
    if u == v:
        return Found(Derivation.identity(p, u), 0)
    ranking = {s: k for k, s in enumerate(p.alphabet)}
    fwd, bwd = _Side(u), _Side(v)
    expanded = 0
    while True:
        if fwd.depth + bwd.depth >= max_depth:
            return NotFoundWithinBudget(expanded, fwd.depth + bwd.depth)
        if not fwd.frontier or not bwd.frontier:
            return NotFoundWithinBudget(expanded, fwd.depth + bwd.depth, exhausted=True)
        side, other = (fwd, bwd) if len(fwd.frontier) <= len(bwd.frontier) else (bwd, fwd)
        new_layer: list[Word] = []
        meets: list[Word] = []
        for word in side.frontier:
            if expanded >= max_nodes:
                return NotFoundWithinBudget(expanded, fwd.depth + bwd.depth)
            expanded += 1
            for step, nxt in neighbours(p, word):
                if nxt in side.parent:
                    continue
                side.parent[nxt] = (word, step)
                side.depth_of[nxt] = side.depth + 1
                new_layer.append(nxt)
                if nxt in other.parent:
                    meets.append(nxt)
        side.frontier = new_layer
        side.depth += 1
        if meets:
            meet = min(meets, key=lambda w: shortlex_key(w, ranking))
            return Found(_join(p, u, v, fwd, bwd, meet), expanded)


def _join(p, u, v, fwd: _Side, bwd: _Side, meet: Word) -> Derivation:
    steps = [step for _, step in fwd.path_to(meet)]
    # the backward path runs v -> meet; every step is undone in reverse order
    for _, step in reversed(bwd.path_to(meet)):
        steps.append(step.flipped())
    return Derivation(p, u, tuple(steps), v)
