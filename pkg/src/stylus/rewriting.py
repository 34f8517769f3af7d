"""String rewriting: normal forms, critical pairs, completion, termination.

Rules only ever apply left to right.  A :class:`RewriteSystem` converts to a
:class:`~stylus.presentations.Presentation` (rule ``u -> v`` becomes the
relation ``u = v``) so every rewrite sequence produced here is an ordinary
derivation certificate using forward steps only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .errors import BudgetExhausted, InvalidInput, OrientError
from .presentations import (Derivation, DerivationStep, Kind, Presentation, Relation,
                            parse_presentation, format_presentation)
from .words import Alphabet, Word, format_word, shortlex_key


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise InvalidInput("a rule's left-hand side must be non-empty")

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: Alphabet
    rules: tuple[RewriteRule, ...]

    def __post_init__(self):
        rules = tuple(r if isinstance(r, RewriteRule) else RewriteRule(*r) for r in self.rules)
        for r in rules:
            self.alphabet.check(r.lhs)
            self.alphabet.check(r.rhs)
        object.__setattr__(self, "rules", rules)

    @classmethod
    def build(cls, gens, rules: Iterable[tuple[str, str]]) -> "RewriteSystem":
        alphabet = gens if isinstance(gens, Alphabet) else Alphabet(gens.split() if isinstance(gens, str) else gens)
        return cls(alphabet, tuple(RewriteRule(alphabet.parse(l), alphabet.parse(r)) for l, r in rules))

    def as_presentation(self) -> Presentation:
        return Presentation(self.alphabet, tuple(Relation(r.lhs, r.rhs) for r in self.rules), Kind.MONOID)

    def to_text(self) -> str:
        return format_presentation(self.as_presentation(), kind="rewriting")

    def __str__(self) -> str:
        return "{" + ", ".join(str(r) for r in self.rules) + "}"


def parse_rewrite_system(text: str) -> RewriteSystem:
    p = parse_presentation(text, allowed_kinds=("rewriting",))
    return RewriteSystem(p.alphabet, tuple(RewriteRule(r.lhs, r.rhs) for r in p.relations))


def shortlex_ranking(alphabet: Alphabet, ranking: Sequence[str] | None = None) -> dict[str, int]:
    """Map each symbol to its rank; ``ranking`` lists symbols smallest first."""
    order = list(alphabet) if ranking is None else list(ranking)
    if sorted(order) != sorted(alphabet):
        raise InvalidInput(f"ranking {order} is not a permutation of {list(alphabet)}")
    return {s: k for k, s in enumerate(order)}


def _orient(lhs: Word, rhs: Word, rank: dict[str, int]) -> RewriteRule:
    if shortlex_key(lhs, rank) > shortlex_key(rhs, rank):
        return RewriteRule(lhs, rhs)
    return RewriteRule(rhs, lhs)


def orient_presentation(p: Presentation, ranking: Sequence[str] | None = None) -> RewriteSystem:
    """Orient each relation from its shortlex-greater to its smaller side."""
    rank = shortlex_ranking(p.alphabet, ranking)
    bad = [k for k, r in enumerate(p.relations) if r.lhs == r.rhs]
    if bad:
        raise OrientError(bad)
    return RewriteSystem(p.alphabet, tuple(_orient(r.lhs, r.rhs, rank) for r in p.relations))


def enumerate_redexes(s: RewriteSystem, word: Sequence[str]) -> list[tuple[int, int]]:
    """All (rule index, position) redexes, ordered by position then rule."""
    word = tuple(word)
    out = []
    for pos in range(len(word)):
        for k, rule in enumerate(s.rules):
            m = len(rule.lhs)
            if word[pos:pos + m] == rule.lhs:
                out.append((k, pos))
    return out


def _first_redex(rules, word):
    for pos in range(len(word)):
        for k, rule in enumerate(rules):
            if word[pos:pos + len(rule.lhs)] == rule.lhs:
                return k, pos
    return None


def rewrite_at(s: RewriteSystem, word: Word, rule: int, pos: int) -> Word:
    r = s.rules[rule]
    return word[:pos] + r.rhs + word[pos + len(r.lhs):]


def normalize(s: RewriteSystem, word: Sequence[str], max_steps: int = 100_000,
              choose: Callable[[list[tuple[int, int]]], tuple[int, int]] | None = None
              ) -> tuple[Word, Derivation]:
    """Rewrite ``word`` until irreducible.

    By default the leftmost redex (lowest rule index on ties) fires.  A
    ``choose`` callback picks among all current redexes instead.  Raises
    :class:`BudgetExhausted` after ``max_steps`` rewrites.
    """
    word = s.alphabet.check(word)
    start = word
    steps: list[DerivationStep] = []
    while True:
        if choose is None:
            redex = _first_redex(s.rules, word)
        else:
            found = enumerate_redexes(s, word)
            redex = choose(found) if found else None
        if redex is None:
            return word, Derivation(s.as_presentation(), start, tuple(steps), word)
        if len(steps) >= max_steps:
            raise BudgetExhausted(f"normalisation did not finish in {max_steps} steps", word,
                                  Derivation(s.as_presentation(), start, tuple(steps), word))
        k, pos = redex
        word = rewrite_at(s, word, k, pos)
        steps.append(DerivationStep(k, True, pos))


# -- critical pairs ----------------------------------------------------------


@dataclass(frozen=True)
class CriticalPair:
    peak: Word
    left: Word
    right: Word
    rules: tuple[int, int]
    offset: int
    kind: str  # "inner" | "boundary"


def critical_pairs(s: RewriteSystem) -> list[CriticalPair]:
    """Critical pairs from inner and boundary overlaps of left-hand sides.

    For rules i, j: an inner overlap is lhs_j occurring inside lhs_i at some
    offset (i != j); a boundary overlap is a non-empty proper suffix of
    lhs_i equal to a proper prefix of lhs_j.  ``left`` rewrites with rule i,
    ``right`` with rule j.  Triples repeating an earlier (peak, left, right)
    are dropped.
    """
    out: list[CriticalPair] = []
    seen = set()

    def add(cp):
        key = (cp.peak, cp.left, cp.right)
        if key not in seen:
            seen.add(key)
            out.append(cp)

    rules = s.rules
    for i, ri in enumerate(rules):
        li = ri.lhs
        for j, rj in enumerate(rules):
            lj = rj.lhs
            if i != j:
                for off in range(len(li) - len(lj) + 1):
                    if li[off:off + len(lj)] == lj:
                        right = li[:off] + rj.rhs + li[off + len(lj):]
                        add(CriticalPair(li, ri.rhs, right, (i, j), off, "inner"))
            for overlap in range(1, min(len(li), len(lj))):
                if li[-overlap:] == lj[:overlap]:
                    peak = li + lj[overlap:]
                    left = ri.rhs + lj[overlap:]
                    right = li[:-overlap] + rj.rhs
                    add(CriticalPair(peak, left, right, (i, j), len(li) - overlap, "boundary"))
    return out


class Confluence(str, Enum):
    LOCALLY_CONFLUENT = "locally-confluent"
    NOT_LOCALLY_CONFLUENT = "not-locally-confluent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConfluenceResult:
    status: Confluence
    witness: CriticalPair | None = None
    normal_forms: tuple[Word, Word] | None = None
    pairs_checked: int = 0


def check_local_confluence(s: RewriteSystem, join_budget: int = 10_000) -> ConfluenceResult:
    """Join every critical pair by normalising both branches."""
    pairs = critical_pairs(s)
    unknown = None
    for k, cp in enumerate(pairs):
        try:
            left, _ = normalize(s, cp.left, join_budget)
            right, _ = normalize(s, cp.right, join_budget)
        except BudgetExhausted:
            if unknown is None:
                unknown = cp
            continue
        if left != right:
            return ConfluenceResult(Confluence.NOT_LOCALLY_CONFLUENT, cp, (left, right), k + 1)
    if unknown is not None:
        return ConfluenceResult(Confluence.UNKNOWN, unknown, None, len(pairs))
    return ConfluenceResult(Confluence.LOCALLY_CONFLUENT, None, None, len(pairs))


# -- completion --------------------------------------------------------------


class CompletionStatus(str, Enum):
    COMPLETED = "completed"
    FAILED = "failed"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class CompletionResult:
    status: CompletionStatus
    system: RewriteSystem
    reason: str = ""
    normalizations: int = 0


class _Budget(Exception):
    pass


def complete_knuth_bendix(p: Presentation, ranking: Sequence[str] | None = None, *,
                          max_rules: int = 100, max_normalizations: int = 10_000) -> CompletionResult:
    """Shortlex Knuth-Bendix completion with inter-reduction.

    Every critical pair is normalised on both sides; a non-joining pair is
    oriented into a new rule, after which the system is inter-reduced and
    pair enumeration restarts.  Shortlex orientation makes every rewrite
    strictly decreasing, so normalisation always terminates.
    """
    rank = shortlex_ranking(p.alphabet, ranking)
    rules: list[RewriteRule] = []
    for r in p.relations:
        if r.lhs != r.rhs:
            rule = _orient(r.lhs, r.rhs, rank)
            if rule not in rules:
                rules.append(rule)
    counter = [0]

    def nf(rs, word):
        counter[0] += 1
        if counter[0] > max_normalizations:
            raise _Budget()
        while True:
            redex = _first_redex(rs, word)
            if redex is None:
                return word
            k, pos = redex
            word = word[:pos] + rs[k].rhs + word[pos + len(rs[k].lhs):]

    def system():
        return RewriteSystem(p.alphabet, tuple(rules))

    try:
        rules = _interreduce(rules, rank, nf)
        while True:
            added = False
            for cp in critical_pairs(system()):
                left, right = nf(rules, cp.left), nf(rules, cp.right)
                if left == right:
                    continue
                if shortlex_key(left, rank) == shortlex_key(right, rank):
                    return CompletionResult(CompletionStatus.FAILED, system(),
                                            f"unorientable pair {format_word(left)} = {format_word(right)}",
                                            counter[0])
                if len(rules) >= max_rules:
                    return CompletionResult(CompletionStatus.BUDGET_EXHAUSTED, system(),
                                            f"rule budget {max_rules} reached", counter[0])
                rules.append(_orient(left, right, rank))
                rules = _interreduce(rules, rank, nf)
                added = True
                break
            if not added:
                return CompletionResult(CompletionStatus.COMPLETED, system(), "", counter[0])
    except _Budget:
        return CompletionResult(CompletionStatus.BUDGET_EXHAUSTED, system(),
                                f"normalisation budget {max_normalizations} reached", counter[0])


def _interreduce(rules: list[RewriteRule], rank, nf) -> list[RewriteRule]:
    rules = list(rules)
    changed = True
    while changed:
        changed = False
        for idx, rule in enumerate(rules):
            others = rules[:idx] + rules[idx + 1:]
            lhs = nf(others, rule.lhs)
            if lhs != rule.lhs:
                rhs = nf(rules, rule.rhs)
                del rules[idx]
                lhs, rhs = nf(rules, lhs), nf(rules, rhs)
                if lhs != rhs:
                    new = _orient(lhs, rhs, rank)
                    if new not in rules:
                        rules.append(new)
                changed = True
                break
            rhs = nf(rules, rule.rhs)
            if rhs != rule.rhs:
                rules[idx] = RewriteRule(rule.lhs, rhs)
                changed = True
                break
    return rules


# -- termination -------------------------------------------------------------


class Termination(str, Enum):
    TERMINATES = "terminates"
    NON_TERMINATING = "non-terminating"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TerminationVerdict:
    verdict: Termination
    explored: int
    closure_size: int | None = None
    max_chain: int | None = None
    cycle: Derivation | None = None
    prefix: Derivation | None = None


def decide_termination_on_word(s: RewriteSystem, word: Sequence[str], max_closure: int) -> TerminationVerdict:
    """Explore every descendant of ``word`` looking for a rewrite cycle.

    ``Terminates`` when the whole descendant set (at most ``max_closure``
    words) is acyclic; ``NonTerminating`` with a forward-only cycle
    certificate when some descendant rewrites back to itself; ``Unknown``
    otherwise.  Divergence without repetition is never detected.
    """
    root = s.alphabet.check(word)
    edges: dict[Word, list[tuple[DerivationStep, Word]]] = {}
    order = [root]
    seen = {root}
    queue = deque([root])
    complete = True
    while queue:
        w = queue.popleft()
        out = []
        for k, pos in enumerate_redexes(s, w):
            nxt = rewrite_at(s, w, k, pos)
            out.append((DerivationStep(k, True, pos), nxt))
            if nxt not in seen:
                if len(seen) >= max_closure:
                    complete = False
                    continue
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
        edges[w] = out
        if not complete:
            break

    pres = s.as_presentation()
    cyc = _find_cycle(root, edges)
    if cyc is not None:
        prefix_steps, cycle_start, cycle_steps = cyc
        return TerminationVerdict(
            Termination.NON_TERMINATING, len(seen),
            cycle=Derivation(pres, cycle_start, tuple(cycle_steps), cycle_start),
            prefix=Derivation(pres, root, tuple(prefix_steps), cycle_start),
        )
    if not complete:
        return TerminationVerdict(Termination.UNKNOWN, len(seen))
    return TerminationVerdict(Termination.TERMINATES, len(seen), closure_size=len(seen),
                              max_chain=_longest_chain(root, edges))


def _find_cycle(root, edges):
    """Iterative DFS over explored edges; returns (prefix steps, cycle word, cycle steps)."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {root: GREY}
    # stack entries: (word, step that reached it, iterator over its edges)
    stack = [(root, None, iter(edges.get(root, ())))]
    while stack:
        word, _, it = stack[-1]
        advanced = False
        for step, nxt in it:
            c = colour.get(nxt, WHITE)
            if c == GREY:
                path = [entry[1] for entry in stack[1:]] + [step]
                words = [entry[0] for entry in stack]
                k = words.index(nxt)
                return path[:k], nxt, path[k:]
            if c == WHITE and nxt in edges:
                colour[nxt] = GREY
                stack.append((nxt, step, iter(edges[nxt])))
                advanced = True
                break
        if not advanced:
            colour[word] = BLACK
            stack.pop()
    return None


def _longest_chain(root, edges) -> int:
    memo: dict[Word, int] = {}
    # post-order without recursion; the graph is acyclic here
    stack = [(root, False)]
    while stack:
        word, done = stack.pop()
        if word in memo:
            continue
        succ = [nxt for _, nxt in edges.get(word, ())]
        if done:
            memo[word] = max((memo[n] + 1 for n in succ), default=0)
        else:
            stack.append((word, True))
            stack.extend((n, False) for n in succ if n not in memo)
    return memo[root]


@dataclass(frozen=True)
class GlobalTerminationReport:
    """Conjunction of per-word verdicts.  Only the listed words were
    examined, so ``all_terminate`` says nothing about other words."""

    verdicts: tuple[tuple[Word, TerminationVerdict], ...]
    complete: bool = False

    @property
    def all_terminate(self) -> bool:
        return all(v.verdict is Termination.TERMINATES for _, v in self.verdicts)


def check_termination_on_words(s: RewriteSystem, words: Iterable[Sequence[str]], max_closure: int) -> GlobalTerminationReport:
    return GlobalTerminationReport(tuple((tuple(w), decide_termination_on_word(s, w, max_closure)) for w in words))
