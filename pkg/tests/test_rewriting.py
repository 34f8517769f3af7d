import itertools
import random

import pytest

from stylus.catalog import get_named
from stylus.errors import BudgetExhausted, InvalidInput, OrientError
from stylus.presentations import Presentation, check_derivation
from stylus.rewriting import (CompletionStatus, Confluence, RewriteSystem, Termination, check_local_confluence,
                              check_termination_on_words, complete_knuth_bendix, critical_pairs,
                              decide_termination_on_word, enumerate_redexes, normalize, orient_presentation,
                              parse_rewrite_system)
from stylus.words import count_occurrences

AB = RewriteSystem.build("a b", [("a b", "b a")])
BC = RewriteSystem.build("b c", [("b c", "1")])


def w(text):
    return tuple(text)


def words_upto(alphabet, n):
    return [tuple(t) for k in range(n + 1) for t in itertools.product(alphabet, repeat=k)]


def test_parse_rewriting_kind():
    s = parse_rewrite_system("kind: rewriting\ngens: a b\nrel: a b = b a\n")
    assert [(r.lhs, r.rhs) for r in s.rules] == [(w("ab"), w("ba"))]


def test_empty_lhs_rejected():
    with pytest.raises(InvalidInput):
        RewriteSystem.build("a", [("1", "a")])


def test_orient_examples():
    comm = get_named("commutative").presentation
    assert [(r.lhs, r.rhs) for r in orient_presentation(comm, ["b", "a"]).rules] == [(w("ab"), w("ba"))]
    bic = get_named("bicyclic").presentation
    assert [(r.lhs, r.rhs) for r in orient_presentation(bic).rules] == [(w("bc"), ())]
    with pytest.raises(OrientError):
        orient_presentation(Presentation.build("a", [("a", "a")]))


def test_redex_examples():
    assert enumerate_redexes(AB, w("aab")) == [(0, 1)]
    assert enumerate_redexes(AB, w("bbb")) == []
    assert enumerate_redexes(BC, w("bbcc")) == [(0, 1)]


def test_normalize_examples():
    nf, d = normalize(AB, w("aab"))
    assert nf == w("baa") and len(d) == 2 and check_derivation(d).ok
    assert all(s.forward for s in d.steps)
    nf, d = normalize(AB, w("baa"))
    assert nf == w("baa") and len(d) == 0
    nf, d = normalize(BC, w("bbcc"))
    assert nf == () and len(d) == 2


def test_normalize_budget():
    grow = RewriteSystem.build("a", [("a", "a a")])
    with pytest.raises(BudgetExhausted) as info:
        normalize(grow, w("a"), max_steps=5)
    assert info.value.word == ("a",) * 6


def _brute_force_pairs(s):
    """Every peak built from two overlapping left-hand sides, with its two
    one-step rewrites as an unordered pair."""
    out = set()
    for i, r1 in enumerate(s.rules):
        for j, r2 in enumerate(s.rules):
            l1, l2 = r1.lhs, r2.lhs
            # l2 placed at offset ``off`` inside or hanging off the right end of l1
            for off in range(len(l1)):
                if i == j and off == 0:
                    continue
                overlap = l1[off:off + len(l2)]
                if l2[:len(overlap)] != overlap:
                    continue
                peak = l1 + l2[len(overlap):]
                left = r1.rhs + peak[len(l1):]
                right = peak[:off] + r2.rhs + peak[off + len(l2):]
                out.add((peak, frozenset((left, right))))
    return out


@pytest.mark.parametrize("rules", [
    [("a b", "b a")], [("b c", "1")], [("a a", "a")], [("a b a", "b"), ("b a", "a")],
])
def test_critical_pairs_against_brute_force(rules):
    s = RewriteSystem.build("a b c", rules)
    got = {(cp.peak, frozenset((cp.left, cp.right))) for cp in critical_pairs(s)}
    assert got == _brute_force_pairs(s)


def test_critical_pair_examples():
    assert critical_pairs(AB) == []
    assert critical_pairs(BC) == []
    (cp,) = critical_pairs(RewriteSystem.build("a", [("a a", "a")]))
    assert (cp.peak, cp.left, cp.right) == (w("aaa"), w("aa"), w("aa"))


def test_confluence_examples():
    assert check_local_confluence(AB).status is Confluence.LOCALLY_CONFLUENT
    assert check_local_confluence(BC).status is Confluence.LOCALLY_CONFLUENT
    res = check_local_confluence(RewriteSystem.build("a b c", [("a", "b"), ("a", "c")]))
    assert res.status is Confluence.NOT_LOCALLY_CONFLUENT and res.witness.peak == ("a",)


def test_confluence_unknown_on_budget():
    s = RewriteSystem.build("a b", [("a b", "b a b"), ("b", "b b")])
    assert check_local_confluence(s, join_budget=3).status is Confluence.UNKNOWN


def test_completion_examples():
    res = complete_knuth_bendix(get_named("commutative").presentation, ["b", "a"], max_rules=10,
                                max_normalizations=1000)
    assert res.status is CompletionStatus.COMPLETED
    assert [(r.lhs, r.rhs) for r in res.system.rules] == [(w("ab"), w("ba"))]
    res = complete_knuth_bendix(get_named("bicyclic").presentation, max_rules=10, max_normalizations=1000)
    assert [(r.lhs, r.rhs) for r in res.system.rules] == [(w("bc"), ())]
    res = complete_knuth_bendix(Presentation.build("a", [("a a", "a")]), max_rules=10, max_normalizations=1000)
    assert res.status is CompletionStatus.COMPLETED
    assert [(r.lhs, r.rhs) for r in res.system.rules] == [(w("aa"), w("a"))]


def test_completion_adds_rules_and_is_confluent():
    # ab = 1 and ba = 1 present the infinite cyclic group
    p = Presentation.build("a b", [("a b", "1"), ("b a", "1")], kind="monoid")
    res = complete_knuth_bendix(p, max_rules=10, max_normalizations=1000)
    assert res.status is CompletionStatus.COMPLETED
    assert check_local_confluence(res.system).status is Confluence.LOCALLY_CONFLUENT
    p = Presentation.build("a b", [("a a a", "1"), ("b b", "1"), ("a b a b", "1")], kind="monoid")
    res = complete_knuth_bendix(p, max_rules=30, max_normalizations=10_000)
    assert res.status is CompletionStatus.COMPLETED
    # the symmetric group on three letters has six elements
    assert len({normalize(res.system, u)[0] for u in words_upto("ab", 6)}) == 6


def test_completion_budget():
    p = Presentation.build("a b", [("a b a", "b a b")])
    res = complete_knuth_bendix(p, max_rules=2, max_normalizations=1000)
    assert res.status is CompletionStatus.BUDGET_EXHAUSTED


def test_termination_examples():
    loop = RewriteSystem.build("a", [("a", "a")])
    v = decide_termination_on_word(loop, w("a"), max_closure=10)
    assert v.verdict is Termination.NON_TERMINATING
    assert v.cycle.start == v.cycle.end and len(v.cycle) >= 1
    assert all(s.forward for s in v.cycle.steps) and check_derivation(v.cycle).ok
    v = decide_termination_on_word(AB, w("aab"), max_closure=10)
    assert (v.verdict, v.closure_size, v.max_chain) == (Termination.TERMINATES, 3, 2)
    grow = RewriteSystem.build("a", [("a", "a a")])
    assert decide_termination_on_word(grow, w("a"), max_closure=50).verdict is Termination.UNKNOWN


def test_termination_cycle_after_prefix():
    s = RewriteSystem.build("a b c", [("a", "b"), ("b", "c"), ("c", "b")])
    v = decide_termination_on_word(s, w("a"), max_closure=10)
    assert v.verdict is Termination.NON_TERMINATING
    assert check_derivation(v.prefix).ok and v.prefix.end == v.cycle.start


def test_global_termination_is_only_over_listed_words():
    report = check_termination_on_words(AB, [w("ab"), w("ba")], max_closure=10)
    assert report.all_terminate and not report.complete


def test_normal_form_characterisation():
    for u in words_upto("ab", 8):
        nf, _ = normalize(AB, u)
        assert nf == ("b",) * count_occurrences(u, "b") + ("a",) * count_occurrences(u, "a")


@pytest.mark.parametrize("s", [AB, BC, RewriteSystem.build("a", [("a a", "a")])])
def test_newman_redex_choice_does_not_matter(s):
    letters = tuple(s.alphabet)
    for u in words_upto(letters, 6):
        assert decide_termination_on_word(s, u, max_closure=10_000).verdict is Termination.TERMINATES
    assert check_local_confluence(s).status is Confluence.LOCALLY_CONFLUENT
    rng = random.Random(3)
    for seed in range(100):
        rng.seed(seed)
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 8)))
        expected, _ = normalize(s, u)
        got, d = normalize(s, u, choose=rng.choice)
        assert got == expected and check_derivation(d).ok
