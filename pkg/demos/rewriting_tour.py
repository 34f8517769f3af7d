"""Normal forms, overlaps and termination on a few tiny systems."""

import itertools

from stylus import (Presentation, RewriteSystem, check_local_confluence, complete_knuth_bendix,
                    critical_pairs, decide_termination_on_word, get_named, normalize)
from stylus.words import format_word

comm = get_named("commutative").presentation
done = complete_knuth_bendix(comm, ["b", "a"], max_rules=10, max_normalizations=1000)
print(done.status.value, [str(r) for r in done.system.rules])
for word in ("a a b", "b a b a", "a b a b a b"):
    nf, d = normalize(done.system, tuple(word.split()))
    print(f"  {word:12s} -> {format_word(nf):12s} in {len(d)} steps")

# aa -> a overlaps itself; the overlap joins
idem = RewriteSystem.build("a", [("a a", "a")])
for cp in critical_pairs(idem):
    print("peak", format_word(cp.peak), "->", format_word(cp.left), "|", format_word(cp.right))
print("aa -> a:", check_local_confluence(idem).status.value)

# S3 as a monoid; completion finds a finite confluent system
s3 = Presentation.build("a b", [("a a a", "1"), ("b b", "1"), ("a b a b", "1")], kind="monoid")
res = complete_knuth_bendix(s3, max_rules=30, max_normalizations=10_000)
print(res.status.value, len(res.system.rules), "rules")
elements = {normalize(res.system, w)[0] for n in range(7) for w in itertools.product("ab", repeat=n)}
print("elements:", sorted(format_word(e) for e in elements))

for rules, word in ([("a", "a")], "a"), ([("a b", "b a")], "a a b"), ([("a", "a a")], "a"):
    s = RewriteSystem.build("a b", rules)
    v = decide_termination_on_word(s, tuple(word.split()), max_closure=200)
    print(rules, word, "->", v.verdict.value, "explored", v.explored)
