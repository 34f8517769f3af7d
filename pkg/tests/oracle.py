"""Reference implementations kept deliberately separate from the package.

Nothing here imports ``stylus``; tests compare the package against these.
"""

import re


def relations_from_text(text):
    """``rel:`` lines of a presentation file as (lhs, rhs) token lists."""
    rels = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line.startswith("rel:"):
            lhs, rhs = line[4:].split("=")
            rels.append((_tokens(lhs), _tokens(rhs)))
    return rels


def _tokens(text):
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        m = re.fullmatch(r"(.+)\^(\d+)", tok)
        out.extend([m.group(1)] * int(m.group(2)) if m else [tok])
    return out


def replay(relations, start, steps):
    """Apply (rel, forward, pos) steps to ``start``.

    Returns (final_word, None) or (word_so_far, index_of_failing_step).
    """
    word = list(start)
    for k, (rel, forward, pos) in enumerate(steps):
        if not 0 <= rel < len(relations):
            return word, k
        old, new = relations[rel] if forward else relations[rel][::-1]
        if pos < 0 or word[pos:pos + len(old)] != old or pos + len(old) > len(word):
            return word, k
        word = word[:pos] + new + word[pos + len(old):]
    return word, None


def replay_certificate(cert, relations):
    """Replay a certificate dict; index of the first failure, ``len(steps)``
    for an end-word mismatch, or None when valid."""
    steps = [(s["rel"], s["dir"] == "fwd", s["pos"]) for s in cert["steps"]]
    final, bad = replay(relations, _tokens(cert["start"]), steps)
    if bad is not None:
        return bad
    return None if final == _tokens(cert["end"]) else len(steps)


def phi(word, rank):
    """a b^r1 a b^r2 ... a b^rn a, as a string of letters."""
    return "".join("a" + "b" * rank[s] for s in word) + "a"
