"""Brute-force reference implementations used to cross-check the engine.

They share no code with the package: series are plain dicts, reduction is
repeated cancellation, Lyndon words come from rotation comparison.
"""

import itertools
import math


def cancel_until_stable(letters):
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)


def dict_mul(a, b, bound):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            if len(m) <= bound:
                out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def dict_magnus(letters, bound):
    """Expansion with symbols 0..s-1 (letter k -> symbol k-1) as {monomial: coefficient}."""
    out = {(): 1}
    for a in letters:
        s = abs(a) - 1
        if a > 0:
            factor = {(): 1, (s,): 1}
        else:
            factor = {(s,) * d: (-1) ** d for d in range(bound + 1)}
        out = dict_mul(out, factor, bound)
    return out


def is_lyndon_bruteforce(w):
    w = tuple(w)
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_count_bruteforce(p, q, m, n):
    """Lyndon words over p+q letters with m letters among the first p."""
    count = 0
    for xpos in itertools.combinations(range(m + n), m):
        pools = [range(p) if i in xpos else range(p, p + q) for i in range(m + n)]
        for w in itertools.product(*pools):
            if is_lyndon_bruteforce(w):
                count += 1
    return count


def commutator_poly(a, b):
    out = {}
    for (m1, c1), (m2, c2) in itertools.product(a.items(), b.items()):
        out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
        out[m2 + m1] = out.get(m2 + m1, 0) - c1 * c2
    return {m: c for m, c in out.items() if c}


def right_nested_poly(symbols):
    acc = {(symbols[-1],): 1}
    for s in reversed(symbols[:-1]):
        acc = commutator_poly({(s,): 1}, acc)
    return acc


def abelianize(letters, rank):
    v = [0] * rank
    for a in letters:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


def ordinal_value_small(terms):
    """Order-embedding of ordinals below w^w given as {exponent int: coeff} into tuples."""
    top = max(terms, default=0)
    return tuple(terms.get(e, 0) for e in range(top, -1, -1))


def binom(n, k):
    return math.comb(n, k)
