"""
Slow, obviously-correct reference implementations.

Nothing here imports the package under test: every value is recomputed from
the definitions with plain loops over ``itertools``.
"""

from __future__ import annotations

import itertools
import math


def all_maps(n):
    return itertools.product(range(n), repeat=n)


def inv_count(values):
    return sum(1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j])


def injective_restrictions(word, t):
    for s in itertools.combinations(range(len(word)), t):
        vals = [word[a] for a in s]
        if len(set(vals)) == t:
            yield vals


def in_parity_monoid(word, t):
    return all(inv_count(v) % 2 == 0 for v in injective_restrictions(word, t))


def descents_with_wrap(seq):
    k = len(seq)
    return sum(1 for i in range(k) if seq[i] > seq[(i + 1) % k])


def ascents_with_wrap(seq):
    k = len(seq)
    return sum(1 for i in range(k) if seq[i] < seq[(i + 1) % k])


def is_op(word):
    return descents_with_wrap(word) <= 1


def is_or(word):
    return descents_with_wrap(word) <= 1 or ascents_with_wrap(word) <= 1


def is_o(word):
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


def is_rev(word):
    return all(word[i] >= word[i + 1] for i in range(len(word) - 1))


def is_m(word):
    return is_o(word) or is_rev(word)


def count_maps(n, pred):
    return sum(1 for w in all_maps(n) if pred(w))


def group_by_definition(n, t):
    return {p for p in itertools.permutations(range(n)) if in_parity_monoid(p, t)}


def rank(word):
    return len(set(word))


def is_alternating(perm):
    return all((perm[i] - perm[i + 1]) % 2 for i in range(len(perm) - 1))


def pap_by_filter(n):
    return {p for p in itertools.permutations(range(n)) if is_alternating(p)}


def pap_formula(n):
    if n % 2 == 0:
        return 2 * math.factorial(n // 2) ** 2
    return math.factorial((n - 1) // 2) * math.factorial((n + 1) // 2)


def generated(gens, n):
    """Naive monoid closure by repeated pairwise products."""
    seen = {tuple(range(n))} | {tuple(g) for g in gens}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[a]] for a in range(n))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen
