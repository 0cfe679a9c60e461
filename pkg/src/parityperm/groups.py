"""
Groups of permutations whose restrictions of a fixed width are all even.

For a width ``t`` the group consists of the permutations of ``[n]`` whose
restriction to every ``t``-element subset has an even number of inversions.
Three routes compute it:

* :func:`parity_group_bruteforce` tests the definition on every candidate
  permutation (all of ``S_n``, or a pruned candidate list);
* :func:`parity_group` builds the answer directly from its known shape
  (rotations/reflections by the residue of ``t`` mod 4, half of the
  parity-alternating permutations for ``t = n - 1``, ``A_n`` for ``t = n``);
* :func:`is_parity_group_member` is a scalar short-circuiting membership test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .perm import (
    MAX_MEMBER_N, CapError, Transformation, _as_transformation, compose, cyclic_group,
    dihedral_group, format_word, identity, inversions, reversal,
)
from .tables import (
    count_even_permutations, encode, inversion_parity_rows, permutation_array,
    restriction_parity_masks,
)

__all__ = [
    "GroupResult", "STRUCTURE_TAGS", "MAX_BRUTE_N", "MAX_PRUNED_N", "MAX_PAP_N",
    "is_parity_group_member", "parity_group_bruteforce", "parity_group", "predicted_group",
    "is_pap", "pap_count", "pap_enumerate", "all_deletions_even", "all_deletions_odd",
    "pap_involution", "lies_between", "inv_on", "check_group_axioms", "structure_tag",
]

STRUCTURE_TAGS = ("trivial", "two-element", "cyclic", "dihedral", "alternating", "symmetric", "pap-half", "other")

MAX_BRUTE_N = 10
MAX_PRUNED_N = 12
MAX_PAP_N = 12
# element lists above this order are not materialised by the fast path
MATERIALISE_LIMIT = 400_000
JSON_ELEMENT_LIMIT = 10_000


@dataclass(frozen=True, eq=False)
class GroupResult:
    n: int
    t: int
    order: int
    structure_tag: str
    # rows sorted by mixed-radix index; None when only counted
    words: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def elements(self) -> frozenset[Transformation]:
        if self.words is None:
            raise ValueError(f"group of order {self.order} was counted, not materialised")
        return frozenset(Transformation(tuple(int(x) for x in w)) for w in self.words)

    def same_elements(self, other: "GroupResult") -> bool:
        if self.words is None or other.words is None:
            raise ValueError("both groups must be materialised to compare elements")
        return self.n == other.n and np.array_equal(self.words, other.words)

    def to_dict(self, elements: Optional[bool] = None) -> dict:
        out = {
            "schema": "parity-perm/1",
            "n": self.n,
            "t": self.t,
            "order": self.order,
            "structure_tag": self.structure_tag,
        }
        if elements is None:
            elements = self.words is not None and self.order <= JSON_ELEMENT_LIMIT
        if elements and self.words is not None:
            out["elements"] = [format_word(w) for w in self.words]
        return out


def _sorted_words(words: np.ndarray) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint8)
    if not len(words):
        return words
    idx = encode(words)
    order = np.argsort(idx, kind="stable")
    unique = np.concatenate([[True], idx[order][1:] != idx[order][:-1]])
    return words[order][unique]


def _words_of(perms) -> np.ndarray:
    return _sorted_words(np.array([p.images for p in perms], dtype=np.uint8))


def _require_permutation(alpha: Transformation) -> None:
    if not alpha.is_permutation:
        raise ValueError(f"{alpha} is not a permutation")


def _check_width(n: int, t: int) -> None:
    if not 1 <= t <= n:
        raise ValueError(f"width t={t} must satisfy 1 <= t <= n={n}")


def _fail_fast_subsets(n: int, t: int) -> Iterator[tuple[int, ...]]:
    # cyclic windows first: they carry the odd restrictions of rotations
    # and of most non-members, so a rejection usually comes early
    for a in range(n):
        yield tuple(sorted((a + k) % n for k in range(t)))
    yield from itertools.combinations(range(n), t)


def is_parity_group_member(alpha, t: int) -> bool:
    """Whether every width-``t`` restriction of the permutation ``alpha`` is even."""
    alpha = _as_transformation(alpha)
    _require_permutation(alpha)
    n = alpha.n
    _check_width(n, t)
    if n > MAX_MEMBER_N:
        raise CapError(f"membership tests are capped at n <= {MAX_MEMBER_N}")
    img = alpha.images
    for subset in _fail_fast_subsets(n, t):
        if inversions(tuple(img[a] for a in subset)) % 2:
            return False
    return True


def _filter_by_width(cands: np.ndarray, t: int, chunk: int = 1 << 18) -> np.ndarray:
    keep = []
    for start in range(0, len(cands), chunk):
        block = cands[start:start + chunk]
        keep.append(block[restriction_parity_masks(block, [t])[t]])
    if not keep:
        return cands[:0]
    return np.vstack(keep)


def parity_group_bruteforce(n: int, t: int, pruned: bool = False) -> GroupResult:
    """
    Test the defining condition on every candidate permutation.

    Unpruned, the candidates are all of ``S_n`` (``n <= 10``).  Pruned, the
    candidates are ``D_n`` when ``2 <= t <= n - 2`` and the parity-alternating
    permutations when ``t = n - 1``; every candidate is still tested against
    the definition.  ``t = n`` or ``t = 1`` with ``n > 9`` is counted by
    streaming without materialising elements.
    """
    _check_width(n, t)
    if not pruned:
        if n > MAX_BRUTE_N:
            raise CapError(f"unpruned scan of S_{n} exceeds the cap n <= {MAX_BRUTE_N}")
        words = _filter_by_width(permutation_array(n), t)
        return _result(n, t, _sorted_words(words))
    if n > MAX_PRUNED_N:
        raise CapError(f"pruned scan exceeds the cap n <= {MAX_PRUNED_N}")
    if 2 <= t <= n - 2:
        cands = _words_of(dihedral_group(n))
    elif t == n - 1 and n >= 3:
        cands = pap_enumerate(n)
    elif n <= 9:
        cands = permutation_array(n)
    elif t == 1:
        return GroupResult(n, t, math.factorial(n), "symmetric")
    else:
        return GroupResult(n, t, count_even_permutations(n), "alternating")
    return _result(n, t, _sorted_words(_filter_by_width(cands, t)))


def predicted_group(n: int, t: int) -> frozenset[Transformation]:
    """The group for ``2 <= t <= n - 2`` as a function of ``t mod 4``."""
    if not 2 <= t <= n - 2:
        raise ValueError(f"the residue description needs 2 <= t <= n - 2, got t={t}, n={n}")
    r = t % 4
    if r == 2:
        return frozenset({identity(n)})
    if r == 3:
        return cyclic_group(n)
    if r == 0:
        return frozenset({identity(n), reversal(n)})
    return dihedral_group(n)


def parity_group(n: int, t: int) -> GroupResult:
    """Construct the group directly from its known shape."""
    _check_width(n, t)
    if t == 1:
        if math.factorial(n) > MATERIALISE_LIMIT:
            return GroupResult(n, t, math.factorial(n), "symmetric")
        return _result(n, t, permutation_array(n))
    if t == n:
        if math.factorial(n) // 2 > MATERIALISE_LIMIT:
            return GroupResult(n, t, count_even_permutations(n), "alternating")
        perms = permutation_array(n)
        return _result(n, t, perms[~inversion_parity_rows(perms)])
    if t == n - 1:
        pap = pap_enumerate(n)
        without_zero = pap[:, 1:]
        return _result(n, t, pap[~inversion_parity_rows(without_zero)])
    return _result(n, t, _words_of(predicted_group(n, t)))


def _result(n: int, t: int, words: np.ndarray) -> GroupResult:
    words = _sorted_words(words) if len(words) else words
    return GroupResult(n, t, len(words), structure_tag(n, words), words)


def structure_tag(n: int, words: np.ndarray) -> str:
    """Name the group by comparing its element set with explicitly built groups."""
    words = _sorted_words(words)
    named = [
        ("trivial", frozenset({identity(n)})),
        ("two-element", frozenset({identity(n), reversal(n)})),
        ("cyclic", cyclic_group(n)),
        ("dihedral", dihedral_group(n)),
    ]
    for tag, group in named:
        if len(group) == len(words) and np.array_equal(_words_of(group), words):
            return tag
    fact = math.factorial(n)
    if n <= 9:
        perms = permutation_array(n)
        if len(words) == fact and np.array_equal(words, perms):
            return "symmetric"
        if len(words) == fact // 2 and np.array_equal(words, perms[~inversion_parity_rows(perms)]):
            return "alternating"
    if n >= 3 and n <= MAX_PAP_N and len(words) * 2 == pap_count(n):
        pap = pap_enumerate(n)
        half = pap[~inversion_parity_rows(pap[:, 1:])]
        if np.array_equal(words, half):
            return "pap-half"
    return "other"


def check_group_axioms(result: GroupResult, chunk: int = 16, pairwise_limit: int = 2048) -> bool:
    """
    Identity, inverses and closure under composition, checked extensionally.

    Up to ``pairwise_limit`` elements every product is formed.  Larger
    groups are compared with the monoid that their own elements generate,
    which equals the set exactly when it is closed.
    """
    words = result.words
    n = result.n
    if words is None:
        raise ValueError("group must be materialised")
    idx = encode(words)
    members = np.sort(idx)

    def contains(values: np.ndarray) -> bool:
        pos = np.searchsorted(members, values)
        pos = np.minimum(pos, len(members) - 1)
        return bool(np.all(members[pos] == values))

    if not contains(encode(np.arange(n, dtype=np.uint8)[None, :])):
        return False
    if not contains(encode(np.argsort(words, axis=1).astype(np.uint8))):
        return False
    if len(words) > pairwise_limit:
        from .closure import is_composition_closed
        from .mapset import MonoidSet
        return is_composition_closed(MonoidSet.from_words(n, words))
    for start in range(0, len(words), chunk):
        block = words[start:start + chunk]
        # x followed by g, for every x in the group and g in the block
        prod = block[np.arange(len(block))[:, None, None], words[None, :, :]]
        if not contains(encode(prod).ravel()):
            return False
    return True


def is_pap(alpha) -> bool:
    """Consecutive images alternate in parity; the pair (n-1, 0) is not considered."""
    img = _as_transformation(alpha).images
    return all((img[a] - img[a + 1]) % 2 for a in range(len(img) - 1))


def pap_count(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        return 2 * math.factorial(n // 2) ** 2
    return math.factorial((n - 1) // 2) * math.factorial((n + 1) // 2)


def pap_enumerate(n: int) -> np.ndarray:
    """
    All parity-alternating permutations, sorted by index.

    Parity alternates along positions, so the even values fill one parity
    class of positions and the odd values the other: both ways round when
    ``n`` is even, only even-on-even when ``n`` is odd.  The even and odd
    values are then arranged independently.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_PAP_N:
        raise CapError(f"parity-alternating enumeration exceeds the cap n <= {MAX_PAP_N}")
    evens = np.arange(0, n, 2, dtype=np.uint8)
    odds = np.arange(1, n, 2, dtype=np.uint8)
    even_arr = evens[permutation_array(len(evens))] if len(evens) else np.zeros((1, 0), np.uint8)
    odd_arr = odds[permutation_array(len(odds))] if len(odds) else np.zeros((1, 0), np.uint8)
    blocks = []
    even_pos = np.arange(0, n, 2)
    odd_pos = np.arange(1, n, 2)
    layouts = [(even_pos, odd_pos)]
    if n % 2 == 0:
        layouts.append((odd_pos, even_pos))
    for pos_e, pos_o in layouts:
        block = np.empty((len(even_arr) * len(odd_arr), n), dtype=np.uint8)
        block[:, pos_e] = np.repeat(even_arr, len(odd_arr), axis=0)
        block[:, pos_o] = np.tile(odd_arr, (len(even_arr), 1))
        blocks.append(block)
    return _sorted_words(np.vstack(blocks))


def inv_on(alpha, subset) -> int:
    """Inversions of ``alpha`` restricted to ``subset``."""
    img = _as_transformation(alpha).images
    return inversions(tuple(img[a] for a in sorted(subset)))


def _deletion_parities(alpha: Transformation) -> list[int]:
    _require_permutation(alpha)
    n = alpha.n
    if n < 3:
        raise ValueError("deletion parities need n >= 3")
    return [inv_on(alpha, [b for b in range(n) if b != a]) % 2 for a in range(n)]


def all_deletions_even(alpha) -> bool:
    """Width ``n - 1`` membership: every restriction omitting one point is even."""
    return not any(_deletion_parities(_as_transformation(alpha)))


def all_deletions_odd(alpha) -> bool:
    """Every restriction omitting one point is odd."""
    return all(_deletion_parities(_as_transformation(alpha)))


def pap_involution(alpha) -> Transformation:
    """Precompose with the transposition of 1 and 3: ``a -> alpha(xi(a))``."""
    alpha = _as_transformation(alpha)
    n = alpha.n
    if n < 4:
        raise ValueError("the swap of 1 and 3 needs n >= 4")
    xi = list(range(n))
    xi[1], xi[3] = 3, 1
    return compose(Transformation(tuple(xi)), alpha)


def lies_between(alpha, a: int, b: int) -> bool:
    """
    Whether ``alpha(b)`` lies between ``alpha(a)`` and ``alpha(a + 1 mod n)``.

    Without wraparound this means strictly inside the interval spanned by the
    two values; for ``a = n - 1`` it means outside that interval.
    """
    alpha = _as_transformation(alpha)
    n = alpha.n
    nxt = (a + 1) % n
    if b in (a, nxt):
        raise ValueError("b must differ from a and a + 1")
    lo, hi = sorted((alpha(a), alpha(nxt)))
    inside = lo < alpha(b) < hi
    return inside if a < nxt else not inside
