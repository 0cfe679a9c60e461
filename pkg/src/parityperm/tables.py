"""
Vectorised evaluation over whole blocks of mappings.

Every full mapping on ``[n]`` has a mixed-radix index: the image word read as
a base-``n`` numeral, most significant digit first.  Index order is therefore
lexicographic order on image words, and it is the canonical stream order used
for witnesses and reports.

The functions here take a 2-D ``uint8`` array of image words (one row per
mapping) and return one boolean per row.  They back the exhaustive checks;
the scalar predicates in :mod:`parityperm.perm` and
:mod:`parityperm.orientation` are kept as independent references.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TypeVar

import numpy as np

from .perm import CapError

T = TypeVar("T")

__all__ = [
    "MAX_TABLE_N", "DEFAULT_CHUNK",
    "radix_weights", "encode", "decode", "word_block", "iter_blocks", "scan_all", "set_workers",
    "ranks", "order_preserving", "order_reversing", "cyclic", "anticyclic",
    "restriction_parity_masks", "inversion_parity_rows", "permutation_array",
    "all_words", "rank_table", "count_even_permutations",
    "via_injective_pairs", "via_injective_triples", "via_injective_quadruples",
]

# n^n words are scanned above this only with an explicit opt-in
MAX_TABLE_N = 7
DEFAULT_CHUNK = 1 << 20


def radix_weights(n: int) -> np.ndarray:
    return n ** np.arange(n - 1, -1, -1, dtype=np.int64)


def encode(words: np.ndarray) -> np.ndarray:
    """Mixed-radix index of each row of ``words``."""
    words = np.asarray(words)
    n = words.shape[-1]
    return words.astype(np.int64) @ radix_weights(n)


def decode(indices, n: int) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64)
    out = np.empty(idx.shape + (n,), dtype=np.uint8)
    for pos in range(n - 1, -1, -1):
        out[..., pos] = idx % n
        idx = idx // n
    return out


def word_block(n: int, start: int, stop: int) -> np.ndarray:
    return decode(np.arange(start, stop, dtype=np.int64), n)


def iter_blocks(n: int, chunk: int = DEFAULT_CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, words)`` blocks covering all ``n**n`` mappings in index order."""
    total = n**n
    for start in range(0, total, chunk):
        yield start, word_block(n, start, min(start + chunk, total))


_workers = 1


def set_workers(count: int) -> None:
    """Cap the number of threads used by :func:`scan_all`."""
    global _workers
    if count < 1:
        raise ValueError("worker count must be positive")
    _workers = count


def scan_all(n: int, fn: Callable[[np.ndarray], T]) -> list[tuple[int, T]]:
    """
    Apply ``fn`` to index-range shards of all ``n**n`` words.

    Results come back as ``(start, value)`` in index order whatever the
    number of workers, so callers can stitch them together deterministically.
    """
    total = n**n
    chunk = min(DEFAULT_CHUNK, -(-total // _workers))
    starts = range(0, total, chunk)

    def run(start: int) -> tuple[int, T]:
        return start, fn(word_block(n, start, min(start + chunk, total)))

    if _workers == 1 or len(starts) == 1:
        return [run(s) for s in starts]
    with ThreadPoolExecutor(max_workers=_workers) as pool:
        return list(pool.map(run, starts))


def _check_table_n(n: int, allow_large: bool) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_TABLE_N and not (allow_large and n == MAX_TABLE_N + 1):
        raise CapError(
            f"exhaustive scan of all {n}^{n} mappings exceeds the cap n <= {MAX_TABLE_N}"
            + (" (n = 8 needs allow_large=True)" if n == MAX_TABLE_N + 1 else "")
        )


@lru_cache(maxsize=4)
def all_words(n: int) -> np.ndarray:
    _check_table_n(n, allow_large=False)
    out = word_block(n, 0, n**n)
    out.setflags(write=False)
    return out


def ranks(words: np.ndarray) -> np.ndarray:
    s = np.sort(words, axis=1)
    return (1 + np.count_nonzero(s[:, 1:] != s[:, :-1], axis=1)).astype(np.uint8)


@lru_cache(maxsize=4)
def rank_table(n: int, allow_large: bool = False) -> np.ndarray:
    """Rank of every mapping on ``[n]``, indexed by mixed-radix index."""
    _check_table_n(n, allow_large)
    out = np.empty(n**n, dtype=np.uint8)
    for start, r in scan_all(n, ranks):
        out[start:start + len(r)] = r
    out.setflags(write=False)
    return out


def order_preserving(words: np.ndarray) -> np.ndarray:
    return np.all(words[:, :-1] <= words[:, 1:], axis=1)


def order_reversing(words: np.ndarray) -> np.ndarray:
    return np.all(words[:, :-1] >= words[:, 1:], axis=1)


def _cyclic_count(words: np.ndarray, op) -> np.ndarray:
    nxt = np.roll(words, -1, axis=1)
    return np.count_nonzero(op(words, nxt), axis=1)


def cyclic(words: np.ndarray) -> np.ndarray:
    """At most one cyclic descent, the wrap pair included."""
    return _cyclic_count(words, np.greater) <= 1


def anticyclic(words: np.ndarray) -> np.ndarray:
    return _cyclic_count(words, np.less) <= 1


def restriction_parity_masks(words: np.ndarray, widths: Iterable[int]) -> dict[int, np.ndarray]:
    """
    For each requested width ``t``: whether every injective restriction of
    width ``t`` has an even number of inversions.

    Subsets are grown one element at a time in a depth-first walk, carrying
    the running injectivity and inversion parity, so each subset costs one
    pass per element already in it.
    """
    widths = sorted(set(widths))
    m, n = words.shape
    out = {t: np.ones(m, dtype=bool) for t in widths}
    if not widths:
        return out
    top = widths[-1]
    cols = [words[:, j] for j in range(n)]
    gt = {}
    ne = {}
    for i, j in itertools.combinations(range(n), 2):
        gt[i, j] = cols[i] > cols[j]
        ne[i, j] = cols[i] != cols[j]
    wanted = set(widths)

    def walk(subset: tuple[int, ...], inj: np.ndarray, odd: np.ndarray) -> None:
        t = len(subset)
        if t in wanted:
            out[t] &= ~(inj & odd)
        if t == top:
            return
        for j in range(subset[-1] + 1 if subset else 0, n):
            new_inj = inj.copy()
            new_odd = odd.copy()
            for i in subset:
                new_inj &= ne[i, j]
                new_odd ^= gt[i, j]
            if not new_inj.any():
                # nothing injective below here; widths still get vacuous truth
                continue
            walk(subset + (j,), new_inj, new_odd)

    walk((), np.ones(m, dtype=bool), np.zeros(m, dtype=bool))
    return out


@lru_cache(maxsize=8)
def permutation_array(n: int) -> np.ndarray:
    """All permutations of ``[n]`` as rows, in lexicographic order."""
    if n > 10:
        raise CapError(f"materialising S_{n} exceeds the cap n <= 10")
    perms = np.zeros((1, 0), dtype=np.uint8)
    for k in range(1, n + 1):
        blocks = []
        for first in range(k):
            rest = np.array([v for v in range(k) if v != first], dtype=np.uint8)
            sub = rest[perms] if perms.shape[1] else np.zeros((1, 0), dtype=np.uint8)
            blocks.append(np.hstack([np.full((len(sub), 1), first, dtype=np.uint8), sub]))
        perms = np.vstack(blocks)
    perms.setflags(write=False)
    return perms


def inversion_parity_rows(perms: np.ndarray) -> np.ndarray:
    m, n = perms.shape
    odd = np.zeros(m, dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        odd ^= perms[:, i] > perms[:, j]
    return odd


def count_even_permutations(n: int, suffix: int = 8) -> int:
    """
    Count even permutations of ``[n]`` by streaming ``S_n`` in blocks.

    Each block fixes the first ``n - suffix`` images and ranges over every
    arrangement of the rest.  The parity of each row is the parity of the
    fixed prefix (its own inversions plus those against the remaining values)
    combined with the parity of the arrangement, evaluated row by row.
    """
    suffix = min(suffix, n)
    tail = permutation_array(suffix)
    tail_odd = inversion_parity_rows(tail)
    prefix_len = n - suffix
    even = 0
    for prefix in itertools.permutations(range(n), prefix_len):
        inv = sum(1 for i in range(prefix_len) for j in range(i + 1, prefix_len) if prefix[i] > prefix[j])
        rest = [v for v in range(n) if v not in prefix]
        cross = sum(1 for v in prefix for w in rest if v > w)
        block_odd = tail_odd ^ bool((inv + cross) & 1)
        even += len(block_odd) - int(np.count_nonzero(block_odd))
    return even


def _injective(words: np.ndarray, subset: tuple[int, ...]) -> np.ndarray:
    inj = np.ones(len(words), dtype=bool)
    for i, j in itertools.combinations(subset, 2):
        inj &= words[:, i] != words[:, j]
    return inj


def via_injective_pairs(words: np.ndarray) -> np.ndarray:
    """Every injective width-2 restriction is increasing."""
    n = words.shape[1]
    ok = np.ones(len(words), dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        ok &= ~(words[:, i] > words[:, j])
    return ok


def via_injective_triples(words: np.ndarray) -> np.ndarray:
    """Every injective width-3 restriction is one of the three cyclic patterns."""
    n = words.shape[1]
    ok = np.ones(len(words), dtype=bool)
    for s in itertools.combinations(range(n), 3):
        sub = words[:, s]
        ok &= ~(_injective(words, s) & ~cyclic(sub))
    return ok


def via_injective_quadruples(words: np.ndarray, kind: str) -> np.ndarray:
    """Every injective width-4 restriction is oriented (``kind="oriented"``) or monotone."""
    n = words.shape[1]
    ok = np.ones(len(words), dtype=bool)
    for s in itertools.combinations(range(n), 4):
        sub = words[:, s]
        if kind == "oriented":
            good = cyclic(sub) | anticyclic(sub)
        elif kind == "monotone":
            good = order_preserving(sub) | order_reversing(sub)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        ok &= ~(_injective(words, s) & ~good)
    return ok

