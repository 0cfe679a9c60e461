"""Extensional sets of full mappings on ``[n]``, stored as a bitset over mixed-radix indices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .perm import Transformation, format_word
from .tables import decode, encode, rank_table

__all__ = ["MonoidSet", "SCHEMA"]

SCHEMA = "parity-perm/1"


@dataclass(frozen=True, eq=False)
class MonoidSet:
    """
    A finite set of mappings on ``[n]``.

    ``mask[i]`` is true when the mapping with mixed-radix index ``i`` belongs
    to the set.  Two sets over the same ``n`` compare equal exactly when their
    masks agree.
    """

    n: int
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (self.n**self.n,):
            raise ValueError(f"mask must have {self.n}**{self.n} entries")
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def empty(cls, n: int) -> "MonoidSet":
        return cls(n, np.zeros(n**n, dtype=bool))

    @classmethod
    def from_words(cls, n: int, words) -> "MonoidSet":
        mask = np.zeros(n**n, dtype=bool)
        words = _word_array(words, n)
        if len(words):
            mask[encode(words)] = True
        return cls(n, mask)

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __len__(self) -> int:
        return self.size

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def words(self) -> np.ndarray:
        return decode(self.indices, self.n)

    def __iter__(self) -> Iterator[Transformation]:
        for w in self.words():
            yield Transformation(tuple(int(x) for x in w))

    def __contains__(self, alpha) -> bool:
        w = np.asarray(tuple(alpha), dtype=np.int64)
        if w.shape != (self.n,) or w.min() < 0 or w.max() >= self.n:
            return False
        return bool(self.mask[int(encode(w))])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonoidSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.mask, other.mask)

    __hash__ = None

    def __and__(self, other: "MonoidSet") -> "MonoidSet":
        return MonoidSet(self.n, self.mask & other.mask)

    def __or__(self, other: "MonoidSet") -> "MonoidSet":
        return MonoidSet(self.n, self.mask | other.mask)

    def __sub__(self, other: "MonoidSet") -> "MonoidSet":
        return MonoidSet(self.n, self.mask & ~other.mask)

    def issubset(self, other: "MonoidSet") -> bool:
        return not np.any(self.mask & ~other.mask)

    def first_outside(self, other: "MonoidSet") -> Optional[Transformation]:
        """The lowest-index element of ``self`` missing from ``other``, if any."""
        diff = np.flatnonzero(self.mask & ~other.mask)
        if not len(diff):
            return None
        return Transformation(tuple(int(x) for x in decode(diff[0], self.n)))

    def rank_slice(self, low: int = 1, high: Optional[int] = None) -> "MonoidSet":
        """Elements whose rank lies in ``[low, high]``."""
        high = self.n if high is None else high
        r = rank_table(self.n, allow_large=True)
        return MonoidSet(self.n, self.mask & (r >= low) & (r <= high))

    @property
    def rank_histogram(self) -> dict[int, int]:
        r = rank_table(self.n, allow_large=True)[self.mask]
        counts = np.bincount(r, minlength=self.n + 1)
        return {k: int(counts[k]) for k in range(1, self.n + 1) if counts[k]}

    def is_closed(self, absorbed_below: int = 0) -> bool:
        """
        Check closure under composition over all pairs.

        With ``absorbed_below=k`` the set must contain every mapping of rank
        below ``k``; pairs with such a factor are then skipped, since their
        product has rank below ``k`` too.
        """
        if absorbed_below > 1:
            low = rank_table(self.n, allow_large=True) < absorbed_below
            if not self.mask[low].all():
                return False
        words = self.rank_slice(max(absorbed_below, 1)).words()
        for w in words:
            # each row x of `words` followed by w
            if not self.mask[encode(w[words])].all():
                return False
        return True

    def to_dict(self, sample: int = 10) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "size": self.size,
            "rank_histogram": {str(k): v for k, v in self.rank_histogram.items()},
            "sample_elements": [format_word(w) for w in self.words()[:sample]],
        }

    def dump(self) -> Iterator[str]:
        """One image word per line, in index order."""
        for w in self.words():
            yield format_word(w)


def _word_array(words, n: int) -> np.ndarray:
    if isinstance(words, np.ndarray):
        arr = words.astype(np.uint8, copy=False)
    else:
        arr = np.array([tuple(w) for w in words], dtype=np.uint8).reshape(-1, n)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ValueError(f"expected words of length {n}")
    return arr
