"""
Full mappings, permutations and partial injections on ``[n] = {0, ..., n-1}``.

A mapping is stored as its image word: ``Transformation((1, 2, 3, 0))`` sends
``a`` to ``images[a]``.  Composition is written left-to-right:
``compose(first, second)`` applies ``first`` and then ``second``.

>>> compose(cyclic_shift(5), reversal(5)).images
(3, 2, 1, 0, 4)
>>> inversions(restrict(cyclic_shift(6), (0, 1, 2, 5)))
3
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "MAX_ENUM_N", "MAX_MEMBER_N", "CapError",
    "Transformation", "PartialMapping", "PartialInjection", "SubsetCursor",
    "compose", "restrict", "is_injective_on", "inverse",
    "inversions", "inversions_mergesort", "is_even",
    "identity", "cyclic_shift", "reversal", "power",
    "cyclic_group", "dihedral_group", "alternating_group", "symmetric_group",
    "parse_word", "format_word", "subset_mask",
]

# exhaustive group enumeration is refused above this size
MAX_ENUM_N = 16
# membership tests encode subsets as 64-bit masks
MAX_MEMBER_N = 64


class CapError(ValueError):
    """A size cap was exceeded; the message names the cap."""


@dataclass(frozen=True)
class Transformation:
    """A full mapping on ``[n]``, given by its image word."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("a mapping needs n >= 1")
        for pos, x in enumerate(images):
            if not 0 <= x < n:
                raise ValueError(f"image {x} at position {pos} is outside [0, {n - 1}]")

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def rank(self) -> int:
        return len(set(self.images))

    @property
    def is_permutation(self) -> bool:
        return self.rank == self.n

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __str__(self) -> str:
        return format_word(self.images)


@dataclass(frozen=True)
class PartialMapping:
    """A mapping defined on a strictly increasing ``domain``."""

    domain: tuple[int, ...]
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.domain) != len(self.images):
            raise ValueError("domain and images differ in length")
        if any(a >= b for a, b in zip(self.domain, self.domain[1:])):
            raise ValueError("domain must be strictly increasing")

    @property
    def width(self) -> int:
        return len(self.domain)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)


@dataclass(frozen=True)
class PartialInjection(PartialMapping):
    """A partial mapping with pairwise distinct images."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_injective:
            raise ValueError(f"images {self.images} are not pairwise distinct")


class SubsetCursor:
    """
    Iterate over the ``t``-element subsets of ``[n]`` in lexicographic order.

    >>> list(SubsetCursor(4, 3))
    [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    """

    def __init__(self, n: int, t: int):
        if n < 0 or t < 0:
            raise ValueError("n and t must be non-negative")
        self.n = n
        self.t = t
        self._it = itertools.combinations(range(n), t)

    def __len__(self) -> int:
        return math.comb(self.n, self.t)

    def __iter__(self) -> "SubsetCursor":
        return self

    def __next__(self) -> tuple[int, ...]:
        return next(self._it)


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for a in subset:
        if not 0 <= a < MAX_MEMBER_N:
            raise CapError(f"element {a} does not fit a {MAX_MEMBER_N}-bit subset mask")
        mask |= 1 << a
    return mask


def _as_transformation(alpha) -> Transformation:
    return alpha if isinstance(alpha, Transformation) else Transformation(tuple(alpha))


def compose(first, second) -> Transformation:
    """Apply ``first``, then ``second``: the result sends ``a`` to ``second(first(a))``."""
    first = _as_transformation(first)
    second = _as_transformation(second)
    if first.n != second.n:
        raise ValueError(f"cannot compose mappings on [{first.n}] and [{second.n}]")
    img = second.images
    return Transformation(tuple(img[x] for x in first.images))


def power(alpha, k: int) -> Transformation:
    alpha = _as_transformation(alpha)
    result = identity(alpha.n)
    for _ in range(k):
        result = compose(result, alpha)
    return result


def inverse(alpha) -> Transformation:
    alpha = _as_transformation(alpha)
    if not alpha.is_permutation:
        raise ValueError("only permutations have inverses")
    inv = [0] * alpha.n
    for a, x in enumerate(alpha.images):
        inv[x] = a
    return Transformation(tuple(inv))


def restrict(alpha, subset: Iterable[int]) -> PartialMapping:
    """
    Restrict ``alpha`` to ``subset``.  The result is a ``PartialInjection``
    whenever the restricted values are pairwise distinct.
    """
    alpha = _as_transformation(alpha)
    domain = tuple(sorted(set(subset)))
    if not domain:
        raise ValueError("cannot restrict to the empty set")
    for a in domain:
        if not 0 <= a < alpha.n:
            raise ValueError(f"element {a} is outside [0, {alpha.n - 1}]")
    images = tuple(alpha.images[a] for a in domain)
    if len(set(images)) == len(images):
        return PartialInjection(domain, images)
    return PartialMapping(domain, images)


def is_injective_on(alpha, subset: Iterable[int]) -> bool:
    return restrict(alpha, subset).is_injective


def _images_of(pi) -> Sequence[int]:
    if isinstance(pi, PartialMapping):
        if not pi.is_injective:
            raise ValueError("inversions are measured on injective restrictions only")
        return pi.images
    if isinstance(pi, Transformation):
        return pi.images
    return tuple(pi)


def inversions(pi) -> int:
    """Count pairs ``i < j`` with ``images[i] > images[j]`` by scanning every pair."""
    img = _images_of(pi)
    t = len(img)
    return sum(1 for i in range(t) for j in range(i + 1, t) if img[i] > img[j])


def inversions_mergesort(pi) -> int:
    """Count inversions in ``O(t log t)`` with a bottom-up merge sort."""
    src = list(_images_of(pi))
    t = len(src)
    count = 0
    width = 1
    dst = [0] * t
    while width < t:
        for lo in range(0, t, 2 * width):
            mid = min(lo + width, t)
            hi = min(lo + 2 * width, t)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[i] <= src[j]:
                    dst[k] = src[i]
                    i += 1
                else:
                    dst[k] = src[j]
                    count += mid - i
                    j += 1
                k += 1
            dst[k:hi] = src[i:mid] + src[j:hi]
        src, dst = dst, src
        width *= 2
    return count


def is_even(pi) -> bool:
    return inversions_mergesort(pi) % 2 == 0


def identity(n: int) -> Transformation:
    return Transformation(tuple(range(n)))


def cyclic_shift(n: int) -> Transformation:
    """``a -> a + 1 (mod n)``."""
    return Transformation(tuple((a + 1) % n for a in range(n)))


def reversal(n: int) -> Transformation:
    """``a -> (n - 1) - a``."""
    return Transformation(tuple(n - 1 - a for a in range(n)))


def cyclic_group(n: int) -> frozenset[Transformation]:
    """All rotations ``a -> a + k (mod n)``."""
    return frozenset(Transformation(tuple((a + k) % n for a in range(n))) for k in range(n))


def dihedral_group(n: int) -> frozenset[Transformation]:
    """
    Rotations together with rotations followed by the reversal.

    For ``n <= 2`` the reversal is itself a rotation, so the set degenerates to
    ``{identity}`` (n = 1) or ``{identity, reversal}`` (n = 2) instead of
    having ``2n`` elements.
    """
    rot = cyclic_group(n)
    rho = reversal(n)
    return rot | frozenset(compose(r, rho) for r in rot)


def symmetric_group(n: int) -> Iterator[Transformation]:
    if n > MAX_ENUM_N:
        raise CapError(f"refusing to enumerate S_{n}: cap is n <= {MAX_ENUM_N}")
    for p in itertools.permutations(range(n)):
        yield Transformation(p)


def alternating_group(n: int) -> Iterator[Transformation]:
    for p in symmetric_group(n):
        if is_even(p):
            yield p


def parse_word(text: str) -> Transformation:
    """
    Parse a space-separated image word such as ``"1 2 3 0"``.

    Errors name the 1-based token position that failed.
    """
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ValueError("empty image word")
    images = []
    for pos, tok in enumerate(tokens, start=1):
        try:
            x = int(tok)
        except ValueError:
            raise ValueError(f"token {pos} ({tok!r}) is not an integer") from None
        if not 0 <= x < len(tokens):
            raise ValueError(f"token {pos} ({x}) is outside [0, {len(tokens) - 1}]")
        images.append(x)
    return Transformation(tuple(images))


def format_word(images: Iterable[int]) -> str:
    return " ".join(str(int(x)) for x in images)
