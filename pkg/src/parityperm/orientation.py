"""
Cyclic and anti-cyclic sequences, and membership in the four classical
monoids of order-preserving, monotone, orientation-preserving and oriented
full mappings.

Each class is available in two forms: the direct definition on the image
word, and the characterisation through injective restrictions of small width.
The second form only applies above a rank threshold and raises below it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .perm import Transformation, _as_transformation, is_even

__all__ = [
    "SequenceClass", "MappingClassFlags", "RankTooSmall",
    "cyclic_descents", "cyclic_ascents", "classify_sequence", "classify_mapping",
    "is_order_preserving", "is_order_reversing",
    "op_via_injective_triples", "or_via_injective_quadruples",
    "monotone_via_injective_quadruples", "order_preserving_via_injective_pairs",
]


class RankTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class SequenceClass:
    is_cyclic: bool
    is_anticyclic: bool

    @property
    def is_oriented(self) -> bool:
        return self.is_cyclic or self.is_anticyclic


@dataclass(frozen=True)
class MappingClassFlags:
    order_preserving: bool
    order_reversing: bool
    monotone: bool
    orientation_preserving: bool
    orientation_reversing: bool
    oriented: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def cyclic_descents(seq: Sequence[int]) -> int:
    """Number of ``i`` with ``seq[i] > seq[i+1]``, the last element wrapping to the first."""
    t = len(seq)
    return sum(1 for i in range(t) if seq[i] > seq[(i + 1) % t])


def cyclic_ascents(seq: Sequence[int]) -> int:
    t = len(seq)
    return sum(1 for i in range(t) if seq[i] < seq[(i + 1) % t])


def classify_sequence(seq: Sequence[int]) -> SequenceClass:
    """
    >>> classify_sequence((1, 2, 3, 0))
    SequenceClass(is_cyclic=True, is_anticyclic=False)
    >>> classify_sequence((0, 2, 1, 3))
    SequenceClass(is_cyclic=False, is_anticyclic=False)
    """
    seq = tuple(seq)
    return SequenceClass(cyclic_descents(seq) <= 1, cyclic_ascents(seq) <= 1)


def is_order_preserving(alpha) -> bool:
    img = _as_transformation(alpha).images
    n = len(img)
    return all(img[x] <= img[y] for x in range(n) for y in range(x + 1, n))


def is_order_reversing(alpha) -> bool:
    img = _as_transformation(alpha).images
    n = len(img)
    return all(img[x] >= img[y] for x in range(n) for y in range(x + 1, n))


def classify_mapping(alpha) -> MappingClassFlags:
    alpha = _as_transformation(alpha)
    op = is_order_preserving(alpha)
    orv = is_order_reversing(alpha)
    seq = classify_sequence(alpha.images)
    return MappingClassFlags(
        order_preserving=op,
        order_reversing=orv,
        monotone=op or orv,
        orientation_preserving=seq.is_cyclic,
        orientation_reversing=seq.is_anticyclic,
        oriented=seq.is_oriented,
    )


def _injective_restrictions(alpha: Transformation, width: int):
    img = alpha.images
    for subset in itertools.combinations(range(alpha.n), width):
        values = tuple(img[a] for a in subset)
        if len(set(values)) == width:
            yield values


def _require_rank(alpha: Transformation, k: int) -> None:
    if alpha.rank < k:
        raise RankTooSmall(f"characterization requires rank >= {k}, got rank {alpha.rank}")


def op_via_injective_triples(alpha) -> bool:
    """
    Orientation-preservation read off the width-3 injective restrictions.

    An injective triple is orientation-preserving exactly when it is even,
    so the test is a parity check on each one.
    """
    alpha = _as_transformation(alpha)
    _require_rank(alpha, 3)
    return all(is_even(v) for v in _injective_restrictions(alpha, 3))


def or_via_injective_quadruples(alpha) -> bool:
    alpha = _as_transformation(alpha)
    _require_rank(alpha, 4)
    return all(classify_sequence(v).is_oriented for v in _injective_restrictions(alpha, 4))


def monotone_via_injective_quadruples(alpha) -> bool:
    alpha = _as_transformation(alpha)
    _require_rank(alpha, 4)
    return all(
        v[0] < v[1] < v[2] < v[3] or v[0] > v[1] > v[2] > v[3]
        for v in _injective_restrictions(alpha, 4)
    )


def order_preserving_via_injective_pairs(alpha) -> bool:
    alpha = _as_transformation(alpha)
    return all(v[0] < v[1] for v in _injective_restrictions(alpha, 2))
