"""
Monoids of full mappings whose injective restrictions of a fixed width are even,
and their comparison with the classical monoids ``O_n``, ``M_n``, ``OP_n``, ``OR_n``.

A mapping of rank below the width has no injective restriction of that width,
so it belongs to every such monoid vacuously.  Low-rank mappings therefore
make up most of each monoid.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .groups import parity_group
from .mapset import SCHEMA, MonoidSet
from .perm import Transformation, _as_transformation, format_word, inversions
from .report import VerificationReport
from .tables import (
    _check_table_n, anticyclic, cyclic, order_preserving, order_reversing, rank_table,
    decode, restriction_parity_masks, scan_all,
)

__all__ = [
    "CLASSICAL", "is_parity_monoid_member", "parity_monoid", "classical_monoid",
    "full_monoid", "residue_monoid", "InclusionReport", "inclusion_predicted",
    "classical_decomposition_check", "embedding_check", "inclusion_lattice",
    "basic_observations_check", "rank_slice_checks",
    "op_gap_witness", "width4_witness", "width5_witness", "low_rank_swap_witness",
]

CLASSICAL = ("O", "M", "OP", "OR")


def is_parity_monoid_member(alpha, t: int) -> bool:
    """Every injective width-``t`` restriction of ``alpha`` is even (vacuous below rank ``t``)."""
    alpha = _as_transformation(alpha)
    n = alpha.n
    if not 1 <= t <= n:
        raise ValueError(f"width t={t} must satisfy 1 <= t <= n={n}")
    img = alpha.images
    for subset in itertools.combinations(range(n), t):
        values = tuple(img[a] for a in subset)
        if len(set(values)) == t and inversions(values) % 2:
            return False
    return True


@lru_cache(maxsize=4)
def _width_masks(n: int, allow_large: bool = False) -> dict[int, np.ndarray]:
    _check_table_n(n, allow_large)
    total = n**n
    masks = {t: np.empty(total, dtype=bool) for t in range(1, n + 1)}
    widths = range(1, n + 1)
    for start, block in scan_all(n, lambda words: restriction_parity_masks(words, widths)):
        for t, m in block.items():
            masks[t][start:start + len(m)] = m
    for m in masks.values():
        m.setflags(write=False)
    return masks


def parity_monoid(n: int, t: int, allow_large: bool = False) -> MonoidSet:
    """All mappings on ``[n]`` whose injective width-``t`` restrictions are even."""
    if not 1 <= t <= n:
        raise ValueError(f"width t={t} must satisfy 1 <= t <= n={n}")
    return MonoidSet(n, _width_masks(n, allow_large)[t])


@lru_cache(maxsize=16)
def _classical_mask(n: int, kind: str, allow_large: bool) -> np.ndarray:
    _check_table_n(n, allow_large)
    tests = {
        "O": order_preserving,
        "M": lambda w: order_preserving(w) | order_reversing(w),
        "OP": cyclic,
        "OR": lambda w: cyclic(w) | anticyclic(w),
    }
    if kind not in tests:
        raise ValueError(f"unknown classical monoid {kind!r}; expected one of {CLASSICAL}")
    out = np.empty(n**n, dtype=bool)
    for start, m in scan_all(n, tests[kind]):
        out[start:start + len(m)] = m
    out.setflags(write=False)
    return out


def classical_monoid(n: int, kind: str, allow_large: bool = False) -> MonoidSet:
    """``kind`` is one of ``"O"``, ``"M"``, ``"OP"``, ``"OR"``; built from the direct definitions."""
    return MonoidSet(n, _classical_mask(n, kind, allow_large))


def full_monoid(n: int, max_rank: Optional[int] = None) -> MonoidSet:
    """All mappings on ``[n]``, optionally only those of rank at most ``max_rank``."""
    r = rank_table(n, allow_large=True)
    return MonoidSet(n, r <= (n if max_rank is None else max_rank))


def residue_monoid(n: int, t: int) -> MonoidSet:
    """The classical monoid singled out by ``t mod 4``: 2 -> O, 3 -> OP, 0 -> M, 1 -> OR."""
    return classical_monoid(n, {2: "O", 3: "OP", 0: "M", 1: "OR"}[t % 4])


def _group_set(n: int, t: int) -> MonoidSet:
    return MonoidSet.from_words(n, parity_group(n, t).words)


def inclusion_predicted(p: int, q: int) -> bool:
    """Closed-form inclusion rule between widths ``p`` and ``q``."""
    return p <= q and (p % 4 == 2 or q % 4 == 1 or p % 4 == q % 4)


def _first_difference(a: MonoidSet, b: MonoidSet) -> Optional[Transformation]:
    """Lowest-index element of the symmetric difference."""
    diff = np.flatnonzero(a.mask ^ b.mask)
    if not len(diff):
        return None
    return Transformation(tuple(int(x) for x in decode(diff[0], a.n)))


def classical_decomposition_check(n: int, t: int, include_low_rank: bool = True) -> VerificationReport:
    """
    Width 2 against ``O_n``; width 3 against ``T_n(r <= 2) | OP_n``.

    ``include_low_rank=False`` drops the low-rank part of the width-3
    right-hand side, which makes the equality fail for ``n >= 4``.
    """
    lhs = parity_monoid(n, t)
    if t == 2:
        rhs, label = classical_monoid(n, "O"), "O_n"
    elif t == 3:
        rhs, label = classical_monoid(n, "OP"), "OP_n"
        if include_low_rank:
            rhs, label = rhs | full_monoid(n, 2), "T_n(r<=2) | OP_n"
    else:
        raise ValueError("decomposition is known for widths 2 and 3 only")
    witness = _first_difference(lhs, rhs)
    return VerificationReport.from_outcome(
        f"width-{t} monoid = {label}", n, witness is None, t=t, witness=witness,
        detail=f"size {lhs.size} vs {rhs.size}",
    )


def embedding_check(n: int, t: int) -> VerificationReport:
    """``O_n`` always embeds; for ``2 <= t <= n - 2`` so does the residue-designated classical monoid."""
    target = parity_monoid(n, t)
    kinds = ["O"]
    if 2 <= t <= n - 2 and t % 4 != 2:
        kinds.append({3: "OP", 0: "M", 1: "OR"}[t % 4])
    for kind in kinds:
        witness = classical_monoid(n, kind).first_outside(target)
        if witness is not None:
            return VerificationReport.from_outcome(
                f"{kind}_n embeds in width-{t} monoid", n, False, t=t, witness=witness)
    return VerificationReport.from_outcome(
        " and ".join(f"{k}_n" for k in kinds) + f" embed in width-{t} monoid", n, True, t=t)


@dataclass
class InclusionReport:
    n: int
    # (p, q) -> whether the width-p monoid is contained in the width-q monoid
    cells: dict[tuple[int, int], bool] = field(default_factory=dict)
    witnesses: dict[tuple[int, int], str] = field(default_factory=dict)

    def predicted(self, p: int, q: int) -> bool:
        return inclusion_predicted(p, q)

    @property
    def mismatches(self) -> list[tuple[int, int]]:
        return [pq for pq, sub in self.cells.items() if sub != inclusion_predicted(*pq)]

    @property
    def matches_prediction(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        widths = range(2, self.n + 1)
        return {
            "schema": SCHEMA,
            "n": self.n,
            "widths": list(widths),
            "matrix": [["⊆" if self.cells[p, q] else "⊄" for q in widths] for p in widths],
            "witnesses": [{"p": p, "q": q, "witness": w} for (p, q), w in sorted(self.witnesses.items())],
            "matches_prediction": self.matches_prediction,
        }

    def to_csv(self) -> str:
        widths = range(2, self.n + 1)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p\\q"] + list(widths))
        for p in widths:
            row = [p]
            for q in widths:
                if self.cells[p, q]:
                    row.append("⊆")
                else:
                    row.append(f"⊄ {self.witnesses[p, q]}")
            w.writerow(row)
        return buf.getvalue()


def inclusion_lattice(n: int) -> InclusionReport:
    """Test every pair of widths ``2..n`` extensionally; witnesses are lowest-index elements."""
    rep = InclusionReport(n)
    for p in range(2, n + 1):
        sp = parity_monoid(n, p)
        for q in range(2, n + 1):
            witness = sp.first_outside(parity_monoid(n, q))
            rep.cells[p, q] = witness is None
            if witness is not None:
                rep.witnesses[p, q] = format_word(witness.images)
    return rep


def basic_observations_check(n: int) -> list[VerificationReport]:
    """Width 1 gives ``T_n``; width ``n`` gives ``T_n(r <= n-1) | A_n``; units; low-rank part."""
    out = []
    everything = full_monoid(n)
    w = _first_difference(parity_monoid(n, 1), everything)
    out.append(VerificationReport.from_outcome("width-1 monoid = T_n", n, w is None, t=1, witness=w))
    top = full_monoid(n, n - 1) | _group_set(n, n)
    w = _first_difference(parity_monoid(n, n), top)
    out.append(VerificationReport.from_outcome("width-n monoid = T_n(r<=n-1) | A_n", n, w is None, t=n, witness=w))
    perms = full_monoid(n) - full_monoid(n, n - 1)
    for t in range(1, n + 1):
        w = _first_difference(parity_monoid(n, t) & perms, _group_set(n, t))
        out.append(VerificationReport.from_outcome("units of width-t monoid = parity group", n, w is None, t=t, witness=w))
    for t in range(2, n + 1):
        w = _first_difference(parity_monoid(n, t).rank_slice(1, t - 1), full_monoid(n, t - 1))
        out.append(VerificationReport.from_outcome("width-t monoid contains all of rank < t", n, w is None, t=t, witness=w))
    return out


def rank_slice_checks(n: int) -> list[VerificationReport]:
    """
    Rank-by-rank comparisons: inclusion between widths on each rank slice,
    containment of high-rank slices in the residue monoid, and equality of
    the rank ``>= k`` parts for ``t <= k - 2``.
    """
    out = []
    for k in range(2, n + 1):
        for p in range(2, k + 1):
            for q in range(p, k + 1):
                if not inclusion_predicted(p, q):
                    continue
                w = parity_monoid(n, p).rank_slice(k, k).first_outside(parity_monoid(n, q))
                out.append(VerificationReport.from_outcome(
                    f"rank-{k} slice: width {p} within width {q}", n, w is None, t=p, witness=w))
    for k in range(4, n + 1):
        for t in range(2, k - 1):
            sl = parity_monoid(n, t).rank_slice(k, k)
            w = sl.first_outside(residue_monoid(n, t))
            out.append(VerificationReport.from_outcome(
                f"rank-{k} slice of width-{t} monoid within residue monoid", n, w is None, t=t, witness=w))
            hi = parity_monoid(n, t).rank_slice(k)
            w = _first_difference(hi, residue_monoid(n, t).rank_slice(k))
            out.append(VerificationReport.from_outcome(
                f"rank>={k} part of width-{t} monoid = residue monoid part", n, w is None, t=t, witness=w))
    return out


def op_gap_witness(n: int) -> Transformation:
    """``(0 1 0 1 ... 1)``: rank 2, not orientation-preserving for ``n >= 4``."""
    if n < 4:
        raise ValueError("needs n >= 4")
    return Transformation((0, 1, 0) + (1,) * (n - 3))


def width4_witness(n: int) -> Transformation:
    """``(2 ... 2 3 0 1)``: even on every injective width-4 restriction, rank 4, not monotone."""
    if n < 4:
        raise ValueError("needs n >= 4")
    return Transformation((2,) * (n - 3) + (3, 0, 1))


def width5_witness(n: int) -> Transformation:
    """``(3 ... 3 4 1 2 0)``: even on every injective width-5 restriction, rank 5, not oriented."""
    if n < 5:
        raise ValueError("needs n >= 5")
    return Transformation((3,) * (n - 4) + (4, 1, 2, 0))


def low_rank_swap_witness(n: int, p: int) -> Transformation:
    """
    ``(1 0 2 ... p-2 p-2 ... p-2)``: rank ``p - 1``, and its restriction to
    ``{0, ..., q-1}`` is injective with one inversion for every ``q < p``.
    """
    if not 3 <= p <= n:
        raise ValueError("needs 3 <= p <= n")
    head = [1, 0] + list(range(2, p - 1))
    return Transformation(tuple(head + [p - 2] * (n - len(head))))
