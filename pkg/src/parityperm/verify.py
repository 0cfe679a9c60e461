"""
The full battery of extensional checks, grouped into sections.

Every check returns :class:`VerificationReport` objects; nothing here raises
on a failed statement.  Randomised checks draw from ``random.Random(seed)``.
"""

from __future__ import annotations

import logging
import random
from typing import Callable, Iterator

import numpy as np

from . import groups as G
from . import monoids as M
from .closure import (
    DEFAULT_BUDGET_MB, ClosureBudgetError, boundary_counterexample_check, closure,
    generated_residue_check, generated_monoid, is_composition_closed,
)
from .mapset import MonoidSet
from .orientation import classify_mapping
from .perm import (
    PartialInjection, Transformation, cyclic_shift, dihedral_group,
    inversions, inversions_mergesort, is_even, reversal,
)
from .report import ERROR, VerificationReport
from .tables import (
    all_words, anticyclic, cyclic, inversion_parity_rows, order_preserving, order_reversing,
    permutation_array, rank_table, via_injective_pairs, via_injective_quadruples,
    via_injective_triples,
)

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_SEED", "run_verify_all", "exit_code",
    "between_congruence_check", "parity_multiplicativity_check", "inversion_counter_check",
    "group_sections", "monoid_sections", "closure_sections",
]

DEFAULT_SEED = 20240229
GROUP_MAX_N = 8
MONOID_MAX_N = 7

R = VerificationReport.from_outcome


# ---------------------------------------------------------------- properties

def between_congruence_check(n: int, instances: int = 1000, seed: int = DEFAULT_SEED) -> VerificationReport:
    """
    Swapping ``a`` for ``a + 1 (mod n)`` in a restriction changes its
    inversion parity by the number of chosen points lying between their images.
    """
    rng = random.Random(f"{seed}:between:{n}")
    for _ in range(instances):
        perm = list(range(n))
        rng.shuffle(perm)
        alpha = Transformation(tuple(perm))
        a = rng.randrange(n)
        nxt = (a + 1) % n
        rest = [b for b in range(n) if b not in (a, nxt)]
        chosen = [b for b in rest if rng.random() < 0.5]
        r = sum(1 for b in chosen if G.lies_between(alpha, a, b))
        lhs = G.inv_on(alpha, chosen + [a])
        rhs = G.inv_on(alpha, chosen + [nxt])
        if (lhs - rhs - r) % 2:
            return R("between congruence", n, False, witness=alpha,
                     detail=f"a={a} S={sorted(chosen)} r={r}")
    return R("between congruence", n, True, detail=f"{instances} random instances")


def _random_injection(rng: random.Random, domain: list[int], image: list[int]) -> PartialInjection:
    values = image[:]
    rng.shuffle(values)
    return PartialInjection(tuple(sorted(domain)), tuple(values))


def parity_multiplicativity_check(pairs: int = 1000, max_n: int = 10, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Parity of a composite of injections is the sum of the parities, mod 2."""
    rng = random.Random(f"{seed}:multiplicativity")
    for _ in range(pairs):
        n = rng.randint(1, max_n)
        t = rng.randint(1, n)
        d, e, f = (sorted(rng.sample(range(n), t)) for _ in range(3))
        first = _random_injection(rng, d, e)
        second = _random_injection(rng, e, f)
        lookup = dict(zip(second.domain, second.images))
        comp = PartialInjection(first.domain, tuple(lookup[x] for x in first.images))
        if is_even(comp) != (is_even(first) == is_even(second)):
            return R("parity of composite injections", n, False,
                     detail=f"first={first} second={second}")
    return R("parity of composite injections", max_n, True, detail=f"{pairs} random pairs")


def inversion_counter_check(cases: int = 1000, max_width: int = 12, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Pair scan and merge-sort inversion counts agree."""
    rng = random.Random(f"{seed}:inversions")
    for _ in range(cases):
        t = rng.randint(0, max_width)
        img = rng.sample(range(max_width + 4), t)
        if inversions(img) != inversions_mergesort(img):
            return R("inversion counters agree", max_width, False, detail=f"images={img}")
    return R("inversion counters agree", max_width, True, detail=f"{cases} random cases")


# ---------------------------------------------------------------- groups

def _residue_groups(n: int) -> Iterator[VerificationReport]:
    for t in range(2, n - 1):
        brute = G.parity_group_bruteforce(n, t)
        pred = G.parity_group(n, t)
        yield R("parity group matches residue shape", n, brute.same_elements(pred), t=t,
                detail=f"order {brute.order} ({brute.structure_tag})")
        pruned = G.parity_group_bruteforce(n, t, pruned=True)
        yield R("dihedral-pruned scan = full scan", n, pruned.same_elements(brute), t=t)


def _deletion_parities(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    return np.stack([inversion_parity_rows(np.delete(perms, a, axis=1)) for a in range(n)], axis=1)


def _width_n_minus_1(n: int) -> Iterator[VerificationReport]:
    brute = G.parity_group_bruteforce(n, n - 1)
    yield R("order at width n-1 = half of parity-alternating count", n,
            2 * brute.order == G.pap_count(n), t=n - 1, detail=f"{brute.order} vs {G.pap_count(n)}/2")
    fast = G.parity_group(n, n - 1)
    yield R("width n-1: filtered parity-alternating set = full scan", n, fast.same_elements(brute), t=n - 1)
    perms = permutation_array(n)
    pap_mask = np.array([G.is_pap(p) for p in perms.tolist()])
    pap = G.pap_enumerate(n)
    yield R("parity-alternating construction = filter of S_n", n,
            len(pap) == G.pap_count(n) and np.array_equal(pap, perms[pap_mask]))
    odd = _deletion_parities(perms)
    all_even = ~odd.any(axis=1)
    all_odd = odd.all(axis=1)
    yield R("deletion parities constant on parity-alternating permutations", n,
            bool(np.all(all_even[pap_mask] | all_odd[pap_mask])))
    disjoint = not np.any(all_even & all_odd)
    union = np.array_equal(all_even | all_odd, pap_mask)
    yield R("parity-alternating = even-deletion part + odd-deletion part (disjoint)", n, disjoint and union)
    if n >= 4:
        ok = True
        for w in perms[pap_mask].tolist():
            alpha = Transformation(tuple(w))
            image = G.pap_involution(alpha)
            if image == alpha or G.pap_involution(image) != alpha:
                ok = False
                break
            if G.all_deletions_even(alpha) == G.all_deletions_even(image):
                ok = False
                break
            if G.all_deletions_odd(image) != G.all_deletions_even(alpha):
                ok = False
                break
        yield R("swap of 1 and 3 exchanges the two halves without fixed points", n, ok)


def _odd_n_alternating(n: int) -> Iterator[VerificationReport]:
    pap = G.pap_enumerate(n)
    alt = pap[~inversion_parity_rows(pap)]
    group = G.parity_group_bruteforce(n, n - 1, pruned=True)
    yield R("odd n: width n-1 group = parity-alternating even permutations", n,
            np.array_equal(group.words, alt), t=n - 1, detail=f"{len(alt)} of {len(pap)}")
    ok = True
    for w in pap.tolist():
        if inversions(w) != G.inv_on(w, range(1, n)) + w[0]:
            ok = False
            break
    yield R("inversions = inversions without 0 + image of 0", n, ok)


def _special_elements(n: int) -> Iterator[VerificationReport]:
    sigma, rho = cyclic_shift(n), reversal(n)
    yield R("shift is even iff n odd", n, is_even(sigma) == (n % 2 == 1))
    yield R("reversal is even iff n = 0, 1 mod 4", n, is_even(rho) == (n % 4 in (0, 1)))
    yield R("shift in width n-1 group iff n even", n, G.all_deletions_even(sigma) == (n % 2 == 0))
    yield R("reversal in width n-1 group iff n = 1, 2 mod 4", n, G.all_deletions_even(rho) == (n % 4 in (1, 2)))


def _group_inclusions(n: int, results: dict[int, G.GroupResult]) -> VerificationReport:
    bad = []
    for p in range(2, n + 1):
        for q in range(p, n + 1):
            sp = {tuple(w) for w in results[p].words.tolist()}
            sq = {tuple(w) for w in results[q].words.tolist()}
            if (sp <= sq) != M.inclusion_predicted(p, q):
                bad.append((p, q))
    return R("group inclusions for p <= q follow the residue rule", n, not bad,
             detail=f"mismatches {bad}" if bad else "")


def group_sections(max_n: int, seed: int = DEFAULT_SEED) -> Iterator[VerificationReport]:
    top = min(max_n, GROUP_MAX_N)
    for n in range(3, top + 1):
        results = {t: G.parity_group_bruteforce(n, t) for t in range(1, n + 1)}
        for t, res in results.items():
            yield R("parity group is a group", n, G.check_group_axioms(res), t=t, detail=f"order {res.order}")
        yield from _residue_groups(n)
        yield from _width_n_minus_1(n)
        yield _group_inclusions(n, results)
        full = G.parity_group(n, n)
        evens = permutation_array(n)[~inversion_parity_rows(permutation_array(n))]
        yield R("width n group = A_n", n,
                full.same_elements(results[n]) and np.array_equal(results[n].words, evens), t=n)
    for n in (5, 7, 9):
        yield from _odd_n_alternating(n)
    for n in range(3, 13):
        yield from _special_elements(n)
    for n in range(5, 10):
        yield between_congruence_check(n, seed=seed)
    yield parity_multiplicativity_check(seed=seed)
    yield inversion_counter_check(seed=seed)


# ---------------------------------------------------------------- monoids

def _characterisations(n: int) -> Iterator[VerificationReport]:
    w = all_words(n)
    r = rank_table(n)
    op = cyclic(w)
    orr = op | anticyclic(w)
    mono = order_preserving(w) | order_reversing(w)
    cases = [
        ("width-2 injective restrictions characterise O_n", r >= 1, via_injective_pairs(w), order_preserving(w)),
        ("width-3 injective restrictions characterise OP_n (rank >= 3)", r >= 3, via_injective_triples(w), op),
        ("width-4 injective restrictions characterise OR_n (rank >= 4)", r >= 4, via_injective_quadruples(w, "oriented"), orr),
        ("width-4 injective restrictions characterise M_n (rank >= 4)", r >= 4, via_injective_quadruples(w, "monotone"), mono),
    ]
    for name, scope, lhs, rhs in cases:
        bad = np.flatnonzero(scope & (lhs != rhs))
        yield R(name, n, not len(bad), witness=w[bad[0]] if len(bad) else None,
                detail=f"{int(np.count_nonzero(scope))} mappings in scope")


def _witness_checks(n: int) -> Iterator[VerificationReport]:
    if n >= 4:
        g = M.op_gap_witness(n)
        yield R("(0 1 0 1 ... 1) in width-3 monoid, not in OP_n", n,
                M.is_parity_monoid_member(g, 3) and not classify_mapping(g).orientation_preserving, t=3, witness=g)
        a = M.width4_witness(n)
        yield R("width-4 witness: in monoid, rank 4, not monotone", n,
                M.is_parity_monoid_member(a, 4) and a.rank == 4 and not classify_mapping(a).monotone,
                t=4, witness=a)
    if n >= 5:
        b = M.width5_witness(n)
        yield R("width-5 witness: in monoid, rank 5, not oriented", n,
                M.is_parity_monoid_member(b, 5) and b.rank == 5 and not classify_mapping(b).oriented,
                t=5, witness=b)
    for p in range(3, n + 1):
        a = M.low_rank_swap_witness(n, p)
        ok = a.rank == p - 1 and all(
            M.is_parity_monoid_member(a, p) and not M.is_parity_monoid_member(a, q) for q in range(2, p))
        yield R("swap witness separates width p from every smaller width", n, ok, t=p, witness=a)


def monoid_sections(max_n: int, seed: int = DEFAULT_SEED) -> Iterator[VerificationReport]:
    top = min(max_n, MONOID_MAX_N)
    for n in range(2, top + 1):
        yield from M.basic_observations_check(n)
        for t in range(1, n + 1):
            sig = M.parity_monoid(n, t)
            yield R("width-t monoid is closed and contains the identity", n, is_composition_closed(sig),
                    t=t, detail=f"size {sig.size}")
        for t in range(2, n + 1):
            yield M.embedding_check(n, t)
        if n >= 2:
            yield M.classical_decomposition_check(n, 2)
        if n >= 3:
            yield M.classical_decomposition_check(n, 3)
        yield from _characterisations(n)
        yield from _witness_checks(n)
        yield from M.rank_slice_checks(n)
        if n >= 3:
            rep = M.inclusion_lattice(n)
            missing = [pq for pq, sub in rep.cells.items() if not sub and pq not in rep.witnesses]
            yield R("inclusion matrix matches residue rule", n, rep.matches_prediction and not missing,
                    detail=f"mismatches {rep.mismatches}" if rep.mismatches else f"{len(rep.witnesses)} witnesses")


# ---------------------------------------------------------------- closures

def _guard(name: str, n: int, t, fn: Callable[[], VerificationReport]) -> VerificationReport:
    try:
        return fn()
    except ClosureBudgetError as exc:
        return VerificationReport(name, n, ERROR, t=t, detail=str(exc))


def _generator_facts(n: int, budget_mb: float) -> Iterator[VerificationReport]:
    o = M.classical_monoid(n, "O")
    top = o.rank_slice(n - 1, n - 1).words()
    cases = [
        ("O_n generated by its rank n-1 part", np.vstack([top, np.arange(n, dtype=np.uint8)[None]]), "O"),
        ("M_n generated by O_n and reversal", np.vstack([o.words(), np.array([reversal(n).images], np.uint8)]), "M"),
        ("OP_n generated by O_n and rotations", np.vstack([o.words(), _words(dihedral_group(n), rotations_only=True)]), "OP"),
        ("OR_n generated by O_n and D_n", np.vstack([o.words(), _words(dihedral_group(n))]), "OR"),
    ]
    for name, gens, kind in cases:
        def run(gens=gens, kind=kind, name=name):
            got, _ = closure(gens, n=n, budget_mb=budget_mb)
            want = M.classical_monoid(n, kind)
            return R(name, n, got == want, witness=got.first_outside(want) or want.first_outside(got))
        yield _guard(name, n, None, run)


def _words(perms, rotations_only: bool = False) -> np.ndarray:
    perms = list(perms)
    if rotations_only:
        n = perms[0].n
        perms = [p for p in perms if all((p(a) - p(0)) % n == a for a in range(n))]
    return np.array(sorted(p.images for p in perms), dtype=np.uint8)


def closure_sections(max_n: int, budget_mb: float = DEFAULT_BUDGET_MB) -> Iterator[VerificationReport]:
    top = min(max_n, MONOID_MAX_N)
    for n in range(2, top + 1):
        for t in range(1, n + 1):
            name = "generated monoid: units = parity group, contained in parity monoid"

            def run(n=n, t=t, name=name):
                got, stats = generated_monoid(n, t, budget_mb)
                units = got - M.full_monoid(n, n - 1)
                group = MonoidSet.from_words(n, G.parity_group(n, t).words)
                ok = units == group and got.issubset(M.parity_monoid(n, t))
                return R(name, n, ok, t=t, detail=f"size {got.size}, {stats.generators_used}/{stats.generator_count} generators used")
            if n <= 6:
                yield _guard(name, n, t, run)
        if n <= 5:
            for t, label in ((1, "T_n"), (n, "T_n(r<=n-1) | A_n")):
                name = f"generated monoid for width {t} = {label}"

                def run(n=n, t=t, name=name):
                    got, _ = generated_monoid(n, t, budget_mb)
                    return R(name, n, got == M.parity_monoid(n, t), t=t)
                yield _guard(name, n, t, run)
        if 3 <= n <= 6:
            yield from _generator_facts(n, budget_mb)
        for t in range(2, n - 2):
            yield generated_residue_check(n, t, budget_mb)
    yield from _small_boundary(budget_mb, top)
    for n in range(6, top + 1):
        try:
            reports = boundary_counterexample_check(n, budget_mb)
        except ClosureBudgetError as exc:
            reports = [VerificationReport("boundary counterexample", n, ERROR, t=n - 2, detail=str(exc))]
        # the n = 4, 5 companions are already covered above
        yield from (r for r in reports if r.n == n)


def _small_boundary(budget_mb: float, top: int) -> Iterator[VerificationReport]:
    for n, t, kind in ((4, 2, "O"), (5, 3, "OP")):
        if n > top:
            continue
        name = f"generated monoid for width {t} = {kind}_n"

        def run(n=n, t=t, kind=kind, name=name):
            got, _ = generated_monoid(n, t, budget_mb)
            return R(name, n, got == M.classical_monoid(n, kind), t=t)
        yield _guard(name, n, t, run)


def run_verify_all(max_n: int = 6, seed: int = DEFAULT_SEED,
                   budget_mb: float = DEFAULT_BUDGET_MB) -> Iterator[tuple[str, VerificationReport]]:
    """Yield ``(section, report)`` pairs for every check up to ``max_n``."""
    if max_n < 3:
        raise ValueError("max_n must be at least 3")
    for rep in group_sections(max_n, seed):
        yield "groups", rep
    for rep in monoid_sections(max_n, seed):
        yield "monoids", rep
    for rep in closure_sections(max_n, budget_mb):
        yield "closure", rep


def exit_code(reports) -> int:
    statuses = {r.status for r in reports}
    if ERROR in statuses:
        return 2
    if "fail" in statuses:
        return 1
    return 0
