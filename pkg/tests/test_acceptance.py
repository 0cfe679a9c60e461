"""
The nine acceptance criteria, each at its stated tolerance and time limit.

Every test records a one-line PASS/FAIL summary, which the terminal summary
prints together at the end of the run.
"""

import io
import time
import tracemalloc

import numpy as np

import oracles
from parityperm.cli import main
from parityperm.closure import DEFAULT_BUDGET_MB, generated_monoid, is_composition_closed
from parityperm.groups import (
    check_group_axioms, pap_count, pap_enumerate, pap_involution, parity_group_bruteforce,
    predicted_group,
)
from parityperm.monoids import (
    classical_monoid, full_monoid, inclusion_lattice, inclusion_predicted, is_parity_monoid_member,
    op_gap_witness, parity_monoid, width4_witness, width5_witness,
)
from parityperm.orientation import classify_mapping
from parityperm.perm import identity
from parityperm.tables import (
    all_words, anticyclic, cyclic, inversion_parity_rows, order_preserving, order_reversing,
    permutation_array, ranks, via_injective_pairs, via_injective_quadruples, via_injective_triples,
)
from parityperm.verify import between_congruence_check, parity_multiplicativity_check


def word_set(words):
    return {tuple(int(x) for x in w) for w in words}


def deletion_parities(perms):
    """Column ``a`` is the inversion parity after deleting position ``a``."""
    return np.stack([inversion_parity_rows(np.delete(perms, a, axis=1)) for a in range(perms.shape[1])], axis=1)


def test_criterion_1_table_n11(acceptance):
    start = time.perf_counter()
    out = io.StringIO()
    code = main(["table", "11"], out=out)
    row = out.getvalue().splitlines()[1]
    expected = "1 11 2 22 1 11 2 22 43200 19958400"
    elapsed = time.perf_counter() - start
    ok = code == 0 and row == expected and elapsed <= 60
    acceptance(1, "table 11 reproduces the group orders for t = 2..11", ok, elapsed, f"row: {row}")
    assert row == expected
    assert elapsed <= 60


def test_criterion_2_residue_groups(acceptance):
    start = time.perf_counter()
    failures = []
    for n in range(4, 9):
        for t in range(2, n - 1):
            brute = word_set(parity_group_bruteforce(n, t).words)
            predicted = {g.images for g in predicted_group(n, t)}
            if brute != predicted:
                failures.append((n, t))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 300
    acceptance(2, "brute-force group = residue-predicted group, n 4..8, t 2..n-2", ok, elapsed,
               f"mismatches {failures}" if failures else "")
    assert not failures
    assert elapsed <= 300


def test_criterion_3_half_pap(acceptance):
    start = time.perf_counter()
    problems = []
    for n in range(3, 9):
        group = parity_group_bruteforce(n, n - 1)
        if 2 * group.order != pap_count(n):
            problems.append(f"order n={n}")
        if n < 4:
            continue
        perms = permutation_array(n)
        parities = deletion_parities(perms)
        plus = word_set(perms[~parities.any(axis=1)])
        minus = word_set(perms[parities.all(axis=1)])
        pap = word_set(pap_enumerate(n))
        assert plus == word_set(group.words)
        if plus & minus or plus | minus != pap:
            problems.append(f"disjoint union n={n}")
        image = {pap_involution(a).images for a in plus}
        if image != minus or len(image) != len(plus):
            problems.append(f"involution n={n}")
        if {pap_involution(a).images for a in minus} != plus:
            problems.append(f"involution back n={n}")
    elapsed = time.perf_counter() - start
    ok = not problems
    acceptance(3, "width n-1 order = half the parity-alternating count; split and involution", ok, elapsed,
               "; ".join(problems))
    assert not problems


def test_criterion_4_odd_n_alternating(acceptance):
    start = time.perf_counter()
    problems = []
    sizes = {}
    for n in (5, 7, 9):
        group = word_set(parity_group_bruteforce(n, n - 1).words)
        pap = pap_enumerate(n)
        sizes[n] = len(pap)
        even_pap = word_set(pap[~inversion_parity_rows(pap)])
        if group != even_pap:
            problems.append(n)
    elapsed = time.perf_counter() - start
    ok = not problems and sizes[9] == 2880
    acceptance(4, "odd n: width n-1 group = even parity-alternating permutations", ok, elapsed,
               f"|PAP_9| = {sizes[9]}")
    assert sizes[9] == oracles.pap_formula(9) == 2880
    assert not problems


def test_criterion_5_decompositions(acceptance):
    start = time.perf_counter()
    problems = []
    for n in (4, 5, 6):
        if parity_monoid(n, 2) != classical_monoid(n, "O"):
            problems.append(f"width 2 n={n}")
        if parity_monoid(n, 3) != (full_monoid(n, 2) | classical_monoid(n, "OP")):
            problems.append(f"width 3 n={n}")
    for n in range(4, 8):
        w = op_gap_witness(n)
        if not (w.images in parity_monoid(n, 3) and w.images not in classical_monoid(n, "OP")):
            problems.append(f"witness n={n}")
    elapsed = time.perf_counter() - start
    ok = not problems
    acceptance(5, "width 2 = O_n and width 3 = T_n(r<=2) | OP_n; gap witness", ok, elapsed, "; ".join(problems))
    assert not problems


def test_criterion_6_characterisations(acceptance):
    start = time.perf_counter()
    exceptions = {}
    n7_seconds = 0.0
    for n in (5, 6, 7):
        t0 = time.perf_counter()
        words = all_words(n)
        r = ranks(words)
        o = order_preserving(words)
        op = cyclic(words)
        oriented = op | anticyclic(words)
        mono = o | order_reversing(words)
        bad = int(np.count_nonzero(via_injective_pairs(words) != o))
        hi3, hi4 = r >= 3, r >= 4
        bad += int(np.count_nonzero(via_injective_triples(words)[hi3] != op[hi3]))
        bad += int(np.count_nonzero(via_injective_quadruples(words, "oriented")[hi4] != oriented[hi4]))
        bad += int(np.count_nonzero(via_injective_quadruples(words, "monotone")[hi4] != mono[hi4]))
        exceptions[n] = bad
        if n == 7:
            n7_seconds = time.perf_counter() - t0
    elapsed = time.perf_counter() - start
    ok = not any(exceptions.values()) and n7_seconds <= 600
    acceptance(6, "injective-restriction characterisations agree on all of T_n, n 5..7", ok, elapsed,
               f"exceptions {exceptions}, n=7 in {n7_seconds:.1f}s")
    assert not any(exceptions.values())
    assert n7_seconds <= 600


def test_criterion_7_lattice(acceptance):
    start = time.perf_counter()
    problems = []
    for n in (5, 6, 7):
        rep = inclusion_lattice(n)
        for (p, q), sub in rep.cells.items():
            if sub != inclusion_predicted(p, q):
                problems.append(f"cell ({p},{q}) n={n}")
            if not sub:
                w = tuple(int(x) for x in rep.witnesses[p, q].split())
                if not (is_parity_monoid_member(w, p) and not is_parity_monoid_member(w, q)):
                    problems.append(f"witness ({p},{q}) n={n}")
        a = width4_witness(n)
        if not (is_parity_monoid_member(a, 4) and a.rank > 3 and not classify_mapping(a).monotone):
            problems.append(f"alpha n={n}")
        b = width5_witness(n)
        if not (is_parity_monoid_member(b, 5) and b.rank > 4 and not classify_mapping(b).oriented):
            problems.append(f"beta n={n}")
    elapsed = time.perf_counter() - start
    ok = not problems
    acceptance(7, "inclusion matrix matches the residue rule with witnesses, n 5..7", ok, elapsed,
               "; ".join(problems))
    assert not problems


def test_criterion_8_closures(acceptance):
    start = time.perf_counter()
    kinds = {2: "O", 3: "OP", 0: "M"}
    problems = []
    tracemalloc.start()
    n7_start = None
    for n, t in [(5, 2), (6, 2), (6, 3), (7, 2), (7, 3), (7, 4)]:
        if n == 7 and n7_start is None:
            n7_start = time.perf_counter()
            tracemalloc.reset_peak()
        got, _ = generated_monoid(n, t, budget_mb=DEFAULT_BUDGET_MB)
        if got != classical_monoid(n, kinds[t % 4]):
            problems.append(f"({n},{t})")
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    n7_seconds = time.perf_counter() - n7_start
    if generated_monoid(4, 2)[0] != classical_monoid(4, "O"):
        problems.append("(4,2)")
    if generated_monoid(5, 3)[0] != classical_monoid(5, "OP"):
        problems.append("(5,3)")
    alpha = (2, 3, 0, 1, 4, 4)
    d64, _ = generated_monoid(6, 4)
    if not (alpha in d64 and alpha not in classical_monoid(6, "OR")):
        problems.append("boundary mapping")
    elapsed = time.perf_counter() - start
    peak_mb = peak / 2**20
    ok = not problems and peak_mb <= 512 and n7_seconds <= 900
    acceptance(8, "generated monoids = O/OP/M by residue; boundary mapping", ok, elapsed,
               f"n=7 peak {peak_mb:.0f} MB in {n7_seconds:.1f}s" + (f"; {problems}" if problems else ""))
    assert not problems
    assert peak_mb <= 512
    assert n7_seconds <= 900


def test_criterion_9_properties(acceptance):
    start = time.perf_counter()
    problems = []
    for n in range(5, 10):
        rep = between_congruence_check(n, instances=1000)
        if not rep.passed:
            problems.append(rep.line())
    rep = parity_multiplicativity_check(pairs=1000)
    if not rep.passed:
        problems.append(rep.line())
    for n in range(2, 9):
        for t in range(1, n + 1):
            if not check_group_axioms(parity_group_bruteforce(n, t)):
                problems.append(f"group n={n} t={t}")
    for n in range(2, 8):
        for t in range(1, n + 1):
            m = parity_monoid(n, t)
            if identity(n).images not in m or not is_composition_closed(m):
                problems.append(f"monoid n={n} t={t}")
            d, _ = generated_monoid(n, t)
            if not is_composition_closed(d):
                problems.append(f"generated n={n} t={t}")
    elapsed = time.perf_counter() - start
    ok = not problems
    acceptance(9, "seeded property suites and closure axioms on every enumerated set", ok, elapsed,
               "; ".join(problems))
    assert not problems
