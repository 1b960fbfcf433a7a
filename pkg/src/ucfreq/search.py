"""Desk-scale brute-force verification suites.

Three independent checks live here:

* exhaustive enumeration of small union-closed families and the second
  frequency floor f_2 >= 1/3 over them;
* the minimal-cover theorem (antichain output, the involution
  MC(MC(F)) = F on antichains, and MC(F) = MC(minimal elements));
* per-instance recounts of the doubled-trace, frequency-cap and
  incidence-count lower bounds on concrete families, via
  `spot_check_lemmas`.

A reported violation is an implementation-bug signal, never a
mathematical discovery: every checked statement is proved for the inputs
these suites admit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .setfam import (
    SetFamily,
    covered_set,
    element_frequencies,
    elements_of,
    flexible_pairs,
    format_mask,
    incidence,
    is_antichain,
    is_two_good,
    is_union_closed,
    kth_frequency,
    minimal_covers,
    minimal_elements,
    minimal_two_good_sets,
    submasks,
    trace_counts,
    union_closure,
)

ENUMERATION_LIMIT = 5  # full union-closed enumeration is guarded above this

Progress = Callable[[int], None] | None
PROGRESS_STRIDE = 4096


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: ground size plus membership filters."""

    n: int
    require_empty: bool = False
    require_ground_coverage: bool = False
    max_family_size: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground-set size must be at least 1")


@dataclass
class VerificationReport:
    families_checked: int = 0
    min_f2: Fraction | None = None
    witnesses: list[SetFamily] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self, max_witnesses: int | None = None) -> dict:
        shown = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "families_checked": self.families_checked,
            "min_f2": None if self.min_f2 is None else str(self.min_f2),
            "witnesses": [
                {"n": fam.n, "sets": [list(elements_of(s)) for s in fam.sets]}
                for fam in shown
            ],
            "witnesses_total": len(self.witnesses),
            "violations": list(self.violations),
            "passed": self.passed,
        }


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_union_closed(
    spec: EnumerationSpec, largest: int | None = None
) -> Iterator[SetFamily]:
    """Every nonempty union-closed family matching the spec, exactly once.

    Candidate sets are examined in descending bitmask order, so any union
    of an accepted set with earlier members already had its fate decided;
    a branch survives only if those unions were all accepted, which keeps
    every interior state union-closed and prunes early.  With `largest`
    the stream is restricted to families whose numerically largest member
    equals it; the streams over all `largest` values partition the full
    enumeration.
    """
    n = spec.n
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"full enumeration is limited to n <= {ENUMERATION_LIMIT}")
    ground = (1 << n) - 1
    if largest is None:
        cands = list(range(ground, -1, -1))
        forced_first = False
    else:
        if not 0 <= largest <= ground:
            raise ValueError("largest must be a subset of the ground set")
        cands = [largest] + list(range(largest - 1, -1, -1))
        forced_first = True

    chosen: list[int] = []
    members: set[int] = set()

    def admissible() -> bool:
        if spec.require_empty and 0 not in members:
            return False
        if spec.require_ground_coverage:
            union = 0
            for s in chosen:
                union |= s
            if union != ground:
                return False
        return True

    def walk(idx: int) -> Iterator[SetFamily]:
        if idx == len(cands):
            if chosen and admissible():
                yield SetFamily(n, tuple(sorted(chosen)))
            return
        s = cands[idx]
        force = forced_first and idx == 0
        if not force:
            yield from walk(idx + 1)
        room = spec.max_family_size is None or len(chosen) < spec.max_family_size
        if room and all(s | t in members for t in chosen):
            chosen.append(s)
            members.add(s)
            yield from walk(idx + 1)
            chosen.pop()
            members.remove(s)

    yield from walk(0)


# ---------------------------------------------------------------------------
# second-frequency floor over small families
# ---------------------------------------------------------------------------

F2_FLOOR = Fraction(1, 3)


def verify_nagel_k2(spec: EnumerationSpec, progress: Progress = None) -> VerificationReport:
    """Check f_2 >= 1/3 over every enumerated family.

    Requires ground coverage and n >= 2, so each family's ground set
    really has two elements to rank.  Violations would contradict a
    proved statement at these sizes, so any entry in `violations` means
    an implementation bug.
    """
    if spec.n < 2 or not spec.require_ground_coverage:
        raise ValueError("the k=2 check needs require_ground_coverage and n >= 2")
    report = VerificationReport()
    for fam in enumerate_union_closed(spec):
        report.families_checked += 1
        if progress and report.families_checked % PROGRESS_STRIDE == 0:
            progress(report.families_checked)
        value = kth_frequency(fam, 2)[2]
        if report.min_f2 is None or value < report.min_f2:
            report.min_f2 = value
            report.witnesses = [fam]
        elif value == report.min_f2:
            report.witnesses.append(fam)
        if value < F2_FLOOR:
            report.violations.append(f"f_2 = {value} < 1/3 for {fam!r}")
    return report


# ---------------------------------------------------------------------------
# minimal-cover theorem
# ---------------------------------------------------------------------------

def _nonempty_subfamilies(n: int) -> Iterator[SetFamily]:
    masks = list(range(1, 1 << n))
    for bits in range(1, 1 << len(masks)):
        yield SetFamily(n, tuple(masks[i] for i in range(len(masks)) if bits >> i & 1))


def _random_nonempty_family(rng: random.Random, n: int) -> SetFamily:
    ground = (1 << n) - 1
    count = rng.randint(1, min(12, ground))
    picks = rng.sample(range(1, ground + 1), count)
    return SetFamily(n, tuple(picks))


def _check_cover_laws(fam: SetFamily, report: VerificationReport) -> None:
    report.families_checked += 1
    mc = minimal_covers(fam)
    if not is_antichain(mc):
        report.violations.append(f"MC not an antichain for {fam!r}")
    if minimal_covers(minimal_elements(fam)) != mc:
        report.violations.append(f"MC differs from MC of minimal elements for {fam!r}")
    if is_antichain(fam):
        if minimal_covers(mc) != fam.sorted():
            report.violations.append(f"MC(MC(F)) != F for antichain {fam!r}")


def verify_cover_theorem(
    n_max: int = 4,
    n5_samples: int = 100_000,
    seed: int = 2024,
    progress: Progress = None,
) -> VerificationReport:
    """Cover-theorem suite: exhaustive on n <= n_max, sampled on n = 5.

    Checks, for families of nonempty sets: MC(F) is an antichain,
    MC(F) = MC(minimal elements of F), and MC(MC(F)) = F when F is an
    antichain.  Exhaustive enumeration is capped at n_max <= 4; the n = 5
    layer draws `n5_samples` random families with a fixed seed.
    """
    if not 1 <= n_max <= 4:
        raise ValueError("exhaustive cover checking is limited to n_max <= 4")
    report = VerificationReport()
    for n in range(1, n_max + 1):
        for fam in _nonempty_subfamilies(n):
            _check_cover_laws(fam, report)
            if progress and report.families_checked % PROGRESS_STRIDE == 0:
                progress(report.families_checked)
    rng = random.Random(seed)
    for _ in range(n5_samples):
        fam = _random_nonempty_family(rng, 5)
        # exercise the involution on the derived antichain as well
        _check_cover_laws(fam, report)
        _check_cover_laws(minimal_elements(fam), report)
        if progress and report.families_checked % PROGRESS_STRIDE == 0:
            progress(report.families_checked)
    return report


# ---------------------------------------------------------------------------
# lemma spot checks on concrete families
# ---------------------------------------------------------------------------

def _is_minimal_two_good(fam: SetFamily, s: int) -> bool:
    if not is_two_good(fam, s):
        return False
    return all(not is_two_good(fam, s & ~(1 << (y - 1))) for y in elements_of(s))


def spot_check_lemmas(fam: SetFamily, s: int) -> VerificationReport:
    """Recount every counting bound for each flexible pair of (fam, s).

    `s` must be a minimal 2-good set of the union-closed `fam`.  For each
    flexible pair (a, x) with covered set C this checks:

    * q_T >= 2 whenever a is in T and T avoids C;
    * q_T >= 2 whenever T meets C twice, provided no pair b, c of C
      leaves s + x - b - c 2-good (the witness-set condition);
    * frequency(x) >= 2^|S| - 2^(|S|-1-|C|) + sum of covered singleton
      traces - |C|;
    * with exactly one covered element b, |S| >= 4 and s of maximal
      incidence among its size class: frequency(b) >= frequency(x) and
      the three member counts (trace size >= 2, 3, 4 with b but not x)
      of at least 2^(|S|-2), 2^(|S|-2)-1, 2^(|S|-3)-1.

    Violations signal implementation bugs; all bounds are proved for
    admissible inputs.
    """
    if not is_union_closed(fam):
        raise ValueError("family must be union-closed")
    if not _is_minimal_two_good(fam, s):
        raise ValueError(f"base set {format_mask(s)} is not minimal 2-good")
    report = VerificationReport(families_checked=1)
    size = s.bit_count()
    counts = trace_counts(fam, s).counts
    freqs = element_frequencies(fam)

    maximal_incidence = None
    witnesses = flexible_pairs(fam, s)
    covered_by_x: dict[int, tuple[int, ...]] = {}
    for w in witnesses:
        if w.x not in covered_by_x:
            covered_by_x[w.x] = covered_set(fam, s, w.x)
        cov = covered_by_x[w.x]
        cov_mask = 0
        for c in cov:
            cov_mask |= 1 << (c - 1)

        def complain(text: str) -> None:
            report.violations.append(f"(a={w.a}, x={w.x}): {text}")

        # doubled traces, first pattern
        for t in submasks(s):
            if t & (1 << (w.a - 1)) and not t & cov_mask:
                if counts[t] < 2:
                    complain(f"q_{format_mask(t)} = {counts[t]} < 2")

        # doubled traces, second pattern (needs the witness-set condition)
        if len(cov) >= 2:
            xbit = 1 << (w.x - 1)
            pairs_blocked = all(
                not is_two_good(fam, (s | xbit) & ~(1 << (b - 1)) & ~(1 << (c - 1)))
                for i, b in enumerate(cov)
                for c in cov[i + 1:]
            )
            if pairs_blocked:
                for t in submasks(s):
                    if (t & cov_mask).bit_count() >= 2 and counts[t] < 2:
                        complain(f"q_{format_mask(t)} = {counts[t]} < 2 (pair pattern)")

        # frequency floor for x
        floor = (
            2**size
            - 2 ** (size - 1 - len(cov))
            + sum(counts[1 << (c - 1)] for c in cov)
            - len(cov)
        )
        if freqs[w.x] < floor:
            complain(f"frequency({w.x}) = {freqs[w.x]} < {floor}")

        # incidence-driven counts for a single covered element
        if len(cov) == 1 and size >= 4:
            if maximal_incidence is None:
                same_size = [
                    t for t in minimal_two_good_sets(fam) if t.bit_count() == size
                ]
                maximal_incidence = max(incidence(fam, t) for t in same_size)
            if incidence(fam, s) == maximal_incidence:
                b = cov[0]
                if freqs[b] < freqs[w.x]:
                    complain(f"frequency({b}) < frequency({w.x})")
                bbit, xbit = 1 << (b - 1), 1 << (w.x - 1)
                tallies = {2: 0, 3: 0, 4: 0}
                for member in fam.sets:
                    if member & bbit and not member & xbit:
                        hits = (member & s).bit_count()
                        for j in tallies:
                            if hits >= j:
                                tallies[j] += 1
                needs = {2: 2 ** (size - 2), 3: 2 ** (size - 2) - 1, 4: 2 ** (size - 3) - 1}
                for j, need in needs.items():
                    if tallies[j] < need:
                        complain(f"count(trace >= {j}, with {b}, without {w.x}) = {tallies[j]} < {need}")
    return report


# ---------------------------------------------------------------------------
# randomized corpus
# ---------------------------------------------------------------------------

def random_union_closed(
    rng: random.Random, n: int, min_generators: int = 3, max_generators: int = 10
) -> SetFamily:
    """Union closure of a few uniformly random nonempty generator sets."""
    count = rng.randint(min_generators, max_generators)
    ground = (1 << n) - 1
    gens: list[int] = []
    for _ in range(count):
        g = rng.randint(1, ground)
        if g not in gens:
            gens.append(g)
    return union_closure(SetFamily(n, tuple(gens)))


def run_lemma_corpus(
    instances: int = 1000,
    seed: int = 7,
    n_low: int = 4,
    n_high: int = 9,
    progress: Progress = None,
) -> VerificationReport:
    """Spot-check the counting bounds on randomly generated instances.

    An instance is a pair (family, S) with S a minimal 2-good set of size
    at least 2 admitting a flexible pair; random union-closed families are
    drawn (fixed seed) until `instances` of them have been checked.
    """
    rng = random.Random(seed)
    report = VerificationReport()
    while report.families_checked < instances:
        fam = random_union_closed(rng, rng.randint(n_low, n_high))
        for s in minimal_two_good_sets(fam):
            if report.families_checked >= instances:
                break
            if s.bit_count() < 2 or not flexible_pairs(fam, s):
                continue
            sub = spot_check_lemmas(fam, s)
            report.families_checked += 1
            report.violations.extend(
                f"{fam!r} S={format_mask(s)}: {v}" for v in sub.violations
            )
            if progress and report.families_checked % 100 == 0:
                progress(report.families_checked)
    return report
