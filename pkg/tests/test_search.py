"""Verification-suite tests.

Enumeration is validated against a from-scratch filter oracle (generate
every subfamily, keep the union-closed ones), and the report suites run in
miniature here; the full-scale runs live in the acceptance module.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from ucfreq.search import (
    EnumerationSpec,
    VerificationReport,
    enumerate_union_closed,
    random_union_closed,
    run_lemma_corpus,
    spot_check_lemmas,
    verify_cover_theorem,
    verify_nagel_k2,
)
from ucfreq.setfam import (
    SetFamily,
    family,
    is_union_closed,
    mask_of,
    minimal_two_good_sets,
    union_closure,
)


def filter_oracle_count(n: int) -> int:
    """Count union-closed families by checking every subfamily of 2^[n]."""
    full = 1 << n
    count = 0
    for bits in range(1, 1 << full):
        fam = [m for m in range(full) if bits >> m & 1]
        ok = True
        for i, a in enumerate(fam):
            for b in fam[i:]:
                if not bits >> (a | b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestEnumeration:
    def test_n1_families(self):
        got = list(enumerate_union_closed(EnumerationSpec(1)))
        assert got == [
            SetFamily(1, (0,)),
            SetFamily(1, (1,)),
            SetFamily(1, (0, 1)),
        ]

    def test_n1_require_empty(self):
        got = list(enumerate_union_closed(EnumerationSpec(1, require_empty=True)))
        assert len(got) == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts_match_filter_oracle(self, n):
        got = sum(1 for _ in enumerate_union_closed(EnumerationSpec(n)))
        assert got == filter_oracle_count(n)

    def test_every_yield_is_union_closed_and_unique(self):
        fams = list(enumerate_union_closed(EnumerationSpec(3)))
        assert len(fams) == len({f.sets for f in fams})
        assert all(is_union_closed(f) for f in fams)

    def test_partition_by_largest_member(self):
        spec = EnumerationSpec(3)
        whole = {f.sets for f in enumerate_union_closed(spec)}
        pieces: set[tuple[int, ...]] = set()
        for largest in range((1 << 3)):
            part = {f.sets for f in enumerate_union_closed(spec, largest=largest)}
            assert part.isdisjoint(pieces)
            assert all(max(sets) == largest for sets in part)
            pieces |= part
        assert pieces == whole

    def test_max_family_size(self):
        fams = list(enumerate_union_closed(EnumerationSpec(3, max_family_size=2)))
        assert all(len(f) <= 2 for f in fams)
        assert SetFamily(3, (0b011, 0b111)) in [SetFamily(3, f.sets) for f in fams]

    def test_ground_coverage_filter(self):
        fams = list(
            enumerate_union_closed(EnumerationSpec(2, require_ground_coverage=True))
        )
        assert len(fams) == 8
        for f in fams:
            union = 0
            for s in f.sets:
                union |= s
            assert union == 0b11

    def test_large_ground_guarded(self):
        with pytest.raises(ValueError, match="limited"):
            next(enumerate_union_closed(EnumerationSpec(6)))

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            EnumerationSpec(0)


class TestNagelK2:
    def test_preconditions(self):
        with pytest.raises(ValueError):
            verify_nagel_k2(EnumerationSpec(2))
        with pytest.raises(ValueError):
            verify_nagel_k2(EnumerationSpec(1, require_ground_coverage=True))

    def test_n2(self):
        rep = verify_nagel_k2(EnumerationSpec(2, require_ground_coverage=True))
        assert rep.families_checked == 8
        assert rep.min_f2 == Fraction(1, 3)
        assert family(2, [[], [1], [1, 2]]) in rep.witnesses
        assert rep.passed

    def test_n3(self):
        rep = verify_nagel_k2(EnumerationSpec(3, require_ground_coverage=True))
        assert rep.families_checked == 90
        assert rep.min_f2 == Fraction(1, 3)
        assert rep.passed

    def test_json_dict(self):
        rep = verify_nagel_k2(EnumerationSpec(2, require_ground_coverage=True))
        doc = rep.to_json_dict(max_witnesses=1)
        assert doc["min_f2"] == "1/3"
        assert doc["passed"] is True
        assert len(doc["witnesses"]) == 1
        assert doc["witnesses_total"] == len(rep.witnesses)


class TestCoverTheorem:
    def test_exhaustive_small(self):
        rep = verify_cover_theorem(n_max=3, n5_samples=0)
        # all nonempty families of nonempty sets on n = 1, 2, 3
        assert rep.families_checked == 1 + 7 + 127
        assert rep.passed

    def test_sampled_layer(self):
        rep = verify_cover_theorem(n_max=1, n5_samples=500, seed=11)
        assert rep.families_checked == 1 + 1000
        assert rep.passed

    def test_sampling_is_reproducible(self):
        a = verify_cover_theorem(n_max=1, n5_samples=200, seed=3)
        b = verify_cover_theorem(n_max=1, n5_samples=200, seed=3)
        assert a == b

    def test_guard(self):
        with pytest.raises(ValueError):
            verify_cover_theorem(n_max=5, n5_samples=0)


FLEX_FIXTURE = union_closure(family(5, [[2], [2, 4], [3], [1]]))
COVER_FIXTURE = union_closure(family(5, [[2, 5], [3], [4], [1]]))


class TestSpotCheck:
    def test_fixture_passes(self):
        rep = spot_check_lemmas(FLEX_FIXTURE, mask_of([2, 3]))
        assert rep.families_checked == 1
        assert rep.passed

    def test_vacuous_without_flexible_pairs(self):
        rep = spot_check_lemmas(COVER_FIXTURE, mask_of([2, 3, 4]))
        assert rep.passed

    def test_rejects_non_union_closed(self):
        with pytest.raises(ValueError, match="union-closed"):
            spot_check_lemmas(family(2, [[1], [2]]), mask_of([2]))

    def test_rejects_non_minimal_base(self):
        with pytest.raises(ValueError, match="minimal"):
            spot_check_lemmas(COVER_FIXTURE, mask_of([2, 3, 4, 5]))

    def test_larger_seeded_example(self):
        fam = random_union_closed(__import__("random").Random(123), 7)
        for s in minimal_two_good_sets(fam):
            if s.bit_count() >= 2:
                assert spot_check_lemmas(fam, s).passed
                break


class TestLemmaCorpus:
    def test_small_corpus_passes(self):
        rep = run_lemma_corpus(instances=120, seed=7)
        assert rep.families_checked == 120
        assert rep.passed

    def test_reproducible(self):
        a = run_lemma_corpus(instances=30, seed=9)
        b = run_lemma_corpus(instances=30, seed=9)
        assert a == b


class TestReport:
    def test_default_report_passes(self):
        assert VerificationReport().passed
        assert VerificationReport(violations=["boom"]).passed is False
