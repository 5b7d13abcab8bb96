"""Keyness scoring against the high-precision oracle, plus selection and report."""

import math
import random

import pytest

from conceptminer.annotate import AnnotatedToken, PosCategory
from conceptminer.keyness import (
    FrequencyTable,
    KeynessRecord,
    compute_llr,
    count_frequencies,
    emit_keyness_report,
    merge_tables,
    read_keyness_report,
    read_stoplist,
    score,
    select_target_words,
    write_keyness_report,
)
from llr_oracle import llr_reference, random_valid_tuple


def tok(lemma, pos):
    return AnnotatedToken(lemma, lemma, PosCategory(pos))


def rec(lemma, pos, llr, o_target=10, e_target=2.0, o_contrast=0, e_contrast=8.0):
    return KeynessRecord(lemma, PosCategory(pos), o_target, o_contrast,
                         e_target, e_contrast, llr, o_target > e_target)


class TestCountFrequencies:
    def test_same_lemma_different_pos_counted_separately(self):
        table = count_frequencies([tok("novel", "J"), tok("novel", "J"), tok("novel", "N")])
        assert table.counts == {("novel", PosCategory.J): 2, ("novel", PosCategory.N): 1}
        assert table.total == 3

    def test_empty_stream(self):
        table = count_frequencies([])
        assert table.counts == {} and table.total == 0

    def test_thousand_copies(self):
        table = count_frequencies([tok("idea", "N")] * 1000)
        assert table.counts[("idea", PosCategory.N)] == 1000
        assert table.total == 1000

    def test_merge_is_associative_with_flat_count(self):
        docs = [[tok("idea", "N"), tok("plan", "N")], [tok("idea", "N")]]
        merged = merge_tables(count_frequencies(d) for d in docs)
        flat = count_frequencies([t for d in docs for t in d])
        assert merged == flat

    def test_total_invariant_enforced(self):
        with pytest.raises(ValueError):
            FrequencyTable({("idea", PosCategory.N): 2}, 3)


class TestComputeLlr:
    def test_proportional_inputs_score_exactly_zero(self):
        e_cc, e_nc, llr = compute_llr(10, 1000, 20, 2000)
        assert llr == 0.0
        assert e_cc == 10.0 and e_nc == 20.0

    def test_oracle_fixture_balanced_counts(self):
        # Frozen from the 50-digit reference: llr_reference(10,1000,10,2000).
        e_cc, e_nc, llr = compute_llr(10, 1000, 10, 2000)
        assert math.isclose(e_cc, 6.666666666666667, rel_tol=1e-12)
        assert math.isclose(e_nc, 13.333333333333334, rel_tol=1e-12)
        assert math.isclose(llr, 1.1778303565638346, rel_tol=1e-12)
        assert abs(llr - 1.1778) < 1e-3

    def test_oracle_fixture_zero_in_target(self):
        # Frozen from llr_reference(0,1000,30,2000); the zero observed
        # count contributes nothing and the item is under-represented.
        e_cc, e_nc, llr = compute_llr(0, 1000, 30, 2000)
        assert math.isclose(llr, 12.163953243244931, rel_tol=1e-12)
        assert abs(llr - 12.164) < 1e-3
        assert 0 < e_cc  # observed 0 below expected

    def test_preconditions(self):
        with pytest.raises(ValueError):
            compute_llr(1, 0, 1, 10)
        with pytest.raises(ValueError):
            compute_llr(1, 10, 1, 0)
        with pytest.raises(ValueError):
            compute_llr(11, 10, 1, 10)
        with pytest.raises(ValueError):
            compute_llr(-1, 10, 1, 10)
        with pytest.raises(ValueError):
            compute_llr(0, 10, 0, 10)

    def test_symmetry_under_corpus_swap(self):
        rng = random.Random(11)
        for _ in range(300):
            o_cc, n_cc, o_nc, n_nc = random_valid_tuple(rng)
            e_cc, e_nc, llr = compute_llr(o_cc, n_cc, o_nc, n_nc)
            e_cc2, e_nc2, llr2 = compute_llr(o_nc, n_nc, o_cc, n_cc)
            assert llr2 == llr
            assert (e_cc2, e_nc2) == (e_nc, e_cc)
            if llr > 1e-12:
                assert (o_cc > e_cc) != (o_nc > e_nc)

    def test_zero_at_exact_independence(self):
        rng = random.Random(13)
        for _ in range(300):
            s_cc, s_nc = rng.randint(1, 1000), rng.randint(1, 1000)
            r = rng.randint(1, 50)
            big = rng.randint(r, 10000)
            _, _, llr = compute_llr(r * s_cc, big * s_cc, r * s_nc, big * s_nc)
            assert abs(llr) < 1e-12

    def test_scale_covariance(self):
        rng = random.Random(17)
        for _ in range(300):
            o_cc, n_cc, o_nc, n_nc = random_valid_tuple(rng)
            k = rng.randint(2, 50)
            _, _, llr = compute_llr(o_cc, n_cc, o_nc, n_nc)
            _, _, scaled = compute_llr(k * o_cc, k * n_cc, k * o_nc, k * n_nc)
            assert math.isclose(scaled, k * llr, rel_tol=1e-12, abs_tol=1e-15)

    def test_llr_never_negative(self):
        rng = random.Random(19)
        for _ in range(500):
            _, _, llr = compute_llr(*random_valid_tuple(rng))
            assert llr >= 0.0

    def test_matches_oracle_on_random_inputs(self):
        rng = random.Random(23)
        for _ in range(2000):
            o_cc, n_cc, o_nc, n_nc = random_valid_tuple(rng)
            e_cc, e_nc, llr = compute_llr(o_cc, n_cc, o_nc, n_nc)
            re_cc, re_nc, rllr = llr_reference(o_cc, n_cc, o_nc, n_nc)
            assert math.isclose(e_cc, re_cc, rel_tol=1e-9, abs_tol=1e-12)
            assert math.isclose(e_nc, re_nc, rel_tol=1e-9, abs_tol=1e-12)
            assert math.isclose(llr, rllr, rel_tol=1e-9, abs_tol=1e-12)


class TestScore:
    def test_expected_counts_partition_observed_total(self):
        target = count_frequencies([tok("idea", "N")] * 7 + [tok("plan", "N")] * 3)
        contrast = count_frequencies([tok("plan", "N")] * 12 + [tok("goal", "N")] * 8)
        for r in score(target, contrast):
            assert math.isclose(r.e_target + r.e_contrast,
                                r.o_target + r.o_contrast, rel_tol=1e-9)
            assert r.llr >= 0.0
            assert r.overrepresented == (r.o_target > r.e_target)

    def test_vocabulary_is_union(self):
        target = count_frequencies([tok("idea", "N")])
        contrast = count_frequencies([tok("goal", "N")])
        lemmas = {r.lemma for r in score(target, contrast)}
        assert lemmas == {"idea", "goal"}

    def test_empty_corpus_rejected(self):
        table = count_frequencies([tok("idea", "N")])
        with pytest.raises(ValueError):
            score(table, count_frequencies([]))


class TestSelectTargetWords:
    def test_threshold_boundary_kept_at_equality(self):
        records = [rec("keep", "N", 10.83), rec("drop", "N", 10.8299)]
        kept = select_target_words(records)
        assert [r.lemma for r in kept] == ["keep"]

    def test_min_count_boundary(self):
        records = [rec("rare", "N", 50.0, o_target=4), rec("ok", "N", 50.0, o_target=5)]
        assert [r.lemma for r in select_target_words(records)] == ["ok"]

    def test_underrepresented_rejected(self):
        r = KeynessRecord("down", PosCategory.N, 10, 90, 40.0, 60.0, 40.0, False)
        assert select_target_words([r]) == []

    def test_stoplist_and_proper_nouns(self):
        records = [rec("noise", "N", 99.0), rec("london", "N", 99.0), rec("idea", "N", 99.0)]
        kept = select_target_words(records, stoplist={"noise"}, proper_nouns={"london"})
        assert [r.lemma for r in kept] == ["idea"]

    def test_non_wordlike_lemmas_rejected(self):
        records = [rec("x2", "N", 99.0), rec("42", "N", 99.0),
                   rec("-", "N", 99.0), rec("self-report", "N", 99.0)]
        assert [r.lemma for r in select_target_words(records)] == ["self-report"]

    def test_sorted_by_llr_then_lemma_pos(self):
        records = [rec("b", "N", 20.0), rec("a", "V", 30.0),
                   rec("a", "J", 20.0), rec("a", "N", 20.0)]
        kept = select_target_words(records)
        assert [(r.lemma, r.pos.value) for r in kept] == [
            ("a", "V"), ("a", "J"), ("a", "N"), ("b", "N")]

    def test_output_subset_of_input(self):
        rng = random.Random(29)
        records = []
        for i in range(200):
            o_t = rng.randint(0, 30)
            e_t = rng.uniform(0.1, 20.0)
            records.append(KeynessRecord(f"w{i}", PosCategory.N, o_t, rng.randint(0, 30),
                                         e_t, 10.0, rng.uniform(0, 40), o_t > e_t))
        kept = select_target_words(records)
        assert set(kept) <= set(records)
        lls = [r.llr for r in kept]
        assert lls == sorted(lls, reverse=True)


class TestReport:
    def test_top_row_format_convention(self):
        # Rank, lemma, category code, score to two decimals; descending.
        records = [rec("thinking", "N", 834.55, o_target=100),
                   rec("process", "N", 612.05, o_target=90)]
        report = emit_keyness_report(records)
        lines = report.splitlines()
        assert lines[0].split("\t")[:4] == ["rank", "lemma", "pos", "llr"]
        assert lines[1].startswith("1\tthinking\tN\t834.55\t")
        assert lines[2].startswith("2\tprocess\tN\t612.05\t")

    def test_empty_input_header_only(self):
        report = emit_keyness_report([])
        assert report == ("rank\tlemma\tpos\tllr\to_target\te_target"
                          "\to_contrast\te_contrast\n")

    def test_top_k_limits_rows(self):
        records = [rec("a", "N", 30.0), rec("b", "N", 20.0)]
        report = emit_keyness_report(records, top_k=1)
        lines = report.splitlines()
        assert len(lines) == 2 and "\ta\t" in lines[1]

    def test_file_round_trip(self, tmp_path):
        records = [rec("idea", "N", 123.456, o_target=17, e_target=4.25,
                       o_contrast=3, e_contrast=15.75)]
        path = tmp_path / "keyness.tsv"
        write_keyness_report(records, str(path))
        back = read_keyness_report(str(path))
        assert len(back) == 1
        r = back[0]
        assert (r.lemma, r.pos, r.o_target, r.o_contrast) == ("idea", PosCategory.N, 17, 3)
        assert r.llr == pytest.approx(123.46, abs=1e-9)
        assert r.e_target == pytest.approx(4.25)

    def test_reader_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "other.tsv"
        path.write_text("a\tb\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_keyness_report(str(path))


class TestStoplist:
    def test_read_stoplist(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# spurious items\nfig  # from captions\n\ntable\n", encoding="utf-8")
        assert read_stoplist(str(path)) == frozenset({"fig", "table"})
