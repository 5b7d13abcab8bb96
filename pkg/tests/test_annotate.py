"""Annotation layer: token filtering, vertical round trip, screening, profiling."""

import random

import pytest

from conceptminer.annotate import (
    AnnotatedToken,
    CorpusLoadError,
    CorpusManifest,
    DocumentEntry,
    PosCategory,
    VerticalParseError,
    annotate_text,
    corpus_profile,
    load_corpus,
    parse_vertical,
    read_manifest,
    read_vertical,
    screen_prefixes,
    write_vertical,
)
from conceptminer.tagger import TagMap, lemmatize, tag_word


def tok(lemma, pos="N", surface=None, si=0, ti=0):
    return AnnotatedToken(surface or lemma, lemma, PosCategory(pos), si, ti)


class TestPosCategory:
    def test_exactly_four_values(self):
        assert [p.value for p in PosCategory] == ["N", "V", "J", "R"]

    def test_from_code_rejects_minor_categories(self):
        with pytest.raises(ValueError):
            PosCategory.from_code("PREP")


class TestAnnotatedToken:
    def test_lemma_must_be_lowercase(self):
        with pytest.raises(ValueError):
            AnnotatedToken("Idea", "Idea", PosCategory.N, 0, 0)

    def test_lemma_must_be_nonempty(self):
        with pytest.raises(ValueError):
            AnnotatedToken("x", "", PosCategory.N, 0, 0)


class TestVerticalParsing:
    def test_verb_line_kept(self):
        toks = parse_vertical(["Performing\tperform\tV\n"])
        assert toks == [AnnotatedToken("Performing", "perform", PosCategory.V, 0, 0)]

    def test_minor_category_dropped(self):
        assert parse_vertical(["upon\tupon\tPREP\n"]) == []

    def test_lemma_lowercased_on_read(self):
        toks = parse_vertical(["Paris\tParis\tNN1\n"])
        assert toks[0].lemma == "paris"

    def test_claws_and_penn_tags_accepted_by_default(self):
        lines = ["ideas\tidea\tNN2\n", "run\trun\tVB\n", "new\tnew\tAJ0\n"]
        assert [t.pos.value for t in parse_vertical(lines)] == ["N", "V", "J"]

    def test_comment_lines_ignored(self):
        toks = parse_vertical(["# header\n", "idea\tidea\tN\n"])
        assert len(toks) == 1

    def test_blank_line_separates_sentences(self):
        lines = ["idea\tidea\tN\n", "\n", "plan\tplan\tN\n"]
        toks = parse_vertical(lines)
        assert [(t.sentence_index, t.token_index) for t in toks] == [(0, 0), (1, 0)]

    def test_consecutive_blank_lines_collapse(self):
        lines = ["idea\tidea\tN\n", "\n", "\n", "\n", "plan\tplan\tN\n"]
        assert [t.sentence_index for t in parse_vertical(lines)] == [0, 1]

    def test_sentence_of_only_minor_tokens_claims_no_index(self):
        lines = ["the\tthe\tDT\n", "\n", "plan\tplan\tN\n"]
        assert parse_vertical(lines)[0].sentence_index == 0

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(VerticalParseError) as err:
            parse_vertical(["idea\tidea\tN\n", "broken line\n"], path="doc.vrt")
        assert err.value.line_no == 2
        assert "doc.vrt" in str(err.value)

    def test_indexes_unique_within_document(self):
        lines = []
        for s in range(5):
            for w in ("idea", "plan", "model"):
                lines.append(f"{w}\t{w}\tN\n")
            lines.append("\n")
        toks = parse_vertical(lines)
        keys = [(t.sentence_index, t.token_index) for t in toks]
        assert len(keys) == len(set(keys))


class TestBuiltInAnnotation:
    def test_novel_novels_fixture(self):
        # Frozen output of the built-in tagger on this input: the
        # adjective reading for the bare form, noun for the plural.
        toks = annotate_text("Novel novels.")
        assert [(t.lemma, t.pos.value) for t in toks] == [("novel", "J"), ("novel", "N")]
        assert all(t.lemma == t.lemma.lower() for t in toks)

    def test_inflected_verb_family_shares_lemma(self):
        for form in ("performs", "performed", "performing"):
            assert tag_word(form) == "V"
            assert lemmatize(form, "V") == "perform"

    def test_function_words_dropped(self):
        toks = annotate_text("The idea of the plan was good.")
        assert [t.lemma for t in toks] == ["idea", "plan", "good"]

    def test_emitted_pos_closed_under_major_categories(self):
        text = ("Researchers quickly developed novel theories. "
                "The 3 results were surprisingly good, costing $5.")
        for t in annotate_text(text):
            assert t.pos in PosCategory

    def test_punctuation_and_numbers_not_tokens(self):
        toks = annotate_text("In 1962, 14% grew (almost) twofold!")
        assert all(t.surface.isalpha() or "-" in t.surface for t in toks)

    def test_irregular_lemmas(self):
        assert lemmatize("thought", "V") == "think"
        assert lemmatize("criteria", "N") == "criterion"
        assert lemmatize("better", "J") == "good"

    def test_sentence_indexes_advance(self):
        toks = annotate_text("Ideas matter. Plans matter too.")
        assert toks[0].sentence_index == 0
        assert toks[-1].sentence_index == 1


class TestRoundTrip:
    TEXT = ("Creative thinking requires novel ideas and divergent approaches. "
            "Researchers performed experiments; results were surprisingly good. "
            "The children wrote better stories than expected.")

    def test_vertical_round_trip_identity(self, tmp_path):
        first = annotate_text(self.TEXT)
        path = tmp_path / "doc.vrt"
        write_vertical(first, str(path))
        again = read_vertical(str(path))
        assert again == first

    def test_round_trip_stable_under_reserialization(self, tmp_path):
        toks = annotate_text(self.TEXT)
        p1, p2 = tmp_path / "a.vrt", tmp_path / "b.vrt"
        write_vertical(toks, str(p1))
        write_vertical(read_vertical(str(p1)), str(p2))
        assert p1.read_bytes() == p2.read_bytes()


class TestScreenPrefixes:
    def test_creative_blocked_by_creat_prefix(self):
        assert screen_prefixes([tok("creative", "J")], ["creat"]) is False

    def test_surface_match_also_blocks(self):
        t = AnnotatedToken("Creativity's", "novelty", PosCategory.N, 0, 0)
        assert screen_prefixes([t], ["creat"]) is False

    def test_creature_blocked_lexically(self):
        assert screen_prefixes([tok("creature")], ["creat"]) is False

    def test_empty_document_admissible(self):
        assert screen_prefixes([], ["creat"]) is True

    def test_clean_document_admissible(self):
        toks = [tok("idea"), tok("plan")]
        assert screen_prefixes(toks, ["creat"]) is True

    def test_monotone_adding_prefixes(self):
        rng = random.Random(7)
        lemmas = ["idea", "plan", "crust", "crayon", "novel", "design"]
        prefixes = ["cre", "pl", "no", "de", "id"]
        for _ in range(200):
            toks = [tok(rng.choice(lemmas)) for _ in range(rng.randrange(6))]
            chosen = rng.sample(prefixes, rng.randrange(1, len(prefixes)))
            before = screen_prefixes(toks, chosen)
            after = screen_prefixes(toks, chosen + [rng.choice(prefixes)])
            if before is False:
                assert after is False

    def test_uppercase_prefix_rejected(self):
        with pytest.raises(ValueError):
            screen_prefixes([], ["Creat"])


class TestManifest:
    def test_read_manifest_and_load(self, tmp_path):
        doc = tmp_path / "d1.txt"
        doc.write_text("Ideas matter.", encoding="utf-8")
        man = tmp_path / "manifest.tsv"
        man.write_text("d1.txt\t1998\tPsychology|Education\t42\n", encoding="utf-8")
        manifest = read_manifest(str(man), "target")
        assert manifest.documents[0].year == 1998
        assert manifest.documents[0].disciplines == ("Psychology", "Education")
        assert manifest.documents[0].citation_count == 42
        streams = load_corpus(manifest, "raw_text")
        assert [t.lemma for t in streams[0]] == ["idea", "matter"]

    def test_missing_optional_fields(self, tmp_path):
        (tmp_path / "d.txt").write_text("x", encoding="utf-8")
        man = tmp_path / "m.tsv"
        man.write_text("d.txt\t\t\t\n# comment\n\nd.txt\t2001\n", encoding="utf-8")
        manifest = read_manifest(str(man))
        assert manifest.documents[0].year is None
        assert manifest.documents[0].citation_count is None
        assert manifest.documents[1].year == 2001

    def test_unreadable_document_names_path(self, tmp_path):
        man = tmp_path / "m.tsv"
        man.write_text("missing.txt\t2000\tX\t1\n", encoding="utf-8")
        manifest = read_manifest(str(man))
        with pytest.raises(CorpusLoadError) as err:
            load_corpus(manifest, "raw_text")
        assert "missing.txt" in str(err.value)

    def test_bad_role_rejected(self):
        with pytest.raises(ValueError):
            CorpusManifest((), "reference")


class TestCorpusProfile:
    def test_single_document(self):
        m = CorpusManifest((DocumentEntry("a", 1950, ("Psychology",)),))
        assert corpus_profile(m) == [("1950s", "Psychology", 1)]

    def test_multi_discipline_counts_once_per_row(self):
        m = CorpusManifest((DocumentEntry("a", 1985, ("Psychology", "Education")),))
        rows = corpus_profile(m)
        assert sum(c for _, _, c in rows) == 2
        assert len(rows) == 2

    def test_decade_bucketing(self):
        docs = tuple(DocumentEntry(str(y), y, ("X",)) for y in (1962, 1968, 1971))
        rows = corpus_profile(CorpusManifest(docs))
        assert rows == [("1960s", "X", 2), ("1970s", "X", 1)]

    def test_missing_year_reported_unknown(self):
        m = CorpusManifest((DocumentEntry("a", None, ("X",)),))
        assert corpus_profile(m) == [("unknown", "X", 1)]

    def test_custom_span_labels(self):
        m = CorpusManifest((DocumentEntry("a", 1997, ("X",)),))
        assert corpus_profile(m, bucket_years=25) == [("1975-1999", "X", 1)]


class TestTagMaps:
    def test_named_maps(self):
        assert TagMap.named("penn").major_category("NNS") == "N"
        assert TagMap.named("claws").major_category("VVI") == "V"
        assert TagMap.named("identity").major_category("NN1") is None

    def test_unknown_map_name(self):
        with pytest.raises(ValueError):
            TagMap.named("brown")
