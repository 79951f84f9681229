import json

import pytest

from src.services.corpus_service import (
    EXAMPLES,
    QUICK_SUITES,
    SUITES,
    _distance_check,
    corpus_service,
    lint_corpus,
    load_records,
)


def example(id):
    return next(r for r in EXAMPLES if r.id == id)


class TestCorpusLint:
    def test_embedded_corpus_is_clean(self):
        assert lint_corpus(EXAMPLES) == []

    def test_ids_are_unique(self):
        assert len({r.id for r in EXAMPLES}) == len(EXAMPLES)

    def test_duplicate_ids(self):
        record = example("inverse-m3")
        problems = lint_corpus([record, record])
        assert problems == ["inverse-m3: duplicate id"]

    def test_inconsistent_length(self):
        record = example("inverse-m3").model_copy(update={"expected_n": 8})
        problems = lint_corpus([record])
        assert any("is not q^m-1" in p for p in problems)

    def test_unknown_family(self):
        record = example("inverse-m3").model_copy(update={"family": "sextic"})
        assert lint_corpus([record]) == ["inverse-m3: unknown family sextic"]

    def test_every_record_cites_a_modulus(self):
        assert all("=0" in r.citation for r in EXAMPLES)

    def test_citation_without_section(self):
        record = example("inverse-m3").model_copy(update={"citation": "inverse APN function"})
        assert lint_corpus([record]) == ["inverse-m3: citation names no section"]

    def test_citations_name_their_section(self):
        assert example("inverse-m3").citation.startswith("inverse function: ")
        assert example("welch-diff-m5").citation.startswith("differential sequences: ")


class TestRecords:
    def test_filter(self):
        assert [r.id for r in corpus_service.records("inverse")] == ["inverse-m3", "inverse-m4", "inverse-m5"]

    def test_skip_ids(self, override_settings):
        override_settings(CORPUS_SKIP_IDS="inverse-m4,inverse-m5")
        assert [r.id for r in corpus_service.records("inverse")] == ["inverse-m3"]

    def test_load_records(self, tmp_path):
        path = tmp_path / "extra.json"
        record = example("inverse-m3").model_copy(update={"id": "extra-inverse"})
        path.write_text(json.dumps([record.model_dump()]))
        loaded = load_records(str(path))
        assert [r.id for r in loaded] == ["extra-inverse"]
        assert [r.id for r in corpus_service.records("extra", loaded)] == ["extra-inverse"]


class TestVerifyRecord:
    def test_inverse_m3_passes(self):
        result = corpus_service.verify_record(example("inverse-m3"))
        assert result.passed
        for name in ("n", "k", "generator", "prediction", "distance", "dual", "structure"):
            assert result.checks[name], name
        assert result.record.k == 3

    def test_wrong_dimension_fails(self):
        record = example("inverse-m3").model_copy(update={"expected_k": 4})
        result = corpus_service.verify_record(record)
        assert not result.passed
        assert result.checks["k"] is False

    def test_build_failure_is_reported(self):
        record = example("inverse-m3").model_copy(update={"family": "gold", "h": 3})
        result = corpus_service.verify_record(record)
        assert not result.passed
        assert result.checks == {"build": False}
        assert result.messages[0].startswith("INVALID_PARAMS")

    def test_exploratory_record(self):
        result = corpus_service.verify_record(example("kasami-m5-h2"))
        assert result.exploratory
        assert result.checks["exploratory-flag"]

    def test_inverse_for_even_m(self):
        result = corpus_service.verify_record(example("inverse-m4"))
        assert result.passed, result.messages
        assert result.exploratory
        assert "prediction" not in result.checks

    def test_corrected_dembowski_ostrom_generator(self):
        result = corpus_service.verify_record(example("do-q3-m3-k1"))
        assert result.passed, result.messages
        assert result.checks["generator"]


class TestDistanceCheck:
    def test_exact_distance_inside_interval(self):
        ok, _ = _distance_check(example("inverse-m3"), 4, 4)
        assert ok

    def test_lower_bound_must_be_certified(self):
        record = example("niho1-m9")
        assert _distance_check(record, 6, 16)[0]
        assert not _distance_check(record, 4, 16)[0]

    def test_claimed_interval_must_contain_computed_one(self):
        record = example("pow2h-m7-h3")
        assert _distance_check(record, 4, 8)[0]
        assert not _distance_check(record, 3, 8)[0]
        assert not _distance_check(record, 4, 9)[0]


class TestSuites:
    def test_quick_suites_are_registered(self):
        assert set(QUICK_SUITES) <= set(SUITES)

    def test_combinatorics(self):
        result = corpus_service.run_suite("combinatorics")
        assert result.passed, result.failures
        assert result.cases > 0

    def test_span_oracle(self):
        result = corpus_service.run_suite("span-oracle")
        assert result.passed, result.failures

    def test_subcodes_over_odd_characteristic(self):
        records = [example("inverse-m4"), example("square-q3-m2"), example("cube-q5-m2")]
        result = corpus_service.run_suite("subcodes", records)
        assert result.passed, result.failures
        assert result.cases == 3

    def test_x13_over_gf27_gives_equal_codes(self):
        result = corpus_service.run_suite("subcodes", [example("qh-q3-m3-h3")])
        assert result.passed, result.failures
        assert result.cases == 1

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            corpus_service.run_suite("nope")

    def test_run_without_suites(self):
        report = corpus_service.run("inverse-m3", suites=[])
        assert report.green
        assert [r.id for r in report.examples] == ["inverse-m3"]
        assert report.environment["fields"] == ["2^3"]
        assert report.service == "cyclic-codes"
