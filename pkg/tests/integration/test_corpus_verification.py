import pytest

from src.services.corpus_service import EXAMPLES, QUICK_SUITES, corpus_service


@pytest.mark.slow
@pytest.mark.parametrize("record", EXAMPLES, ids=lambda r: r.id)
def test_worked_example(record):
    result = corpus_service.verify_record(record)
    failed = [name for name, ok in result.checks.items() if not ok]
    assert result.passed, (failed, result.messages)
    assert result.exploratory == record.exploratory


@pytest.mark.slow
@pytest.mark.parametrize("name", QUICK_SUITES)
def test_quick_suite(name):
    result = corpus_service.run_suite(name)
    assert result.passed, result.failures
    assert result.cases > 0


@pytest.mark.slow
@pytest.mark.parametrize("name", ["span-formulas", "uniformity"])
def test_full_suite(name):
    result = corpus_service.run_suite(name)
    assert result.passed, result.failures


@pytest.mark.slow
def test_m3_subset_is_green():
    report = corpus_service.run("m3", suites=["subcodes"])
    assert report.green
    assert len(report.examples) >= 4
