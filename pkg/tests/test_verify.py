import pytest

from umod.verify import SUITES, SuiteResult, coloring_suite, functor_suite, verify_duality


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_on_small_structures(name):
    result = SUITES[name](2)
    assert result.name == name
    assert result.checked > 0
    assert result.failures == []


@pytest.mark.slow
@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_at_full_scale(name):
    result = SUITES[name](4)
    assert result.passed, result.failures


def test_functor_composites_cross_carrier_sizes():
    result = functor_suite(3)
    assert result.passed, result.failures
    assert result.checked > functor_suite(2).checked


def test_coloring_with_two_variables():
    result = coloring_suite(2, max_variables=2)
    assert result.passed, result.failures
    assert result.checked > coloring_suite(2).checked


@pytest.mark.slow
@pytest.mark.parametrize("max_size, max_variables", [(5, 2), (6, 1)])
def test_coloring_at_full_scale(max_size, max_variables):
    result = coloring_suite(max_size, max_variables=max_variables)
    assert result.passed, result.failures


def test_verify_duality_selects_suites():
    results = verify_duality(1, ["coloring", "representation"])
    assert [r.name for r in results] == ["coloring", "representation"]
    assert all(r.passed for r in results)


def test_verify_duality_passes_variable_count():
    one, two = (verify_duality(1, ["coloring"], max_variables=n)[0] for n in (1, 2))
    assert two.passed
    assert two.checked > one.checked


def test_failures_are_capped():
    result = SuiteResult("capped")
    for i in range(30):
        result.fail(f"failure {i}")
    assert len(result.failures) == 20
    assert not result.passed
