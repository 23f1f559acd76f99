import pytest

from twinrep.sieve import build_prime_table, build_twin_index


@pytest.fixture(scope="session")
def table_1e5():
    return build_prime_table(100_000)


@pytest.fixture(scope="session")
def table_2e5():
    return build_prime_table(200_000)


@pytest.fixture(scope="session")
def table_1e6():
    return build_prime_table(1_000_001)


@pytest.fixture(scope="session")
def twins_1e6(table_1e6):
    return build_twin_index(table_1e6)


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {name}: {verdict}", flush=True)
