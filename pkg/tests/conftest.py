import itertools

import pytest


def brute_orbit(v):
    """All nonzero scalar multiples of an integer vector, mod 5, balanced."""
    def bal(x):
        x %= 5
        return x - 5 if x > 2 else x

    return frozenset(tuple(bal(lam * x) for x in v) for lam in (1, 2, 3, 4))


def brute_classes(dim):
    vecs = [v for v in itertools.product(range(-2, 3), repeat=dim) if any(v)]
    return {brute_orbit(v) for v in vecs}


@pytest.fixture(scope="session")
def p3_classes():
    return brute_classes(4)


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a numbered acceptance criterion's outcome for the summary."""
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0]
    ACCEPTANCE[label] = (False, marker.args[1])
    yield
    ACCEPTANCE[label] = (True, marker.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=int):
        ok, title = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label:>2}. {title}")
