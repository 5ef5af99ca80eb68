import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_rotation(rng, n):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_unit(rng, n, count=None):
    X = rng.standard_normal((count or 1, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return X if count else X[0]


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    def record(number, title, passed, detail):
        ACCEPTANCE[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} | {detail}")
