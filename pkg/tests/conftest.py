import numpy as np
import pytest


def batch_means_se(x, stat, n_batches=100):
    """Standard error of ``stat`` on a dependent series via non-overlapping batches."""
    x = np.asarray(x)
    m = len(x) // n_batches
    vals = np.array([stat(x[i * m:(i + 1) * m]) for i in range(n_batches)])
    return vals.std(ddof=1) / np.sqrt(n_batches)


def brute_force_path(draw, beta, n, burn_in=500, lag=1):
    """Independent reference simulator returning (X, eps) aligned in time."""
    eps = draw(n + burn_in)
    x = np.empty_like(eps)
    x[:lag] = eps[:lag]
    for t in range(lag, len(eps)):
        x[t] = beta * x[t - lag] * eps[t - lag] + eps[t]
    return x[burn_in:], eps[burn_in:]


@pytest.fixture
def se():
    return batch_means_se


_VERDICTS = "_acceptance_verdicts"


@pytest.fixture
def verdict(request):
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert."""
    lines = request.config.__dict__.setdefault(_VERDICTS, {})

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.setdefault(number, []).append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get(_VERDICTS)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            for line in lines[number]:
                terminalreporter.write_line(line)
