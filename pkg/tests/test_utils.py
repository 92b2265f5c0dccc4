import time

import pytest

from utils.async_helper import ProgressTracker, run_checks, timed


def test_run_checks_keeps_insertion_order():
    def slow(k):
        time.sleep(0.01 * (5 - k))
        return k * k

    jobs = {f"job{k}": (lambda k=k: slow(k)) for k in range(5)}
    assert list(run_checks(jobs, threads=4).items()) == [(f"job{k}", k * k) for k in range(5)]
    assert run_checks(jobs, threads=1) == run_checks(jobs, threads=3)


def test_run_checks_reraises():
    def boom():
        raise ValueError("boom")

    with pytest.raises(ValueError):
        run_checks({"a": lambda: 1, "b": boom}, threads=2)


def test_timed_and_progress():
    result, seconds = timed(lambda x: x + 1)(1)
    assert result == 2 and seconds >= 0

    seen = []
    tracker = ProgressTracker(2, lambda done, total, step: seen.append((done, total, step)))
    assert tracker.update("first") == 0.5
    tracker.update("second")
    assert seen == [(1, 2, "first"), (2, 2, "second")]
