"""
Concurrency helpers for running independent checks.
"""
import asyncio
import time
from functools import wraps


def timed(func):
    """Decorator returning (result, seconds) instead of result."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        return result, time.perf_counter() - start_time
    return wrapper


async def _run_bounded(jobs, threads):
    semaphore = asyncio.Semaphore(max(1, threads))

    async def run_one(name, job):
        async with semaphore:
            try:
                return name, await asyncio.to_thread(job)
            except Exception as e:
                return name, e

    pending = [asyncio.create_task(run_one(name, job)) for name, job in jobs.items()]
    results = {}
    for done in asyncio.as_completed(pending):
        name, value = await done
        results[name] = value
    return results


def run_checks(jobs, threads=1):
    """
    Run independent zero-argument callables and collect their results.

    Args:
        jobs: dict of {key: callable}
        threads: number of worker threads; 1 runs inline

    Returns:
        dict of {key: result} in the insertion order of `jobs`. The first
        exception raised by a job is re-raised after all jobs finish.
    """
    if threads <= 1 or len(jobs) <= 1:
        return {name: job() for name, job in jobs.items()}

    raw = asyncio.run(_run_bounded(jobs, threads))
    for name in jobs:
        if isinstance(raw[name], Exception):
            raise raw[name]
    return {name: raw[name] for name in jobs}


class ProgressTracker:
    """Track progress of a multi-step operation with callback notification."""

    def __init__(self, total_steps, callback=None):
        self.total_steps = total_steps
        self.completed_steps = 0
        self.callback = callback

    def update(self, step_name):
        """Mark one step as done."""
        self.completed_steps += 1
        if self.callback:
            self.callback(self.completed_steps, self.total_steps, step_name)
        return self.completed_steps / self.total_steps if self.total_steps else 1.0
