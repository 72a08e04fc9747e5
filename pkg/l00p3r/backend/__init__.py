from l00p3r.backend.serial import SerialRunner
from l00p3r.backend.pool import PoolRunner


def make_runner(jobs=1):
    """
    A serial runner for one job, a process pool otherwise.
    """
    assert jobs >= 1, f"Expected jobs >= 1, got {jobs}"
    if jobs == 1:
        return SerialRunner()
    return PoolRunner(jobs=jobs)
