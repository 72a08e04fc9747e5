"""
Work runners: map a picklable worker over independent tasks.
"""
from abc import abstractmethod
from l00p3r.core import Loggable


class Runner(Loggable):

    """Abstract base class of task runners; results always come back in task order."""

    def __init__(self, jobs=1):
        assert jobs >= 1, f"Expected jobs >= 1, got {jobs}"
        self._jobs = jobs

    @property
    def jobs(self):
        return self._jobs

    @abstractmethod
    def map(self, func, tasks, desc=None, initializer=None, initargs=()):
        """
        initializer(*initargs) runs once in every process that executes tasks.
        """
        pass

    def __repr__(self):
        return f"{self.__class__.__name__}(jobs={self._jobs})"
