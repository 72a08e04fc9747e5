from concurrent.futures import ProcessPoolExecutor
from tqdm import tqdm
from l00p3r.core.runner import Runner


class PoolRunner(Runner):
    """
    Runs tasks on a process pool.

    Executor.map yields in submission order, so merging is deterministic.
    """

    def map(self, func, tasks, desc=None, initializer=None, initargs=()):
        tasks = list(tasks)
        with ProcessPoolExecutor(
            max_workers=self.jobs, initializer=initializer, initargs=initargs
        ) as executor:
            results = list(
                tqdm(
                    executor.map(func, tasks, chunksize=1),
                    total=len(tasks),
                    desc=desc,
                    disable=len(tasks) < 2,
                )
            )
        return results
