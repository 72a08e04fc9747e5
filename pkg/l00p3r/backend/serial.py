from tqdm import tqdm
from l00p3r.core.runner import Runner


class SerialRunner(Runner):
    """Runs every task in the calling process."""

    def __init__(self):
        super().__init__(jobs=1)

    def map(self, func, tasks, desc=None, initializer=None, initargs=()):
        tasks = list(tasks)
        if initializer is not None:
            initializer(*initargs)
        return [func(_task) for _task in tqdm(tasks, desc=desc, disable=len(tasks) < 2)]
