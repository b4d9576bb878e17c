"""Utilities for folding a pure function over partitions, optionally in parallel."""
import logging
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)

class PartitionRunner():
    """A class for evaluating a function on several independent partitions.

    Attributes
    ----------
    workers : int
        number of worker processes; 1 runs a sequential loop in-process

    Notes
    -----
    The function and the partitions must be picklable when `workers` exceeds
    one. Results always come back in partition order, so any reduction over
    them is deterministic.
    """
    workers = None

    def __init__(self, workers=1):
        if isinstance(workers, bool) or not isinstance(workers, int):
            raise TypeError('workers should be an integer.')
        if workers < 1:
            raise ValueError('workers should be at least 1.')
        self.workers = workers

    def run(self, fun, partitions):
        """Evaluate `fun` on every partition.

        Parameters
        ----------
        fun : function
            a pure function of one partition
        partitions : list
            the inputs

        Returns
        -------
        results : list
            `fun(partition)` for each partition, in input order
        """
        if not hasattr(fun, '__call__'):
            raise TypeError('fun should be a callable function.')
        partitions = list(partitions)
        logger.debug('running %d partitions on %d worker(s)',
                     len(partitions), self.workers)
        if self.workers == 1 or len(partitions) < 2:
            return [fun(part) for part in partitions]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fun, partitions))

    def fold(self, fun, partitions, combine, initial):
        """Evaluate `fun` on every partition and reduce in partition order."""
        acc = initial
        for value in self.run(fun, partitions):
            acc = combine(acc, value)
        return acc
