import logging
import multiprocessing


logger = logging.getLogger(__name__)

_worker_state = {}


def _install(function, context):
    _worker_state['function'] = function
    _worker_state['context'] = context


def _call(partition):
    return _worker_state['function'](_worker_state['context'], partition)


def map_partitions(function, partitions, jobs=1, context=None):
    """
    Applies ``function(context, partition)`` to every partition and returns the
    results in partition order, whatever the number of workers.

    ``function`` must be a module-level callable. With more than one job the
    context is shipped once to each worker process rather than once per
    partition.
    """
    partitions = list(partitions)
    if jobs <= 1 or len(partitions) <= 1:
        return [function(context, partition) for partition in partitions]

    workers = min(jobs, len(partitions))
    logger.debug('Mapping %d partitions over %d workers', len(partitions), workers)
    pool = multiprocessing.Pool(workers, initializer=_install, initargs=(function, context))
    try:
        return list(pool.imap(_call, partitions, chunksize=1))
    finally:
        pool.close()
        pool.join()
