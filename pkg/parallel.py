"""
Thread-pool fan-out for independent restarts, trials, samples and scan points
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from config import get_config

logger = logging.getLogger(__name__)


def spawn_generators(seed, count):
    """One independent, reproducible generator per task"""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def map_ordered(fn, items, threads=None):
    """
    Apply `fn` to every item, results in input order

    Runs inline for a single thread so tracebacks stay readable.
    """
    items = list(items)
    threads = get_config().THREADS if threads is None else int(threads)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug(f"Dispatching {len(items)} tasks to {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
