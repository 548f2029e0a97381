# License: BSD (3-clause)

import hashlib
import os
import random

import numpy as np
from joblib import Parallel, delayed
from sklearn.utils import check_random_state

DEFAULT_PRECISION = 128
PRECISION_ENV_VAR = "LFNFORGE_PRECISION"


def set_random_seeds(seed):
    """Set seeds for python random module and numpy.random.

    Randomized checkers should not rely on the global state and take a
    ``random_state`` argument instead; this helper only exists so command-line
    runs are reproducible end to end.

    Parameters
    ----------
    seed: int
        Random seed.

    Returns
    -------
    rng: numpy.random.RandomState
        Random state seeded with ``seed``.
    """
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError(f"seed expected to be int, got '{seed}'")
    random.seed(seed)
    np.random.seed(seed)
    return check_random_state(seed)


def default_precision():
    """Working precision in bits, read from ``LFNFORGE_PRECISION`` if set."""
    value = os.environ.get(PRECISION_ENV_VAR)
    if value is None or value.strip() == "":
        return DEFAULT_PRECISION
    try:
        precision = int(value)
    except ValueError:
        raise ValueError(
            f"{PRECISION_ENV_VAR} expected to be an integer number of bits, "
            f"got '{value}'")
    return precision


def fingerprint(text):
    """Short stable hash of a canonical text (first 16 hex chars of SHA-256)."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def parallel_map(func, items, n_jobs=1, prefer=None):
    """Apply ``func`` to every item, in order, possibly in parallel.

    Parameters
    ----------
    func: callable
        Function of one argument. Has to be picklable when ``n_jobs != 1``
        and the process backend is used.
    items: iterable
        Arguments.
    n_jobs: int
        Number of joblib workers. 1 runs in the calling thread.
    prefer: str | None
        Passed to joblib, 'threads' or 'processes'.

    Returns
    -------
    results: list
        ``[func(item) for item in items]`` in input order.
    """
    items = list(items)
    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer=prefer)(
        delayed(func)(item) for item in items)
