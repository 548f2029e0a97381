# License: BSD-3

import random

import numpy as np
import pytest

from lfnforge.util import (
    DEFAULT_PRECISION, default_precision, fingerprint, parallel_map, set_random_seeds)


def test_set_random_seeds_raise_value_error():
    with pytest.raises(ValueError, match="seed expected to be int, got 'abc'"):
        set_random_seeds("abc")


def test_set_random_seeds_reproducible():
    rng = set_random_seeds(7)
    first = (random.random(), np.random.rand(), rng.rand())
    rng = set_random_seeds(7)
    assert (random.random(), np.random.rand(), rng.rand()) == first


def test_default_precision(monkeypatch):
    monkeypatch.delenv("LFNFORGE_PRECISION", raising=False)
    assert default_precision() == DEFAULT_PRECISION
    monkeypatch.setenv("LFNFORGE_PRECISION", "200")
    assert default_precision() == 200
    monkeypatch.setenv("LFNFORGE_PRECISION", "many")
    with pytest.raises(ValueError, match="LFNFORGE_PRECISION expected to be an integer"):
        default_precision()


def test_fingerprint():
    assert fingerprint("a=1\n") == fingerprint("a=1\n")
    assert fingerprint("a=1\n") != fingerprint("a=2\n")
    assert len(fingerprint("")) == 16


def _square(x):
    return x * x


@pytest.mark.parametrize("n_jobs", [1, 2])
def test_parallel_map_keeps_order(n_jobs):
    assert parallel_map(_square, range(10), n_jobs=n_jobs) == [x * x for x in range(10)]
