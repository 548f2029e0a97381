"""
Simplicity classification of stored zeros by |L'(rho)|.
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math
from functools import partial

from ..lfun.afe import afe_L_prime
from ..lfun.cauchy import derivative_via_cauchy
from ..lfun.context import ConvergenceError
from ..util import parallel_map
from .scan import argument_principle_count, grid_step

log = logging.getLogger(__name__)

SIMPLICITY_THRESHOLD = 1e-6
AGREEMENT = 1e-6
CLUSTER_FACTOR = 4
MAX_RADIUS = 0.45


def cauchy_radius(gamma):
    """R = 1 / log(gamma), kept below 1/2."""
    return min(MAX_RADIUS, 1 / math.log(max(gamma, math.e)))


def _clusters(records):
    """Indices of records closer than 4 refined_to to a neighbour."""
    clustered = set()
    for i in range(len(records) - 1):
        a, b = records[i], records[i + 1]
        if b.gamma - a.gamma <= CLUSTER_FACTOR * max(a.refined_to, b.refined_to):
            clustered.update((i, i + 1))
    return clustered


def _classify_one(table, ctx, threshold, method, agreement, record):
    s = complex(0.5, record.gamma)
    try:
        direct = abs(afe_L_prime(table, s, ctx, method=method).L_prime)
        check = abs(derivative_via_cauchy(table, s, 1, cauchy_radius(record.gamma), ctx))
    except (ValueError, ConvergenceError, ArithmeticError) as e:
        log.warning(f"Evaluation of L' at gamma={record.gamma} failed ({e}); unresolved.")
        return dataclasses.replace(record, classification="unresolved")
    direct, check = float(direct), float(check)
    agree = abs(direct - check) <= agreement * max(direct, check)
    simple = direct > threshold and agree
    if not agree:
        log.warning(f"L' at gamma={record.gamma}: AFE {direct:.10g} and Cauchy {check:.10g} "
                    f"disagree.")
    return dataclasses.replace(record, L_prime_abs=direct,
                               classification="simple" if simple else "unresolved")


def classify_simplicity(store, table, ctx, threshold=SIMPLICITY_THRESHOLD, method="engine",
                        agreement=AGREEMENT, n_jobs=1):
    """Mark zeros simple when |L'(rho)| exceeds ``threshold``.

    |L'(rho)| comes from :func:`afe_L_prime` and is cross-checked against a
    Cauchy-circle derivative of radius 1/log(gamma); the two have to agree to
    ``agreement`` relative. Zeros closer than 4 refined_to to a neighbour are
    left unresolved and recounted with the argument principle; the count is
    kept as the record's multiplicity. When the count fails the record keeps
    its sign_change method.

    Parameters
    ----------
    store: ZeroStore
        Zeros to classify.
    table: CoefficientTable
        Coefficients of the form.
    ctx: EvalContext
        Evaluation context.
    threshold: float
        Simplicity threshold on |L'(rho)|.
    method: str
        'engine' or 'contour', passed to :func:`afe_L_prime`.
    agreement: float
        Relative agreement required between the two derivatives.
    n_jobs: int
        Number of joblib workers.

    Returns
    -------
    store: ZeroStore
        Same ordinates with L_prime_abs and classification filled in.
    """
    records = list(store.records)
    clustered = _clusters(records)
    for i in sorted(clustered):
        r = records[i]
        half = grid_step(table.form, store.T_max)
        try:
            count = argument_principle_count(table, ctx, r.gamma - half, r.gamma + half)
        except (ConvergenceError, ValueError) as e:
            log.warning(f"Zero cluster at gamma={r.gamma}: argument principle failed ({e}).")
            records[i] = dataclasses.replace(r, classification="unresolved")
            continue
        log.warning(f"Zero cluster at gamma={r.gamma}: {count} zeros within {half:.3g} by "
                    f"the argument principle; left unresolved.")
        records[i] = dataclasses.replace(r, classification="unresolved",
                                         method="argument_principle", multiplicity=count)
    todo = [i for i in range(len(records)) if i not in clustered]
    classified = parallel_map(
        partial(_classify_one, table, ctx, threshold, method, agreement),
        [records[i] for i in todo], n_jobs=n_jobs)
    for i, record in zip(todo, classified):
        records[i] = record
    n_simple = sum(r.classification == "simple" for r in records)
    log.info(f"Classified {len(records)} zeros of {store.label}: {n_simple} simple.")
    return store.replace_records(records)
