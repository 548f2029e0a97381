"""
Ingestion of externally computed coefficients.
"""

# License: BSD (3-clause)

import logging

import numpy as np

from ..datautil.serialization import read_coefficient_file
from .base import (
    INGEST_TOLERANCE, CoefficientTable, CoefficientValidationError, DirichletCharacter,
    validate_table)

log = logging.getLogger(__name__)


def ingest_coefficients(path, descriptor, tol=INGEST_TOLERANCE):
    """Read, check and wrap a coefficient file for ``descriptor``.

    Parameters
    ----------
    path: str
        File in the ``# lfnforge-coeffs v1`` format.
    descriptor: FormDescriptor
        Form the coefficients belong to. Weight, level and character have to
        agree with the file header.
    tol: float
        Tolerance on normalization, Deligne bound and Hecke relations. External
        files carry a limited number of digits.

    Returns
    -------
    table: CoefficientTable
        Validated table keeping the decimal literals for extended precision.
    """
    header, literals = read_coefficient_file(path)
    if header["k"] != descriptor.weight or header["q"] != descriptor.level:
        raise CoefficientValidationError(
            "format", f"file header k={header['k']} q={header['q']} does not match "
                      f"the descriptor k={descriptor.weight} q={descriptor.level}")
    if DirichletCharacter.from_label(header["chi"], header["q"]) != descriptor.character:
        raise CoefficientValidationError(
            "format", f"file character '{header['chi']}' does not match "
                      f"'{descriptor.character.label}'")
    values = np.array([complex(float(re), float(im)) for re, im in literals])
    table = CoefficientTable(descriptor, values, literals=literals)
    validate_table(table, tol=tol)
    log.info(f"Ingested {table.n_max} coefficients of {descriptor.label} from {path}.")
    return table
