"""
Newform descriptors and Hecke eigenvalue tables.
"""

from .base import (
    CoefficientTable, CoefficientValidationError, DirichletCharacter, FormDescriptor,
    delta_descriptor, validate_table)
from .delta import build_delta_table, ramanujan_tau, tau_by_hecke
from .hecke import extend_by_hecke, hecke_values
from .ingest import ingest_coefficients
from .root_number import RootNumberError, compute_root_number
