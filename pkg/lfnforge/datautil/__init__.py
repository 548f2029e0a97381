"""
Utilities for reading and writing coefficients, zeros and reports.
"""

from .serialization import (
    load_table_h5, read_coefficient_file, read_csv, read_json, read_zero_store,
    save_table_h5, write_coefficient_file, write_csv, write_json, write_zero_store)
