"""
Zeros on the critical line: scanning, classification and storage.
"""

from .base import ZeroRecord, ZeroStore
from .scan import argument_principle_count, count_vs_mainterm, scan_zeros
from .classify import classify_simplicity
