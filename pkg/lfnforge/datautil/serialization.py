"""
Reading and writing of coefficient files, coefficient caches, zero stores and
reports.
"""

# License: BSD (3-clause)

import io
import json
import logging
import math
import os
import re

import numpy as np
import pandas as pd

from ..forms.base import (
    CoefficientTable, CoefficientValidationError, DirichletCharacter, FormDescriptor)
from ..zeros.base import ZeroRecord, ZeroStore

log = logging.getLogger(__name__)

COEFF_HEADER = "# lfnforge-coeffs v1 k={k} q={q} chi={chi} normalized=analytic"
_COEFF_HEADER_RE = re.compile(
    r"^# lfnforge-coeffs v1 k=(\d+) q=(\d+) chi=(\S+) normalized=analytic\s*$")
ZEROS_HEADER = "# lfnforge-zeros v1 form={label} Tmax={T_max!r} precision={precision}"
_ZEROS_HEADER_RE = re.compile(
    r"^# lfnforge-zeros v1 form=(\S+) Tmax=(\S+) precision=(\d+)\s*$")
_ZEROS_META_RE = re.compile(r"^# level=(\d+) fingerprint=(\S*)\s*$")


def _check_overwrite(path, overwrite):
    if os.path.exists(path) and not overwrite:
        raise FileExistsError(f'{path} already exists. Set overwrite=True to replace it.')
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def write_coefficient_file(table, path, digits=30, fingerprint=None, overwrite=False):
    """Write a table in the plain-text coefficient format.

    Parameters
    ----------
    table: CoefficientTable
        Table to write.
    path: str
        Target file.
    digits: int
        Significant decimal digits per literal.
    fingerprint: str | None
        Configuration fingerprint recorded as a comment line.
    overwrite: bool
        Whether to replace an existing file.
    """
    import mpmath
    _check_overwrite(path, overwrite)
    mp = mpmath.MPContext()
    mp.dps = digits + 5
    form = table.form
    lines = [COEFF_HEADER.format(k=form.weight, q=form.level, chi=form.character.label)]
    if fingerprint is not None:
        lines.append(f"# fingerprint={fingerprint}")
    values = table.mp_values(mp, table.n_max)
    for n in range(1, table.n_max + 1):
        v = values[n]
        im = "0" if v.imag == 0 else mp.nstr(v.imag, digits)
        lines.append(f"{n} {mp.nstr(v.real, digits)} {im}")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    log.info(f"Wrote {table.n_max} coefficients of {form.label} to {path}.")


def read_coefficient_file(path):
    """Parse a coefficient file.

    Returns
    -------
    header: dict
        Keys 'k', 'q' and 'chi' from the header line.
    literals: list of (str, str)
        Real and imaginary decimal literals for n = 0..n_max, entry 0 is
        ('0', '0').

    Raises
    ------
    CoefficientValidationError
        'format' for a missing header or malformed line, 'missing index' when
        n is not contiguous from 1.
    """
    header = None
    literals = [("0", "0")]
    with open(path, "r", encoding="utf-8") as f:
        for i_line, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _COEFF_HEADER_RE.match(line)
                if match is not None:
                    header = {"k": int(match.group(1)), "q": int(match.group(2)),
                              "chi": match.group(3)}
                continue
            if header is None:
                raise CoefficientValidationError(
                    "format", f"{path}: data before the '# lfnforge-coeffs v1' header")
            fields = line.split()
            if len(fields) != 3:
                raise CoefficientValidationError(
                    "format", f"{path}:{i_line}: expected '<n> <re> <im>', got '{line}'")
            try:
                n = int(fields[0])
                float(fields[1]), float(fields[2])
            except ValueError:
                raise CoefficientValidationError(
                    "format", f"{path}:{i_line}: not a number in '{line}'")
            if n != len(literals):
                raise CoefficientValidationError(
                    "missing index", f"{path}:{i_line}: expected n={len(literals)}, got n={n}")
            literals.append((fields[1], fields[2]))
    if header is None:
        raise CoefficientValidationError("format", f"{path}: no '# lfnforge-coeffs v1' header")
    if len(literals) < 2:
        raise CoefficientValidationError("missing index", f"{path}: no coefficients")
    return header, literals


def save_table_h5(table, path, overwrite=False):
    """Cache a coefficient table, including exact integers, in an HDF5 file."""
    import h5py
    _check_overwrite(path, overwrite)
    form = table.form
    with h5py.File(path, "w") as f:
        f.create_dataset("values", data=np.asarray(table.values))
        if table.exact is not None:
            f.create_dataset("exact", data=np.array(
                [str(int(a)) for a in table.exact], dtype=h5py.string_dtype()))
        if table.literals is not None:
            f.create_dataset("literals", data=np.array(
                table.literals, dtype=h5py.string_dtype()))
        f.attrs["weight"] = form.weight
        f.attrs["level"] = form.level
        f.attrs["character"] = form.character.label
        f.attrs["label"] = form.label
        f.attrs["self_dual"] = form.self_dual
        eps = np.nan if form.root_number is None else form.root_number
        f.attrs["root_number"] = complex(eps)
        f.attrs["conjugated"] = table._conjugated
    log.info(f"Cached {table.n_max} coefficients of {form.label} in {path}.")


def load_table_h5(path):
    import h5py
    with h5py.File(path, "r") as f:
        attrs = dict(f.attrs)
        values = f["values"][()]
        exact = None
        if "exact" in f:
            exact = np.array([int(a) for a in f["exact"].asstr()[()]], dtype=object)
        literals = None
        if "literals" in f:
            literals = [tuple(row) for row in f["literals"].asstr()[()]]
    eps = complex(attrs["root_number"])
    level = int(attrs["level"])
    form = FormDescriptor(
        weight=int(attrs["weight"]), level=level,
        character=DirichletCharacter.from_label(str(attrs["character"]), level),
        root_number=None if np.isnan(eps.real) else eps,
        self_dual=bool(attrs["self_dual"]), label=str(attrs["label"]))
    return CoefficientTable(form, values, exact=exact, literals=literals,
                            _conjugated=bool(attrs["conjugated"]))


def write_zero_store(store, path, overwrite=False):
    """Write a zero store; gamma is printed with precision/3.3 decimals."""
    _check_overwrite(path, overwrite)
    digits = max(17, int(store.precision / 3.3))
    lines = [
        ZEROS_HEADER.format(label=store.label, T_max=store.T_max, precision=store.precision),
        f"# level={store.level} fingerprint={store.fingerprint}",
    ]
    for r in store:
        multiplicity = "-" if r.multiplicity is None else r.multiplicity
        lines.append(f"{r.gamma:.{digits}f} {r.refined_to!r} {r.L_prime_abs!r} "
                     f"{r.classification} {r.method} {multiplicity}")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    log.info(f"Wrote {len(store)} zeros of {store.label} to {path}.")


def read_zero_store(path):
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.strip() for line in f if line.strip()]
    if not lines:
        raise ValueError(f"{path} is empty")
    match = _ZEROS_HEADER_RE.match(lines[0])
    if match is None:
        raise ValueError(f"{path}: no '# lfnforge-zeros v1' header")
    label, T_max, precision = match.group(1), float(match.group(2)), int(match.group(3))
    level, fingerprint = 1, ""
    records = []
    for line in lines[1:]:
        if line.startswith("#"):
            meta = _ZEROS_META_RE.match(line)
            if meta is not None:
                level, fingerprint = int(meta.group(1)), meta.group(2)
            continue
        fields = line.split()
        method = fields[4] if len(fields) > 4 else "sign_change"
        multiplicity = int(fields[5]) if len(fields) > 5 and fields[5] != "-" else None
        records.append(ZeroRecord(
            gamma=float(fields[0]), refined_to=float(fields[1]),
            L_prime_abs=float(fields[2]), classification=fields[3], method=method,
            multiplicity=multiplicity))
    return ZeroStore(label, records, T_max, precision, level=level,
                     fingerprint=fingerprint)


def write_csv(df, path, fingerprint=None, overwrite=False):
    """Write a data frame as CSV, preceded by a fingerprint comment line."""
    _check_overwrite(path, overwrite)
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, float_format="%.17g")
    with open(path, "w", encoding="utf-8") as f:
        if fingerprint is not None:
            f.write(f"# fingerprint={fingerprint}\n")
        f.write(buffer.getvalue())


def read_csv(path):
    return pd.read_csv(path, comment="#")


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        obj = complex(obj)
        return {"re": _to_jsonable(obj.real), "im": _to_jsonable(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        # nan and inf have no JSON spelling
        return float(obj) if math.isfinite(obj) else None
    return obj


def write_json(obj, path, fingerprint=None, overwrite=False):
    """Write a JSON document with sorted keys so reruns are byte-identical.

    Non-finite floats are written as null.
    """
    _check_overwrite(path, overwrite)
    payload = _to_jsonable(obj)
    if fingerprint is not None:
        payload = {"fingerprint": fingerprint, "data": payload}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, sort_keys=True, indent=2, allow_nan=False)
        f.write("\n")


def read_json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
