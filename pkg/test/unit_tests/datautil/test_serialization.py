# License: BSD-3

import math

import numpy as np
import pandas as pd
import pytest

from lfnforge.datautil import (
    load_table_h5, read_coefficient_file, read_csv, read_json, read_zero_store, save_table_h5,
    write_coefficient_file, write_csv, write_json, write_zero_store)
from lfnforge.forms import (
    CoefficientTable, CoefficientValidationError, DirichletCharacter, FormDescriptor,
    build_delta_table)
from lfnforge.zeros import ZeroRecord, ZeroStore


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(50)


def test_coefficient_file(tmp_path, delta_table):
    path = str(tmp_path / "coeffs.txt")
    write_coefficient_file(delta_table, path, digits=25, fingerprint="abc")
    with open(path) as f:
        lines = f.read().splitlines()
    assert lines[0] == "# lfnforge-coeffs v1 k=12 q=1 chi=principal normalized=analytic"
    assert lines[1] == "# fingerprint=abc"
    header, literals = read_coefficient_file(path)
    assert header == {"k": 12, "q": 1, "chi": "principal"}
    assert len(literals) == 51
    assert literals[0] == ("0", "0")
    assert float(literals[2][0]) == pytest.approx(-24 / 2 ** 5.5, rel=1e-15)
    with pytest.raises(FileExistsError):
        write_coefficient_file(delta_table, path)


def test_coefficient_file_format_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# lfnforge-coeffs v1 k=12 q=1 chi=principal normalized=analytic\n"
                    "1 one 0\n")
    with pytest.raises(CoefficientValidationError, match="not a number"):
        read_coefficient_file(str(path))
    path.write_text("# lfnforge-coeffs v1 k=12 q=1 chi=principal normalized=analytic\n1 1\n")
    with pytest.raises(CoefficientValidationError, match="expected '<n> <re> <im>'"):
        read_coefficient_file(str(path))
    path.write_text("# lfnforge-coeffs v1 k=12 q=1 chi=principal normalized=analytic\n")
    with pytest.raises(CoefficientValidationError, match="no coefficients"):
        read_coefficient_file(str(path))


def test_h5_cache(tmp_path, delta_table):
    path = str(tmp_path / "cache" / "delta.h5")
    save_table_h5(delta_table, path)
    loaded = load_table_h5(path)
    np.testing.assert_array_equal(loaded.values, delta_table.values)
    assert list(loaded.exact) == list(delta_table.exact)
    assert loaded.form == delta_table.form
    assert loaded.cache_key == delta_table.cache_key
    with pytest.raises(FileExistsError):
        save_table_h5(delta_table, path)
    save_table_h5(delta_table, path, overwrite=True)


def test_h5_cache_keeps_character_and_literals(tmp_path):
    chi = DirichletCharacter.from_label("values:1=0;2=1/4;3=3/4;4=1/2", 5)
    form = FormDescriptor(weight=4, level=5, character=chi)
    literals = [("0", "0"), ("1", "0"), ("0.25", "-0.5")]
    table = CoefficientTable(form, [0, 1, 0.25 - 0.5j], literals=literals)
    path = str(tmp_path / "form.h5")
    save_table_h5(table, path)
    loaded = load_table_h5(path)
    assert loaded.form.character == chi
    assert loaded.form.root_number is None
    assert loaded.literals == literals
    assert loaded.exact is None


def test_zero_store(tmp_path):
    records = [ZeroRecord(9.222379399921102522, 1e-20, 0.7415, "simple"),
               ZeroRecord(13.907549861392134, 1e-20, math.nan, "unresolved",
                          "argument_principle", 2),
               ZeroRecord(14.5, 1e-20)]
    store = ZeroStore("delta", records, 15.0, 128, fingerprint="0123456789abcdef")
    path = str(tmp_path / "zeros.txt")
    write_zero_store(store, path)
    with open(path) as f:
        first = f.readline().strip()
    assert first == "# lfnforge-zeros v1 form=delta Tmax=15.0 precision=128"
    loaded = read_zero_store(path)
    assert loaded.label == "delta"
    assert loaded.fingerprint == "0123456789abcdef"
    assert loaded[0].gamma == records[0].gamma
    assert loaded[0].classification == "simple"
    assert math.isnan(loaded[1].L_prime_abs)
    assert loaded[1].method == "argument_principle"
    assert loaded[1].multiplicity == 2
    assert loaded[2].multiplicity is None
    assert loaded == store
    with pytest.raises(FileExistsError):
        write_zero_store(store, path)


def test_zero_store_needs_header(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("9.22 1e-10 nan unresolved\n")
    with pytest.raises(ValueError, match="no '# lfnforge-zeros v1' header"):
        read_zero_store(str(path))


def test_csv(tmp_path):
    df = pd.DataFrame({"x": [1.0, 2.0], "ratio": [0.1, math.nan]})
    path = str(tmp_path / "out" / "table.csv")
    write_csv(df, path, fingerprint="abc")
    with open(path) as f:
        assert f.readline() == "# fingerprint=abc\n"
    loaded = read_csv(path)
    assert list(loaded.columns) == ["x", "ratio"]
    assert math.isnan(loaded["ratio"][1])
    with pytest.raises(FileExistsError):
        write_csv(df, path)


def test_json(tmp_path):
    path = str(tmp_path / "report.json")
    payload = {"b": np.arange(3), "a": {"z": 1 + 2j, "n": np.int64(4), "f": np.float32(0.5)}}
    write_json(payload, path, fingerprint="abc")
    loaded = read_json(path)
    assert loaded == {"fingerprint": "abc",
                      "data": {"a": {"f": 0.5, "n": 4, "z": {"re": 1.0, "im": 2.0}},
                               "b": [0, 1, 2]}}
    with open(path) as f:
        text = f.read()
    assert text.index('"a"') < text.index('"b"')
    write_json(payload, path, fingerprint="abc", overwrite=True)
    with open(path) as f:
        assert f.read() == text


def test_json_writes_non_finite_as_null(tmp_path):
    path = str(tmp_path / "report.json")
    payload = {"lower": math.nan, "upper": np.float64(np.inf),
               "ratio": np.array([1.0, np.nan]), "z": complex(math.nan, 1.0)}
    write_json(payload, path)
    with open(path) as f:
        text = f.read()
    assert "NaN" not in text and "Infinity" not in text
    assert read_json(path) == {"lower": None, "upper": None, "ratio": [1.0, None],
                               "z": {"re": None, "im": 1.0}}
