# License: BSD-3

import pytest

from lfnforge.config import RunConfig


def test_round_trip_is_byte_identical():
    cfg = RunConfig(precision=96, T=150, tmax=300.5, nmax=5000,
                    statistics=("second-moment", "shifted"), output_dir="out", n_jobs=2,
                    seed=3, character="values:1=0;3=1/2", level=4, weight=2)
    text = cfg.to_text()
    parsed = RunConfig.from_text(text)
    assert parsed == cfg
    assert parsed.to_text() == text
    assert parsed.fingerprint == cfg.fingerprint


def test_canonical_text_is_sorted():
    keys = [line.split("=", 1)[0] for line in RunConfig(precision=64).to_text().splitlines()]
    assert keys == sorted(keys)


def test_comments_and_defaults():
    cfg = RunConfig.from_text("# a run\n\nprecision=80\nT=150\n")
    assert cfg.precision == 80
    assert cfg.T == 150.0
    assert cfg.tmax is None
    assert cfg.form == "builtin:delta"


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv("LFNFORGE_PRECISION", "160")
    assert RunConfig().precision == 160


def test_update_ignores_none():
    cfg = RunConfig(precision=64, T=100)
    updated = cfg.update(T=200, tmax=None, seed=None)
    assert updated.T == 200.0
    assert updated.seed == cfg.seed
    assert cfg.T == 100.0


def test_fingerprint_changes_with_content():
    assert RunConfig(precision=64).fingerprint != RunConfig(precision=65).fingerprint


def test_form_path():
    assert RunConfig(precision=64).form_path is None
    assert RunConfig(precision=64, form="file:/tmp/f.txt").form_path == "/tmp/f.txt"


def test_invalid_values():
    with pytest.raises(ValueError, match="form expected to be one of"):
        RunConfig(form="lmfdb:11.2.a.a")
    with pytest.raises(ValueError, match="precision expected to be >= 53 bits"):
        RunConfig(precision=20)
    with pytest.raises(ValueError, match="unknown key 'colour'"):
        RunConfig.from_text("colour=blue\n")
    with pytest.raises(ValueError, match="expected key=value"):
        RunConfig.from_text("precision\n")


def test_save_refuses_overwrite(tmp_path):
    path = tmp_path / "run.cfg"
    cfg = RunConfig(precision=64)
    cfg.save(str(path))
    assert RunConfig.from_file(str(path)) == cfg
    with pytest.raises(FileExistsError):
        cfg.save(str(path))
    cfg.save(str(path), overwrite=True)
