"""System configs: presets, JSON schema, convention handling."""

import json

import pytest

from matradix import linalg
from matradix.errors import ConfigError, IncompleteDigitSet
from matradix.systems import PRESETS, SystemConfig, get_config


def test_presets_all_validate(configs):
    for name, cfg in configs.items():
        s = cfg.radix_system()
        assert s.dim == cfg.dim
        assert len(s.digits) == s.det_abs, name


def test_transpose_convention():
    cfg = get_config("cloud-nine")
    assert cfg.transpose_convention
    assert cfg.radix_base() == linalg.transpose(cfg.matrix)
    assert cfg.radix_system().base == ((1, 2), (-2, 1))
    assert cfg.untransposed_system().base == cfg.matrix
    flat = SystemConfig(dim=1, matrix=((2,),), digits=((0,), (1,)),
                        transpose_convention=False)
    assert flat.radix_base() == flat.matrix


def test_cloud_nine_complete_both_sides():
    """The nine-digit example is a valid digit set for A and for A^T."""
    cfg = get_config("cloud-nine")
    cfg.radix_system()
    cfg.untransposed_system()


def test_convention_changes_validity():
    """y-axis digits are complete mod ((2,1),(0,2)) but collide mod its
    transpose, so the convention flag decides whether the config loads."""
    cfg = SystemConfig(dim=2, matrix=((2, 1), (0, 2)),
                       digits=((0, 0), (0, 1), (0, 2), (0, 3)))
    cfg.untransposed_system()
    with pytest.raises(IncompleteDigitSet):
        cfg.radix_system()
    flipped = SystemConfig(dim=2, matrix=((2, 1), (0, 2)),
                           digits=cfg.digits, transpose_convention=False)
    flipped.radix_system()


def test_json_roundtrip(configs, tmp_path):
    for name, cfg in configs.items():
        p = tmp_path / f"{name}.json"
        cfg.save(str(p))
        assert SystemConfig.load(str(p)) == cfg


def test_json_schema_fields(tmp_path):
    cfg = get_config("twin-dragon")
    p = tmp_path / "twin.json"
    cfg.save(str(p))
    obj = json.loads(p.read_text())
    assert obj["dim"] == 2
    assert obj["matrix"] == [[1, 1], [-1, 1]]
    assert obj["digits"] == [[0, 0], [1, 0]]
    assert obj["dual_digits"] == [[0, 0], [1, 0]]
    assert obj["transpose_convention"] is True


def test_load_rejects_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        SystemConfig.load(str(p))
    p2 = tmp_path / "bad2.json"
    p2.write_text(json.dumps({"matrix": [[2]], "digits": [[0, 0]]}))
    with pytest.raises(ConfigError):
        SystemConfig.load(str(p2))
    p3 = tmp_path / "bad3.json"
    p3.write_text(json.dumps({"dim": 3, "matrix": [[2]], "digits": [[0]]}))
    with pytest.raises(ConfigError):
        SystemConfig.load(str(p3))
    with pytest.raises(ConfigError):
        get_config(str(tmp_path / "missing.json"))


def test_get_config_resolves_path(tmp_path):
    p = tmp_path / "sys.json"
    get_config("dyadic-03").save(str(p))
    assert get_config(str(p)) == PRESETS["dyadic-03"]


def test_incomplete_digit_set_reported():
    cfg = SystemConfig(dim=1, matrix=((2,),), digits=((0,), (2,)))
    with pytest.raises(IncompleteDigitSet):
        cfg.radix_system()
