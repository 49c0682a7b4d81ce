import numpy as np
import pytest

from mfib.localmodel import plotting
from mfib.localmodel.config import NumericConfig


def test_empty_list_rejected(tmp_path):
    with pytest.raises(ValueError):
        plotting.render_svg([], tmp_path / "x.svg")


def test_missing_directory(tmp_path):
    a = plotting.Artifact("points", np.zeros((1, 2)))
    with pytest.raises(OSError):
        plotting.render_svg([a], tmp_path / "nope" / "x.svg")


def test_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        plotting.render_svg([plotting.Artifact("blob", np.zeros((1, 2)))], tmp_path / "x.svg")


def test_render_all_is_byte_stable(tmp_path):
    cfg = NumericConfig()
    first = plotting.render_all(tmp_path / "a", cfg)
    second = plotting.render_all(tmp_path / "b", cfg)
    assert [p.name for p in first] == ["gamma.svg", "attach.svg", "fiber.svg"]
    for p, q in zip(first, second):
        assert p.read_bytes() == q.read_bytes()
        assert p.read_bytes().startswith(b"<?xml")


def test_gamma_artifacts_mark_three_cusps():
    line, cusps = plotting.gamma_artifacts(0.01)
    assert line.closed and len(cusps.xy) == 3
