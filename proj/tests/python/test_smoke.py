import json
import os
from pathlib import Path

import pytest

import panelkit

FIXTURES = Path(os.environ.get("PANELKIT_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def test_orient3d_signs():
    o = ("0", "0", "0")
    assert panelkit.orient3d(o, ("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1")) == 1
    assert panelkit.orient3d(o, ("0", "1", "0"), ("1", "0", "0"), ("0", "0", "1")) == -1
    assert panelkit.orient3d(o, ("1", "0", "0"), ("0", "1", "0"), ("1", "1", "0")) == 0


def test_segment_triangle_point_is_exact():
    kind, point = panelkit.segment_triangle(
        ("1/3", "1/3", "-1"), ("1/3", "1/3", "1"), ("0", "0", "0"), ("1", "0", "0"), ("0", "1", "0")
    )
    assert kind == "interior-cross"
    assert point == ("1/3", "1/3", "0")


def test_hopf_link_both_methods():
    a = [("-2", "-2", "0"), ("2", "-2", "0"), ("2", "2", "0"), ("-2", "2", "0")]
    b = [("0", "0", "-2"), ("0", "0", "2"), ("4", "0", "2"), ("4", "0", "-2")]
    assert panelkit.linking_number(a, b) == 1
    assert panelkit.linking_number(a, b, method="cone") == 1
    assert panelkit.linking_number(list(reversed(a)), b) == -1


def test_link_scan_fixture():
    pairs = panelkit.link_scan((FIXTURES / "hopf.json").read_text())
    assert len(pairs) == 1
    assert abs(pairs[0][2]) == 1


def test_k4_has_seven_short_cycles():
    edges = [(a, b) for a in "1234" for b in "1234" if a < b]
    assert len(panelkit.enumerate_cycles(edges, 4)) == 7


def test_errors_surface_as_python_exceptions():
    with pytest.raises(panelkit.PanelkitError):
        panelkit.linking_number([("0", "0", "0"), ("1", "0", "0")], [("0", "0", "1"), ("1", "0", "1"), ("0", "1", "1")])
    with pytest.raises(panelkit.PanelkitError):
        panelkit.scene_summary(json.dumps({"alpha": []}))


def test_control_scene_has_a_witness():
    cfg = panelkit.control_config_json()
    summary = panelkit.scene_summary(cfg)
    assert summary["d_f_single_point"]
    star = panelkit.verify_star(cfg)
    assert star["min_blocked"] == 0
    assert star["witnesses"]
    eq = panelkit.check_equator(cfg)
    assert eq["counter_count"] > 0


def test_default_scene_coarse_grid_is_blocked():
    cfg = panelkit.default_config_json()
    star = panelkit.verify_star(cfg, shells=1, directions=42)
    assert star["min_blocked"] >= 1


def test_obj_export_groups():
    obj = panelkit.export_obj(panelkit.control_config_json())
    groups = [line[2:] for line in obj.splitlines() if line.startswith("g ")]
    assert groups == ["delta", "delta_patch", "gamma_prime", "d_f"]
