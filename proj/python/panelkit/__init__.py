"""Exact PL geometry for spatial-graph panels and the vertex-split scene.

Rationals are passed as "p/q" strings; configs and embeddings as JSON text.
"""

from ._panelkit import (  # noqa: F401
    PanelkitError,
    __version__,
    check_equator,
    control_config_json,
    default_config_json,
    enumerate_cycles,
    export_obj,
    link_scan,
    linking_number,
    orient3d,
    scene_summary,
    segment_triangle,
    verify_star,
)
