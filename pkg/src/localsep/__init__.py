"""localsep: r-local separators of finite multigraphs and the
decompositions they induce (canonical, greedy, block-cut)."""

from .graph import INF, Ball, Edge, MultiGraph, Provenance, Radius2, ball, distance, punctured_ball, subdivide

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Ball",
    "Edge",
    "MultiGraph",
    "Provenance",
    "Radius2",
    "ball",
    "distance",
    "punctured_ball",
    "subdivide",
    "__version__",
]
