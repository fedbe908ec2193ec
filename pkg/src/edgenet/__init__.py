"""Edge-constraint nets: discrete surfaces built from points and unit normals.

Submodules
----------
quatmath            quaternion algebra and the 2x2 complex matrix model
netcore             quad graphs, contact element nets, the edge-constraint
curvature           mixed-area curvature, fundamental forms, principal data
minimal             discrete holomorphic grids and minimal nets
integrable_frames   Lax frames, Sym-Bobenko formula, cmc nets
kfamily             K-nets, Hirota equation, circular K = -1 nets
developable         parallel frames, developable strips, Schwarz lantern
spin                normal transports and spin transformations
io                  JSON/OBJ/CSV formats and reports
"""

from .kernels import BACKEND
from .netcore import (
    ContactElementNet,
    NetError,
    QuadGraph,
    build_cylinder_graph,
    build_grid_graph,
    default_tol,
    grid_net,
    offset_net,
    sample_analytic,
    sphere_net,
    validate_edge_constraint,
)
from .curvature import net_curvature, quad_curvature
from .integrable_frames import SolverError

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ContactElementNet",
    "NetError",
    "QuadGraph",
    "SolverError",
    "build_cylinder_graph",
    "build_grid_graph",
    "default_tol",
    "grid_net",
    "net_curvature",
    "offset_net",
    "quad_curvature",
    "sample_analytic",
    "sphere_net",
    "validate_edge_constraint",
]
