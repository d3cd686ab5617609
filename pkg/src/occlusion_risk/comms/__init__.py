"""V2X simulation: connectivity sampling, communication graphs and perception fusion."""

from occlusion_risk.comms.connectivity import ConnectivityAssignment, assignment_rows, sample_connected
from occlusion_risk.comms.fusion import fuse, fuse_asymmetric, fuse_matrix, fuse_symmetric
from occlusion_risk.comms.graph import CommGraph, comm_graph

__all__ = [
    "CommGraph",
    "ConnectivityAssignment",
    "assignment_rows",
    "comm_graph",
    "fuse",
    "fuse_asymmetric",
    "fuse_matrix",
    "fuse_symmetric",
    "sample_connected",
]
