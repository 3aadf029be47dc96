"""Force kernels and the annealing layout loop."""

from .backend import available_backends, backend_name
from .forces import ForceVector, attractive_force, geo_force, repulsive_force
from .params import LayoutParams, update_geo_weight
from .simulation import Simulation, simulate, step
from .state import LayoutState

__all__ = [
    "ForceVector",
    "LayoutParams",
    "LayoutState",
    "Simulation",
    "attractive_force",
    "available_backends",
    "backend_name",
    "geo_force",
    "repulsive_force",
    "simulate",
    "step",
    "update_geo_weight",
]
