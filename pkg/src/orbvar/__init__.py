"""Exact computations with root systems, Weyl groups, Chevalley bases and orbital varieties."""

__version__ = "0.1.0"

from .rootsys import RootSystem, RootSystemSpec, build_root_system
from .weyl import WeylElement, WeylGroup
from .chevalley import ChevalleyAlgebra, build_chevalley
from .nilorbits import OrbitId, OrbitPoset
from .rsk import StandardTableau, rs_pair

__all__ = [
    "__version__",
    "RootSystem",
    "RootSystemSpec",
    "build_root_system",
    "WeylElement",
    "WeylGroup",
    "ChevalleyAlgebra",
    "build_chevalley",
    "OrbitId",
    "OrbitPoset",
    "StandardTableau",
    "rs_pair",
]
