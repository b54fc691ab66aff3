"""combinorm: exact combinatorial-norm geometry at desk scale.

Families of finite sets with their norms and orthogonal duals, perfect-graph
recognition and the polytope form of geometric duality, Sierpinski-graph
norms and embeddings, emulations of Schreier-type families, extreme-point
constructions, and finite Musielak-Orlicz modulars.  All arithmetic is
exact over the rationals.
"""

from . import (duality, emulations, exact, extremals, families, graphs,
               jsonio, norms, orlicz, sierpinski)
from .errors import CombinormError

__version__ = "0.1.0"

__all__ = ["duality", "emulations", "exact", "extremals", "families",
           "graphs", "jsonio", "norms", "orlicz", "sierpinski",
           "CombinormError", "__version__"]
