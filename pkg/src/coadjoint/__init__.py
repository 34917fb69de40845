"""Coadjoint representations of the Virasoro algebra and its generalizations.

Trigonometric-polynomial carriers for densities on the circle, circle
diffeomorphisms, Virasoro cocycles and the Schwarzian, Sturm-Liouville
monodromy, Ramond and Neveu-Schwarz superalgebras, the extension of
first-order operators with matrix Sturm-Liouville operators, and the
transvectant / Moyal route to third-order operators.
"""

from .config import Settings, override, settings
from .density import Density
from .diffeo import CircleDiffeo, compose, flow, identity, invert, rotation
from .errors import CoadjointError
from .sturm import SturmLiouville, fundamental_path, monodromy_invariant
from .trig import HalfTrigPoly, TrigPoly
from .virasoro import (VirasoroCovector, VirasoroElement, coad, gf_cocycle, schwarzian,
                       vir_bracket)

__version__ = "0.1.0"

__all__ = [
    "CircleDiffeo", "CoadjointError", "Density", "HalfTrigPoly", "Settings", "SturmLiouville",
    "TrigPoly", "VirasoroCovector", "VirasoroElement", "coad", "compose", "flow",
    "fundamental_path", "gf_cocycle", "identity", "invert", "monodromy_invariant", "override",
    "rotation", "schwarzian", "settings", "vir_bracket",
]
