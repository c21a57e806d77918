"""Entropy, symmetry, and motion-volume analysis for assembly and self-replication.

Core subpackages:

* :mod:`partsentropy.groups` -- finite rotation groups, rigid motions, Haar sampling
* :mod:`partsentropy.entropy` -- discrete/continuous/quantum entropy functionals
* :mod:`partsentropy.coset` -- coset decompositions and subadditivity bounds
* :mod:`partsentropy.geometry` -- convex bodies, functionals, collision predicates
* :mod:`partsentropy.kinematic` -- kinematic formulas and Monte Carlo motion volumes
* :mod:`partsentropy.replication` -- self-replication metrics and error propagation

The FastAPI front end lives in :mod:`partsentropy.service`; the CLI in
:mod:`partsentropy.cli` is a thin client over the same handlers.
"""

from . import coset, entropy, geometry, groups, kinematic, replication
from .errors import GeometryError, InfeasibleError

__version__ = "0.1.0"

__all__ = [
    "GeometryError",
    "InfeasibleError",
    "__version__",
    "coset",
    "entropy",
    "geometry",
    "groups",
    "kinematic",
    "replication",
]
