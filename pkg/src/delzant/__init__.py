"""Exact toric moment-polytope toolkit.

Models Delzant polytopes over Q(sqrt(D)), constructs symmetric probes and
the fibre equivalences and homology involutions they induce, explores
equivalence orbits, solves the ambient monodromy integer constraints, and
classifies product tori in the orthant, all in exact arithmetic.
"""

from . import chekanov, errors, lattice, monodromy, orbit, probe, reduction, spaces
from .lattice import ExactScalar, GammaLattice, scalar
from .orbit import OrbitGraph, OrbitParams, Verdict, decide, explore
from .polytope import ChekanovInvariants, DelzantPolytope, Facet, as_point
from .probe import SymmetricProbe, enumerate_probes, involution, partner, shoot
from .reduction import AffineSlice, delzant_lift
from .spaces import preset

__all__ = [
    "AffineSlice",
    "ChekanovInvariants",
    "DelzantPolytope",
    "ExactScalar",
    "Facet",
    "GammaLattice",
    "OrbitGraph",
    "OrbitParams",
    "SymmetricProbe",
    "Verdict",
    "as_point",
    "chekanov",
    "decide",
    "delzant_lift",
    "enumerate_probes",
    "errors",
    "explore",
    "involution",
    "lattice",
    "monodromy",
    "orbit",
    "partner",
    "preset",
    "probe",
    "reduction",
    "scalar",
    "shoot",
    "spaces",
]

__version__ = "0.1.0"
