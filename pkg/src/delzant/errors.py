"""Exception hierarchy shared by all modules."""


class DelzantError(Exception):
    """Base class for all library errors."""


# -- scalar / lattice ------------------------------------------------------

class ZeroVector(DelzantError):
    pass


class NotPrimitive(DelzantError):
    pass


class DimensionMismatch(DelzantError):
    pass


# -- polytope --------------------------------------------------------------

class ValidationError(DelzantError):
    """Malformed polytope data (non-primitive normal, duplicate facet, ...)."""


class InfeasibleEmpty(DelzantError):
    """The open region cut out by the facets is empty."""


class NotDelzant(DelzantError):
    def __init__(self, vertex, det, message):
        super().__init__(message)
        self.vertex = vertex
        self.det = det


class NotInterior(DelzantError):
    pass


class NotUnimodular(DelzantError):
    pass


# -- probes ----------------------------------------------------------------

class UnboundedRay(DelzantError):
    """The ray through x in direction +/-v never leaves the polytope."""


class HitsLowerFace(DelzantError):
    """A probe endpoint lands on a face of codimension >= 2."""


class NotTransverse(DelzantError):
    """|<v, xi>| != 1 at the facet realizing the hit."""


class NotOnProbe(DelzantError):
    pass


# -- orbit / monodromy -----------------------------------------------------

class BaseNotInGraph(DelzantError):
    pass


class NotReductionType(DelzantError):
    """Facet normals do not span R^n; the ambient solver does not apply."""


# -- reduction -------------------------------------------------------------

class SliceMissesPolytope(DelzantError):
    pass


class NotAdmissible(DelzantError):
    def __init__(self, report, message):
        super().__init__(message)
        self.report = report


class SliceInsideFacet(DelzantError):
    pass


class InducedNotPrimitive(DelzantError):
    pass


class NormalsDoNotSpan(DelzantError):
    pass


# -- product tori ----------------------------------------------------------

class NonPositiveEntry(DelzantError):
    pass


class LengthMismatch(DelzantError):
    pass


class RankNotOne(DelzantError):
    pass


class NotEquivalent(DelzantError):
    pass


class WordSearchExhausted(DelzantError):
    pass


class PreconditionViolated(DelzantError):
    def __init__(self, index, message):
        super().__init__(message)
        self.index = index


# -- presets / cli ---------------------------------------------------------

class UnknownPreset(DelzantError):
    pass


class OracleUnavailable(DelzantError):
    """The requested closed-form oracle is not encodable (e.g. dense orbits)."""


class ParseError(DelzantError):
    pass


class NotPlanar(DelzantError):
    pass
