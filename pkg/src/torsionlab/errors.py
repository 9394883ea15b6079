"""Exception types shared across the package.

Every error raised on a documented contract derives from TorsionLabError so
callers (and the CLI) can distinguish input/contract failures from bugs.
"""


class TorsionLabError(Exception):
    """Base class for all documented failure modes."""


# -- scalar tower ------------------------------------------------------------

class DivisionByZero(TorsionLabError, ZeroDivisionError):
    """Division by the zero element of a coefficient field."""


class PoleAtEvaluationPoint(TorsionLabError, ZeroDivisionError):
    """Rational function evaluated where its denominator vanishes."""


class NonSquareMatrix(TorsionLabError):
    """Determinant requested of a non-square matrix."""


# -- determinant-line calculus ----------------------------------------------

class ComplexInvalid(TorsionLabError):
    """Chain data violates boundary-squares-to-zero or shape constraints."""


class DegreeMismatch(TorsionLabError):
    """Graded operands do not share the same top degree."""


class EvenTopDegree(TorsionLabError):
    """Duality requested for a graded space with even top degree."""


class DegeneratePairing(TorsionLabError):
    """A supplied pairing block is singular."""


class SingularAssembly(TorsionLabError):
    """Assembled change-of-basis matrix is not square or not invertible,
    which signals inconsistent homology data."""


class ZeroInput(TorsionLabError):
    """A determinant-line coordinate that must be nonzero is zero."""


# -- twisted CW / Euler-structure layer --------------------------------------

class NonCommutingMonodromy(TorsionLabError):
    """Monodromy matrices of a flat bundle fail to commute."""


class ZeroTorsion(TorsionLabError):
    """Torsion vanishes identically: twisted homology is nontrivial."""


class ParityError(TorsionLabError):
    """Characteristic class is not a square (odd power ratio)."""


class Conditions31Violated(TorsionLabError):
    """Input complex is not flagged as satisfying the orientability and
    Stiefel-Whitney conditions required for an absolute torsion."""


class ZeroDenominatorTorsion(TorsionLabError):
    """The normalizing torsion in the scalar-product denominator vanishes."""


class NonUnitaryMonodromy(TorsionLabError):
    """Operation requires monodromy on the unit circle / unitary matrices."""


class ZeroElement(TorsionLabError):
    """Phase of the zero element is undefined."""


class MetadataMismatch(TorsionLabError):
    """Declared Betti numbers disagree with the untwisted homology."""


# -- knot layer ---------------------------------------------------------------

class MalformedCode(TorsionLabError):
    """Planar-diagram text could not be parsed."""


class InconsistentArcs(TorsionLabError):
    """Arc labels of a planar diagram violate the two-occurrence or
    orientation-consistency rules."""


class ZeroMinor(TorsionLabError):
    """Every admissible minor of the presentation matrix vanished."""


class NonPolynomialInZ(TorsionLabError):
    """Normalized torsion failed to expand as an integer polynomial in z;
    indicates an upstream sign or normalization bug."""


class RecursionBudgetExceeded(TorsionLabError):
    """Skein resolution exceeded its node budget."""


class NonAcyclicBundle(TorsionLabError):
    """Monodromy value 1 or an Alexander root: the twisted complex has
    homology and the torsion is undefined there."""
