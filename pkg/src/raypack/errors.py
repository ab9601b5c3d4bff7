"""Error taxonomy.

Every failure mode surfaced by the library is a subclass of RaypackError.
The CLI maps each class to a distinct exit code via EXIT_CODES.
"""

from __future__ import annotations


class RaypackError(Exception):
    """Base class for all raypack errors."""


class BadConfig(RaypackError):
    """Malformed CLI / run configuration."""


class PreconditionViolated(RaypackError):
    """A documented operation precondition does not hold."""


class NotAdjacent(RaypackError):
    """Concatenation attempted across a non-edge."""


class VertexRepetition(RaypackError):
    """A path or ray would repeat a vertex."""


class EdgeNotOnRay(RaypackError):
    """Requested split edge does not occur on the double ray."""


class OracleInconsistent(RaypackError):
    """An intersection certificate contradicts a membership probe."""


class OracleBroke(RaypackError):
    """A ray-family oracle returned a family violating its contract."""


class BudgetTooSmall(RaypackError):
    """A surplus-family budget below the lemma requirement caused a failure."""


class DiscardExhausted(RaypackError):
    """Too few surplus rays survive the subpath discard phase."""


class NoEqualLabelPair(RaypackError):
    """Pigeonhole failed: no two pool rays share a label (bad instance)."""


class InstanceContract(RaypackError):
    """An existence claim guaranteed by the construction failed at runtime,
    indicating the input violates the hypotheses it advertised."""


class FuelExhausted(RaypackError):
    """A bounded search exceeded its derived bound (malformed instance or
    horizon too small)."""


class NotAForest(RaypackError):
    """Operation requires a (directed) forest host."""


class NotLocallyFinite(RaypackError):
    """Operation requires a locally finite graph with a neighbor enumerator."""


class KindMismatch(RaypackError):
    """Gadget applied to a graph of the wrong kind."""


class MalformedImage(RaypackError):
    """A ray is not in the gadget's image and cannot be realigned."""


class FamilyNotDisjoint(RaypackError):
    """Input ray family is not disjoint in the required sense."""


class TooLarge(RaypackError):
    """Brute-force guard tripped."""


class DeciderTimeout(RaypackError):
    """Instance-supplied ray decider gave up."""


class InsufficientRays(RaypackError):
    """Decoder needs a ray in a higher-index component than provided."""


class ScriptViolation(RaypackError):
    """Adversary script breaks the monotone-convergence contract."""


class UnknownName(RaypackError):
    """No sample instance with the requested name."""


class IoFailure(RaypackError):
    """File export failed."""


# exit code 0 is success, 1 is a verification FAIL report
EXIT_CODES: dict[type[RaypackError], int] = {
    BadConfig: 2,
    PreconditionViolated: 3,
    NotAdjacent: 4,
    VertexRepetition: 5,
    EdgeNotOnRay: 6,
    OracleInconsistent: 7,
    OracleBroke: 8,
    BudgetTooSmall: 9,
    DiscardExhausted: 10,
    NoEqualLabelPair: 11,
    InstanceContract: 12,
    FuelExhausted: 13,
    NotAForest: 14,
    NotLocallyFinite: 15,
    KindMismatch: 16,
    MalformedImage: 17,
    FamilyNotDisjoint: 18,
    TooLarge: 19,
    DeciderTimeout: 20,
    InsufficientRays: 21,
    ScriptViolation: 22,
    UnknownName: 23,
    IoFailure: 24,
}


def exit_code_for(err: BaseException) -> int:
    for klass, code in EXIT_CODES.items():
        if isinstance(err, klass):
            return code
    return 70
