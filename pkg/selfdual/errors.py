# selfdual/errors.py


class SelfDualError(Exception):
    """Base class for every error raised by the toolkit."""


# ===== FIELD =====
class FieldError(SelfDualError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class NotAPrimePower(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class SizeCapExceeded(FieldError):
    pass


class NotASubfieldDegree(FieldError):
    pass


class NotInSubgroup(FieldError):
    pass


# ===== POLYNOMIALS =====
class PolyError(SelfDualError, ValueError):
    pass


class DuplicateRoot(PolyError):
    pass


class DuplicatePoint(PolyError):
    pass


class InternalCrossCheckFailed(PolyError):
    """The two Δ computations disagreed. Always a bug."""


class NotDisjoint(PolyError):
    pass


class PointNotInUnion(PolyError):
    pass


# ===== CODES =====
class CodeError(SelfDualError, ValueError):
    pass


class DimensionOutOfRange(CodeError):
    pass


class LengthMismatch(CodeError):
    pass


class OddLength(CodeError):
    pass


class EvenLength(CodeError):
    pass


class BudgetExceeded(CodeError):
    pass


class RankDeficient(CodeError):
    pass


class ZeroTwistEntry(CodeError):
    pass


class FieldMismatch(CodeError):
    pass


# ===== CONSTRUCTIONS =====
class ConstructionError(SelfDualError, ValueError):
    pass


class RecipeNotApplicable(ConstructionError):
    def __init__(self, reason: str, unsupported: bool = False):
        super().__init__(reason)
        self.reason = reason
        self.unsupported = unsupported


class UnknownRecipe(ConstructionError):
    pass


class AlphaInSubspace(ConstructionError):
    pass


class CosetCollision(ConstructionError):
    pass


class NotInSubfield(ConstructionError):
    pass


# ===== CONTRADICTIONS / IO =====
class TwistSolveFailed(SelfDualError):
    """A recipe whose hypotheses held did not yield a self-dual code."""

    def __init__(self, message: str, params: dict | None = None):
        super().__init__(message)
        self.params = dict(params or {})

    def __str__(self):
        if not self.params:
            return super().__str__()
        dump = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{super().__str__()} [{dump}]"


class MatrixFormatError(SelfDualError, ValueError):
    pass


class ConfigError(SelfDualError, ValueError):
    pass
