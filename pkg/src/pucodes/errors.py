"""Exception hierarchy for pucodes."""


class PucodesError(Exception):
    """Base class for all library errors."""


class KindMismatch(PucodesError, TypeError):
    """Operands belong to different scalar rings."""


class SizeMismatch(PucodesError, ValueError):
    pass


class ShapeMismatch(PucodesError, ValueError):
    pass


class OutOfRange(PucodesError, IndexError):
    pass


class InvalidPermutation(PucodesError, ValueError):
    pass


class NotStandard(PucodesError, ValueError):
    """Operation requires a standard delay plan."""


class NonConstantDiagonal(PucodesError, ValueError):
    """A·tilde(A) has zero off-diagonal but a non-constant or unequal diagonal."""


class AnticausalInput(PucodesError, ValueError):
    pass


class NonUnitPhase(PucodesError, ValueError):
    pass


class InvalidSpec(PucodesError, ValueError):
    """A generator description failed validation."""
