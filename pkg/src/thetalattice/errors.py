"""Exception types shared across the package."""


class DegreeTooSmall(ValueError):
    """The construction needs degree d >= 5."""


class MalformedGraph(ValueError):
    """A graph is missing the labels or roles an operation requires."""


class CentralEdgeCrossed(ValueError):
    """A 2-lift signing marked a central (hub) edge as crossed."""


class TorusTooSmall(ValueError):
    """Torus side length n <= 1 would wrap displacements into spurious short cycles."""


class TooLarge(ValueError):
    """Input exceeds an enumeration guard."""


class BudgetExhausted(RuntimeError):
    """A search ran out of stages/attempts before covering everything."""

    def __init__(self, message: str, uncovered: int = 0):
        super().__init__(message)
        self.uncovered = uncovered


class GridTooCoarse(ValueError):
    """The sampling grid has no usable points inside the required open boxes."""


class AttemptsExhausted(RuntimeError):
    """No good try was found within the attempt budget."""


class InvalidCertificate(ValueError):
    """A certificate has failing verification flags."""
