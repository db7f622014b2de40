"""Exception hierarchy.

Every computational failure raised by the package derives from
:class:`PressureError`; ``kind`` is the stable name used in CLI error JSON.
"""


class PressureError(Exception):
    """Base class for all computation errors."""

    @property
    def kind(self):
        return type(self).__name__

    def to_dict(self):
        return {"kind": self.kind, "detail": str(self)}


class DegenerateModulusSet(PressureError, ValueError):
    """The modulus set contains 1, so every integer is a multiple."""


class PeriodOverflow(PressureError):
    def __init__(self, period, cap):
        super().__init__(f"lcm {period} exceeds cap {cap}")
        self.period = period
        self.cap = cap


class SubsetBlowup(PressureError):
    def __init__(self, size, cap):
        super().__init__(f"{size} elements exceed the inclusion-exclusion cap {cap}")
        self.size = size
        self.cap = cap


class CoprimalityRequired(PressureError, ValueError):
    pass


class OrderViolation(PressureError, ValueError):
    def __init__(self, position):
        super().__init__(f"w > x at position {position}")
        self.position = position


class PatternTooWide(PressureError, ValueError):
    pass


class MethodCap(PressureError):
    pass


class EnumerationCap(PressureError):
    pass


class NoFixedPosition(PressureError, ValueError):
    pass


class Requires2(PressureError, ValueError):
    pass


class SimplexViolation(PressureError, ValueError):
    pass
