from typing import Optional


class ShubinLabError(Exception):
    pass


class DimensionError(ShubinLabError):
    pass


class SingularityError(ShubinLabError):
    def __init__(
        self, message: str, determinant: Optional[float] = None, what: str = ""
    ):
        super().__init__(message)
        self.determinant = determinant
        self.what = what

    @classmethod
    def from_determinant(
        cls, what: str, determinant: float, limit: float
    ) -> "SingularityError":
        message = f"{what} is singular: |det| = {abs(determinant):.3e} <= {limit:.1e}"
        return cls(message, determinant=determinant, what=what)


class AlignmentError(ShubinLabError):
    def __init__(self, message: str, snap_error: float):
        super().__init__(message)
        self.snap_error = snap_error


class AccuracyError(ShubinLabError):
    def __init__(self, message: str, measured: float, limit: float):
        super().__init__(f"{message} (measured {measured:.3e}, limit {limit:.1e})")
        self.measured = measured
        self.limit = limit


class SymbolValidationError(ShubinLabError):
    pass


class ShubinLabConfigError(ShubinLabError):
    pass
