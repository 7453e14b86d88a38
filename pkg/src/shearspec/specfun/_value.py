from dataclasses import dataclass


@dataclass(frozen=True)
class FunctionValue:
    """A special-function value with an absolute error bound estimate."""

    value: float
    abs_error_estimate: float

    def __float__(self):
        return float(self.value)
