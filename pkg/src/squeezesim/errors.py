"""Exception and warning types shared across the package."""


class SimulationError(Exception):
    """Base class for failures raised by the numerical layers."""


class SaturationError(SimulationError):
    """A squeeze magnitude left the representable range |.| < 1 by more
    than the clamping window."""


class CompositionError(SimulationError):
    """The squeeze composition hit a singular denominator."""


class StepSingularityError(SimulationError):
    """The propagator state became non-finite during stepping."""

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"non-finite propagator state at step {step}")


class WindowError(SimulationError):
    """The requested analysis window is too short or empty."""


class DegenerateDataError(SimulationError):
    """Fit input data cannot constrain the model parameters."""


class SaturationWarning(RuntimeWarning):
    """A squeeze magnitude grazed 1 and was clamped."""


class FitConditionWarning(UserWarning):
    """Fit data leaves a parameter combination poorly constrained."""


class ValidityWarning(UserWarning):
    """Inputs are outside the range where the fitted formula was calibrated."""
