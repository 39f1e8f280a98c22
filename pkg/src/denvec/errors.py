"""Exception types shared across the engine."""


class DenvecError(Exception):
    """Base class for all engine errors."""


class ArityMismatchError(DenvecError, ValueError):
    """Operands live in rings with different numbers of variables."""


class NotDivisibleError(DenvecError, ArithmeticError):
    """Exact division failed with a nonzero remainder.

    On seeds reachable from a valid root this must never happen; callers
    treat it as a hard failure witness, not a recoverable condition.
    """


class ResourceExceededError(DenvecError, RuntimeError):
    """A polynomial operation hit the configured term cap.

    Expansion sizes grow exponentially with mutation depth, so hitting the
    cap is an expected outcome on hard inputs. It is reported as its own
    trial status and is never a property violation.
    """


class NonReducedWalkError(DenvecError, ValueError):
    """A mutation walk repeats a direction twice in a row."""


class InputError(DenvecError, ValueError):
    """Malformed matrix JSON, walk string, or configuration value."""
