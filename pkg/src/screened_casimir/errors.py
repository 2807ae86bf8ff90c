"""Exception types shared by the numerical engines and the CLI."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation.

    ``field`` names the offending argument so callers (notably the CLI) can
    report it back to the user.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach the requested tolerance.

    Carries whatever partial result was available when the engine gave up.
    """

    def __init__(self, message, partial=None, bound=None, detail=None):
        self.partial = partial
        self.bound = bound
        self.detail = detail
        super().__init__(message)
