"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConvergenceError(RuntimeError):
    """An iterative kernel hit its iteration cap.

    ``residual`` carries the last measured residual so callers can report it.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class MahlerDisagreement(ArithmeticError):
    """The root-finding and Graeffe routes to a Mahler measure disagree."""

    def __init__(self, roots_value, graeffe_value):
        super().__init__(
            f"Mahler measure paths disagree: roots={roots_value!r}, "
            f"graeffe={graeffe_value!r}"
        )
        self.roots_value = roots_value
        self.graeffe_value = graeffe_value
