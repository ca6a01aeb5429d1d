"""Exception types shared across the package."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a zero of its reduced denominator."""


class ConvergenceDomainError(ValueError):
    """Series evaluation requested outside its geometric-convergence domain (h < r)."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function (e.g. x <= 0)."""


class ParityError(ValueError):
    """A symmetry check requires both moduli to be odd."""
