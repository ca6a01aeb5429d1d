"""qeuler: exact (h,q)-Euler polynomial arithmetic, multiple q-zeta evaluation,
and verification of the associated symmetry identities."""

from fractions import Fraction as BigRat

from .errors import ConvergenceDomainError, DomainError, ParityError, PoleError
from .qalg import (
    QPoly,
    QRatFunc,
    gauss_binom,
    qbracket,
    qfactorial,
    qpoch_monomial,
    ratfunc_eval,
)

__version__ = "0.1.0"

__all__ = [
    "BigRat",
    "QPoly",
    "QRatFunc",
    "qbracket",
    "qfactorial",
    "gauss_binom",
    "qpoch_monomial",
    "ratfunc_eval",
    "PoleError",
    "ConvergenceDomainError",
    "DomainError",
    "ParityError",
    "__version__",
]
