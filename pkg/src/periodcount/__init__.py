"""Exact periodic-point counts for piecewise-linear interval maps and the
congruence identities they generate."""

from .errors import (BudgetExceeded, ClosureViolation, DivisibilityViolation, DomainError,
                     HorizonTooSmall, InfiniteSolutions, MissingRule, OutOfDomain)
from .numtheory import (Factorization, IntegerSequence, census, corollary2_check, factorize,
                        phi1, phi2)

__version__ = "0.1.0"
