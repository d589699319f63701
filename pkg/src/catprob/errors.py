"""Exception hierarchy shared by the classical and quantum engines."""


class CatprobError(Exception):
    """Base class for every error raised by this package."""


class SetMismatch(CatprobError, ValueError):
    """Two maps or predicates live over incompatible finite sets."""


class InvalidDistribution(CatprobError, ValueError):
    pass


class UndefinedSum(CatprobError, ValueError):
    """The partial sum of two predicates exceeds 1 somewhere."""


class ShapeMismatch(CatprobError, ValueError):
    pass


class NotPositive(CatprobError, ValueError):
    pass


class NotInvertible(CatprobError, ValueError):
    pass


class InvalidEffect(CatprobError, ValueError):
    pass


class NotUnital(CatprobError, ValueError):
    pass


# The classes below are "validation" failures: the inputs are well formed but
# violate a hypothesis of conditioning.  The CLI reports them with exit code 2.


class ValidationFailure(CatprobError):
    pass


class NotATest(ValidationFailure, ValueError):
    """Predicates handed to n-test conditioning do not sum to exactly 1."""


class MarginalNotInvertible(ValidationFailure, ValueError):
    def __init__(self, which: str, min_eigenvalue: float):
        self.which = which
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"marginal gr(f)*({which}) is not invertible "
            f"(min eigenvalue {min_eigenvalue:.3g})"
        )


class DegenerateEffect(ValidationFailure, ValueError):
    pass


class TriangleMismatch(ValidationFailure, ValueError):
    """A stored conditioning result no longer closes its triangle."""
