"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside its documented range."""


class ShapeMismatch(ValueError):
    """Operands have incompatible dimensions."""


class NonHermitianInput(ValueError):
    """A matrix expected to be Hermitian violates the tolerance."""


class UnknownOperation(ValueError):
    """An operation name is not in the flip catalog for the given dimension."""


class EigensolverError(RuntimeError):
    """The Jacobi eigensolver failed to converge."""


class NonMonotoneWarning(UserWarning):
    """Negativity re-crossed the zero threshold after a detected death point."""
