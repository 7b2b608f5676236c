"""Exception types shared across the package."""


class EntvarError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(EntvarError):
    """Operator, state, or basis dimensions are incompatible."""


class NotHermitian(EntvarError):
    """A matrix required to be Hermitian fails the symmetry check."""


class NotPositive(EntvarError):
    """A matrix required to be positive semidefinite has a genuinely negative eigenvalue."""


class NoConvergence(EntvarError):
    """An iterative routine exhausted its iteration budget without converging."""


class BadSubsystem(EntvarError):
    """A subsystem index set is empty or out of range."""


class OutOfRange(EntvarError):
    """A scalar parameter lies outside its documented domain."""


class ZeroCoupling(EntvarError):
    """Both couplings of the two-mode interaction vanish; the state is undefined."""


class FullyAntisymmetric(EntvarError):
    """A two-qubit state has no symmetric component to project onto."""


class Collapse(EntvarError):
    """A non-unitary group element annihilated the state within numerical precision."""


class NotOrthogonal(EntvarError):
    """Cyclic-neighbor orthogonality of a pentagram is violated beyond tolerance."""


class UnknownRange(EntvarError):
    """Total-variance extremes for this observable basis are not cataloged or cached."""
