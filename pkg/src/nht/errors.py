"""Exception types shared across the package."""


class NhtError(Exception):
    """Base class for all domain errors raised by this package."""


class ModulusMismatch(NhtError):
    """Operands carry different moduli."""


class NotInvertible(NhtError):
    """Requested inverse of a residue that shares a factor with the modulus."""


class NonUnitPivot(NhtError):
    """Gaussian elimination hit a column whose nonzero entries are all non-units."""


class CompositeModulusUnsupported(NhtError):
    """Eigen analysis over a composite modulus exceeds the brute-force budget."""


class BudgetExceeded(NhtError):
    """Raw exhaustive search space is larger than the configured budget."""


class SpecFormatError(NhtError):
    """A transform spec document is malformed or violates its schema."""


class MalformedFrame(NhtError):
    """Scrambled frame bytes violate the frame format."""


class KeyMismatch(NhtError):
    """Frame geometry is inconsistent with the supplied key."""
