class DecompositionError(Exception):
    """Base class for construction and verification failures."""


class ParameterError(DecompositionError, ValueError):
    """Parameters outside the range where a construction applies."""


class StructureError(DecompositionError):
    """An input decomposition or certificate violates its stated structure."""


class BaseUnavailable(DecompositionError):
    """No base provider can supply the Hamiltonian decomposition needed."""


class BudgetExceeded(DecompositionError):
    """A search or materialisation would exceed its configured budget."""
