"""Exception types shared across the package."""


class EnumerationCapError(ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class RankDropError(ValueError):
    """Deleting qubits reduced the group rank, invalidating code-parameter
    interpretations of the result."""
