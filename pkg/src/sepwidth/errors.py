"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list or rational input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(ValueError):
    """A graph or subgraph violates its structural invariants."""


class CapabilityError(RuntimeError):
    """Input is beyond the size an exact routine is allowed to handle."""


class ContractError(AssertionError):
    """A pre- or postcondition of an algorithm failed.

    ``witness`` carries whatever object demonstrates the failure (a vertex,
    a terminal subset, a flow value).
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
