__all__ = [
    "AssumptionError",
    "FormulaError",
    "FunnelError",
    "ObserverError",
    "ScenarioError",
    "TopologyError",
    "TraceFormatError",
]


class FormulaError(ValueError):
    """
    Invalid formula text or formula structure.

    ``position`` is the 1-based column of the offending character when known.
    """

    def __init__(self, msg, position=None):
        if position is not None:
            msg = f"{msg} (column {position})"
        super().__init__(msg)
        self.position = position


class TopologyError(ValueError):
    pass


class FunnelError(ValueError):
    pass


class ObserverError(ValueError):
    pass


class AssumptionError(ValueError):
    """
    A named closed-loop precondition does not hold.

    ``assumption`` is one of ``"connectivity"``, ``"acyclicity"``,
    ``"communication"``, ``"k-hop"``, ``"funnel-positivity"``,
    ``"feasibility"``, ``"initialization"`` or ``"rho-opt"``.
    """

    def __init__(self, assumption, msg):
        super().__init__(f"[{assumption}] {msg}")
        self.assumption = assumption


class ScenarioError(ValueError):
    """
    Scenario document does not follow the schema.

    ``errors`` lists one message per problem, each prefixed by its JSON path.
    """

    def __init__(self, errors):
        errors = list(errors)
        super().__init__("Invalid scenario:\n  " + "\n  ".join(errors))
        self.errors = errors


class TraceFormatError(ValueError):
    def __init__(self, msg, line=None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line
