"""Exception types shared across the toolkit."""


class DeconflictError(Exception):
    """Base class for all toolkit errors."""


class DegenerateRelativeVelocity(DeconflictError):
    """Relative velocity is (numerically) zero; CPA time is undefined."""


class UnresolvablePair(DeconflictError):
    """A mission pair conflicts for every relative departure delay."""


class EmptyFeasibleSet(DeconflictError):
    """No departure time within the horizon avoids all conflicts."""

    def __init__(self, mission_id, message=None):
        self.mission_id = mission_id
        super().__init__(message or f"no feasible departure time for mission {mission_id!r}")


class TooManyAgents(DeconflictError):
    """Exhaustive order search was asked to exceed its permutation cap."""


class TopologyRejectionExhausted(DeconflictError):
    """Random topology generation hit its attempt budget."""


class DegenerateSamples(DeconflictError):
    """All sample values are equal; no histogram support exists."""


class FitDomainError(DeconflictError):
    """Samples violate the support of the requested distribution family."""


class NonConvergence(DeconflictError):
    """Iterative parameter refinement did not converge within its cap."""


class OutOfProjectionRange(DeconflictError):
    """Point too far from the projection reference for a local plane."""


class UnknownId(DeconflictError):
    """A mission id was not found in the scenario."""


class ScenarioFormatError(DeconflictError):
    """Scenario file failed schema validation."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")
