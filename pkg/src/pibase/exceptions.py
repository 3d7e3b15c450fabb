# encoding: utf-8


class PibaseError(Exception):
    """
    Base class of every domain error raised by pibase.

    The command line turns these exceptions into a one-line diagnostic and exit
    code 1. Anything else reaching the command line is a bug.
    """

    pass


class ConfigurationError(PibaseError):
    """Exception raised when a configuration value (e.g. PIBASE_MAXLEVEL) is invalid."""

    pass


class OrdinalSyntaxError(PibaseError):
    """
    Exception raised when an ordinal expression cannot be parsed.

    The ``position`` attribute is the 0-based offset of the offending character in
    the parsed text.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LevelOverflowError(PibaseError):
    """
    Exception raised when a cardinal atom level is above the configured maxLevel.

    This happens when parsing an expression like "w9" with the default maxLevel,
    or when a sigma computation needs the successor of the highest level.
    """

    pass


class PreconditionError(PibaseError):
    """Exception raised when the arguments of an operation violate its precondition."""

    pass


class PatternOutOfRangeError(PreconditionError):
    """
    Exception raised when a finite pattern has pairs outside the allowed rectangle.

    For instance ``phi_witness`` requires every pair of the pattern to lie in
    [gamma(delta), delta) x kappa.
    """

    pass


class WitnessConstructionError(PibaseError):
    """Exception raised when a witness ordinal cannot be produced."""

    pass


class SpaceDocumentError(PibaseError):
    """Exception raised when a space document (JSON) is malformed."""

    pass


class NotATopologyError(SpaceDocumentError):
    """
    Exception raised when a family of sets is not a topology.

    This exception is raised by the strict loader when the family of open sets does
    not contain the empty set and the whole space, or it is not closed under
    binary unions and intersections.
    """

    pass


class SizeCapExceededError(PibaseError):
    """
    Exception raised when an exhaustive search would exceed the configured caps.

    The caps are defined in the ``settings`` module.
    """

    pass


class RegularityError(PibaseError):
    """
    Exception raised when a space is not regular but regularity is required.

    The Shapirovskii builder needs local pi-bases whose closures avoid the closure
    of the points already chosen.
    """

    pass


class StepBudgetExhaustedError(PibaseError):
    """Exception raised when a complete build is requested but the steps run out."""

    pass


class OracleError(PibaseError):
    """Exception raised when a space oracle is asked for something it cannot compute."""

    pass
