"""Exception types shared across the package.

Every error carries a short stable ``code`` so the HTTP layer and the CLI
can report failures uniformly without matching on class names.
"""

from __future__ import annotations


class TwinError(Exception):
    """Base class; ``code`` is the wire-format error identifier."""

    code = "TwinError"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class AssetConfigError(TwinError):
    """Asset tree configuration is unusable."""

    code = "AssetConfig"


class DuplicateIdError(AssetConfigError):
    code = "DuplicateId"


class KindOrderError(AssetConfigError):
    code = "KindOrderViolation"


class MissingCilError(AssetConfigError):
    code = "MissingCil"


class BandError(AssetConfigError):
    code = "BandGapOrOverlap"


class ParameterSetError(AssetConfigError):
    code = "ParameterSetMismatch"


class PathNotFoundError(TwinError):
    code = "PathNotFound"


class OutOfDomainError(TwinError):
    code = "OutOfDomainValue"


class NonFiniteError(TwinError):
    code = "NonFiniteValue"


class UnknownAlarmError(TwinError):
    code = "UnknownAlarm"


class EmptySeriesError(TwinError):
    code = "EmptySeries"


class EmptyChildrenError(TwinError):
    code = "EmptyChildren"


class WeightError(TwinError):
    code = "WeightMismatch"


class IllegalTransitionError(TwinError):
    code = "IllegalTransition"


class DuplicateOrderError(TwinError):
    code = "DuplicateOrder"


class UnknownOrderError(TwinError):
    code = "UnknownOrder"


class InvalidScenarioError(TwinError):
    code = "InvalidScenario"


class OutOfSpanError(TwinError):
    code = "OutOfSpan"


class ConfigError(TwinError):
    code = "ConfigError"
