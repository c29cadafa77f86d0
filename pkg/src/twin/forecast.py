"""Trend fitting and level projection for single parameters.

Forecasts use Holt's linear exponential smoothing over a trailing window
of daily means:

    level_t = alpha * y_t + (1 - alpha) * (level_{t-1} + trend_{t-1})
    trend_t = beta * (level_t - level_{t-1}) + (1 - beta) * trend_{t-1}

seeded with level_0 = y_1 and trend_0 = y_2 - y_1.  Short series fall
back to a flat "last value" model so a fresh installation still answers,
just without a slope.  Projection is level + trend * horizon, clamped to
the parameter's domain, with a confidence band of 1.96 standard
deviations of the one-step fit residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import TYPE_CHECKING, Sequence

from .assets import AssetNode, Direction, HealthLevel, NodeKind, classify_value
from .errors import EmptySeriesError, PathNotFoundError

if TYPE_CHECKING:
    from .assets import AssetTree
    from .store import TelemetryStore

DEFAULT_ALPHA = 0.3
DEFAULT_BETA = 0.1

# Below this many points a trend estimate is mostly noise.
MIN_TREND_POINTS = 14

# Daily series length the level forecast is fitted on.
FIT_WINDOW_DAYS = 90


class ForecastHorizon(Enum):
    M3 = ("m3", 90)
    M6 = ("m6", 180)

    def __init__(self, label: str, days: int):
        self.label = label
        self.days = days

    @classmethod
    def from_label(cls, label: str) -> "ForecastHorizon":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(f"unknown forecast horizon {label!r}")


@dataclass(frozen=True)
class TrendModel:
    method: str  # "holt" or "naive"
    level: float
    trend: float
    alpha: float
    beta: float
    n_points: int
    residual_std: float
    fitted_at: datetime | None = None


@dataclass(frozen=True)
class ForecastPoint:
    path: str
    horizon: ForecastHorizon
    as_of: datetime
    predicted_value: float
    predicted_level: HealthLevel
    interval: tuple[float, float]
    model: TrendModel


def fit(
    points: Sequence[tuple[float, float]],
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    fitted_at: datetime | None = None,
) -> TrendModel:
    """Fit a trend model to (day, value) points in ascending day order."""
    values = [float(v) for _, v in points]
    n = len(values)
    if n == 0:
        raise EmptySeriesError("cannot fit a trend to an empty series")
    if n < MIN_TREND_POINTS:
        return TrendModel(
            method="naive", level=values[-1], trend=0.0,
            alpha=alpha, beta=beta, n_points=n, residual_std=0.0, fitted_at=fitted_at,
        )

    level = values[0]
    trend = values[1] - values[0]
    residuals: list[float] = []
    for y in values[1:]:
        one_step = level + trend
        residuals.append(y - one_step)
        previous = level
        level = alpha * y + (1.0 - alpha) * one_step
        trend = beta * (level - previous) + (1.0 - beta) * trend
    sigma = math.sqrt(sum(r * r for r in residuals) / len(residuals))
    return TrendModel(
        method="holt", level=level, trend=trend,
        alpha=alpha, beta=beta, n_points=n, residual_std=sigma, fitted_at=fitted_at,
    )


def forecast_value(
    model: TrendModel,
    horizon: ForecastHorizon,
    domain: tuple[float | None, float | None] = (None, None),
) -> float:
    raw = model.level + model.trend * horizon.days
    return _clamp(raw, domain)


def _clamp(value: float, domain: tuple[float | None, float | None]) -> float:
    lo, hi = domain
    if lo is not None and value < lo:
        return lo
    if hi is not None and value > hi:
        return hi
    return value


def forecast_level(
    tree: "AssetTree",
    store: "TelemetryStore",
    path: str,
    horizon: ForecastHorizon,
    at: datetime | None = None,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
) -> ForecastPoint:
    """Project a parameter's health level at the horizon.

    The model is fitted to daily means over the trailing 90 days ending
    at ``at`` (default: the parameter's newest reading).  Raises
    ``EmptySeriesError`` when there is nothing to fit.
    """
    node = tree.resolve(path)
    if node.kind is not NodeKind.PARAMETER:
        raise PathNotFoundError(f"{path!r} is not a measured parameter")
    if at is None:
        newest = store.latest(path)
        if newest is None:
            raise EmptySeriesError(f"no readings for {path!r}")
        at = newest.ts
    series = store.daily_means(path, end=at, days=FIT_WINDOW_DAYS)
    if not series:
        raise EmptySeriesError(f"no readings for {path!r} in the trailing fit window")
    model = fit(series, alpha=alpha, beta=beta, fitted_at=at)

    raw = model.level + model.trend * horizon.days
    predicted = _clamp(raw, node.domain)
    margin = 1.96 * model.residual_std
    interval = (_clamp(raw - margin, node.domain), _clamp(raw + margin, node.domain))
    level = classify_value(node.direction, node.bands, predicted)  # type: ignore[arg-type]
    return ForecastPoint(
        path=path, horizon=horizon, as_of=at,
        predicted_value=predicted, predicted_level=level,
        interval=interval, model=model,
    )


def time_to_level(model: TrendModel, node: AssetNode, target_level: int) -> float | None:
    """Days until the modelled value first classifies at or below target.

    Returns 0.0 when the current model level already does, None when the
    trend is flat or points away from the boundary.  The crossing time is
    continuous: a value at 100 falling 1 per day reaches a boundary at 70
    in exactly 30.0 days.
    """
    direction = node.direction
    bands = node.bands
    if direction is None or bands is None:
        raise PathNotFoundError(f"{node.path!r} carries no threshold bands")
    target = int(target_level)
    if target >= 5:
        return 0.0
    if target < 1:
        return None
    value = model.level
    if int(classify_value(direction, bands, value)) <= target:
        return 0.0
    if model.trend == 0.0:
        return None

    if direction is Direction.HIGHER_IS_BETTER:
        # Level <= target once value drops below the target-th edge.
        boundary = bands.edges[target - 1]
        if model.trend > 0:
            return None
        return (value - boundary) / -model.trend
    if direction is Direction.LOWER_IS_BETTER:
        boundary = bands.edges[target - 1]
        if model.trend < 0:
            return None
        return (boundary - value) / model.trend

    # Banded: the deviation from target grows past the edge either by
    # drifting away, or by crossing the target and leaving the far side.
    assert bands.target is not None
    deviation_edge = bands.edges[target - 1]
    offset = value - bands.target
    if offset == 0.0 or (offset > 0) == (model.trend > 0):
        distance = deviation_edge - abs(offset)
    else:
        distance = deviation_edge + abs(offset)
    return distance / abs(model.trend)
