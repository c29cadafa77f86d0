"""Aggregation of child health levels up the asset hierarchy.

Two policies exist.  ``Critical`` takes the worst child, which is the
right stance where a single failing parameter should drag the whole area
down.  ``WeightedAverage`` computes floor(sum(w * level) / sum(w)) so an
aggregate only improves once the weighted mass actually moves; with no
explicit weight map it derives weights from area criticality (a CIL-1
area counts 5, a CIL-5 area counts 1) and falls back to equal weights
for any other child kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import TYPE_CHECKING, Mapping, Sequence, Union

from .assets import AssetNode, HealthLevel, NodeKind, classify_value
from .errors import EmptyChildrenError, MissingCilError, WeightError
from .forecast import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    ForecastHorizon,
    forecast_level,
)

if TYPE_CHECKING:
    from .assets import AssetTree
    from .store import TelemetryStore

# Guards the all-children-equal case against float drift in the division:
# nine children at level 5 must aggregate to 5, not floor(4.999...).
_FLOOR_EPSILON = 1e-9


@dataclass(frozen=True)
class Critical:
    pass


@dataclass(frozen=True)
class WeightedAverage:
    weights: Mapping[str, float] | None = None


Policy = Union[Critical, WeightedAverage]


def rollup(levels: Sequence[tuple[int, float]], policy: Policy) -> HealthLevel:
    """Aggregate (level, weight) pairs into one level."""
    if not levels:
        raise EmptyChildrenError("nothing to aggregate")
    for level, weight in levels:
        if not 1 <= int(level) <= 5:
            raise WeightError(f"level out of range: {level!r}")
        if not (weight > 0 and math.isfinite(weight)):
            raise WeightError(f"weights must be positive and finite, got {weight!r}")
    if isinstance(policy, Critical):
        return HealthLevel(min(int(level) for level, _ in levels))
    total = sum(weight for _, weight in levels)
    average = sum(int(level) * weight for level, weight in levels) / total
    return HealthLevel(int(math.floor(average + _FLOOR_EPSILON)))


def area_weights(floor: AssetNode) -> dict[str, float]:
    """Criticality-derived weights for a floor's user areas, normalised."""
    areas = [child for child in floor.children if child.kind is NodeKind.USER_AREA]
    if not areas:
        raise EmptyChildrenError(f"{floor.path!r} has no user areas")
    for area in areas:
        if area.cil is None:
            raise MissingCilError(f"{area.path!r} has no criticality level")
    total = sum(6 - area.cil for area in areas)  # type: ignore[operator]
    return {area.id: (6 - area.cil) / total for area in areas}  # type: ignore[operator]


def weights_for(policy: Policy, children: Sequence[AssetNode]) -> list[float]:
    """Per-child weights aligned with ``children`` under the policy."""
    if isinstance(policy, Critical) or not children:
        return [1.0] * len(children)
    if policy.weights is not None:
        missing = [c.id for c in children if c.id not in policy.weights]
        extra = [k for k in policy.weights if k not in {c.id for c in children}]
        if missing or extra:
            raise WeightError(
                f"weight map must cover exactly the children; missing {missing}, extra {extra}"
            )
        return [float(policy.weights[c.id]) for c in children]
    if all(c.kind is NodeKind.USER_AREA and c.cil is not None for c in children):
        return [float(6 - c.cil) for c in children]  # type: ignore[operator]
    return [1.0] * len(children)


@dataclass
class PolicyStack:
    """Which policy applies at each aggregation layer."""

    parameter_to_area: Policy = field(default_factory=Critical)
    area_to_floor: Policy = field(default_factory=WeightedAverage)
    floor_to_subsystem: Policy = field(default_factory=WeightedAverage)
    subsystem_to_building: Policy = field(default_factory=Critical)

    def for_parent(self, kind: NodeKind) -> Policy:
        if kind is NodeKind.USER_AREA:
            return self.parameter_to_area
        if kind is NodeKind.FLOOR:
            return self.area_to_floor
        if kind is NodeKind.SUBSYSTEM:
            return self.floor_to_subsystem
        return self.subsystem_to_building


@dataclass
class IntegratedStatus:
    """Current and projected level for a node and its descendants."""

    path: str
    id: str
    kind: NodeKind
    display_name: str
    now: HealthLevel | None
    at_m3: HealthLevel | None
    at_m6: HealthLevel | None
    children: list["IntegratedStatus"] = field(default_factory=list)


def building_status(
    tree: "AssetTree",
    store: "TelemetryStore",
    policies: PolicyStack,
    at: datetime,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
) -> IntegratedStatus:
    """Pure bottom-up view of the whole building at time ``at``.

    Children without any classifiable data are left out of their parent's
    aggregate; a node whose children all lack data reports no level.
    """
    from .errors import EmptySeriesError

    def leaf(node: AssetNode) -> IntegratedStatus:
        reading = store.latest_at(node.path, at)
        now = None
        if reading is not None:
            now = classify_value(node.direction, node.bands, reading.value)  # type: ignore[arg-type]
        projected: dict[ForecastHorizon, HealthLevel | None] = {}
        for horizon in (ForecastHorizon.M3, ForecastHorizon.M6):
            try:
                point = forecast_level(tree, store, node.path, horizon, at=at, alpha=alpha, beta=beta)
                projected[horizon] = point.predicted_level
            except EmptySeriesError:
                projected[horizon] = None
        return IntegratedStatus(
            path=node.path, id=node.id, kind=node.kind, display_name=node.display_name,
            now=now, at_m3=projected[ForecastHorizon.M3], at_m6=projected[ForecastHorizon.M6],
        )

    def combine(
        children: Sequence[AssetNode],
        results: Sequence[IntegratedStatus],
        policy: Policy,
        slot: str,
    ) -> HealthLevel | None:
        weights = weights_for(policy, children)
        pairs = [
            (getattr(result, slot), weight)
            for result, weight in zip(results, weights)
            if getattr(result, slot) is not None
        ]
        if not pairs:
            return None
        return rollup(pairs, policy)

    def visit(node: AssetNode) -> IntegratedStatus:
        if node.kind is NodeKind.PARAMETER:
            return leaf(node)
        results = [visit(child) for child in node.children]
        policy = policies.for_parent(node.kind)
        return IntegratedStatus(
            path=node.path, id=node.id, kind=node.kind, display_name=node.display_name,
            now=combine(node.children, results, policy, "now"),
            at_m3=combine(node.children, results, policy, "at_m3"),
            at_m6=combine(node.children, results, policy, "at_m6"),
            children=results,
        )

    return visit(tree.root)
