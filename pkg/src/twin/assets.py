"""Asset hierarchy: building, subsystems, floors, user areas, parameters.

A building is configured as a JSON tree.  Each measured parameter carries
four threshold edges that split its value range into five health levels,
ordered so that level 1 is always the worst and level 5 the best
regardless of whether high readings are good (illuminance), bad (glare)
or only good near a target (colour temperature).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, Iterator

from .errors import (
    AssetConfigError,
    BandError,
    DuplicateIdError,
    KindOrderError,
    MissingCilError,
    NonFiniteError,
    ParameterSetError,
    PathNotFoundError,
)


class NodeKind(str, Enum):
    BUILDING = "building"
    SUBSYSTEM = "subsystem"
    FLOOR = "floor"
    USER_AREA = "user_area"
    PARAMETER = "parameter"


class Direction(str, Enum):
    """How a raw value maps onto the five levels."""

    HIGHER_IS_BETTER = "higher_is_better"
    LOWER_IS_BETTER = "lower_is_better"
    BANDED = "banded"


class HealthLevel(IntEnum):
    CRITICAL = 1
    POOR = 2
    FAIR = 3
    GOOD = 4
    EXCELLENT = 5

    @property
    def color(self) -> str:
        return LEVEL_COLORS[int(self)]


LEVEL_COLORS: dict[int, str] = {
    1: "red",
    2: "orange",
    3: "yellow",
    4: "green",
    5: "blue",
}

# Rendered when an asset has no classifiable data at all.
NO_DATA_COLOR = "grey"

_CHILD_KINDS: dict[NodeKind, set[NodeKind]] = {
    NodeKind.BUILDING: {NodeKind.SUBSYSTEM},
    NodeKind.SUBSYSTEM: {NodeKind.FLOOR, NodeKind.PARAMETER},
    NodeKind.FLOOR: {NodeKind.USER_AREA},
    NodeKind.USER_AREA: {NodeKind.PARAMETER},
    NodeKind.PARAMETER: set(),
}


@dataclass(frozen=True)
class ThresholdBands:
    """Four edges partitioning a parameter's range into levels 1..5.

    ``higher_is_better`` expects strictly ascending edges (b1..b4):

        value < b1          -> 1
        b1 <= value < b2    -> 2
        b2 <= value < b3    -> 3
        b3 <= value < b4    -> 4
        b4 <= value         -> 5

    ``lower_is_better`` expects strictly descending edges and is the
    exact mirror (classified by negating value and edges), so a value
    sitting on an edge always lands on the better side.

    ``banded`` adds a ``target``; the absolute deviation from it is
    classified against strictly descending deviation edges, again with
    lower deviation being better.
    """

    edges: tuple[float, float, float, float]
    target: float | None = None

    def problem(self, direction: Direction) -> str | None:
        """Human-readable defect, or None when usable for direction."""
        if len(self.edges) != 4 or not all(math.isfinite(e) for e in self.edges):
            return "exactly four finite edges required"
        asc = all(a < b for a, b in zip(self.edges, self.edges[1:]))
        desc = all(a > b for a, b in zip(self.edges, self.edges[1:]))
        if direction is Direction.HIGHER_IS_BETTER:
            if not asc:
                return "edges must be strictly ascending"
        else:
            if not desc:
                return "edges must be strictly descending"
        if direction is Direction.BANDED:
            if self.target is None or not math.isfinite(self.target):
                return "banded parameters need a finite target"
            if self.edges[-1] <= 0:
                return "deviation edges must be positive"
        elif self.target is not None:
            return "target only applies to banded parameters"
        return None


def classify_value(direction: Direction, bands: ThresholdBands, value: float) -> HealthLevel:
    """Map a finite value to its health level. Total over the real line."""
    if not math.isfinite(value):
        raise NonFiniteError(f"cannot classify non-finite value {value!r}")
    if direction is Direction.HIGHER_IS_BETTER:
        return HealthLevel(1 + bisect_right(bands.edges, value))
    # Descending edges negate into ascending ones; classifying the negated
    # value against them is the exact mirror of the rule above.
    mirrored = tuple(-e for e in bands.edges)
    if direction is Direction.LOWER_IS_BETTER:
        return HealthLevel(1 + bisect_right(mirrored, -value))
    deviation = abs(value - bands.target)  # type: ignore[operator]
    return HealthLevel(1 + bisect_right(mirrored, -deviation))


@dataclass
class AssetNode:
    """One node of the hierarchy. Treated as immutable once built."""

    id: str
    kind: NodeKind
    display_name: str
    children: tuple["AssetNode", ...] = ()
    cil: int | None = None
    direction: Direction | None = None
    bands: ThresholdBands | None = None
    unit: str = ""
    domain: tuple[float | None, float | None] = (None, None)
    path: str = field(default="", compare=False)

    def in_domain(self, value: float) -> bool:
        lo, hi = self.domain
        if lo is not None and value < lo:
            return False
        if hi is not None and value > hi:
            return False
        return True

    def clamp(self, value: float) -> float:
        lo, hi = self.domain
        if lo is not None and value < lo:
            return lo
        if hi is not None and value > hi:
            return hi
        return value


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    detail: str


_VIOLATION_ERRORS: dict[str, type[AssetConfigError]] = {
    "DuplicateId": DuplicateIdError,
    "KindOrderViolation": KindOrderError,
    "MissingCil": MissingCilError,
    "BandGapOrOverlap": BandError,
    "ParameterSetMismatch": ParameterSetError,
}


class AssetTree:
    """Immutable lookup structure over a parsed building."""

    def __init__(self, root: AssetNode):
        self.root = root
        self.by_path: dict[str, AssetNode] = {}
        for node in _walk(root):
            self.by_path[node.path] = node

    def resolve(self, path: str) -> AssetNode:
        try:
            return self.by_path[path]
        except KeyError:
            raise PathNotFoundError(f"no asset at path {path!r}") from None

    def __contains__(self, path: str) -> bool:
        return path in self.by_path

    def iter_nodes(self) -> Iterator[AssetNode]:
        return _walk(self.root)

    def areas(self) -> list[AssetNode]:
        return [n for n in _walk(self.root) if n.kind is NodeKind.USER_AREA]

    def parameters(self) -> list[AssetNode]:
        return [n for n in _walk(self.root) if n.kind is NodeKind.PARAMETER]

    def subtree_paths(self, path: str) -> list[str]:
        base = self.resolve(path)
        return [n.path for n in _walk(base)]

    def parent_of(self, node: AssetNode) -> AssetNode | None:
        if node.path == self.root.path:
            return None
        parent_path, _, _ = node.path.rpartition("/")
        return self.by_path[parent_path]


def _walk(node: AssetNode) -> Iterator[AssetNode]:
    yield node
    for child in node.children:
        yield from _walk(child)


def _parse_node(spec: dict[str, Any], parameter_set: list[dict[str, Any]] | None) -> AssetNode:
    if not isinstance(spec, dict):
        raise AssetConfigError(f"asset node must be an object, got {type(spec).__name__}")
    try:
        node_id = spec["id"]
        kind = NodeKind(spec["kind"])
    except KeyError as exc:
        raise AssetConfigError(f"asset node missing required field {exc}") from None
    except ValueError:
        raise AssetConfigError(f"unknown node kind {spec.get('kind')!r}") from None
    if not isinstance(node_id, str) or not node_id or "/" in node_id:
        raise AssetConfigError(f"node id must be a non-empty string without '/': {node_id!r}")

    bands = None
    if "bands" in spec:
        raw = spec["bands"]
        if not isinstance(raw, dict) or "edges" not in raw:
            raise AssetConfigError(f"{node_id}: bands must be an object with an 'edges' list")
        edges = tuple(float(e) for e in raw["edges"])
        target = float(raw["target"]) if raw.get("target") is not None else None
        bands = ThresholdBands(edges=edges, target=target)  # type: ignore[arg-type]

    direction = Direction(spec["direction"]) if "direction" in spec else None
    domain = (None, None)
    if "domain" in spec:
        lo, hi = spec["domain"]
        domain = (
            float(lo) if lo is not None else None,
            float(hi) if hi is not None else None,
        )

    children_spec = spec.get("children")
    if children_spec is None and kind is NodeKind.USER_AREA and parameter_set:
        children_spec = parameter_set
    children = tuple(
        _parse_node(child, parameter_set) for child in (children_spec or [])
    )

    return AssetNode(
        id=node_id,
        kind=kind,
        display_name=str(spec.get("display_name", node_id)),
        children=children,
        cil=int(spec["cil"]) if "cil" in spec else None,
        direction=direction,
        bands=bands,
        unit=str(spec.get("unit", "")),
        domain=domain,
    )


def _assign_paths(node: AssetNode, prefix: str) -> None:
    path = node.id if not prefix else f"{prefix}/{node.id}"
    node.path = path
    for child in node.children:
        _assign_paths(child, path)


def parse_tree(config: dict[str, Any]) -> AssetTree:
    """Parse without validating; use ``validate`` to inspect problems."""
    if "building" not in config:
        raise AssetConfigError("asset config must have a top-level 'building' node")
    parameter_set = config.get("parameter_set")
    if parameter_set is not None and not isinstance(parameter_set, list):
        raise AssetConfigError("'parameter_set' must be a list of parameter nodes")
    root = _parse_node(config["building"], parameter_set)
    if root.kind is not NodeKind.BUILDING:
        raise AssetConfigError(f"root node must be kind 'building', got {root.kind.value!r}")
    _assign_paths(root, "")
    return AssetTree(root)


def validate(tree: AssetTree) -> list[Violation]:
    """All structural problems, in document order. Empty list means sound."""
    out: list[Violation] = []

    for node in tree.iter_nodes():
        seen: set[str] = set()
        for child in node.children:
            if child.id in seen:
                out.append(Violation("DuplicateId", node.path, f"duplicate child id {child.id!r}"))
            seen.add(child.id)
            if child.kind not in _CHILD_KINDS[node.kind]:
                out.append(
                    Violation(
                        "KindOrderViolation",
                        child.path,
                        f"{child.kind.value} cannot sit under {node.kind.value}",
                    )
                )
        if node.kind is NodeKind.SUBSYSTEM and node.children:
            kinds = {c.kind for c in node.children}
            if len(kinds & {NodeKind.FLOOR, NodeKind.PARAMETER}) > 1:
                out.append(
                    Violation(
                        "KindOrderViolation",
                        node.path,
                        "a subsystem holds either floors or parameters, not both",
                    )
                )

        if node.kind is NodeKind.USER_AREA:
            if node.cil is None:
                out.append(Violation("MissingCil", node.path, "user area needs a criticality level"))
            elif not 1 <= node.cil <= 5:
                out.append(
                    Violation("MissingCil", node.path, f"criticality must be 1..5, got {node.cil}")
                )
            if not node.children:
                out.append(Violation("ParameterSetMismatch", node.path, "user area has no parameters"))
        elif node.cil is not None:
            out.append(
                Violation("KindOrderViolation", node.path, "criticality only applies to user areas")
            )

        if node.kind is NodeKind.PARAMETER:
            if node.direction is None:
                out.append(Violation("BandGapOrOverlap", node.path, "parameter needs a direction"))
            elif node.bands is None:
                out.append(Violation("BandGapOrOverlap", node.path, "parameter needs threshold bands"))
            else:
                problem = node.bands.problem(node.direction)
                if problem:
                    out.append(Violation("BandGapOrOverlap", node.path, problem))
            lo, hi = node.domain
            if lo is not None and hi is not None and lo >= hi:
                out.append(Violation("BandGapOrOverlap", node.path, "domain bounds inverted"))
        elif node.bands is not None or node.direction is not None:
            out.append(
                Violation("KindOrderViolation", node.path, "bands only apply to parameters")
            )

    # Areas of one subsystem must expose one uniform parameter set, so
    # floor and subsystem rollups compare like with like.
    for node in tree.iter_nodes():
        if node.kind is not NodeKind.SUBSYSTEM:
            continue
        reference: tuple[str, ...] | None = None
        reference_area = ""
        for floor in node.children:
            for area in floor.children:
                ids = tuple(p.id for p in area.children)
                if reference is None:
                    reference, reference_area = ids, area.path
                elif ids != reference:
                    out.append(
                        Violation(
                            "ParameterSetMismatch",
                            area.path,
                            f"parameter set {list(ids)} differs from {reference_area}",
                        )
                    )
    return out


def build_tree(config: dict[str, Any]) -> AssetTree:
    """Parse and validate; raise the first violation as a typed error."""
    tree = parse_tree(config)
    problems = validate(tree)
    if problems:
        first = problems[0]
        err = _VIOLATION_ERRORS.get(first.code, AssetConfigError)
        raise err(f"{first.path}: {first.detail}")
    return tree
