"""Asset tree construction, validation, and band classification."""

import math

import pytest
from hypothesis import given, strategies as st

from twin.assets import (
    LEVEL_COLORS,
    AssetTree,
    Direction,
    HealthLevel,
    NodeKind,
    ThresholdBands,
    build_tree,
    classify_value,
    parse_tree,
    validate,
)
from twin.errors import (
    AssetConfigError,
    BandError,
    DuplicateIdError,
    KindOrderError,
    MissingCilError,
    NonFiniteError,
    ParameterSetError,
    PathNotFoundError,
)

from conftest import parameter_spec, tree_config


HIGHER = Direction.HIGHER_IS_BETTER
LOWER = Direction.LOWER_IS_BETTER
BANDED = Direction.BANDED


def brute_level_higher(edges, value):
    # Count edges at or below the value; one level above that count.
    level = 1
    for edge in edges:
        if value >= edge:
            level += 1
    return level


def brute_level_lower(edges, value):
    level = 1
    for edge in edges:
        if value <= edge:
            level += 1
    return level


class TestClassification:
    def test_colors_fixed(self):
        assert LEVEL_COLORS == {1: "red", 2: "orange", 3: "yellow", 4: "green", 5: "blue"}
        assert HealthLevel(1).color == "red"
        assert HealthLevel(5).color == "blue"

    def test_higher_is_better_examples(self):
        bands = ThresholdBands((100, 300, 450, 500))
        cases = {99.9: 1, 100: 2, 299.9: 2, 300: 3, 449: 3, 450: 4, 499: 4, 500: 5, 1200: 5}
        for value, expected in cases.items():
            assert classify_value(HIGHER, bands, value) == expected, value

    def test_lower_is_better_examples(self):
        bands = ThresholdBands((28, 25, 22, 19))
        # Glare: a value of 16 sits past the last edge, best level.
        assert classify_value(LOWER, bands, 16) == 5
        cases = {30: 1, 28: 2, 27: 2, 25: 3, 23: 3, 22: 4, 20: 4, 19: 5, 0: 5}
        for value, expected in cases.items():
            assert classify_value(LOWER, bands, value) == expected, value

    def test_banded_examples(self):
        bands = ThresholdBands((1500, 1000, 600, 300), target=4000)
        cases = {
            4000: 5, 4299: 5, 3701: 5,   # deviation within 300
            4301: 4, 3400: 4,            # 300 < deviation <= 600
            4601: 3, 3000: 3,            # 600 < deviation <= 1000
            5001: 2, 2900: 2,            # 1000 < deviation <= 1500
            6000: 1, 2000: 1,            # beyond the widest edge
        }
        for value, expected in cases.items():
            assert classify_value(BANDED, bands, value) == expected, value
        # Deviation exactly on an edge lands on the better side.
        assert classify_value(BANDED, bands, 4000 + 300) == 5
        assert classify_value(BANDED, bands, 4000 - 600) == 4
        assert classify_value(BANDED, bands, 4000 + 1000) == 3
        assert classify_value(BANDED, bands, 4000 - 1500) == 2

    def test_higher_grid_matches_brute_force(self):
        bands = ThresholdBands((100, 300, 450, 500))
        for value in [x * 0.5 for x in range(0, 2 * 600)]:
            assert classify_value(HIGHER, bands, value) == brute_level_higher(bands.edges, value)

    def test_lower_grid_matches_brute_force(self):
        bands = ThresholdBands((28, 25, 22, 19))
        for value in [x * 0.25 for x in range(0, 4 * 40)]:
            assert classify_value(LOWER, bands, value) == brute_level_lower(bands.edges, value)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_higher_total_and_monotone(self, value):
        bands = ThresholdBands((100.0, 300.0, 450.0, 500.0))
        level = classify_value(HIGHER, bands, value)
        assert 1 <= int(level) <= 5
        nudged = classify_value(HIGHER, bands, value + 1.0)
        assert int(nudged) >= int(level)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_lower_total_and_antitone(self, value):
        bands = ThresholdBands((28.0, 25.0, 22.0, 19.0))
        level = classify_value(LOWER, bands, value)
        assert 1 <= int(level) <= 5
        nudged = classify_value(LOWER, bands, value + 1.0)
        assert int(nudged) <= int(level)

    @given(st.floats(min_value=1000.0, max_value=10_000.0, allow_nan=False))
    def test_banded_symmetric(self, value):
        bands = ThresholdBands((1500.0, 1000.0, 600.0, 300.0), target=4000.0)
        mirrored = 4000.0 - (value - 4000.0)
        assert classify_value(BANDED, bands, value) == classify_value(BANDED, bands, mirrored)

    def test_mirror_identity_between_directions(self):
        higher = ThresholdBands((100.0, 300.0, 450.0, 500.0))
        lower = ThresholdBands((-100.0, -300.0, -450.0, -500.0))
        for value in [x * 1.0 for x in range(0, 600, 7)]:
            assert classify_value(HIGHER, higher, value) == classify_value(LOWER, lower, -value)

    def test_non_finite_rejected(self):
        bands = ThresholdBands((1, 2, 3, 4))
        for bad in (math.nan, math.inf, -math.inf):
            with pytest.raises(NonFiniteError):
                classify_value(HIGHER, bands, bad)


class TestBandValidation:
    def test_ascending_required_for_higher(self):
        assert ThresholdBands((1, 2, 3, 4)).problem(HIGHER) is None
        assert ThresholdBands((1, 3, 2, 4)).problem(HIGHER) is not None
        assert ThresholdBands((1, 1, 2, 3)).problem(HIGHER) is not None

    def test_descending_required_for_lower(self):
        assert ThresholdBands((4, 3, 2, 1)).problem(LOWER) is None
        assert ThresholdBands((1, 2, 3, 4)).problem(LOWER) is not None

    def test_banded_needs_positive_target_edges(self):
        assert ThresholdBands((40, 30, 20, 10), target=100).problem(BANDED) is None
        assert ThresholdBands((40, 30, 20, 10)).problem(BANDED) is not None
        assert ThresholdBands((40, 30, 20, 0), target=100).problem(BANDED) is not None

    def test_target_only_for_banded(self):
        assert ThresholdBands((1, 2, 3, 4), target=2).problem(HIGHER) is not None


class TestTreeBuilding:
    def test_paths_and_lookup(self, one_area_tree):
        tree = one_area_tree
        assert tree.root.path == "library"
        node = tree.resolve("library/lighting/floor-1/reading-room/illuminance")
        assert node.kind is NodeKind.PARAMETER
        assert node.unit == "lux"
        assert "library/lighting" in tree
        with pytest.raises(PathNotFoundError):
            tree.resolve("library/nope")

    def test_template_expansion_gives_uniform_parameters(self):
        config = tree_config(
            {"floor-1": [("a", 1), ("b", 2)], "floor-2": [("c", 3)]},
            parameter_set=[parameter_spec("illuminance"), parameter_spec("ugr", "lower_is_better", (28, 25, 22, 19), "", (0, 40))],
        )
        tree = build_tree(config)
        areas = tree.areas()
        assert len(areas) == 3
        for area in areas:
            assert [p.id for p in area.children] == ["illuminance", "ugr"]
        assert len(tree.parameters()) == 6

    def test_subtree_paths_in_document_order(self, one_area_tree):
        paths = one_area_tree.subtree_paths("library/lighting/floor-1")
        assert paths == [
            "library/lighting/floor-1",
            "library/lighting/floor-1/reading-room",
            "library/lighting/floor-1/reading-room/illuminance",
        ]

    def test_duplicate_child_ids_rejected(self):
        config = tree_config({"floor-1": [("a", 1), ("a", 2)]})
        with pytest.raises(DuplicateIdError):
            build_tree(config)

    def test_kind_order_enforced(self):
        config = {
            "building": {
                "id": "b", "kind": "building",
                "children": [{"id": "f", "kind": "floor", "children": []}],
            }
        }
        with pytest.raises(KindOrderError):
            build_tree(config)

    def test_subsystem_cannot_mix_floors_and_parameters(self):
        config = {
            "building": {
                "id": "b", "kind": "building",
                "children": [
                    {
                        "id": "s", "kind": "subsystem",
                        "children": [
                            {"id": "f", "kind": "floor", "children": [area_spec_with_param()]},
                            parameter_spec("stray"),
                        ],
                    }
                ],
            }
        }
        with pytest.raises(KindOrderError):
            build_tree(config)

    def test_flat_subsystem_with_parameters_is_legal(self):
        config = {
            "building": {
                "id": "b", "kind": "building",
                "children": [
                    {"id": "hvac", "kind": "subsystem", "children": [parameter_spec("hvac-health")]}
                ],
            }
        }
        tree = build_tree(config)
        assert tree.resolve("b/hvac/hvac-health").kind is NodeKind.PARAMETER

    def test_missing_cil_rejected(self):
        config = tree_config({"floor-1": [("a", 1)]})
        del config["building"]["children"][0]["children"][0]["children"][0]["cil"]
        with pytest.raises(MissingCilError):
            build_tree(config)

    def test_cil_range_enforced(self):
        for bad in (0, 6, -1):
            config = tree_config({"floor-1": [("a", bad)]})
            with pytest.raises(MissingCilError):
                build_tree(config)

    def test_band_defects_rejected(self):
        config = tree_config(
            {"floor-1": [("a", 1)]},
            parameter_set=[parameter_spec(edges=(100, 300, 300, 500))],
        )
        with pytest.raises(BandError):
            build_tree(config)

    def test_parameter_set_must_be_uniform(self):
        config = tree_config({"floor-1": [("a", 1)]})
        config["building"]["children"][0]["children"][0]["children"].append(
            area_spec_with_param("b", "ugr")
        )
        with pytest.raises(ParameterSetError):
            build_tree(config)

    def test_validate_reports_instead_of_raising(self):
        config = tree_config({"floor-1": [("a", 1), ("a", 2)]})
        del config["building"]["children"][0]["children"][0]["children"][0]["cil"]
        tree = parse_tree(config)
        problems = validate(tree)
        codes = {p.code for p in problems}
        assert "DuplicateId" in codes
        assert "MissingCil" in codes

    def test_root_must_be_building(self):
        with pytest.raises(AssetConfigError):
            build_tree({"building": {"id": "x", "kind": "floor", "children": []}})

    def test_unknown_kind_rejected(self):
        with pytest.raises(AssetConfigError):
            build_tree({"building": {"id": "x", "kind": "wing", "children": []}})

    def test_domain_membership_and_clamp(self, one_area_tree):
        node = one_area_tree.resolve("library/lighting/floor-1/reading-room/illuminance")
        assert node.in_domain(0) and node.in_domain(2000)
        assert not node.in_domain(-0.1) and not node.in_domain(2000.1)
        assert node.clamp(-50) == 0
        assert node.clamp(99_999) == 2000
        assert node.clamp(700) == 700


def area_spec_with_param(area_id: str = "a", parameter_id: str = "illuminance"):
    from conftest import area_spec

    return area_spec(area_id, 2, [parameter_spec(parameter_id)])
