import json
import math
from fractions import Fraction

import pytest

from wcp.model import (
    INF,
    CableType,
    CostFunction,
    Flow,
    InstanceError,
    check_feasible,
    farm_from_dict,
    farm_to_dict,
    flow_cost,
    load_farm,
    net_flow,
    save_farm,
    to_fraction,
)


def test_to_fraction_decimal_floats_are_exact():
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("7/2") == Fraction(7, 2)


def test_to_fraction_rejects_bool_and_nan():
    with pytest.raises(InstanceError):
        to_fraction(True)
    with pytest.raises(InstanceError):
        to_fraction(float("nan"))


class TestCostFunction:
    def test_step_values(self):
        cf = CostFunction([CableType(1, Fraction(2)), CableType(3, Fraction(3))])
        assert cf.evaluate(0) == 0
        assert cf.evaluate(1) == 2
        assert cf.evaluate(2) == 3
        assert cf.evaluate(3) == 3
        assert cf.evaluate(4) is INF

    def test_left_continuous_at_steps(self):
        # c(x) uses the cable covering ceil(x): just above a capacity the
        # next cable applies, at the capacity the cheaper one still does.
        cf = CostFunction([CableType(1, Fraction(2)), CableType(3, Fraction(3))])
        assert cf.evaluate(Fraction(1)) == 2
        assert cf.evaluate(Fraction(11, 10)) == 3

    def test_monotone_non_decreasing(self):
        cf = CostFunction(
            [CableType(2, Fraction(1)), CableType(5, Fraction(4)), CableType(9, Fraction(10))]
        )
        values = [cf.evaluate(x) for x in range(10)]
        assert values == sorted(values)

    def test_dominated_cable_rejected(self):
        with pytest.raises(InstanceError):
            CostFunction([CableType(3, Fraction(2)), CableType(2, Fraction(3))])
        with pytest.raises(InstanceError):
            CostFunction([CableType(2, Fraction(2)), CableType(2, Fraction(3))])

    def test_scaled_matches_exact(self):
        cf = CostFunction(
            [CableType(1, Fraction(1, 3)), CableType(4, Fraction(5, 2))]
        )
        for n in range(5):
            assert Fraction(cf.evaluate_scaled(n), cf.cost_scale) == cf.evaluate(n)
        assert cf.evaluate_scaled(5) is INF

    def test_cheapest_cable_index(self):
        cf = CostFunction([CableType(1, Fraction(2)), CableType(3, Fraction(3))])
        assert cf.cheapest_cable_index(0) is None
        assert cf.cheapest_cable_index(1) == 0
        assert cf.cheapest_cable_index(2) == 1
        with pytest.raises(ValueError):
            cf.cheapest_cable_index(4)


class TestWindFarmValidation:
    def base(self):
        return {
            "turbines": [{"id": "t0", "x": 0, "y": 0}, {"id": "t1", "x": 1, "y": 0}],
            "substations": [{"id": "s0", "x": 2, "y": 0, "capacity": 2}],
            "edges": [{"u": "t0", "v": "t1"}, {"u": "t1", "v": "s0"}],
            "cables": [{"capacity": 2, "cost_per_length": 1}],
        }

    def test_missing_length_uses_euclidean(self):
        farm = farm_from_dict(self.base())
        assert farm.edges[0].length == 1
        assert farm.edges[1].length == 1

    def test_substation_substation_edge_rejected(self):
        data = self.base()
        data["substations"].append({"id": "s1", "x": 3, "y": 0, "capacity": 2})
        data["edges"].append({"u": "s0", "v": "s1"})
        with pytest.raises(InstanceError):
            farm_from_dict(data)

    def test_duplicate_edge_rejected_either_direction(self):
        data = self.base()
        data["edges"].append({"u": "t1", "v": "t0"})
        with pytest.raises(InstanceError):
            farm_from_dict(data)

    def test_reserved_super_id_rejected(self):
        data = self.base()
        data["turbines"][0]["id"] = "__super__"
        data["edges"] = []
        with pytest.raises(InstanceError):
            farm_from_dict(data)

    def test_unknown_vertex_in_edge(self):
        data = self.base()
        data["edges"][0]["u"] = "nope"
        with pytest.raises(InstanceError):
            farm_from_dict(data)

    def test_mixed_int_and_str_ids_sort_deterministically(self):
        data = self.base()
        data["turbines"] = [{"id": 5, "x": 0, "y": 0}, {"id": "a", "x": 1, "y": 0}]
        data["edges"] = [{"u": 5, "v": "a"}, {"u": "a", "v": "s0"}]
        farm = farm_from_dict(data)
        assert farm.vertices == [5, "a", "s0"]


class TestFeasibility:
    def test_feasible_flow(self, worked_farm, worked_flow):
        assert check_feasible(worked_farm, worked_flow) == []

    def test_turbine_conservation_violation(self, worked_farm, worked_flow):
        worked_flow.edge_flow[worked_farm.edge_index[("v1", "v2")]] = 0
        rules = {v.rule for v in check_feasible(worked_farm, worked_flow)}
        assert "turbine-conservation" in rules

    def test_substation_capacity_violation(self, worked_farm, worked_flow):
        worked_farm.substation_capacity["u"] = 2
        rules = {v.rule for v in check_feasible(worked_farm, worked_flow)}
        assert "substation-capacity" in rules

    def test_substation_outflow_violation(self, worked_farm, worked_flow):
        i = worked_farm.edge_index[("v3", "u")]
        worked_flow.edge_flow[i] = -1
        rules = {v.rule for v in check_feasible(worked_farm, worked_flow)}
        assert "substation-outflow" in rules

    def test_inflow_accounting_violation(self, worked_farm, worked_flow):
        worked_flow.sub_inflow["u"] = 1
        rules = {v.rule for v in check_feasible(worked_farm, worked_flow)}
        assert "inflow-accounting" in rules

    def test_net_flow_sign_convention(self, worked_farm, worked_flow):
        assert net_flow(worked_farm, worked_flow, "v1") == -1
        assert net_flow(worked_farm, worked_flow, "u") == 3


def test_flow_cost_worked_example(worked_farm, worked_flow):
    assert flow_cost(worked_farm, worked_flow) == 19


def test_flow_cost_overflow_is_inf_even_on_zero_length_edges():
    farm = farm_from_dict(
        {
            "turbines": [{"id": "t0", "x": 0, "y": 0}],
            "substations": [{"id": "s0", "x": 0, "y": 0, "capacity": 5}],
            "edges": [{"u": "t0", "v": "s0", "length": 0}],
            "cables": [{"capacity": 1, "cost_per_length": 1}],
        }
    )
    flow = Flow([2], {"s0": 2})
    assert flow_cost(farm, flow) is INF


def test_round_trip_is_idempotent(tmp_path, worked_farm):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_farm(worked_farm, p1)
    farm2 = load_farm(p1)
    save_farm(farm2, p2)
    assert json.loads(p1.read_text()) == json.loads(p2.read_text())
    assert farm_to_dict(worked_farm) == farm_to_dict(farm2)


def test_float_coordinates_survive_round_trip(tmp_path):
    data = {
        "turbines": [{"id": "t0", "x": 0.125, "y": 10.5}],
        "substations": [{"id": "s0", "x": 3.25, "y": 4.0, "capacity": 1}],
        "edges": [{"u": "t0", "v": "s0"}],
        "cables": [{"capacity": 1, "cost_per_length": 0.5}],
    }
    farm = farm_from_dict(data)
    expected = math.hypot(0.125 - 3.25, 10.5 - 4.0)
    assert float(farm.edges[0].length) == expected
    p = tmp_path / "f.json"
    save_farm(farm, p)
    again = load_farm(p)
    assert farm_to_dict(farm) == farm_to_dict(again)
