import pytest
from fastapi.testclient import TestClient

from wcp.model import farm_to_dict
from wcp.service import create_app

from conftest import make_tiny_farm


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def farm_payload(worked_farm):
    return {"farm": farm_to_dict(worked_farm)}


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


class TestSolveEndpoint:
    def test_solve_returns_solution(self, client, farm_payload):
        r = client.post("/solve", json=farm_payload)
        assert r.status_code == 200
        body = r.json()
        assert set(body) >= {"edge_flows", "cable_assignment", "total_cost", "trace_summary"}
        assert body["total_cost"] <= 19
        assert body["trace_summary"]["exhausted"] is True

    def test_strategies_and_seed_accepted(self, client, farm_payload):
        r = client.post(
            "/solve",
            json={**farm_payload, "init": "bfs-last", "delta": "random", "seed": 5},
        )
        assert r.status_code == 200
        assert r.json()["trace_summary"]["seed"] == 5

    def test_deterministic_responses(self, client, farm_payload):
        payload = {**farm_payload, "delta": "random", "seed": 11}
        a = client.post("/solve", json=payload).json()
        b = client.post("/solve", json=payload).json()
        assert a["edge_flows"] == b["edge_flows"]
        assert a["total_cost"] == b["total_cost"]

    def test_invalid_instance_400(self, client):
        r = client.post("/solve", json={"farm": {"turbines": []}})
        assert r.status_code == 400
        r = client.post("/solve", json={})
        assert r.status_code == 400
        r = client.post("/solve", content=b"not json")
        assert r.status_code == 400

    def test_unknown_strategy_400(self, client, farm_payload):
        r = client.post("/solve", json={**farm_payload, "init": "nope"})
        assert r.status_code == 400
        r = client.post("/solve", json={**farm_payload, "delta": "nope"})
        assert r.status_code == 400

    def test_infeasible_instance_422(self, client):
        r = client.post(
            "/solve",
            json={
                "farm": {
                    "turbines": [
                        {"id": "t0", "x": 0, "y": 0},
                        {"id": "t1", "x": 1, "y": 0},
                    ],
                    "substations": [{"id": "s0", "x": 2, "y": 0, "capacity": 1}],
                    "edges": [
                        {"u": "t0", "v": "s0", "length": 1},
                        {"u": "t1", "v": "s0", "length": 1},
                    ],
                    "cables": [{"capacity": 1, "cost_per_length": 1}],
                }
            },
        )
        assert r.status_code == 422


class TestOracleEndpoint:
    def test_oracle_optimum(self, client, farm_payload):
        r = client.post("/oracle", json=farm_payload)
        assert r.status_code == 200
        body = r.json()
        assert body["proved_optimal"] is True
        assert body["total_cost"] == 17.0

    def test_oversized_instance_413(self, client):
        import random

        rng = random.Random(1)
        big = None
        while big is None or big.n_turbines <= 7:
            from wcp.generator import GeneratorSpec, generate

            big = generate(GeneratorSpec(seed=rng.randint(0, 99), turbine_range=(10, 12)))
        r = client.post("/oracle", json={"farm": farm_to_dict(big)})
        assert r.status_code == 413


class TestGenerateEndpoint:
    def test_generate_round_trips_through_solve(self, client):
        r = client.post("/generate", json={"seed": 4, "turbine_range": [6, 8]})
        assert r.status_code == 200
        farm = r.json()["farm"]
        assert 6 <= len(farm["turbines"]) <= 8
        r2 = client.post("/solve", json={"farm": farm})
        assert r2.status_code == 200

    def test_generate_is_deterministic(self, client):
        a = client.post("/generate", json={"seed": 8}).json()
        b = client.post("/generate", json={"seed": 8}).json()
        assert a == b

    def test_bad_size_class_400(self, client):
        r = client.post("/generate", json={"size_class": "huge"})
        assert r.status_code == 400


def test_saturated_server_503(farm_payload):
    app = create_app(workers=0)
    client = TestClient(app)
    r = client.post("/solve", json=farm_payload)
    assert r.status_code == 503
