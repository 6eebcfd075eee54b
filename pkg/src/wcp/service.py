"""HTTP API for the interactive planner UI.

Stateless JSON-over-HTTP: instances travel inline in every request, one
solver run per request, bounded worker pool with 503 on saturation.
"""

from __future__ import annotations

import threading
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import SolveLimits, solve
from .generator import GeneratorSpec, generate
from .initflow import INIT_STRATEGIES, InitializationError
from .model import InstanceError, InvariantError, farm_from_dict, farm_to_dict
from .oracle import OracleCapError, oracle_optimum
from .delta import DELTA_KINDS

DEFAULT_TIME_LIMIT_MS = 2000.0


def create_app(workers: int = 4) -> FastAPI:
    app = FastAPI(title="wcp planner service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    slots = threading.Semaphore(workers)

    def guarded(handler):
        def run(payload: dict):
            if not slots.acquire(blocking=False):
                return JSONResponse({"error": "server saturated"}, status_code=503)
            try:
                return handler(payload)
            except (InstanceError, ValueError) as exc:
                return JSONResponse({"error": str(exc)}, status_code=400)
            except InitializationError as exc:
                return JSONResponse({"error": str(exc)}, status_code=422)
            except InvariantError as exc:
                return JSONResponse({"error": f"internal invariant breach: {exc}"}, status_code=500)
            finally:
                slots.release()

        return run

    def do_solve(payload: dict):
        farm = farm_from_dict(payload["farm"])
        init_name = payload.get("init", "collecting-dijkstra-any")
        delta_name = payload.get("delta", "inc-dec")
        if init_name not in INIT_STRATEGIES:
            raise InstanceError(f"unknown init strategy {init_name!r}")
        if delta_name not in DELTA_KINDS:
            raise InstanceError(f"unknown delta strategy {delta_name!r}")
        seed = int(payload.get("seed", 0))
        time_limit = float(payload.get("time_limit_ms", DEFAULT_TIME_LIMIT_MS))
        t0 = time.perf_counter()
        sol = solve(
            farm,
            INIT_STRATEGIES[init_name],
            delta_name,
            limits=SolveLimits(time_ms=time_limit),
            seed=seed,
        )
        body = sol.to_dict()
        body["trace_summary"] = {
            "iterations": sol.iterations,
            "cancellations": sol.cancellations,
            "exhausted": sol.exhausted,
            "seed": sol.seed,
        }
        body["wall_time_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        return JSONResponse(body)

    def do_oracle(payload: dict):
        farm = farm_from_dict(payload["farm"])
        try:
            result = oracle_optimum(farm)
        except OracleCapError as exc:
            return JSONResponse({"error": str(exc)}, status_code=413)
        if not result.feasible:
            return JSONResponse({"error": "instance is infeasible"}, status_code=422)
        from .model import solution_to_dict

        body = solution_to_dict(farm, result.flow)
        body["proved_optimal"] = True
        return JSONResponse(body)

    def do_generate(payload: dict):
        spec = GeneratorSpec(
            size_class=payload.get("size_class", "n1-like"),
            seed=int(payload.get("seed", 0)),
            turbine_range=tuple(payload["turbine_range"]) if payload.get("turbine_range") else None,
            substations=payload.get("substations"),
            connectivity=payload.get("connectivity"),
            k=int(payload.get("k", 8)),
            divisor=int(payload.get("divisor", 1)),
        )
        farm = generate(spec)
        return JSONResponse({"farm": farm_to_dict(farm)})

    solve_handler = guarded(do_solve)
    oracle_handler = guarded(do_oracle)
    generate_handler = guarded(do_generate)

    @app.post("/solve")
    async def solve_endpoint(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"error": "invalid JSON body"}, status_code=400)
        if not isinstance(payload, dict) or "farm" not in payload:
            return JSONResponse({"error": "missing 'farm'"}, status_code=400)
        return solve_handler(payload)

    @app.post("/oracle")
    async def oracle_endpoint(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"error": "invalid JSON body"}, status_code=400)
        if not isinstance(payload, dict) or "farm" not in payload:
            return JSONResponse({"error": "missing 'farm'"}, status_code=400)
        return oracle_handler(payload)

    @app.post("/generate")
    async def generate_endpoint(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"error": "invalid JSON body"}, status_code=400)
        if not isinstance(payload, dict):
            return JSONResponse({"error": "expected a JSON object"}, status_code=400)
        return generate_handler(payload)

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    return app
