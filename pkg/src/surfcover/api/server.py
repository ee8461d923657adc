"""FastAPI server: the CLI's computations over HTTP.

Run with:
    uvicorn surfcover.api.server:app --port 8000

Or:
    surfcover-api

Endpoints:
    GET  /health            liveness probe with the package version
    GET  /scenarios         fixture names with their titles and expected invariants
    POST /verify/{name}     run one scenario and return its report
    POST /resolve           resolve a curve at a point
    POST /irreducible       absolute factor count of a curve
    POST /intersect         local intersection number of two curves at a point
    POST /linsys            dimension and a member of a linear system
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from surfcover import __version__
from surfcover.config.run import RunConfig
from surfcover.config.scenario import SCENARIO_NAMES, ConditionsFile, load_scenario
from surfcover.engine.orchestrator import run_scenario
from surfcover.engine.tools import intersect_curves, irreducible_curve, linsys_summary, resolve_curve
from surfcover.errors import FixtureError, SurfcoverError


# ═══════════════════════════════════════════════════════════════════════════
# App setup
# ═══════════════════════════════════════════════════════════════════════════

app = FastAPI(
    title="surfcover",
    version=__version__,
    description=(
        "Exact verification of bidouble-cover constructions over Q(i): run a "
        "scenario, or resolve, factor and intersect single plane curves."
    ),
)


@app.exception_handler(SurfcoverError)
def _surfcover_error(request: Request, exc: SurfcoverError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"error": type(exc).__name__, "detail": str(exc)})


# ═══════════════════════════════════════════════════════════════════════════
# Request models
# ═══════════════════════════════════════════════════════════════════════════

class VerifyRequest(BaseModel):
    """Body for /verify/{name}; all fields optional."""
    config: RunConfig = Field(default_factory=RunConfig, description="Seed and iteration caps")


class ResolveRequest(BaseModel):
    curve: str = Field(..., description="Homogeneous polynomial in x, y, z (listing text accepted)")
    point: str = Field(..., description="'x,y,z' over Q(i), e.g. '3,2*i,1'")
    depth_cap: int = Field(16, ge=1, le=64)


class IrreducibleRequest(BaseModel):
    curve: str
    seed: int = Field(0, ge=0)


class IntersectRequest(BaseModel):
    curve_a: str
    curve_b: str
    point: str


class LinsysRequest(BaseModel):
    degree: int = Field(..., ge=1, le=12)
    conditions: ConditionsFile
    seed: Optional[int] = Field(None, ge=0, description="Seeded combination of the kernel basis")


# ═══════════════════════════════════════════════════════════════════════════
# Endpoints
# ═══════════════════════════════════════════════════════════════════════════

@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.get("/scenarios")
def scenarios() -> list[dict[str, Any]]:
    out = []
    for name in SCENARIO_NAMES:
        spec = load_scenario(name)
        out.append({
            "name": name,
            "title": spec.title,
            "anchor": spec.anchor,
            "expected": spec.expected.model_dump(),
        })
    return out


@app.post("/verify/{name}")
def verify(name: str, req: Optional[VerifyRequest] = None) -> dict[str, Any]:
    """Full report; ``passed`` is false when any check FAILed."""
    if name not in SCENARIO_NAMES:
        raise FixtureError(f"unknown scenario {name!r}")
    req = req or VerifyRequest()
    return run_scenario(name, req.config).to_dict()


@app.post("/resolve")
def resolve(req: ResolveRequest) -> dict[str, Any]:
    return resolve_curve(req.curve, req.point, req.depth_cap)


@app.post("/irreducible")
def irreducible(req: IrreducibleRequest) -> dict[str, Any]:
    return irreducible_curve(req.curve, req.seed)


@app.post("/intersect")
def intersect(req: IntersectRequest) -> dict[str, Any]:
    return intersect_curves(req.curve_a, req.curve_b, req.point)


@app.post("/linsys")
def linsys(req: LinsysRequest) -> dict[str, Any]:
    return linsys_summary(req.degree, req.conditions, req.seed)


# ═══════════════════════════════════════════════════════════════════════════
# CLI entry point
# ═══════════════════════════════════════════════════════════════════════════

def main():
    """Run the API server."""
    import uvicorn
    uvicorn.run("surfcover.api.server:app", host="0.0.0.0", port=8000)


if __name__ == "__main__":
    main()
