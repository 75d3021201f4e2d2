"""FastAPI application exposing the toolkit as a stateless JSON service.

Domain errors (unsupported fields, non-ideals, budget limits, parse
failures) map to HTTP 400 with the error class name; malformed payloads are
rejected by the schema layer with 422.  Verdict-false reports are ordinary
200 responses; the verdict lives in the body.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CoalglabError
from . import handlers
from .schemas import (
    CoalgebraPayload,
    CoalgebraRequest,
    ConstructRequest,
    Report,
    SplitRequest,
)

app = FastAPI(
    title="coalglab",
    version=__version__,
    description=(
        "Exact-arithmetic computations on finite-dimensional coalgebras: "
        "axiom validation, coradical filtration, chain tests, dual ideal "
        "lattices, module splitting over chain rings, and divided power "
        "recognition."
    ),
)


@app.exception_handler(CoalglabError)
async def coalglab_error_handler(_request: Request, exc: CoalglabError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "message": str(exc)},
    )


@app.get("/version")
def version() -> dict:
    return {"name": "coalglab", "version": __version__}


@app.post("/construct", response_model=CoalgebraPayload)
def construct(request: ConstructRequest) -> CoalgebraPayload:
    return handlers.handle_construct(request)


@app.post("/validate", response_model=Report)
def validate(request: CoalgebraRequest) -> Report:
    return handlers.handle_validate(request)


@app.post("/filtration", response_model=Report)
def filtration(request: CoalgebraRequest) -> Report:
    return handlers.handle_filtration(request)


@app.post("/chain", response_model=Report)
def chain(request: CoalgebraRequest) -> Report:
    return handlers.handle_chain(request)


@app.post("/dual-ideals", response_model=Report)
def dual_ideals(request: CoalgebraRequest) -> Report:
    return handlers.handle_dual_ideals(request)


@app.post("/split", response_model=Report)
def split(request: SplitRequest) -> Report:
    return handlers.handle_split(request)


@app.post("/recognize-kn", response_model=Report)
def recognize_kn(request: CoalgebraRequest) -> Report:
    return handlers.handle_recognize_kn(request)
