"""FastAPI front end: one POST endpoint per analysis.

Run with ``uvicorn partsentropy.service.app:app``.  Infeasible outcomes
(a part that cannot avoid its obstacle) are valid results and come back
as status="infeasible" in the parts-entropy body, not as HTTP errors.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import GeometryError
from . import handlers
from . import schemas as sc

app = FastAPI(title="partsentropy", version=__version__)


def _run(handler, req, workers: int | None = None) -> sc.Report:
    try:
        return handlers.make_report(handler(req), workers=workers)
    except (GeometryError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/pkf", response_model=sc.Report)
def pkf_endpoint(req: sc.PkfRequest) -> sc.Report:
    return _run(handlers.run_pkf, req)


@app.post("/containment", response_model=sc.Report)
def containment_endpoint(req: sc.ContainmentRequest) -> sc.Report:
    return _run(handlers.run_containment, req)


@app.post("/mc", response_model=sc.Report)
def mc_endpoint(req: sc.McRequest) -> sc.Report:
    return _run(handlers.run_mc, req, workers=req.workers)


@app.post("/parts-entropy", response_model=sc.Report)
def parts_entropy_endpoint(req: sc.PartsEntropyRequest) -> sc.Report:
    return _run(handlers.run_parts_entropy, req, workers=req.workers)


@app.post("/entropy", response_model=sc.Report)
def entropy_endpoint(req: sc.EntropyRequest) -> sc.Report:
    return _run(handlers.run_entropy, req)


@app.post("/theorems", response_model=sc.Report)
def theorems_endpoint(req: sc.TheoremsRequest) -> sc.Report:
    return _run(handlers.run_theorems, req)


@app.post("/symmetrize", response_model=sc.Report)
def symmetrize_endpoint(req: sc.SymmetrizeRequest) -> sc.Report:
    return _run(handlers.run_symmetrize, req)


@app.post("/dosr", response_model=sc.Report)
def dosr_endpoint(req: sc.DosrRequest) -> sc.Report:
    return _run(handlers.run_dosr, req)


@app.post("/generations", response_model=sc.Report)
def generations_endpoint(req: sc.GenerationsRequest) -> sc.Report:
    return _run(handlers.run_generations, req, workers=req.workers)
