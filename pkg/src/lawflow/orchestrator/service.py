"""HTTP facade over an Engine.

Errors cross the wire as problem-detail objects {code, message, locus} with
a status mapped from the code; success bodies are plain JSON. CORS is wide
open: the service is a local tool, not a tenant boundary.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..errors import ToolError
from .engine import Engine
from .query import QuerySpec

_STATUS_BY_CODE = {
    "E_BAD_QUERY": 400,
    "E_BAD_ARGS": 400,
    "E_UNKNOWN_ENTITY": 404,
    "E_UNKNOWN_CONTRACT": 404,
    "E_NOT_READY": 503,
    "E_EXHAUSTED": 502,
}


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="lawflow", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ToolError)
    async def _tool_error(_request: Request, exc: ToolError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(status_code=status, content=exc.problem_detail())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "contracts": len(engine.snapshot.docs)}

    @app.post("/query")
    def query(body: dict) -> dict:
        spec = QuerySpec.from_dict(body)
        return engine.answer(spec).to_dict()

    @app.get("/contracts")
    def contracts() -> list:
        return engine.list_contracts()

    @app.get("/contracts/{contract_id}")
    def contract(contract_id: str) -> dict:
        return engine.contract_detail(contract_id)

    @app.get("/contracts/{contract_id}/sections")
    def sections(contract_id: str, clause: str | None = None) -> list:
        return engine.contract_sections(contract_id, clause)

    @app.get("/cache.csv")
    def cache_csv() -> PlainTextResponse:
        return PlainTextResponse(engine.snapshot.cache.to_csv_text(),
                                 media_type="text/csv; charset=utf-8")

    @app.post("/admin/ingest")
    def admin_ingest(body: dict) -> dict:
        seed = body.get("seed")
        if not isinstance(seed, int):
            raise ToolError("E_BAD_QUERY", "seed (int) is required", locus="seed")
        n_contracts = body.get("n_contracts")
        n_families = body.get("n_families")
        snapshot = engine.rebuild_synthetic(seed, n_contracts=n_contracts,
                                            n_families=n_families)
        return {"status": "ok", "seed": seed, "contracts": len(snapshot.docs)}

    return app
