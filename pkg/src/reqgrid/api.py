"""JSON-over-HTTP service. Mutations are serialized through one lock and
persisted to the state store after every successful request, so a failed
request never changes what is on disk."""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import datastore
from .analytics import satisfaction_report
from .datastore import Dataset, load_state, save_state, seed_catalog
from .domain import EducationLevel, RatingMatrix, Stakeholder
from .errors import ParseError, ReqGridError, SessionNotFound
from .session import (
    SessionConfig,
    get_recommendations,
    start_session,
    submit_feedback,
    submit_seed_ratings,
)

STATUS_BY_CODE = {
    "parse_error": 400,
    "out_of_scale": 400,
    "stars_out_of_range": 400,
    "wrong_items": 400,
    "unknown_recommended_item": 400,
    "catalog_too_small": 400,
    "wrong_state": 409,
    "already_rated": 409,
    "session_not_found": 404,
    "unknown_stakeholder": 404,
    "unknown_requirement": 404,
    "unknown_reference": 404,
}


class CreateSessionBody(BaseModel):
    stakeholder_id: str = Field(min_length=1)
    education_level: str = "Unspecified"


class RatingItem(BaseModel):
    requirement_id: str
    score: int


class RatingsBody(BaseModel):
    ratings: list[RatingItem]


class FeedbackItem(BaseModel):
    requirement_id: str
    stars: int


class FeedbackBody(BaseModel):
    feedback: list[FeedbackItem]


def _session_json(session) -> dict:
    return datastore._session_to_dict(session)


def create_app(store_path: str | Path, config: SessionConfig | None = None) -> FastAPI:
    store_path = Path(store_path)
    config = config or SessionConfig()

    if store_path.exists():
        dataset = load_state(store_path)
    else:
        catalog = seed_catalog()
        matrix = RatingMatrix(config.scale)
        for r in catalog:
            matrix.register_requirement(r)
        dataset = Dataset(catalog=catalog, matrix=matrix)
        save_state(dataset, store_path)

    write_lock = threading.Lock()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        with write_lock:  # graceful shutdown persists state
            save_state(dataset, store_path)

    app = FastAPI(title="reqgrid", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.dataset = dataset
    app.state.store_path = store_path
    app.state.config = config

    def persist():
        save_state(dataset, store_path)

    def find_session(session_id: str):
        session = dataset.find_session(session_id)
        if session is None:
            raise SessionNotFound(session_id)
        return session

    @app.exception_handler(ReqGridError)
    async def domain_error(request: Request, exc: ReqGridError):
        status = STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content={"code": exc.code, "message": exc.message, "details": exc.details},
        )

    @app.exception_handler(RequestValidationError)
    async def body_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "parse_error", "message": "malformed request body",
                     "details": {"errors": exc.errors()[:5]}},
        )

    @app.get("/catalog")
    def get_catalog():
        return {
            "scale": {"min": config.scale.min, "max": config.scale.max},
            "n_seeds": config.n_seeds,
            "k_recommendations": config.k_recommendations,
            "requirements": [datastore._requirement_to_dict(r) for r in dataset.catalog],
        }

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            level = EducationLevel.parse(body.education_level)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        stakeholder = Stakeholder(body.stakeholder_id, level)
        with write_lock:
            session = start_session(stakeholder, config, dataset.catalog, dataset.matrix)
            if all(s.id != stakeholder.id for s in dataset.stakeholders):
                dataset.stakeholders.append(stakeholder)
            dataset.sessions.append(session)
            persist()
        return _session_json(session)

    @app.post("/sessions/{session_id}/ratings")
    def rate_seeds(session_id: str, body: RatingsBody):
        with write_lock:
            session = find_session(session_id)
            submit_seed_ratings(
                session, [(r.requirement_id, r.score) for r in body.ratings], dataset.matrix
            )
            persist()
        return _session_json(session)

    @app.post("/sessions/{session_id}/recommendations")
    def recommend_for_session(session_id: str):
        with write_lock:
            session = find_session(session_id)
            get_recommendations(session, config, dataset.matrix)
            persist()
        return _session_json(session)

    @app.post("/sessions/{session_id}/feedback")
    def feedback_for_session(session_id: str, body: FeedbackBody):
        with write_lock:
            session = find_session(session_id)
            submit_feedback(session, [(f.requirement_id, f.stars) for f in body.feedback])
            persist()
        return _session_json(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_json(find_session(session_id))

    @app.get("/analytics/satisfaction")
    def get_satisfaction():
        return satisfaction_report(dataset.all_feedback()).as_dict()

    return app
