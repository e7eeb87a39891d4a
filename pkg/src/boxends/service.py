"""HTTP face of the solver: evaluation, advice, and playable sessions.

Positions travel as notation strings and all field names are
lower_snake_case.  Evaluation endpoints are pure functions of the
request; sessions live in memory, guarded by a per-session lock and an
optimistic version counter, with an optional JSON snapshot directory so
a restart can pick them back up.
"""

from __future__ import annotations

import dataclasses
import json
import threading
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import engine
from .measures import measures
from .oracle import Oracle
from .position import Component, NotationError, Position, parse
from .strategy import Response, controller_decision, opener_move

OPENER = engine.OPENER
CONTROLLER = engine.CONTROLLER


class PositionRequest(BaseModel):
    position: str


class MeasuresModel(BaseModel):
    size: int
    theta: int
    f: int
    s: int
    num_chains: int
    num_loops: int
    tb: int
    c: int


class ComponentEvaluation(BaseModel):
    component: str
    value_given_open: int
    controller_keeps: bool


class EvaluateResponse(BaseModel):
    position: str
    measures: MeasuresModel
    value: int
    per_component: list[ComponentEvaluation]


class BestMoveResponse(BaseModel):
    component: str
    rule: str
    standard_move_reason: str | None = None


class SessionCreateRequest(BaseModel):
    position: str
    advantage: int = 0
    human_role: Literal["opener", "controller"]


class ActionModel(BaseModel):
    type: Literal["open", "keep", "give_up"]
    component: str | None = None


class ActionRequest(BaseModel):
    action: ActionModel
    version: int | None = None


class TranscriptEntryModel(BaseModel):
    type: Literal["open", "keep", "give_up"]
    component: str | None = None
    player: int
    role: str


class StateModel(BaseModel):
    initial_position: str
    remaining: str
    pending: str | None
    to_act: str
    roles: dict[str, int]
    boxes: list[int]
    prior_advantage: int
    totals: list[int]
    margin: int
    terminal: bool
    transcript: list[TranscriptEntryModel]
    version: int
    human_player: int


class SessionResponse(BaseModel):
    id: int
    state: StateModel


class StateResponse(BaseModel):
    state: StateModel


class ActionResponse(BaseModel):
    state: StateModel
    engine_reply: list[TranscriptEntryModel]


def _parse_position(text: str) -> Position:
    try:
        return parse(text)
    except NotationError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _parse_component(text: str) -> Component:
    try:
        pos = parse(text)
    except NotationError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    if len(pos) != 1:
        raise HTTPException(status_code=400, detail=f"expected one component, got {text!r}")
    return pos.components[0]


def _entry_model(entry: engine.TranscriptEntry) -> TranscriptEntryModel:
    if isinstance(entry.action, engine.Open):
        return TranscriptEntryModel(
            type="open",
            component=str(entry.action.component),
            player=entry.player,
            role=entry.role,
        )
    kind = "keep" if isinstance(entry.action, engine.Keep) else "give_up"
    return TranscriptEntryModel(type=kind, player=entry.player, role=entry.role)


class Session:
    def __init__(self, session_id: int, state: engine.GameState, human_player: int) -> None:
        self.id = session_id
        self.state = state
        self.human_player = human_player
        self.version = 0
        self.lock = threading.Lock()

    @property
    def initial_position(self) -> Position:
        # Every component that left the board did so through an Open action,
        # including the currently pending one.
        remaining = self.state.remaining
        for entry in self.state.transcript:
            if isinstance(entry.action, engine.Open):
                remaining = remaining.add(entry.action.component)
        return remaining

    def acting_player(self) -> int:
        if self.state.pending is None:
            return self.state.opener
        return self.state.controller

    def to_model(self) -> StateModel:
        s = self.state
        return StateModel(
            initial_position=str(self.initial_position),
            remaining=str(s.remaining),
            pending=str(s.pending) if s.pending is not None else None,
            to_act=s.to_act,
            roles={OPENER: s.opener, CONTROLLER: s.controller},
            boxes=list(s.boxes),
            prior_advantage=s.prior_advantage,
            totals=list(s.totals),
            margin=s.margin,
            terminal=s.terminal,
            transcript=[_entry_model(e) for e in s.transcript],
            version=self.version,
            human_player=self.human_player,
        )


class SessionStore:
    """In-memory sessions with monotonically assigned ids."""

    def __init__(self, snapshot_dir: str | Path | None = None) -> None:
        self._sessions: dict[int, Session] = {}
        self._next_id = 1
        self._lock = threading.Lock()
        self._snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self._snapshot_dir is not None:
            self._snapshot_dir.mkdir(parents=True, exist_ok=True)
            self._load_snapshots()

    def create(self, pos: Position, advantage: int, human_player: int) -> Session:
        with self._lock:
            session_id = self._next_id
            self._next_id += 1
            session = Session(session_id, engine.new_game(pos, advantage), human_player)
            self._sessions[session_id] = session
        return session

    def get(self, session_id: int) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id}") from None

    def snapshot(self, session: Session) -> None:
        if self._snapshot_dir is None:
            return
        payload = {
            "id": session.id,
            "initial_position": str(session.initial_position),
            "advantage": session.state.prior_advantage,
            "human_player": session.human_player,
            "version": session.version,
            "transcript": [_entry_model(e).model_dump() for e in session.state.transcript],
        }
        path = self._snapshot_dir / f"session-{session.id}.json"
        path.write_text(json.dumps(payload, indent=2))

    def _load_snapshots(self) -> None:
        assert self._snapshot_dir is not None
        for path in sorted(self._snapshot_dir.glob("session-*.json")):
            payload = json.loads(path.read_text())
            state = engine.new_game(parse(payload["initial_position"]), payload["advantage"])
            for record in payload["transcript"]:
                if record["type"] == "open":
                    action: engine.Action = engine.Open(parse(record["component"]).components[0])
                elif record["type"] == "keep":
                    action = engine.KEEP
                else:
                    action = engine.GIVE_UP
                state = engine.apply(state, action)
            session = Session(payload["id"], state, payload["human_player"])
            session.version = payload["version"]
            self._sessions[session.id] = session
            self._next_id = max(self._next_id, session.id + 1)


def _engine_action(state: engine.GameState, policy: engine.Policy) -> engine.Action:
    if state.pending is None:
        return engine.Open(policy.choose_open(state.remaining))
    response = policy.choose_response(state.remaining, state.pending)
    return engine.KEEP if response is Response.KEEP else engine.GIVE_UP


def _run_engine(session: Session, policy: engine.Policy) -> list[TranscriptEntryModel]:
    """Let the engine act until the game ends or the human is on the move."""
    replies: list[TranscriptEntryModel] = []
    while not session.state.terminal and session.acting_player() != session.human_player:
        session.state = engine.apply(session.state, _engine_action(session.state, policy))
        replies.append(_entry_model(session.state.transcript[-1]))
        session.version += 1
    return replies


def create_app(store: SessionStore | None = None, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="boxends")
    oracle = Oracle()
    sessions = store if store is not None else SessionStore()
    policy = engine.ClosedFormPolicy()

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/evaluate")
    def evaluate(req: PositionRequest) -> EvaluateResponse:
        pos = _parse_position(req.position)
        m = measures(pos)
        per_component = [
            ComponentEvaluation(
                component=str(comp),
                value_given_open=oracle.value_given_open(pos, comp),
                controller_keeps=(
                    controller_decision(pos.remove(comp), comp) is Response.KEEP
                ),
            )
            for comp in pos.distinct()
        ]
        return EvaluateResponse(
            position=str(pos),
            measures=MeasuresModel(**dataclasses.asdict(m)),
            value=oracle.value(pos),
            per_component=per_component,
        )

    @app.post("/best-move")
    def best_move(req: PositionRequest) -> BestMoveResponse:
        pos = _parse_position(req.position)
        if pos.is_empty:
            raise HTTPException(status_code=400, detail="the empty position has no move")
        advice = opener_move(pos)
        return BestMoveResponse(
            component=str(advice.chosen),
            rule=advice.rule.value,
            standard_move_reason=(
                advice.standard_move_reason.value if advice.standard_move_reason else None
            ),
        )

    @app.post("/sessions")
    def create_session(req: SessionCreateRequest) -> SessionResponse:
        pos = _parse_position(req.position)
        if pos.is_empty:
            raise HTTPException(status_code=400, detail="cannot play the empty position")
        human_player = 0 if req.human_role == "opener" else 1
        session = sessions.create(pos, req.advantage, human_player)
        with session.lock:
            _run_engine(session, policy)
            sessions.snapshot(session)
            return SessionResponse(id=session.id, state=session.to_model())

    @app.get("/sessions/{session_id}")
    def get_session(session_id: int) -> StateResponse:
        session = sessions.get(session_id)
        with session.lock:
            return StateResponse(state=session.to_model())

    @app.post("/sessions/{session_id}/actions")
    def act(session_id: int, req: ActionRequest) -> ActionResponse:
        session = sessions.get(session_id)
        with session.lock:
            if req.version is not None and req.version != session.version:
                raise HTTPException(
                    status_code=409,
                    detail=f"version {req.version} is stale (now {session.version})",
                )
            if session.state.terminal:
                raise HTTPException(status_code=409, detail="the game is over")
            if session.acting_player() != session.human_player:
                raise HTTPException(status_code=409, detail="not your turn")
            if req.action.type == "open":
                if req.action.component is None:
                    raise HTTPException(status_code=400, detail="open needs a component")
                action: engine.Action = engine.Open(_parse_component(req.action.component))
            elif req.action.type == "keep":
                action = engine.KEEP
            else:
                action = engine.GIVE_UP
            try:
                session.state = engine.apply(session.state, action)
            except engine.IllegalActionError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from None
            session.version += 1
            replies = _run_engine(session, policy)
            sessions.snapshot(session)
            return ActionResponse(state=session.to_model(), engine_reply=replies)

    return app


app = create_app()
