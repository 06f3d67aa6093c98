"""Session-oriented HTTP API for the interactive advisor.

Two-phase protocol per round: POST .../roll returns the recommendation and
what-ifs without touching the board; POST .../placement commits the human's
actual choice (which may override the advice). Sessions live in an embedded
sqlite store keyed by id and survive restarts; strategy tables and the
percentile distribution are cached in-process per game-spec digest.

Error payloads are {"error": {"code": ..., "message": ...}}; exact rationals
are rendered as decimal strings at the advertised "precision".
"""

from __future__ import annotations

import json
import sqlite3
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import ValidationError
from .exact import ExactTable, build_exact_table, move_evaluations
from .game import GameState, apply_move, score
from .gamespec import GameSpec
from .omniscient import omniscient_play
from .rendering import decimal_str
from .simulate import ExactStrategy, simulate

PRECISION = 5
PERCENTILE_SEED = 0x51D1CE
DEFAULT_STORE = "slotdice-sessions.db"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateSessionBody(BaseModel):
    spec: dict | None = None


class RollBody(BaseModel):
    roll: int


class PlacementBody(BaseModel):
    roll: int
    slot: int


class SessionStore:
    """Sessions as JSON blobs in sqlite; one connection per operation."""

    def __init__(self, path: str | Path):
        self.path = str(path)
        with self._connect() as conn:
            conn.execute(
                "CREATE TABLE IF NOT EXISTS sessions ("
                " id TEXT PRIMARY KEY, data TEXT NOT NULL,"
                " created TEXT NOT NULL, updated TEXT NOT NULL)"
            )

    def _connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self.path)

    def save(self, session_id: str, data: dict) -> None:
        now = datetime.now(timezone.utc).isoformat()
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO sessions (id, data, created, updated) VALUES (?, ?, ?, ?)"
                " ON CONFLICT(id) DO UPDATE SET data = excluded.data,"
                " updated = excluded.updated",
                (session_id, json.dumps(data), now, now),
            )

    def load(self, session_id: str) -> dict | None:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT data FROM sessions WHERE id = ?", (session_id,)
            ).fetchone()
        return json.loads(row[0]) if row else None


@dataclass
class Session:
    """In-memory view of one stored session; board state derives from the log."""

    id: str
    spec: GameSpec
    moves: list[dict]  # {"roll", "recommended", "chosen", "expected": "n/d"}
    pending_roll: int | None
    finished: bool

    @classmethod
    def fresh(cls, spec: GameSpec) -> "Session":
        return cls(uuid.uuid4().hex, spec, [], None, False)

    @classmethod
    def from_dict(cls, data: dict) -> "Session":
        return cls(
            id=data["id"],
            spec=GameSpec.from_dict(data["spec"]),
            moves=list(data["moves"]),
            pending_roll=data["pending_roll"],
            finished=data["finished"],
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "spec": self.spec.to_dict(),
            "moves": self.moves,
            "pending_roll": self.pending_roll,
            "finished": self.finished,
        }

    def state(self) -> GameState:
        state = GameState.initial(self.spec.pmf, self.spec.config)
        for move in self.moves:
            state = apply_move(state, move["chosen"], move["roll"])
        return state

    def rolls(self) -> list[int]:
        return [move["roll"] for move in self.moves]


class TableCache:
    """Per-digest exact tables and percentile score distributions."""

    def __init__(self, percentile_games: int):
        self.percentile_games = percentile_games
        self._tables: dict[str, ExactTable] = {}
        self._distributions: dict[str, list[int]] = {}
        self._lock = threading.Lock()

    def table(self, spec: GameSpec) -> ExactTable:
        key = spec.digest()
        with self._lock:
            table = self._tables.get(key)
        if table is None:
            table = build_exact_table(spec.pmf, spec.config)
            with self._lock:
                self._tables[key] = table
        return table

    def distribution(self, spec: GameSpec) -> list[int]:
        key = spec.digest()
        with self._lock:
            dist = self._distributions.get(key)
        if dist is None:
            report_scores = _distribution_scores(
                ExactStrategy(self.table(spec)), spec, self.percentile_games
            )
            dist = sorted(report_scores)
            with self._lock:
                self._distributions[key] = dist
        return dist


def _distribution_scores(strategy: ExactStrategy, spec: GameSpec, games: int) -> list[int]:
    from .simulate import _play_games  # score vectors, not just the report

    return _play_games([strategy], spec.pmf, spec.config, games, PERCENTILE_SEED, False)[0]


def create_app(
    default_spec: GameSpec | None = None,
    store_path: str | Path | None = None,
    percentile_games: int = 100_000,
) -> FastAPI:
    app = FastAPI(title="slotdice advisor", docs_url=None, redoc_url=None)
    store = SessionStore(store_path or DEFAULT_STORE)
    cache = TableCache(percentile_games)
    base_spec = default_spec or GameSpec.standard()
    locks: dict[str, threading.Lock] = {}
    locks_guard = threading.Lock()

    def session_lock(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks.setdefault(session_id, threading.Lock())

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, err: ApiError):
        return JSONResponse(
            status_code=err.status,
            content={"error": {"code": err.code, "message": err.message}},
        )

    def get_session(session_id: str) -> Session:
        data = store.load(session_id)
        if data is None:
            raise ApiError(404, "session-not-found", f"no session {session_id}")
        return Session.from_dict(data)

    def spec_payload(spec: GameSpec, table: ExactTable) -> dict:
        return {
            "name": spec.name,
            "slot_count": spec.config.slot_count,
            "multipliers": [decimal_str(m, 0) if m.denominator == 1 else str(m)
                            for m in spec.config.multipliers],
            "labels": list(spec.labels) if spec.labels else None,
            "roll_range": [spec.pmf.xmin, spec.pmf.xmax],
            "optimal_expected_score": decimal_str(table.full_value, PRECISION),
            "precision": PRECISION,
        }

    def state_payload(session: Session) -> dict:
        state = session.state()
        return {
            "id": session.id,
            "finished": session.finished,
            "pending_roll": session.pending_roll,
            "rolls_played": state.rolls_played,
            "free_slots": list(state.free_slots),
            "slots": [
                {
                    "slot": i + 1,
                    "multiplier": decimal_str(m, 0) if m.denominator == 1 else str(m),
                    "value": state.placements[i],
                }
                for i, m in enumerate(session.spec.config.multipliers)
            ],
            "running_score": decimal_str(state.banked_score(), PRECISION),
            "move_log": [
                {
                    "roll": move["roll"],
                    "recommended_slot": move["recommended"],
                    "chosen_slot": move["chosen"],
                    "expected_score": move["expected"],
                    "followed": move["recommended"] == move["chosen"],
                }
                for move in session.moves
            ],
            "precision": PRECISION,
        }

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody | None = None):
        spec = base_spec
        if body is not None and body.spec is not None:
            try:
                spec = GameSpec.from_dict(body.spec)
            except ValidationError as err:
                raise ApiError(422, "validation", str(err))
        table = cache.table(spec)
        session = Session.fresh(spec)
        store.save(session.id, session.to_dict())
        return {
            "id": session.id,
            "spec": spec_payload(spec, table),
            "state": state_payload(session),
        }

    @app.get("/sessions/{session_id}")
    def get_session_state(session_id: str):
        session = get_session(session_id)
        return state_payload(session)

    @app.post("/sessions/{session_id}/roll")
    def submit_roll(session_id: str, body: RollBody):
        with session_lock(session_id):
            session = get_session(session_id)
            spec = session.spec
            state = session.state()
            if session.finished or state.is_complete:
                raise ApiError(409, "game-complete", "all slots are filled")
            if not spec.pmf.xmin <= body.roll <= spec.pmf.xmax:
                raise ApiError(
                    422, "range",
                    f"roll {body.roll} outside [{spec.pmf.xmin}, {spec.pmf.xmax}]",
                )
            table = cache.table(spec)
            banked = state.banked_score()
            evaluations = move_evaluations(table, state.free_mask, body.roll)
            best_slot, best_value = evaluations[0]
            gap = evaluations[0][1] - evaluations[1][1] if len(evaluations) > 1 else None
            session.pending_roll = body.roll
            store.save(session.id, session.to_dict())
            return {
                "roll": body.roll,
                "best_slot": best_slot,
                "expected_score": decimal_str(best_value, PRECISION),
                "gap_to_runner_up": None if gap is None else decimal_str(gap, PRECISION),
                "evaluations": [
                    {
                        "slot": slot,
                        "value": decimal_str(value, PRECISION),
                        "projected_final": decimal_str(banked + value, PRECISION),
                        "gap_to_best": decimal_str(best_value - value, PRECISION),
                    }
                    for slot, value in evaluations
                ],
                "precision": PRECISION,
            }

    @app.post("/sessions/{session_id}/placement")
    def commit_placement(session_id: str, body: PlacementBody):
        with session_lock(session_id):
            session = get_session(session_id)
            if session.finished:
                raise ApiError(409, "game-complete", "session is read-only")
            if session.pending_roll is None:
                raise ApiError(409, "sequencing", "submit the roll before placing it")
            if body.roll != session.pending_roll:
                raise ApiError(
                    409, "sequencing",
                    f"pending roll is {session.pending_roll}, not {body.roll}",
                )
            table = cache.table(session.spec)
            state = session.state()
            free = state.free_mask
            if not 1 <= body.slot <= session.spec.config.slot_count:
                raise ApiError(422, "range", f"slot {body.slot} does not exist")
            if not free & (1 << (body.slot - 1)):
                raise ApiError(409, "conflict", f"slot {body.slot} is already filled")
            evaluations = move_evaluations(table, free, body.roll)
            recommended, _ = evaluations[0]
            chosen_value = next(v for s, v in evaluations if s == body.slot)
            session.moves.append(
                {
                    "roll": body.roll,
                    "recommended": recommended,
                    "chosen": body.slot,
                    "expected": decimal_str(chosen_value, PRECISION),
                }
            )
            session.pending_roll = None
            store.save(session.id, session.to_dict())
            return {
                "state": state_payload(session),
                "move": {
                    "roll": body.roll,
                    "recommended_slot": recommended,
                    "chosen_slot": body.slot,
                    "expected_score": decimal_str(chosen_value, PRECISION),
                    "followed": recommended == body.slot,
                },
            }

    @app.post("/sessions/{session_id}/finish")
    def finish_session(session_id: str):
        with session_lock(session_id):
            session = get_session(session_id)
            state = session.state()
            if not state.is_complete:
                raise ApiError(
                    409, "game-incomplete",
                    f"{len(state.free_slots)} slot(s) still open",
                )
            table = cache.table(session.spec)
            final = score(state)
            retro = score(
                omniscient_play(session.spec.pmf, session.spec.config, session.rolls())
            )
            overridden = sum(
                1 for move in session.moves if move["recommended"] != move["chosen"]
            )
            dist = cache.distribution(session.spec)
            at_or_below = _count_at_most(dist, final)
            percentile = Fraction(100 * at_or_below, len(dist))
            if not session.finished:
                session.finished = True
                store.save(session.id, session.to_dict())
            return {
                "final_score": decimal_str(final, PRECISION),
                "optimal_expected_score": decimal_str(table.full_value, PRECISION),
                "omniscient_retrospective": decimal_str(retro, PRECISION),
                "overridden_moves": overridden,
                "percentile": float(percentile),
                "precision": PRECISION,
            }

    return app


def _count_at_most(sorted_scores: list[int], value: Fraction) -> int:
    from bisect import bisect_right

    return bisect_right(sorted_scores, value)
