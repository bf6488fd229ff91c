"""JSON-over-HTTP session service for interactive game play.

Sessions are held in memory only and expire after a configurable idle time.
Requests to distinct sessions run in parallel; requests touching the same
session are serialized through a per-session lock.

Status codes: 400 bad input, 413 arena over the configured cap, 404 unknown
session, 409 illegal move or wrong turn.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .arena import DUPLICATOR, SPOILER, ArenaCapExceeded
from .cli import CliError, parse_variant
from .diagnostics import (GameSession, SessionError, new_session, step,
                          transcript)
from .lts import LtsError, disjoint_union, parse_aut
from .solver import solve

DEFAULT_IDLE_SECONDS = 3600.0


@dataclass
class SessionRecord:
    id: str
    session: GameSession
    offset: int | None
    lock: threading.Lock = field(default_factory=threading.Lock)
    created: float = field(default_factory=time.monotonic)
    last_access: float = field(default_factory=time.monotonic)


class SessionStore:
    def __init__(self, idle_seconds=DEFAULT_IDLE_SECONDS):
        self.idle_seconds = idle_seconds
        self._records = {}
        self._lock = threading.Lock()

    def _sweep(self, now):
        dead = [k for k, r in self._records.items()
                if now - r.last_access > self.idle_seconds]
        for k in dead:
            del self._records[k]

    def add(self, record):
        with self._lock:
            self._sweep(time.monotonic())
            self._records[record.id] = record

    def get(self, sid):
        with self._lock:
            now = time.monotonic()
            self._sweep(now)
            record = self._records.get(sid)
            if record is not None:
                record.last_access = now
            return record

    def remove(self, sid):
        with self._lock:
            return self._records.pop(sid, None) is not None


class ApiError(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def _config_view(arena, regions, i):
    c = arena.configs[i]
    return {
        "owner": c.owner,
        "position": [c.left, c.right],
        "challenge": ({"action": c.challenge[0].text,
                       "target": c.challenge[1]} if c.challenge else None),
        "match": ({"state": c.match[0], "face": c.match[1]}
                  if c.match else None),
        "reward": "check" if c.accepting else "star",
        "first_round": c.first_round,
        "winning_for": DUPLICATOR if i in regions.duplicator else SPOILER,
    }


def _state_view(record):
    s = record.session
    arena, regions = s.arena, s.regions
    view = _config_view(arena, regions, s.current)
    view.update({
        "session": record.id,
        "check_count": s.check_count,
        "terminal": s.terminal,
        "winner": s.winner_if_terminal,
        "human_side": s.human_side,
        "moves": [{
            "index": k,
            "rule": rule,
            "winning_for": DUPLICATOR if j in regions.duplicator else SPOILER,
            "target": _config_view(arena, regions, j),
        } for k, (rule, j) in enumerate(arena.edges[s.current])],
        "transcript": transcript(s),
    })
    return view


def _require(store, sid):
    record = store.get(sid)
    if record is None:
        raise ApiError(404, "unknown session %r" % sid)
    return record


def _build_record(body):
    if not isinstance(body, dict):
        raise ApiError(400, "request body must be a JSON object")
    try:
        tau = body.get("tau", "tau")
        lts = parse_aut(body["lts"], tau_label=tau)
        offset = None
        if body.get("lts2"):
            lts, offset = disjoint_union(lts, parse_aut(body["lts2"],
                                                        tau_label=tau))
        spec = parse_variant(body.get("variant", "branching"))
        s = int(body["s"])
        t = int(body["t"])
        if offset is not None:
            # t addresses a state of the second system
            t += offset
        if not (0 <= s < lts.num_states and 0 <= t < lts.num_states):
            raise ApiError(400, "state pair (%d, %d) out of range" % (s, t))
        human = body.get("human_side")
        if human not in (None, SPOILER, DUPLICATOR):
            raise ApiError(400, "human_side must be 'S', 'D' or omitted")
        max_arena = body.get("max_arena")
        names = body.get("names") or []
    except ApiError:
        raise
    except (KeyError, TypeError, ValueError, LtsError, CliError) as e:
        raise ApiError(400, str(e)) from None

    from .arena import build_arena
    try:
        arena = build_arena(spec.game, lts, starts=[(s, t)],
                            max_configs=max_arena)
    except ArenaCapExceeded as e:
        raise ApiError(413, str(e)) from None
    regions, strat_d, strat_s = solve(arena)

    def name_of(i):
        if offset is not None and i >= offset:
            return str(i - offset)
        if i < len(names):
            return str(names[i])
        return str(i)

    session = new_session(arena, regions, strat_d, strat_s, (s, t),
                          human_side=human, name_of=name_of)
    return SessionRecord(id=uuid.uuid4().hex, session=session, offset=offset)


def _lts_view(record):
    lts = record.session.arena.lts
    name_of = record.session.name_of
    return {
        "num_states": lts.num_states,
        "offset": record.offset,
        "tau_label": lts.tau_label,
        "states": [{"id": i, "name": name_of(i),
                    "system": (2 if record.offset is not None
                               and i >= record.offset else 1)}
                   for i in range(lts.num_states)],
        "edges": [{"from": s, "label": l.text, "tau": l.is_tau, "to": d}
                  for (s, l, d) in sorted(lts.transitions,
                                          key=lambda e: (e[0], e[1].text, e[2]))],
    }


def _arena_view(record, radius):
    s = record.session
    arena, regions = s.arena, s.regions
    preds = {}
    for i, out in enumerate(arena.edges):
        for _, j in out:
            preds.setdefault(j, []).append(i)
    seen = {s.current: 0}
    frontier = [s.current]
    for depth in range(1, radius + 1):
        nxt = []
        for i in frontier:
            around = [j for (_, j) in arena.edges[i]] + preds.get(i, [])
            for j in around:
                if j not in seen:
                    seen[j] = depth
                    nxt.append(j)
        frontier = nxt
    order = sorted(seen)
    return {
        "center": s.current,
        "radius": radius,
        "configs": [dict(_config_view(arena, regions, i),
                         id=i, distance=seen[i]) for i in order],
        "edges": [{"from": i, "rule": rule, "to": j}
                  for i in order for (rule, j) in arena.edges[i]
                  if j in seen],
    }


def create_app(idle_seconds=DEFAULT_IDLE_SECONDS):
    app = FastAPI(title="bisimgame service")
    store = SessionStore(idle_seconds=idle_seconds)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(request, exc):
        return JSONResponse(status_code=exc.status,
                            content={"error": str(exc)})

    @app.post("/api/session", status_code=201)
    def create(body: dict):
        record = _build_record(body)
        store.add(record)
        return {"id": record.id, "state": _state_view(record)}

    @app.get("/api/session/{sid}")
    def get_state(sid: str):
        record = _require(store, sid)
        with record.lock:
            return _state_view(record)

    @app.post("/api/session/{sid}/move")
    def post_move(sid: str, body: dict):
        record = _require(store, sid)
        with record.lock:
            session = record.session
            try:
                if body.get("auto"):
                    step(session)
                elif "move_index" in body:
                    if not isinstance(body["move_index"], int):
                        raise ApiError(409, "move_index must be an integer")
                    step(session, body["move_index"])
                else:
                    raise ApiError(400,
                                   "body must contain move_index or auto")
            except SessionError as e:
                raise ApiError(409, str(e)) from None
            return _state_view(record)

    @app.get("/api/session/{sid}/lts")
    def get_lts(sid: str):
        record = _require(store, sid)
        with record.lock:
            return _lts_view(record)

    @app.get("/api/session/{sid}/arena")
    def get_arena(sid: str, radius: int = 1):
        if not 0 <= radius <= 3:
            raise ApiError(400, "radius must be between 0 and 3")
        record = _require(store, sid)
        with record.lock:
            return _arena_view(record, radius)

    @app.delete("/api/session/{sid}", status_code=204)
    def delete(sid: str):
        if not store.remove(sid):
            raise ApiError(404, "unknown session %r" % sid)

    return app


app = create_app()
