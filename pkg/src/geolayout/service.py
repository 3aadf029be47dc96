"""Session-oriented streaming layout server.

Runs simulations incrementally, pushes position frames to connected
WebSocket clients, and accepts live parameter updates. One worker thread
owns each session's step loop; control messages are queued and applied
only at iteration boundaries, so a scripted control timeline (controls
keyed to iteration numbers) replays to an identical frame stream.

Endpoints (full message reference in docs/protocol.md):

* ``POST /sessions`` - upload a graph document (+ optional params), get a session id
* ``POST /sessions/{id}/control`` - start / pause / set_geo_weight /
  set_min_degree / reheat / request_metrics
* ``WS /sessions/{id}/frames?every_n=N`` - ordered frame stream
* ``GET /sessions/{id}/layout`` - export the current layout document
* ``GET /health`` - liveness probe
"""

from __future__ import annotations

import asyncio
import json
import queue
import threading
import time
import uuid
from dataclasses import dataclass

from fastapi import FastAPI, Query, Response, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from .engine.params import LayoutParams, update_geo_weight
from .engine.simulation import Simulation
from .errors import FormatError, GeoLayoutError, InvalidInputError, NotFoundError
from .formats import load_graph, params_from_dict, save_layout
from .graph import node_degree
from .metrics import compute_metrics

# Frame coordinates are rounded to 4 decimals (reduced precision on the wire).
FRAME_DECIMALS = 4

STATUS_PAUSED = "paused"
STATUS_RUNNING = "running"
STATUS_EXHAUSTED = "budget-exhausted"


@dataclass
class _Subscriber:
    frames: queue.Queue
    every_n: int


class Session:
    """One simulation run plus its control queue and frame fan-out."""

    def __init__(self, session_id: str, graph, params: LayoutParams):
        self.id = session_id
        self.graph = graph
        self.sim = Simulation(graph, params)
        self.status = STATUS_PAUSED
        self.min_degree = 0
        self._budget = 0
        self._pending: list[tuple[int, dict]] = []  # (apply_at_iteration, control)
        self._lock = threading.Condition()
        self._subscribers: list[_Subscriber] = []
        self._closed = False
        self.last_touched = time.monotonic()
        self._degrees = {nid: node_degree(graph, nid) for nid in graph.node_ids}
        self._thread = threading.Thread(target=self._run, daemon=True,
                                        name=f"session-{session_id}")
        self._thread.start()

    # -- control ---------------------------------------------------------

    def control(self, message: dict) -> dict:
        """Validate a control message and queue it for the next iteration
        boundary (or for ``at_iteration``). Queries answer immediately."""
        self.last_touched = time.monotonic()
        kind = message.get("type")
        with self._lock:
            if kind == "request_metrics":
                state = self.sim.state()
                report = compute_metrics(self.graph, state, self.sim.params.projection)
                return {"ok": True, "metrics": report.to_dict(),
                        "iteration": self.sim.iteration}
            if kind == "status":
                return self._status_payload()

            if kind == "start":
                iterations = message.get("iterations", self.sim.params.n_iterations)
                if not isinstance(iterations, int) or iterations < 1:
                    raise InvalidInputError("start.iterations must be a positive integer")
            elif kind == "set_geo_weight":
                geo_weight = message.get("geo_weight")
                if not isinstance(geo_weight, (int, float)) or geo_weight < 0:
                    raise InvalidInputError("set_geo_weight.geo_weight must be >= 0")
            elif kind == "set_min_degree":
                min_degree = message.get("min_degree")
                if not isinstance(min_degree, int) or min_degree < 0:
                    raise InvalidInputError("set_min_degree.min_degree must be a nonnegative integer")
            elif kind == "reheat":
                temperature = message.get("temperature")
                if not isinstance(temperature, (int, float)) or temperature <= 0:
                    raise InvalidInputError("reheat.temperature must be positive")
            elif kind == "pause":
                pass
            else:
                raise InvalidInputError(f"unknown control type {kind!r}")

            at = message.get("at_iteration", self.sim.iteration)
            if not isinstance(at, int) or at < self.sim.iteration:
                raise InvalidInputError(
                    f"at_iteration must be an integer >= current iteration {self.sim.iteration}"
                )
            self._pending.append((at, message))
            self._pending.sort(key=lambda item: item[0])
            self._apply_due_locked()
            self._lock.notify_all()
            return self._status_payload()

    def _status_payload(self) -> dict:
        return {
            "ok": True,
            "session_id": self.id,
            "status": self.status,
            "iteration": self.sim.iteration,
            "temperature": self.sim.temperature,
            "geo_weight": self.sim.params.geo_weight,
            "min_degree": self.min_degree,
            "remaining_iterations": self._budget,
            "connected_clients": len(self._subscribers),
        }

    def _apply_due_locked(self) -> None:
        while self._pending and self._pending[0][0] <= self.sim.iteration:
            _, message = self._pending.pop(0)
            kind = message["type"]
            if kind == "start":
                self._budget = message.get("iterations", self.sim.params.n_iterations)
                self.status = STATUS_RUNNING
            elif kind == "pause":
                self.status = STATUS_PAUSED
            elif kind == "set_geo_weight":
                self.sim.set_params(
                    update_geo_weight(self.sim.params, float(message["geo_weight"]))
                )
            elif kind == "set_min_degree":
                self.min_degree = int(message["min_degree"])
            elif kind == "reheat":
                self.sim.reheat(float(message["temperature"]))

    # -- stepping --------------------------------------------------------

    def _run(self) -> None:
        while True:
            with self._lock:
                while not self._closed and (self.status != STATUS_RUNNING or self._budget == 0):
                    self._lock.wait(timeout=1.0)
                if self._closed:
                    return
                self.sim.step()
                self._budget -= 1
                self._apply_due_locked()
                if self._budget == 0 and self.status == STATUS_RUNNING:
                    self.status = STATUS_EXHAUSTED
                frame = self._frame_locked()
                subscribers = list(self._subscribers)
            for sub in subscribers:
                if frame["iteration"] % sub.every_n == 0:
                    _offer(sub.frames, frame)

    def _frame_locked(self, snapshot: bool = False) -> dict:
        coords = self.sim.coords
        positions = {}
        for i, node_id in enumerate(self.sim.ids):
            if self._degrees[node_id] >= self.min_degree:
                positions[node_id] = [
                    round(float(coords[i, 0]), FRAME_DECIMALS),
                    round(float(coords[i, 1]), FRAME_DECIMALS),
                    round(float(coords[i, 2]), FRAME_DECIMALS),
                ]
        frame = {
            "type": "frame",
            "session_id": self.id,
            "iteration": self.sim.iteration,
            "temperature": self.sim.temperature,
            "geo_weight": self.sim.params.geo_weight,
            "positions": positions,
        }
        if snapshot:
            frame["snapshot"] = True
        return frame

    # -- frame fan-out ---------------------------------------------------

    def subscribe(self, every_n: int) -> _Subscriber:
        if every_n < 1:
            raise InvalidInputError("every_n must be a positive integer")
        sub = _Subscriber(frames=queue.Queue(maxsize=4096), every_n=every_n)
        with self._lock:
            # Late joiners first get a full snapshot of the current state.
            _offer(sub.frames, self._frame_locked(snapshot=True))
            self._subscribers.append(sub)
        return sub

    def unsubscribe(self, sub: _Subscriber) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)

    def export_layout(self) -> bytes:
        with self._lock:
            state = self.sim.state()
            params = self.sim.params
        try:
            metrics = compute_metrics(self.graph, state, params.projection)
        except GeoLayoutError:
            metrics = None
        return save_layout(state, params, metrics)

    def close(self) -> None:
        with self._lock:
            self._closed = True
            self._lock.notify_all()
        self._thread.join(timeout=5.0)


def _offer(q: queue.Queue, frame: dict) -> None:
    # Slow consumers drop their oldest frames; the newest snapshot wins.
    while True:
        try:
            q.put_nowait(frame)
            return
        except queue.Full:
            try:
                q.get_nowait()
            except queue.Empty:
                pass


class SessionManager:
    def __init__(self, idle_timeout_seconds: float = 3600.0):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.idle_timeout_seconds = idle_timeout_seconds

    def create(self, graph, params: LayoutParams) -> Session:
        session = Session(uuid.uuid4().hex, graph, params)
        with self._lock:
            self._evict_idle_locked()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        session.last_touched = time.monotonic()
        return session

    def remove(self, session_id: str) -> None:
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        session.close()

    def _evict_idle_locked(self) -> None:
        cutoff = time.monotonic() - self.idle_timeout_seconds
        for session_id in [sid for sid, s in self._sessions.items() if s.last_touched < cutoff]:
            self._sessions.pop(session_id).close()

    def count(self) -> int:
        with self._lock:
            return len(self._sessions)

    def close_all(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
            self._sessions.clear()
        for session in sessions:
            session.close()


def create_app(manager: SessionManager | None = None) -> FastAPI:
    manager = manager or SessionManager()
    app = FastAPI(title="geolayout streaming service")
    app.state.manager = manager

    def _error(status: int, detail: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"ok": False, "error": detail})

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": manager.count()}

    @app.post("/sessions")
    async def create_session(payload: dict):
        raw_graph = payload.get("graph")
        if raw_graph is None:
            return _error(422, "missing 'graph' document")
        try:
            graph = load_graph(json.dumps(raw_graph), strict=False)
            params = params_from_dict(payload.get("params", {}))
        except FormatError as exc:
            return _error(422, str(exc))
        session = manager.create(graph, params)
        return {"ok": True, "session_id": session.id, "status": session.status,
                "node_count": len(graph), "edge_count": len(graph.edges)}

    @app.post("/sessions/{session_id}/control")
    async def control(session_id: str, message: dict):
        try:
            session = manager.get(session_id)
        except NotFoundError as exc:
            return _error(404, str(exc))
        try:
            return session.control(message)
        except InvalidInputError as exc:
            return _error(422, str(exc))

    @app.get("/sessions/{session_id}/layout")
    async def export_layout(session_id: str):
        try:
            session = manager.get(session_id)
        except NotFoundError as exc:
            return _error(404, str(exc))
        return Response(content=session.export_layout(), media_type="application/json")

    @app.delete("/sessions/{session_id}")
    async def delete_session(session_id: str):
        try:
            manager.remove(session_id)
        except NotFoundError as exc:
            return _error(404, str(exc))
        return {"ok": True}

    @app.websocket("/sessions/{session_id}/frames")
    async def frames(websocket: WebSocket, session_id: str,
                     every_n: int = Query(default=1, ge=1)):
        try:
            session = manager.get(session_id)
        except NotFoundError:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        sub = session.subscribe(every_n)
        # One task watches for client disconnect while the main loop drains
        # the frame queue; a dropped client never stalls the simulation.
        receiver = asyncio.create_task(websocket.receive())
        try:
            while True:
                frame_task = asyncio.create_task(run_in_threadpool(_next_frame, sub.frames))
                done, _ = await asyncio.wait({receiver, frame_task},
                                             return_when=asyncio.FIRST_COMPLETED)
                if receiver in done:
                    frame_task.cancel()
                    break
                frame = frame_task.result()
                if frame is not None:
                    await websocket.send_text(json.dumps(frame))
        except WebSocketDisconnect:
            pass
        finally:
            if not receiver.done():
                receiver.cancel()
            session.unsubscribe(sub)

    return app


def _next_frame(q: queue.Queue):
    try:
        return q.get(timeout=0.2)
    except queue.Empty:
        return None
