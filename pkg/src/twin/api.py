"""HTTP face of the twin: REST views plus a server-sent event stream.

All state lives in the runtime; handlers only translate between wire
shapes and domain calls.  Errors surface as ``{"error": code, "detail":
text}`` with 400 for bad input, 404 for unknown assets or orders, and
409 for conflicts such as illegal lifecycle moves.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
from contextlib import asynccontextmanager
from datetime import datetime, timezone

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .errors import TwinError
from .forecast import ForecastHorizon, forecast_level
from .health import detect_alarms
from .runtime import TwinRuntime
from .schemas import (
    ContextOut,
    CreateOrderIn,
    ForecastOut,
    HistoryOut,
    BucketOut,
    SnapshotOut,
    StatusNodeOut,
    StatusOut,
    TransitionIn,
    TreeNodeOut,
    WorkOrderOut,
)
from .store import HistoryWindow, format_ts
from .workorders import OrderStatus, Slot

_NOT_FOUND_CODES = {"PathNotFound", "UnknownOrder", "UnknownAlarm", "EmptySeries", "NoContext"}
_CONFLICT_CODES = {"IllegalTransition", "DuplicateOrder"}


def _http_status(code: str) -> int:
    if code in _NOT_FOUND_CODES:
        return 404
    if code in _CONFLICT_CODES:
        return 409
    return 400


async def _evaluation_loop(runtime: TwinRuntime) -> None:
    config = runtime.config
    interval = config.evaluation_interval
    simulated = config.clock.mode == "simulated"
    cursor: datetime | None = None
    if simulated:
        cursor = config.clock.start or runtime.as_of
        if cursor.year <= 1970:
            cursor = datetime.now(timezone.utc).replace(microsecond=0)
    while True:
        ts = cursor if cursor is not None else datetime.now(timezone.utc).replace(microsecond=0)
        await asyncio.to_thread(runtime.evaluate_once, ts)
        pace = config.clock.speedup if simulated else 1.0
        await asyncio.sleep(interval.total_seconds() / pace)
        if cursor is not None:
            cursor = cursor + interval


def create_app(runtime: TwinRuntime, run_loop: bool = False) -> FastAPI:
    @asynccontextmanager
    async def lifespan(_: FastAPI):
        task = asyncio.create_task(_evaluation_loop(runtime)) if run_loop else None
        try:
            yield
        finally:
            if task is not None:
                task.cancel()
                with contextlib.suppress(asyncio.CancelledError):
                    await task
            runtime.close()

    app = FastAPI(title="library twin", lifespan=lifespan)

    @app.exception_handler(TwinError)
    async def _twin_error(_: Request, exc: TwinError):
        return JSONResponse(
            status_code=_http_status(exc.code),
            content={"error": exc.code, "detail": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": "InvalidInput", "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "InvalidInput", "detail": str(exc)})

    @app.get("/api/v1/tree", response_model=TreeNodeOut)
    def get_tree():
        return TreeNodeOut.from_node(runtime.tree.root)

    @app.get("/api/v1/status", response_model=StatusOut)
    def get_status():
        return StatusOut(
            as_of=format_ts(runtime.as_of),
            building=StatusNodeOut.from_status(runtime.status()),
        )

    @app.get("/api/v1/assets/{path:path}/snapshot", response_model=SnapshotOut)
    def get_snapshot(path: str):
        snapshot = runtime.area_snapshot(path)
        alarms = detect_alarms(snapshot, runtime.config.alarm_level)
        pairs = [(alarm, runtime.diagnose_alarm(alarm)) for alarm in alarms]
        return SnapshotOut.from_snapshot(snapshot, pairs)

    @app.get("/api/v1/assets/{path:path}/history", response_model=HistoryOut)
    def get_history(path: str, window: str = "h48"):
        node = runtime.tree.resolve(path)
        win = HistoryWindow.from_label(window)
        end = runtime.as_of
        buckets = runtime.store.window_series(node.path, win, end)
        return HistoryOut(
            path=node.path,
            window=win.label,
            end=format_ts(end),
            buckets=[BucketOut.from_bucket(b) for b in buckets],
        )

    @app.get("/api/v1/assets/{path:path}/forecast", response_model=ForecastOut)
    def get_forecast(path: str, horizon: str = "m3"):
        h = ForecastHorizon.from_label(horizon)
        point = forecast_level(
            runtime.tree, runtime.store, path, h,
            at=runtime.as_of, alpha=runtime.config.alpha, beta=runtime.config.beta,
        )
        return ForecastOut.from_point(point)

    @app.get("/api/v1/context/latest", response_model=ContextOut)
    def get_context():
        record = runtime.store.latest_context()
        if record is None:
            return JSONResponse(
                status_code=404,
                content={"error": "NoContext", "detail": "no context records ingested yet"},
            )
        return ContextOut.from_record(record)

    @app.get("/api/v1/workorders", response_model=list[WorkOrderOut])
    def list_workorders(status: str | None = None):
        parsed = OrderStatus(status) if status else None
        return [WorkOrderOut.from_order(o) for o in runtime.book.list_orders(parsed)]

    @app.post("/api/v1/workorders", response_model=WorkOrderOut, status_code=201)
    def create_workorder(body: CreateOrderIn):
        runtime.tree.resolve(body.path)
        order = runtime.book.raise_manual(body.path, body.note, now=runtime.as_of)
        return WorkOrderOut.from_order(order)

    @app.post("/api/v1/workorders/{order_id}/transition", response_model=WorkOrderOut)
    def transition_workorder(order_id: str, body: TransitionIn):
        slot = Slot(day=body.slot.day, tech=body.slot.tech) if body.slot else None
        order = runtime.transition_order(order_id, OrderStatus(body.to), slot=slot)
        return WorkOrderOut.from_order(order)

    @app.get("/api/v1/stream")
    async def stream(request: Request):
        queue: asyncio.Queue = asyncio.Queue(maxsize=256)
        loop = asyncio.get_running_loop()

        def on_tick(tick) -> None:
            payload = tick.to_json()

            def push() -> None:
                if not queue.full():
                    queue.put_nowait(payload)

            loop.call_soon_threadsafe(push)

        unsubscribe = runtime.on_tick(on_tick)

        async def events():
            try:
                hello = {"as_of": format_ts(runtime.as_of)}
                yield f"event: hello\ndata: {json.dumps(hello)}\n\n"
                while not await request.is_disconnected():
                    try:
                        item = await asyncio.wait_for(queue.get(), timeout=15.0)
                        yield f"event: tick\ndata: {json.dumps(item)}\n\n"
                    except asyncio.TimeoutError:
                        yield ": keepalive\n\n"
            finally:
                unsubscribe()

        return StreamingResponse(
            events(),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    static_dir = runtime.config.static_dir
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="frontend")

    return app
